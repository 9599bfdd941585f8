import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starrees.groebner import ideal_equal, rees_ideal_oracle
from starrees.polyring import PolyRing
from starrees.rees import linear_relations, rees_ring
from starrees.star import (
    AbstractRegularSeq,
    DegenerateInputError,
    ParameterError,
    StarConfig,
    all_subsets_regular_batch,
    check_Gs,
    is_regular_sequence,
    linear_type_check,
    localize,
    nlt_minimal_primes,
    normalize_forms,
    rank_condition_batch,
    star_generators,
    subset_rank_condition,
    verify_star_condition,
)

from conftest import WORKED_U


def free(n):
    return StarConfig.create([[] for _ in range(n)], c=2)


def test_normalize_worked_forms():
    nf = normalize_forms(["x1", "x2", "x3", "x4", "x1+x2+x3+x4", "x2+2*x3+3*x4"], nvars=4)
    assert nf.config == StarConfig.create(WORKED_U)
    assert nf.order == tuple(range(6))


def test_normalize_reorders():
    nf = normalize_forms(["x2", "x1", "x1+x2"], nvars=2)
    assert nf.config.n == 2
    assert [list(r) for r in nf.config.U.rows] == [[1], [1]]


def test_normalize_all_zero():
    with pytest.raises(DegenerateInputError):
        normalize_forms(["0", "0"], nvars=2)


def test_normalize_reproduces_forms():
    raw = ["x1 + x2", "x2 - x3", "x3", "x1 + 2*x3", "x1 + x2 + x3"]
    nf = normalize_forms(raw, nvars=3)
    R = PolyRing(3, 0)
    new_forms = nf.config.forms(R)
    # basis row k writes new variable k in the old variables
    old = [R.parse(raw[i]) for i in nf.order]
    subst = {k: R.linear_form(list(nf.basis.rows[k])) for k in range(3)}
    assert [f.substitute(subst) for f in new_forms] == old


def test_generator_examples():
    X = free(3)
    assert [str(g) for g in star_generators(X, 2)] == ["x2*x3", "x1*x3", "x1*x2"]
    assert len(star_generators(free(4), 3)) == comb(4, 2)
    assert [str(g) for g in star_generators(X, 1)] == ["x1*x2*x3"]
    with pytest.raises(ParameterError):
        star_generators(X, 4)


@pytest.mark.parametrize("t,c", [(3, 1), (4, 2), (5, 3), (5, 5)])
def test_generator_count(t, c):
    assert len(star_generators(AbstractRegularSeq(t), c)) == comb(t, t - c + 1)


def test_regular_sequence_examples(worked):
    cfg, _ = worked
    assert is_regular_sequence(cfg, [1, 5, 6])
    assert not is_regular_sequence(cfg, [2, 3, 4, 6])
    assert is_regular_sequence(cfg, [1, 2])


def test_star_condition_examples(worked):
    cfg, _ = worked
    assert verify_star_condition(cfg)
    two = StarConfig.create([[1, 1], [1, -1]], c=2)
    assert not verify_star_condition(two, strict=True)
    assert verify_star_condition(free(4))


def test_rank_condition_examples(worked):
    cfg, _ = worked
    assert not subset_rank_condition(cfg, 4)
    assert subset_rank_condition(cfg, 3)
    assert subset_rank_condition(free(3), 2)
    with pytest.raises(ParameterError):
        subset_rank_condition(cfg, 5)


def test_gs_examples(worked):
    cfg, _ = worked
    res = check_Gs(cfg, 4)
    assert not res and res.witness == (2, 3, 4, 6) and res.height == 3
    generic = StarConfig.create([[1, 1], [1, 2], [1, 3], [1, 4]])
    assert check_Gs(generic, 4)
    generic3 = StarConfig.create([[1, 1], [1, 2], [1, 3], [1, 4], [1, 5]], c=3)
    assert not check_Gs(generic3, 5)


def test_linear_type_examples(worked):
    cfg, _ = worked
    assert linear_type_check(free(3))
    assert not linear_type_check(cfg)
    assert not linear_type_check(StarConfig.create([[] for _ in range(4)], c=3))


def test_localization_examples():
    X = free(4)
    assert localize(X, [1]).kind == "unit"
    ci = localize(X, [1, 2])
    assert ci.kind == "complete-intersection" and ci.forms == (1, 2)
    sc = localize(X, [1, 2, 3])
    assert sc.kind == "star-config" and sc.forms == (1, 2, 3)


def test_nlt_examples(worked):
    cfg, _ = worked
    assert any(f.forms == (2, 3, 4, 6) and f.height == 3 for f in nlt_minimal_primes(cfg))
    generic = StarConfig.create([[1, 1], [1, 2], [1, 3], [1, 4]])
    assert nlt_minimal_primes(generic) == []
    assert nlt_minimal_primes(StarConfig.create([[] for _ in range(4)], c=3)) == []


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_rank_condition_equivalence(n, r):
    Us = np.array(list(itertools.product((-1, 0, 1, 2), repeat=n * r)), dtype=np.int64).reshape(-1, n, r)
    for s in range(2, n + 1):
        assert np.array_equal(rank_condition_batch(Us, s), all_subsets_regular_batch(Us, s))


U_small = st.integers(2, 4).flatmap(
    lambda n: st.integers(0, 2).flatmap(
        lambda r: st.lists(st.lists(st.integers(-1, 2), min_size=r, max_size=r), min_size=n, max_size=n)
    )
)


@settings(max_examples=60, deadline=None)
@given(U_small)
def test_gs_is_monotone(U):
    cfg = StarConfig.create(U, c=2)
    seen_failure = False
    for s in range(2, cfg.n + 1):
        ok = bool(check_Gs(cfg, s))
        assert not (seen_failure and ok)
        seen_failure |= not ok


@settings(max_examples=60, deadline=None)
@given(U_small)
def test_rank_condition_matches_subsets(U):
    cfg = StarConfig.create(U, c=2)
    for s in range(2, cfg.n + 1):
        direct = all(is_regular_sequence(cfg, S) for S in itertools.combinations(range(1, cfg.t + 1), s))
        assert subset_rank_condition(cfg, s) == direct


@pytest.mark.parametrize("n", [2, 3, 4])
def test_linear_type_matches_oracle(n):
    cfg = free(n)
    assert linear_type_check(cfg)
    R = rees_ring(cfg)
    oracle = rees_ideal_oracle(star_generators(cfg, 2, cfg.ring()))
    assert ideal_equal(oracle, [R.embed(f) for f in linear_relations(cfg, R)])

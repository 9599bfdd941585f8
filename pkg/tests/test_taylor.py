import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starrees.groebner import buchberger_reduced, ideal_equal, ideal_member, rees_ideal_oracle
from starrees.polyring import PolyRing
from starrees.rees import rees_map_vanishes
from starrees.scalars import GF
from starrees.star import AbstractRegularSeq, ParameterError
from starrees.taylor import (
    fiber_quadrics,
    power_generator_polys,
    power_generators,
    power_generators_by_products,
    regular_case_equations,
    taylor_relation,
)


def test_power_generator_examples():
    assert sorted(power_generators(3, 2, 1)) == sorted([(1, 1, 0), (1, 0, 1), (0, 1, 1)])
    assert sorted(power_generators(3, 2, 2)) == sorted(
        [(2, 2, 0), (2, 1, 1), (2, 0, 2), (1, 2, 1), (1, 1, 2), (0, 2, 2)]
    )
    assert power_generators(4, 1, 1) == [(1, 1, 1, 1)]
    with pytest.raises(ParameterError):
        power_generators(3, 4, 1)


@pytest.mark.parametrize("t,c,m", [(3, 2, 2), (4, 2, 3), (4, 3, 2), (5, 3, 2), (5, 2, 3)])
def test_bounded_exponents_equal_products(t, c, m):
    assert sorted(power_generators(t, c, m)) == sorted(power_generators_by_products(t, c, m))


def test_taylor_relation_examples():
    rel, f = taylor_relation(4, 3, 1, (1,), (2,))
    assert f == f.ring.parse("x3*T1 - x2*T2")
    assert rel.theta == (0, 0, 1, 0) and rel.delta == (0, 1, 0, 0)
    _, f = taylor_relation(4, 3, 1, (3,), (3,))
    assert not f
    rel, f = taylor_relation(3, 2, 1, (1, 2), (3, 3))
    gens = [g for g in power_generator_polys(3, 2, 1, ring=PolyRing(3, 0))]
    assert rees_map_vanishes([f], gens)


def _labels(t, c, m):
    return {g: i + 1 for i, g in enumerate(power_generators(t, c, m))}


def test_fiber_quadric_examples():
    lab = _labels(4, 3, 1)
    R = PolyRing(4, 6)

    def T(*exps):
        return R.T(lab[exps])

    Q = fiber_quadrics(4, 3, 1, R)
    a = T(1, 1, 0, 0) * T(0, 0, 1, 1)
    b = T(1, 0, 1, 0) * T(0, 1, 0, 1)
    c = T(1, 0, 0, 1) * T(0, 1, 1, 0)
    assert any(q.is_proportional(a - b) for q in Q)
    assert any(q.is_proportional(a - c) for q in Q)
    assert fiber_quadrics(4, 2, 1) == []
    lab = _labels(3, 2, 2)
    R = PolyRing(3, 6)
    f = R.T(lab[(2, 2, 0)]) * R.T(lab[(2, 0, 2)]) - R.T(lab[(2, 1, 1)]) ** 2
    assert any(q.is_proportional(f) for q in fiber_quadrics(3, 2, 2, R))


def _oracle_equal(t, c, m, seq=None):
    seq = seq or AbstractRegularSeq(t, field=GF(101))
    lin, quad = regular_case_equations(t, c, m, seq)
    oracle = rees_ideal_oracle(power_generator_polys(t, c, m, seq))
    R = oracle[0].ring
    return ideal_equal(oracle, [R.embed(f) for f in lin + quad])


def test_regular_case_examples():
    lin, quad = regular_case_equations(3, 2, 1)
    assert quad == []
    assert _oracle_equal(3, 2, 1)
    assert _oracle_equal(4, 3, 1)
    assert _oracle_equal(3, 2, 2)


def test_weighted_and_power_realizations():
    weighted = AbstractRegularSeq(3, field=GF(101), exponents=(3, 1, 1), weights=(1, 3, 3))
    assert _oracle_equal(3, 2, 2, weighted)
    powers = AbstractRegularSeq(4, degree=2, field=GF(101))
    assert _oracle_equal(4, 3, 1, powers)
    with pytest.raises(ParameterError):
        AbstractRegularSeq(3, exponents=(2, 1, 1))


@pytest.mark.parametrize("t,c,m", [(3, 2, 2), (4, 3, 1)])
def test_higher_taylor_relations_reduce(t, c, m):
    seq = AbstractRegularSeq(t, field=GF(101))
    lin, quad = regular_case_equations(t, c, m, seq)
    gb = buchberger_reduced(lin + quad)
    mu = len(power_generators(t, c, m))
    rng = random.Random(t * 10 + m)
    for s in (1, 2, 3):
        tuples = list(itertools.combinations_with_replacement(range(1, mu + 1), s))
        for _ in range(12):
            alpha, beta = rng.choice(tuples), rng.choice(tuples)
            _, f = taylor_relation(t, c, m, alpha, beta, seq)
            assert ideal_member(lin[0].ring.embed(f), gb)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4).flatmap(lambda t: st.tuples(st.just(t), st.integers(1, t), st.integers(1, 2), st.permutations(range(t)))))
def test_quadrics_are_symmetric(args):
    t, c, m, perm = args
    gens = power_generators(t, c, m)
    index = {g: i for i, g in enumerate(gens)}
    relabel = [index[tuple(g[perm[k]] for k in range(t))] for g in gens]
    R = PolyRing(0, len(gens))
    Q = fiber_quadrics(t, c, m, R)
    images = {R.nx + i: R.T(relabel[i] + 1) for i in range(len(gens))}
    moved = {frozenset(q.substitute(images).monic().terms.items()) for q in Q}
    assert moved == {frozenset(q.terms.items()) for q in Q}


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4).flatmap(lambda t: st.tuples(st.just(t), st.integers(1, t), st.integers(1, 2))))
def test_all_relations_vanish(args):
    t, c, m = args
    lin, quad = regular_case_equations(t, c, m)
    gens = power_generator_polys(t, c, m, ring=PolyRing(t, 0))
    assert rees_map_vanishes(lin + quad, gens)

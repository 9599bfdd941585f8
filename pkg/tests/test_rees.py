import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starrees.groebner import buchberger_reduced, ideal_equal, ideal_member, rees_ideal_oracle
from starrees.linalg import det_poly
from starrees.rees import (
    DegenerateConfigError,
    NoDependencyError,
    NotApplicableError,
    TrivialDependencyError,
    UnsupportedHeightError,
    all_max_minors,
    delta,
    dependency_relation,
    h_theta,
    h_theta_dependency,
    h_theta_factor,
    ideal_P,
    jacobian_dual,
    lambda_Q,
    linear_relations,
    m_theta,
    minor_U,
    minors_ideal_generators,
    p_theta_recursion_check,
    primary_decomposition_check,
    rees_defining_ideal,
    rees_map_vanishes,
    rees_ring,
    theta_sets,
    theta_vanishes_by_rank,
    zero_row_reduce,
)
from starrees.star import StarConfig, star_generators
from starrees.scalars import GF

# closed forms as printed for the worked example; m_2 and m_3 appear there
# with the opposite overall sign
GOLDEN = {
    6: "T1*T2*T3*T5 - T1*T2*T3*T4 + T1*T2*T4*T5 + T1*T4*T3*T5 + T4*T2*T3*T5",
    5: "3*T1*T2*T3*T6 - T1*T2*T3*T4 + 2*T1*T2*T4*T6 + T1*T4*T3*T6",
    3: "T1*T2*T4*T5 - 2*T1*T2*T4*T6 - T1*T2*T5*T6 + T1*T4*T5*T6 + 2*T2*T4*T5*T6",
    2: "T1*T4*T3*T5 - T1*T6*T3*T4 - T1*T6*T4*T5 - 2*T1*T6*T3*T5 + T4*T6*T3*T5",
    1: "-T4*T2*T3*T5 + 2*T6*T2*T4*T5 + T6*T4*T3*T5 + 3*T6*T2*T3*T5",
}
SIGN = {6: 1, 5: 1, 3: -1, 2: -1, 1: 1}


def test_jacobian_dual_golden(worked):
    cfg, R = worked
    expected = [
        ["T1", "0", "0", "T5", "0"],
        ["-T2", "T2", "0", "T5", "T6"],
        ["0", "-T3", "T3", "T5", "2*T6"],
        ["0", "0", "-T4", "T5 - T4", "3*T6 - T4"],
    ]
    B = jacobian_dual(cfg, R)
    assert B.shape == (4, 5)
    for i, row in enumerate(expected):
        for j, e in enumerate(row):
            assert B[i, j] == R.parse(e)


def test_jacobian_dual_small_cases():
    cfg = StarConfig.create([[1], [1]])
    R = rees_ring(cfg)
    B = jacobian_dual(cfg, R)
    assert [[B[i, j] for j in range(2)] for i in range(2)] == [
        [R.parse("T1"), R.parse("T3")],
        [R.parse("-T2"), R.parse("T3 - T2")],
    ]
    free = StarConfig.create([[], [], []])
    assert jacobian_dual(free).shape == (3, 2)


def test_linear_relations(worked):
    cfg, R = worked
    lam = linear_relations(cfg, R)
    assert len(lam) == 5
    assert lam[3] == R.parse("x4*T4 - (x1+x2+x3+x4)*T5")
    assert lam[4] == R.parse("(x1+x2+x3+x4)*T5 - (x2+2*x3+3*x4)*T6")
    printed = ["x1*T1-x2*T2", "x2*T2-x3*T3", "x3*T3-x4*T4", "x4*T4-(x1+x2+x3+x4)*T5", "x4*T4-(x2+2*x3+3*x4)*T6"]
    assert ideal_equal(lam, [R.parse(s) for s in printed])
    free = StarConfig.create([[], [], []])
    Rf = rees_ring(free)
    assert linear_relations(free, Rf) == [Rf.parse("x1*T1 - x2*T2"), Rf.parse("x2*T2 - x3*T3")]


def test_height_guard():
    cfg = StarConfig.create([[1], [1], [2]], c=3)
    with pytest.raises(UnsupportedHeightError):
        linear_relations(cfg)


def test_degenerate_refused():
    cfg = StarConfig.create([[1], [0], [0]])  # L1 = x1
    with pytest.raises(DegenerateConfigError):
        rees_defining_ideal(cfg)
    with pytest.raises(DegenerateConfigError):
        primary_decomposition_check(cfg)


def test_minor_U_examples(worked):
    cfg, _ = worked
    assert minor_U(cfg, [5, 6]) == 1
    assert minor_U(cfg, [1, 5]) == 0
    assert minor_U(cfg, [2, 3]) == 1
    with pytest.raises(ValueError):
        minor_U(cfg, [1])


def test_m_theta_golden(worked):
    cfg, R = worked
    for k, text in GOLDEN.items():
        assert m_theta(cfg, [k], R) == R.parse(text).scale(SIGN[k])


def test_m_theta_small_and_vanishing():
    cfg = StarConfig.create([[1], [1]])
    R = rees_ring(cfg)
    assert m_theta(cfg, [], R) == R.parse("T2*T3 + T1*T3 - T1*T2")
    (minor,) = all_max_minors(jacobian_dual(cfg, R))
    assert minor == R.parse("T1*T3 - T1*T2 + T2*T3")
    zero_row = StarConfig.create([[0, 0], [1, 1], [1, 2], [1, 3]])
    assert not m_theta(zero_row, [1])


def test_generator_list(worked):
    cfg, R = worked
    gens = minors_ideal_generators(cfg, R)
    assert [g.theta for g in gens] == [(1,), (2,), (3,), (5,), (6,)]
    assert len(minors_ideal_generators(StarConfig.create([[1], [2], [3]]))) == 1
    assert minors_ideal_generators(StarConfig.create([[], [], []])) == []


def test_closed_forms_generate_all_minors(worked):
    cfg, R = worked
    brute = all_max_minors(jacobian_dual(cfg, R))
    assert len(brute) == 5
    closed = [g.m for g in minors_ideal_generators(cfg, R)]
    assert ideal_equal(brute, closed)


def test_h_theta_golden(worked):
    cfg, R = worked
    h1 = R.parse("-T2*T3*T4 + 2*T2*T4*T6 + T3*T4*T6 + 3*T2*T3*T6")
    f, h = h_theta_factor(m_theta(cfg, [1], R))
    assert f == R.parse("T5") and h == h1
    f, h = h_theta_factor(m_theta(cfg, [6], R))
    assert f == R.one and h == m_theta(cfg, [6], R)
    f, h = h_theta_factor(m_theta(cfg, [5], R))
    assert f == R.parse("T1") and h == h1
    assert h_theta(cfg, [1], R) == h1


def test_ideal_P_golden(worked):
    cfg, R = worked
    P = ideal_P(cfg, R)
    assert len(P) == 4
    expected = [R.parse(GOLDEN[6]), R.parse(GOLDEN[3]), R.parse(GOLDEN[2]), h_theta(cfg, [1], R)]
    for e in expected:
        assert sum(1 for p in P if p.is_proportional(e)) == 1
    assert all(p.leading_coefficient() == 1 for p in P)


def test_ideal_P_single_form():
    cfg = StarConfig.create([[0], [1], [1]])
    R = rees_ring(cfg)
    (f,) = ideal_P(cfg, R)
    assert f.is_proportional(R.parse("T2*T3 - T3*T4 - T2*T4"))
    assert ideal_P(StarConfig.create([[], [], []])) == []


def test_rees_ideal_worked_example(worked):
    cfg, R = worked
    J = rees_defining_ideal(cfg, R)
    assert len(J.linear) == 5 and len(J.fiber) == 4
    oracle = rees_ideal_oracle(star_generators(cfg, 2, cfg.ring()), field=GF(101))
    Rp = oracle[0].ring
    assert ideal_equal(oracle, [Rp.embed(f) for f in J.linear + J.fiber])


def test_dependencies_golden(worked):
    cfg, R = worked
    h1 = h_theta(cfg, [1], R)
    dep, d = dependency_relation(cfg, [0, -1], R)
    assert d == h1
    assert dep.b == (0, 1, 2, 3)
    dep, d = dependency_relation(cfg, [-1, 0], R)
    assert dep.b == (1, 1, 1, 1) and d.is_proportional(m_theta(cfg, [6], R))
    dep, d = dependency_relation(cfg, [-2, 1], R)
    assert dep.b == (2, 1, 0, -1) and d.is_proportional(m_theta(cfg, [3], R))
    with pytest.raises(TrivialDependencyError):
        dependency_relation(cfg, [0, 0], R)


@pytest.mark.parametrize(
    "theta,b,a",
    [([6], (1, 1, 1, 1), (-1, 0)), ([1], (0, 1, 2, 3), (0, -1)), ([3], (2, 1, 0, -1), (-2, 1)), ([2], (1, 0, -1, -2), (-1, 1))],
)
def test_h_theta_dependency_golden(worked, theta, b, a):
    cfg, R = worked
    dep = h_theta_dependency(cfg, theta)
    vec = tuple(dep.b) + tuple(dep.a)
    want = b + a
    k = next(i for i, v in enumerate(want) if v)
    ratio = vec[k] / want[k]
    assert all(v == ratio * w for v, w in zip(vec, want))
    assert delta(dep, R).is_proportional(h_theta(cfg, theta, R))


def test_no_dependency_for_vanishing_theta():
    cfg = StarConfig.create([[0, 0], [1, 1], [1, 2], [1, 3]])
    with pytest.raises(NoDependencyError):
        h_theta_dependency(cfg, [1])


def test_lambda_Q(worked):
    cfg, R = worked
    lq = lambda_Q(cfg, R)
    assert lq.members == [(1, 5)]
    assert lq.Q == [R.T(1), R.T(5)]
    generic = StarConfig.create([[1, 1], [1, 2], [1, 3], [1, 4]])
    assert lambda_Q(generic).Q == [rees_ring(generic).one]
    zero_row = StarConfig.create([[0, 0], [1, 1], [1, 2], [1, 3]])
    assert (1,) in lambda_Q(zero_row).members


def test_primary_decomposition(worked):
    cfg, _ = worked
    rep = primary_decomposition_check(cfg)
    assert rep.ok and rep.equal
    generic = primary_decomposition_check(StarConfig.create([[1, 1], [1, 2], [1, 3], [1, 4]]))
    assert generic.ok
    zero_row = primary_decomposition_check(StarConfig.create([[0, 0], [1, 1], [1, 2], [1, 3]]))
    assert not zero_row.hypothesis_holds and zero_row.equal is None


def test_recursion(worked):
    cfg, R = worked
    rep = p_theta_recursion_check(cfg, [3], R)
    assert rep.ok and rep.identities_checked >= 1
    first = p_theta_recursion_check(cfg, [1], R)
    assert first.ok and first.length == 1


def test_zero_row_reduce(worked):
    red = zero_row_reduce(StarConfig.create([[0], [1], [1]]))
    assert red.minors_equal and red.P_equal
    assert red.reduced.n == 2
    red = zero_row_reduce(StarConfig.create([[0], [1]]))
    assert red.minors_equal
    with pytest.raises(NotApplicableError):
        zero_row_reduce(worked[0])


U_corpus = st.integers(2, 4).flatmap(
    lambda n: st.integers(1, 2).flatmap(
        lambda r: st.lists(st.lists(st.integers(-1, 3), min_size=r, max_size=r), min_size=n, max_size=n)
    )
)


def _valid(U):
    cfg = StarConfig.create(U)
    return cfg if not cfg.degenerate else None


@settings(max_examples=40, deadline=None)
@given(U_corpus)
def test_everything_vanishes_under_the_rees_map(U):
    cfg = _valid(U)
    if cfg is None:
        return
    R = rees_ring(cfg)
    gens = star_generators(cfg, 2, cfg.ring())
    polys = linear_relations(cfg, R) + [g.m for g in minors_ideal_generators(cfg, R, include_n=True)]
    polys += ideal_P(cfg, R)
    assert rees_map_vanishes([p for p in polys if p], gens)


@settings(max_examples=40, deadline=None)
@given(U_corpus)
def test_theta_avoidance_and_vanishing_criterion(U):
    cfg = _valid(U)
    if cfg is None:
        return
    R = rees_ring(cfg)
    for theta in theta_sets(cfg, include_n=True):
        m = m_theta(cfg, theta, R)
        assert (not m) == theta_vanishes_by_rank(cfg, theta)
        for mono in m.terms:
            assert all(mono[R.nx + j - 1] == 0 for j in theta)
        comp = [k for k in range(1, cfg.t + 1) if k not in theta]
        for i, l in itertools.combinations(comp, 2):
            assert all(mono[R.nx + i - 1] or mono[R.nx + l - 1] for mono in m.terms)


@settings(max_examples=25, deadline=None)
@given(U_corpus)
def test_generators_with_n_are_in_the_ideal(U):
    cfg = _valid(U)
    if cfg is None:
        return
    R = rees_ring(cfg).with_field(GF(101))
    gens = [g.m for g in minors_ideal_generators(cfg, R) if g.m]
    gb = buchberger_reduced(gens)
    for theta in theta_sets(cfg, include_n=True):
        if cfg.n in theta:
            assert ideal_member(m_theta(cfg, theta, R), gb)


@settings(max_examples=40, deadline=None)
@given(U_corpus)
def test_dependency_round_trip(U):
    cfg = _valid(U)
    if cfg is None:
        return
    R = rees_ring(cfg)
    for theta in theta_sets(cfg):
        h = h_theta(cfg, theta, R)
        if h is not None:
            assert delta(h_theta_dependency(cfg, theta), R).is_proportional(h)


def test_brute_force_minor_uses_determinants(worked):
    cfg, R = worked
    B = jacobian_dual(cfg, R)
    assert all_max_minors(B)[0] == det_poly(B.select_columns([0, 1, 2, 3]))


@settings(max_examples=40, deadline=None)
@given(U_corpus)
def test_fiber_degree_equals_support_minus_one(U):
    cfg = _valid(U)
    if cfg is None:
        return
    R = rees_ring(cfg)
    for theta in theta_sets(cfg, include_n=True):
        h = h_theta(cfg, theta, R)
        if h is None:
            continue
        dx, dT = h.bidegree()
        support = len(h_theta_dependency(cfg, theta).support)
        assert dx == 0 and dT == support - 1
        assert 2 <= dT <= cfg.n


def test_single_form_fiber_generator_has_degree_two():
    cfg = StarConfig.create([[0], [1], [1]])
    (f,) = ideal_P(cfg, rees_ring(cfg))
    assert f.bidegree() == (0, 2)


def test_monomial_prime_containment(worked):
    from starrees.rees import monomial_prime_containment

    cfg, R = worked
    assert monomial_prime_containment(cfg, (1, 5), R)
    assert not monomial_prime_containment(cfg, (2, 3), R)

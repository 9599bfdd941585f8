"""Rees algebra equations for height-two linear star configurations.

Index conventions follow :mod:`starrees.star`: forms and Rees variables are
1-based (``F_k`` <-> ``T_k``), index sets ``theta``/``chi`` are subsets of
``{1..t}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import buchberger_reduced, ideal_equal, ideal_intersect, ideal_member
from .linalg import Matrix, PolyMatrix, det_poly, kernel_basis, minor, rank
from .polyring import Poly, PolyRing, sort_polys
from .scalars import GF, DEFAULT_PRIME, Field
from .star import DegenerateConfigError, ParameterError, StarConfig, form_name, star_generators


class UnsupportedHeightError(ValueError):
    """The operation is only defined for height c = 2."""


class TrivialDependencyError(ValueError):
    pass


class NoDependencyError(ValueError):
    """h_theta vanishes, so no dependency is attached to theta."""


class NotApplicableError(ValueError):
    pass


def _require_height_two(cfg: StarConfig, allow_degenerate: bool = False):
    if cfg.c != 2:
        raise UnsupportedHeightError(f"only height c = 2 is supported (got c = {cfg.c})")
    if not allow_degenerate and cfg.degenerate:
        raise DegenerateConfigError("two of the forms are dependent")


def rees_ring(cfg: StarConfig, aux: bool = False) -> PolyRing:
    """``K[x_1..x_n, T_1..T_t]`` (plus ``s`` when ``aux``)."""
    return cfg.ring(cfg.t, aux)


def _ring_for(cfg: StarConfig, ring: PolyRing | None) -> PolyRing:
    ring = ring or rees_ring(cfg)
    if ring.nt < cfg.t:
        raise ParameterError("ring has too few T-variables")
    return ring


# --------------------------------------------------------------------------
# presentation, linear relations, Jacobian dual
# --------------------------------------------------------------------------


def presentation_and_linear_relations(cfg: StarConfig, ring: PolyRing | None = None):
    """Bidiagonal presentation matrix ``M`` (t x (t-1)) and ``λ_i = F_i T_i - F_{i+1} T_{i+1}``."""
    _require_height_two(cfg)
    ring = _ring_for(cfg, ring)
    F = cfg.forms(ring)
    t = cfg.t
    zero = ring.zero
    rows = [[zero] * (t - 1) for _ in range(t)]
    for i in range(t - 1):
        rows[i][i] = F[i]
        rows[i + 1][i] = -F[i + 1]
    M = PolyMatrix(ring, tuple(tuple(r) for r in rows))
    lambdas = [F[i] * ring.T(i + 1) - F[i + 1] * ring.T(i + 2) for i in range(t - 1)]
    return M, lambdas


def linear_relations(cfg: StarConfig, ring: PolyRing | None = None) -> list:
    return presentation_and_linear_relations(cfg, ring)[1]


def _jacobian_dual_cols(n: int, U: Matrix, ring: PolyRing, shift: int = 0) -> list:
    """Columns ``A_1..A_{n-1}, C_1..C_r``; ``T_k`` is read as ``T_{k+shift}``."""
    T = lambda k: ring.T(k + shift)  # noqa: E731
    zero = ring.zero
    cols = []
    for k in range(1, n):
        col = [zero] * n
        col[k - 1] = T(k)
        col[k] = -T(k + 1)
        cols.append(col)
    for i in range(1, U.ncols + 1):
        Tn_i = T(n + i)
        col = [Tn_i.scale(U[j, i - 1]) for j in range(n)]
        col[n - 1] = col[n - 1] - T(n)
        cols.append(col)
    return cols


def _from_cols(ring: PolyRing, cols: list, nrows: int) -> PolyMatrix:
    return PolyMatrix(ring, tuple(tuple(c[j] for c in cols) for j in range(nrows)))


def jacobian_dual(cfg: StarConfig, ring: PolyRing | None = None) -> PolyMatrix:
    """The ``n x (t-1)`` Jacobian dual with ``[x] B = [T] M``."""
    if cfg.c != 2:
        raise UnsupportedHeightError(f"only height c = 2 is supported (got c = {cfg.c})")
    ring = _ring_for(cfg, ring)
    return _from_cols(ring, _jacobian_dual_cols(cfg.n, cfg.U, ring), cfg.n)


@dataclass
class ReesModel:
    cfg: StarConfig
    ring: PolyRing
    M: PolyMatrix
    lambdas: list
    B: PolyMatrix
    generators: dict = field(default_factory=dict)  # theta -> m_theta

    @classmethod
    def build(cls, cfg: StarConfig, ring: PolyRing | None = None) -> "ReesModel":
        ring = _ring_for(cfg, ring)
        M, lam = presentation_and_linear_relations(cfg, ring)
        B = jacobian_dual(cfg, ring)
        gens = {g.theta: g.m for g in minors_ideal_generators(cfg, ring)}
        return cls(cfg, ring, M, lam, B, gens)


# --------------------------------------------------------------------------
# minors of U and the closed-form generators
# --------------------------------------------------------------------------


def _check_index_set(cfg: StarConfig, idx: Sequence[int], size: int, what: str) -> tuple:
    idx = tuple(sorted(idx))
    if len(idx) != size or len(set(idx)) != size:
        raise ParameterError(f"{what} must have {size} distinct elements, got {list(idx)}")
    if any(not 1 <= k <= cfg.t for k in idx):
        raise ParameterError(f"{what} has an index outside 1..{cfg.t}")
    return idx


def _minor_U_raw(cfg: StarConfig, chi: Sequence[int]):
    n, r = cfg.n, cfg.r
    rows = [k - 1 for k in chi if k <= n]
    drop = {k - n for k in chi if k > n}
    cols = [j - 1 for j in range(1, r + 1) if j not in drop]
    if len(rows) != len(cols):
        raise ParameterError("index set does not select a square minor")
    return minor(cfg.U, rows, cols)


def minor_U(cfg: StarConfig, chi: Sequence[int]):
    """``U_chi``: rows ``chi ∩ {1..n}``, columns ``{1..r}`` minus ``{k-n : k in chi, k > n}``."""
    chi = _check_index_set(cfg, chi, cfg.r, "chi")
    return _minor_U_raw(cfg, chi)


@dataclass(frozen=True)
class ThetaIndex:
    theta: tuple
    complement: tuple  # k_1 < ... < k_{n+1}
    split: int  # number of complement indices <= n

    @classmethod
    def of(cls, cfg: StarConfig, theta: Sequence[int]) -> "ThetaIndex":
        if cfg.r < 1:
            raise ParameterError("theta sets need r >= 1")
        theta = _check_index_set(cfg, theta, cfg.r - 1, "theta")
        comp = tuple(k for k in range(1, cfg.t + 1) if k not in theta)
        split = sum(1 for k in comp if k <= cfg.n)
        return cls(theta, comp, split)

    def alpha(self, n: int, i: int) -> int:
        """Sign exponent of the i-th complement index (1-based i)."""
        if i <= self.split:
            return n - self.split + i - self.complement[i - 1]
        return n + i


def m_theta(cfg: StarConfig, theta: Sequence[int], ring: PolyRing | None = None) -> Poly:
    """Closed-form maximal-minor generator attached to ``theta`` (``|theta| = r-1``)."""
    ring = _ring_for(cfg, ring)
    ti = ThetaIndex.of(cfg, theta)
    f = ring.field
    acc = ring.zero
    for i, k in enumerate(ti.complement, start=1):
        u = _minor_U_raw(cfg, ti.theta + (k,))
        if u == 0:
            continue
        coeff = f.convert(u) if ti.alpha(cfg.n, i) % 2 == 0 else f.neg(f.convert(u))
        acc = acc + ring.T_monomial([c for c in ti.complement if c != k], coeff)
    return acc


@dataclass(frozen=True)
class MinorGenerator:
    theta: tuple
    m: Poly

    @property
    def is_zero(self) -> bool:
        return not self.m


def theta_sets(cfg: StarConfig, include_n: bool = False) -> list:
    pool = [k for k in range(1, cfg.t + 1) if include_n or k != cfg.n]
    return list(itertools.combinations(pool, cfg.r - 1)) if cfg.r >= 1 else []


def minors_ideal_generators(cfg: StarConfig, ring: PolyRing | None = None, include_n: bool = False) -> list:
    """``m_theta`` for every ``theta`` avoiding ``n`` (lexicographic), zero ones kept."""
    if cfg.r < 1:
        return []
    ring = _ring_for(cfg, ring)
    return [MinorGenerator(th, m_theta(cfg, th, ring)) for th in theta_sets(cfg, include_n)]


def theta_vanishes_by_rank(cfg: StarConfig, theta: Sequence[int]) -> bool:
    """Independent test for ``m_theta = 0``: the ``h x (h+1)`` block of ``U`` has rank < h."""
    ti = ThetaIndex.of(cfg, theta)
    n = cfg.n
    rows = [k - 1 for k in ti.theta if k <= n]
    drop = {k - n for k in ti.theta if k > n}
    cols = [j - 1 for j in range(1, cfg.r + 1) if j not in drop]
    h = len(rows)
    if h == 0:
        return False
    return rank(cfg.U.submatrix(rows, cols)) < h


def all_max_minors(B: PolyMatrix) -> list:
    """Every ``n x n`` minor of ``B`` (column subsets in lexicographic order)."""
    n = B.nrows
    if B.ncols < n:
        return []
    return [det_poly(B.select_columns(cols)) for cols in itertools.combinations(range(B.ncols), n)]


# --------------------------------------------------------------------------
# the recursion between consecutive-column minors
# --------------------------------------------------------------------------


def _blocks(theta: Sequence[int]):
    """Split ``theta`` (⊆ 1..n-1) into an initial run containing 1 and later runs."""
    theta = sorted(theta)
    runs = []
    for k in theta:
        if runs and runs[-1][-1] == k - 1:
            runs[-1].append(k)
        else:
            runs.append([k])
    head = runs[0] if runs and runs[0][0] == 1 else []
    rest = runs[1:] if head else runs
    return head, [(run[0], len(run)) for run in rest]


def p_labels(theta: Sequence[int]) -> list:
    """Labels ``(i, j)`` of the minor sequence, in order."""
    _, blocks = _blocks(theta)
    if not blocks:
        return [(1, 1)]
    labels = [(i, j) for i, (_, l) in enumerate(blocks, start=1) for j in range(1, l + 1)]
    labels.append((len(blocks), blocks[-1][1] + 1))
    return labels


def p_minor(cfg: StarConfig, theta: Sequence[int], label, ring: PolyRing | None = None) -> Poly:
    """Minor after removing ``A_k`` (k in theta) and summing consecutive columns."""
    ring = _ring_for(cfg, ring)
    n = cfg.n
    theta = sorted(theta)
    if len(theta) != cfg.r - 1 or any(not 1 <= k <= n - 1 for k in theta):
        raise ParameterError("theta must be an (r-1)-subset of 1..n-1")
    _, blocks = _blocks(theta)
    cols = _jacobian_dual_cols(n, cfg.U, ring)

    def add_into(target: int, upto: int):
        # A_target += A_{target+1} + ... + A_upto  (1-based A indices)
        col = list(cols[target - 1])
        for q in range(target + 1, upto + 1):
            col = [a + b for a, b in zip(col, cols[q - 1])]
        return col

    i, j = label
    new_cols = list(cols)
    for bi, (k, l) in enumerate(blocks[: i - 1] if blocks else [], start=1):
        new_cols[k - 2] = add_into(k - 1, k + l - 1)
    if blocks:
        k, _ = blocks[i - 1]
        new_cols[k - 2] = add_into(k - 1, k + j - 2)
    keep = [c for idx, c in enumerate(new_cols, start=1) if not (idx <= n - 1 and idx in theta)]
    return det_poly(_from_cols(ring, keep, n))


def p_sequence(cfg: StarConfig, theta: Sequence[int], ring: PolyRing | None = None) -> list:
    return [(lab, p_minor(cfg, theta, lab, ring)) for lab in p_labels(theta)]


@dataclass
class RecursionReport:
    theta: tuple
    length: int
    identities_checked: int
    failures: list
    last_matches_m: bool

    @property
    def ok(self) -> bool:
        return not self.failures and self.last_matches_m


def p_theta_recursion_check(cfg: StarConfig, theta: Sequence[int], ring: PolyRing | None = None) -> RecursionReport:
    """Check ``p^(h) = p^(h+1) - p_{theta(i,j)}^(h-j+1)`` and ``p^(e) = ±m_theta``."""
    ring = _ring_for(cfg, ring)
    theta = tuple(sorted(theta))
    seq = p_sequence(cfg, theta, ring)
    _, blocks = _blocks(theta)
    failures = []
    cache: dict = {}
    for h in range(1, len(seq)):
        (i, j), ph = seq[h - 1]
        k_i = blocks[i - 1][0]
        other = tuple(sorted((set(theta) - {k_i + j - 1}) | {k_i - 1}))
        if other not in cache:
            cache[other] = p_sequence(cfg, other, ring)
        oseq = cache[other]
        idx = h - j + 1
        if idx > len(oseq):
            failures.append((h, "index beyond the companion sequence"))
            continue
        rhs = seq[h][1] - oseq[idx - 1][1]
        if ph != rhs:
            failures.append((h, f"{ph} != {rhs}"))
    m = m_theta(cfg, theta, ring)
    last = seq[-1][1]
    matches = last == m or last == -m
    return RecursionReport(theta, len(seq), len(seq) - 1, failures, matches)


# --------------------------------------------------------------------------
# irreducible factors and the fiber ideal
# --------------------------------------------------------------------------


def h_theta_factor(m: Poly):
    """``m = f * h`` with ``f`` the monomial content; ``None`` when ``m = 0``."""
    if not m:
        return None
    content = m.content_monomial()
    ring = m.ring
    return ring.monomial(content), m.div_monomial(content)


def h_theta(cfg: StarConfig, theta: Sequence[int], ring: PolyRing | None = None) -> Poly | None:
    fac = h_theta_factor(m_theta(cfg, theta, ring))
    return None if fac is None else fac[1]


def _dedupe_associates(polys: list) -> list:
    reps: list = []
    for h in polys:
        hm = h.monic()
        if not any(hm == r for r in reps):
            reps.append(hm)
    return reps


def ideal_P(cfg: StarConfig, ring: PolyRing | None = None, include_n: bool = False) -> list:
    """One monic representative per associate class of the nonzero ``h_theta``."""
    if cfg.r < 1:
        return []
    ring = _ring_for(cfg, ring)
    hs = []
    for th in theta_sets(cfg, include_n):
        fac = h_theta_factor(m_theta(cfg, th, ring))
        if fac is not None:
            hs.append(fac[1])
    return sort_polys(_dedupe_associates(hs))


@dataclass
class ReesIdeal:
    linear: list
    fiber: list

    def generators(self) -> list:
        return list(self.linear) + list(self.fiber)


def rees_defining_ideal(cfg: StarConfig, ring: PolyRing | None = None) -> ReesIdeal:
    """Linear relations plus the fiber generators; together they generate the Rees ideal."""
    _require_height_two(cfg)
    ring = _ring_for(cfg, ring)
    return ReesIdeal(linear_relations(cfg, ring), ideal_P(cfg, ring))


# --------------------------------------------------------------------------
# dependencies
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Dependency:
    n: int
    r: int
    a: tuple  # coefficients of L_1..L_r
    b: tuple  # coefficients of x_1..x_n
    field: Field

    @property
    def coefficients(self) -> tuple:
        return tuple(self.b) + tuple(self.a)

    @property
    def support(self) -> tuple:
        return tuple(k for k, c in enumerate(self.coefficients, start=1) if c != 0)

    def text(self) -> str:
        t = self.n + self.r
        names = [form_name(self.n, k) for k in range(1, t + 1)]
        ring = PolyRing(t, 0, False, self.field, names=names)
        return f"{ring.linear_form(list(self.coefficients))} = 0"

    def is_proportional(self, other: "Dependency") -> bool:
        f = self.field
        u, v = self.coefficients, other.coefficients
        k = next((i for i, c in enumerate(u) if c != 0), None)
        if k is None or v[k] == 0:
            return False
        lam = f.div(v[k], u[k])
        return all(f.mul(lam, x) == y for x, y in zip(u, v))


def dependency_from_a(cfg: StarConfig, a: Sequence) -> Dependency:
    f = cfg.field
    a = tuple(f.convert(v) for v in a)
    if len(a) != cfg.r:
        raise ParameterError(f"a must have length r = {cfg.r}")
    if all(v == 0 for v in a):
        raise TrivialDependencyError("a = 0 gives the trivial dependency")
    b = []
    for j in range(1, cfg.n + 1):
        acc = f.zero
        for i in range(1, cfg.r + 1):
            acc = f.add(acc, f.mul(a[i - 1], f.convert(cfg.u(i, j))))
        b.append(f.neg(acc))
    return Dependency(cfg.n, cfg.r, a, tuple(b), f)


def delta(dep: Dependency, ring: PolyRing) -> Poly:
    """``∂D = sum_{j in supp} c_j prod_{k in supp, k != j} T_k``."""
    supp = dep.support
    coeffs = dep.coefficients
    acc = ring.zero
    for j in supp:
        acc = acc + ring.T_monomial([k for k in supp if k != j], ring.field.convert(coeffs[j - 1]))
    return acc


def dependency_relation(cfg: StarConfig, a: Sequence, ring: PolyRing | None = None):
    """The dependency induced by ``a`` on ``L_1..L_r`` and its T-polynomial."""
    ring = _ring_for(cfg, ring)
    dep = dependency_from_a(cfg, a)
    return dep, delta(dep, ring)


def h_theta_dependency(cfg: StarConfig, theta: Sequence[int]) -> Dependency:
    """The dependency vanishing on ``theta`` (unique up to scalar when ``h_theta != 0``)."""
    ti = ThetaIndex.of(cfg, theta)
    if not m_theta(cfg, ti.theta):
        raise NoDependencyError(f"h_theta vanishes for theta = {list(ti.theta)}")
    A = cfg.coefficient_matrix.select_columns([k - 1 for k in ti.complement])
    ker = kernel_basis(A)
    if len(ker) != 1:
        raise NoDependencyError(f"dependency space has dimension {len(ker)}")  # pragma: no cover
    f = cfg.field
    full = [f.zero] * cfg.t
    for k, v in zip(ti.complement, ker[0]):
        full[k - 1] = v
    return Dependency(cfg.n, cfg.r, tuple(full[cfg.n :]), tuple(full[: cfg.n]), f)


# --------------------------------------------------------------------------
# monomial component and decomposition
# --------------------------------------------------------------------------


def minimal_transversals(sets: Sequence[Sequence[int]]) -> list:
    """Inclusion-minimal sets meeting every member of ``sets`` (sorted)."""
    sets = [frozenset(s) for s in sets]
    if not sets:
        return [()]
    if any(not s for s in sets):
        return []
    universe = sorted(set().union(*sets))
    found: list = []
    for size in range(1, len(universe) + 1):
        for cand in itertools.combinations(universe, size):
            cs = set(cand)
            if any(set(f) <= cs for f in found):
                continue
            if all(cs & s for s in sets):
                found.append(cand)
    return found


@dataclass
class LambdaQ:
    members: list  # all chi in Lambda, sorted by (size, lex)
    minimal: list
    Q: list  # monomial generators; [1] for the unit ideal

    @property
    def is_unit(self) -> bool:
        return len(self.Q) == 1 and self.Q[0].total_degree() == 0


def lambda_Q(cfg: StarConfig, ring: PolyRing | None = None) -> LambdaQ:
    """Index sets all of whose r-completions have vanishing ``U``-minor, and the monomial ideal ``Q``."""
    if cfg.r < 1:
        raise ParameterError("needs r >= 1")
    ring = _ring_for(cfg, ring)
    t, r = cfg.t, cfg.r
    minors = {om: _minor_U_raw(cfg, om) == 0 for om in itertools.combinations(range(1, t + 1), r)}
    members = []
    for size in range(0, r + 1):
        for chi in itertools.combinations(range(1, t + 1), size):
            cs = set(chi)
            if all(z for om, z in minors.items() if cs <= set(om)):
                members.append(chi)
    minimal = [c for c in members if not any(set(d) < set(c) for d in members)]
    trans = minimal_transversals(minimal)
    Q = [ring.T_monomial(tr) for tr in trans] if minimal else [ring.one]
    return LambdaQ(members, minimal, Q)


def prime_of(chi: Sequence[int], ring: PolyRing) -> list:
    return [ring.T(k) for k in chi]


def in_monomial_prime(f: Poly, chi: Sequence[int]) -> bool:
    """Combinatorial membership in ``(T_k : k in chi)``."""
    ring = f.ring
    pos = [ring.nx + k - 1 for k in chi]
    return all(any(m[p] for p in pos) for m in f.terms)


def to_field(polys: Sequence[Poly], field: Field) -> list:
    if not polys:
        return []
    ring = polys[0].ring.with_field(field)
    return [ring.embed(f) for f in polys]


def oracle_field(field: Field | None) -> Field:
    return field if field is not None else GF(DEFAULT_PRIME)


def all_theta_nonzero(cfg: StarConfig, ring: PolyRing | None = None) -> bool:
    return all(m_theta(cfg, th, ring) for th in theta_sets(cfg, include_n=True))


@dataclass
class DecompositionReport:
    hypothesis_holds: bool
    Q: list
    P: list
    equal: bool | None
    note: str = ""

    @property
    def ok(self) -> bool:
        return bool(self.hypothesis_holds and self.equal)


def primary_decomposition_check(cfg: StarConfig, field: Field | None = None) -> DecompositionReport:
    """Verify ``I_n(B) = Q ∩ P`` with the Gröbner oracle (when every ``m_theta != 0``)."""
    _require_height_two(cfg)
    ring = rees_ring(cfg)
    lq = lambda_Q(cfg, ring)
    P = ideal_P(cfg, ring)
    if not all_theta_nonzero(cfg, ring):
        return DecompositionReport(False, lq.Q, P, None, "some m_theta vanishes; check skipped")
    fld = oracle_field(field)
    gens = [g.m for g in minors_ideal_generators(cfg, ring) if g.m]
    Pf = to_field(P, fld)
    if lq.is_unit:
        inter = Pf
    else:
        inter = ideal_intersect(to_field(lq.Q, fld), Pf)
    eq = ideal_equal(to_field(gens, fld), inter)
    return DecompositionReport(True, lq.Q, P, eq, "" if eq else "I_n(B) differs from Q ∩ P")


# --------------------------------------------------------------------------
# zero rows
# --------------------------------------------------------------------------


@dataclass
class ZeroRowReduction:
    cfg: StarConfig  # rows permuted so the zero row comes first
    reduced: StarConfig  # data on x_2..x_n, L_1..L_r (T_k of it is T_{k+1} here)
    permutation: tuple  # new row order (0-based original indices)
    minors_equal: bool | None = None
    P_equal: bool | None = None


def reduced_minors(red: ZeroRowReduction, ring: PolyRing) -> list:
    """Maximal minors of ``B*`` written in the original T-variables."""
    cols = _jacobian_dual_cols(red.reduced.n, red.reduced.U, ring, shift=1)
    # B* only involves x_2..x_n, so its rows are the reduced ones
    return all_max_minors(_from_cols(ring, cols, red.reduced.n))


def zero_row_reduce(cfg: StarConfig, verify: bool = True, field: Field | None = None) -> ZeroRowReduction:
    """Split off ``T_1`` when ``U`` has a zero row: ``I_n(B) = (T_1) I_{n-1}(B*)``."""
    _require_height_two(cfg, allow_degenerate=True)
    zero_rows = [j for j in range(cfg.n) if all(v == 0 for v in cfg.U.rows[j])]
    if not zero_rows or cfg.r == 0:
        raise NotApplicableError("U has no zero row")
    j0 = zero_rows[0]
    perm = (j0,) + tuple(j for j in range(cfg.n) if j != j0)
    U = Matrix(cfg.field, tuple(cfg.U.rows[j] for j in perm))
    moved = StarConfig(cfg.n, cfg.r, 2, U, tuple(cfg.x_weights[j] for j in perm))
    reduced = StarConfig(cfg.n - 1, cfg.r, 2, Matrix(cfg.field, U.rows[1:]), moved.x_weights[1:])
    red = ZeroRowReduction(moved, reduced, perm)
    if verify:
        fld = oracle_field(field)
        ring = rees_ring(moved)
        full = [m for m in all_max_minors(jacobian_dual(moved, ring)) if m]
        T1 = ring.T(1)
        part = [T1 * m for m in reduced_minors(red, ring) if m]
        red.minors_equal = ideal_equal(to_field(full, fld), to_field(part, fld)) if full or part else True
        P_full = ideal_P(moved, ring)
        P_red = _shifted_P(reduced, ring)
        if P_full or P_red:
            red.P_equal = bool(P_full and P_red) and ideal_equal(to_field(P_full, fld), to_field(P_red, fld))
        else:
            red.P_equal = True
    return red


def _shifted_P(reduced: StarConfig, ring: PolyRing) -> list:
    """Fiber generators of the reduced data, with ``T'_k`` read as ``T_{k+1}``."""
    small = PolyRing(reduced.n, reduced.t, False, ring.field)
    names = {f"T{k}": f"T{k + 1}" for k in range(1, reduced.t + 1)}
    names.update({f"x{k}": f"x{k + 1}" for k in range(1, reduced.n + 1)})
    return [ring.embed(h, names) for h in ideal_P(reduced, small)]


# --------------------------------------------------------------------------
# substitution T_j -> g_j s
# --------------------------------------------------------------------------


def rees_map_vanishes(polys: Sequence[Poly], gens: Sequence[Poly]) -> bool:
    """Every poly becomes 0 under ``T_j -> g_j * s`` (exact substitution)."""
    if not polys:
        return True
    ring = polys[0].ring
    big = PolyRing(ring.nx, ring.nt, True, ring.field, ring.x_weights)
    s = big.s()
    images = {ring.nx + j: s * big.embed(g) for j, g in enumerate(gens)}
    for f in polys:
        if f.substitute(images, big):
            return False
    return True


def rees_generators(cfg: StarConfig, ring: PolyRing | None = None) -> list:
    """The star generators ``g_1..g_t`` inside the Rees ring."""
    ring = _ring_for(cfg, ring)
    return star_generators(cfg, 2, ring)


def monomial_prime_containment(cfg: StarConfig, chi: Sequence[int], ring: PolyRing | None = None) -> bool:
    """All minors generators lie in the prime ``(T_k : k in chi)`` (Gröbner membership)."""
    ring = _ring_for(cfg, ring)
    gb = buchberger_reduced(prime_of(chi, ring))
    return all(ideal_member(g.m, gb) for g in minors_ideal_generators(cfg, ring))

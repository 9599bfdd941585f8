"""Linear star configurations and their local properties.

A configuration is the family ``F = (x_1, ..., x_n, L_1, ..., L_r)`` with
``L_i = sum_j U[j][i] x_j``.  Forms are addressed by 1-based indices
``1..t`` (``t = n + r``): index ``k <= n`` is ``x_k`` and ``n + i`` is ``L_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels
from .linalg import Matrix, rank, rref
from .polyring import Poly, PolyRing
from .scalars import QQ, Field


class ParameterError(ValueError):
    """A numeric parameter (height, s, ...) is out of range."""


class DegenerateInputError(ValueError):
    """The input forms cannot define a configuration (e.g. all zero)."""


class DegenerateConfigError(ValueError):
    """The configuration fails the star condition and was refused."""


def form_name(n: int, k: int) -> str:
    return f"x{k}" if k <= n else f"L{k - n}"


@dataclass(frozen=True)
class StarConfig:
    """``n`` variables, ``r`` extra forms given by the ``n x r`` matrix ``U``, height ``c``."""

    n: int
    r: int
    c: int
    U: Matrix
    x_weights: tuple = ()

    @classmethod
    def create(
        cls,
        U: Sequence[Sequence] | Matrix,
        c: int = 2,
        n: int | None = None,
        field: Field = QQ,
        x_weights: Sequence[int] | None = None,
    ) -> "StarConfig":
        if not isinstance(U, Matrix):
            rows = [list(row) for row in U]
            if not rows:
                if n is None:
                    raise ParameterError("n is required when U has no rows")
                rows = [[] for _ in range(n)]
            U = Matrix.from_rows(rows, field)
        if n is not None and n != U.nrows:
            raise ParameterError(f"U has {U.nrows} rows but n = {n}")
        n = U.nrows
        if n < 1:
            raise ParameterError("need at least one variable")
        r = U.ncols
        t = n + r
        if not 2 <= c <= min(n, t):
            raise ParameterError(f"height c = {c} must satisfy 2 <= c <= min(n, t) = {min(n, t)}")
        w = tuple(x_weights) if x_weights is not None else (1,) * n
        if len(w) != n or any(v <= 0 for v in w):
            raise ParameterError("x-weights must be positive, one per variable")
        return cls(n, r, c, U, w)

    @property
    def t(self) -> int:
        return self.n + self.r

    @property
    def field(self) -> Field:
        return self.U.field

    def u(self, i: int, j: int):
        """Coefficient of x_j in L_i (both 1-based)."""
        return self.U[j - 1, i - 1]

    @cached_property
    def coefficient_matrix(self) -> Matrix:
        """The ``n x t`` matrix ``[I | U]``; column ``k-1`` holds form ``k``."""
        f = self.field
        rows = []
        for j in range(self.n):
            unit = tuple(f.one if k == j else f.zero for k in range(self.n))
            rows.append(unit + tuple(self.U.rows[j]))
        return Matrix(f, tuple(rows))

    def form_vector(self, k: int) -> tuple:
        return self.coefficient_matrix.column(k - 1)

    def names(self) -> list:
        return [form_name(self.n, k) for k in range(1, self.t + 1)]

    def ring(self, nt: int = 0, aux: bool = False) -> PolyRing:
        return PolyRing(self.n, nt, aux, self.field, self.x_weights)

    def forms(self, ring: PolyRing | None = None) -> list:
        ring = ring or self.ring()
        return [ring.linear_form(list(self.form_vector(k))) for k in range(1, self.t + 1)]

    def subset_rank(self, subset: Sequence[int]) -> int:
        if not subset:
            return 0
        return rank(self.coefficient_matrix.select_columns([k - 1 for k in subset]))

    @cached_property
    def flagged(self) -> bool:
        """True when the configuration fails the star condition."""
        return not verify_star_condition(self)

    @cached_property
    def degenerate(self) -> bool:
        """True when some ``c`` of the forms are dependent (the height drops below ``c``)."""
        return not all(
            is_regular_sequence(self, S) for S in itertools.combinations(range(1, self.t + 1), self.c)
        )

    def with_c(self, c: int) -> "StarConfig":
        return StarConfig.create(self.U, c, x_weights=self.x_weights)


@dataclass(frozen=True)
class AbstractRegularSeq:
    """``t`` symbols realized as ``F_i = x_i^{e_i}``.

    ``degree`` sets every ``e_i`` unless ``exponents`` is given; ``weights``
    grade the variables.  The forms must all have the same weighted degree.
    """

    t: int
    degree: int = 1
    field: Field = QQ
    exponents: tuple | None = None
    weights: tuple | None = None

    def __post_init__(self):
        if self.t < 1:
            raise ParameterError("need at least one form")
        if self.degree < 1:
            raise ParameterError("form degree must be positive")
        ex = self.form_exponents
        w = self.variable_weights
        if len(ex) != self.t or len(w) != self.t:
            raise ParameterError("exponents and weights need one entry per form")
        if any(e < 1 for e in ex) or any(v < 1 for v in w):
            raise ParameterError("exponents and weights must be positive")
        if len({e * v for e, v in zip(ex, w)}) != 1:
            raise ParameterError("realization is not equigenerated: weighted degrees differ")

    @property
    def form_exponents(self) -> tuple:
        return tuple(self.exponents) if self.exponents is not None else (self.degree,) * self.t

    @property
    def variable_weights(self) -> tuple:
        return tuple(self.weights) if self.weights is not None else (1,) * self.t

    @property
    def n(self) -> int:
        return self.t

    def ring(self, nt: int = 0, aux: bool = False) -> PolyRing:
        return PolyRing(self.t, nt, aux, self.field, self.variable_weights)

    def forms(self, ring: PolyRing | None = None) -> list:
        ring = ring or self.ring()
        return [ring.x(i) ** e for i, e in zip(range(1, self.t + 1), self.form_exponents)]


@dataclass(frozen=True)
class NormalizedForms:
    config: StarConfig
    order: tuple  # original (0-based) indices in their new positions
    basis: Matrix  # n x d; row k is the raw form that became x_{k+1}


def _raw_vectors(raw, field: Field, nvars: int | None) -> list:
    vecs = []
    ring = None
    for f in raw:
        if isinstance(f, str):
            if ring is None:
                if nvars is None:
                    raise DegenerateInputError("string forms need the variable count")
                ring = PolyRing(nvars, 0, False, field)
            f = ring.parse(f)
        if isinstance(f, Poly):
            if f.total_degree() > 1 or any(sum(m) == 0 for m in f.terms):
                raise DegenerateInputError(f"{f} is not a linear form")
            v = [field.zero] * f.ring.nx
            for m, c in f.terms.items():
                i = m.index(1)
                if i >= f.ring.nx:
                    raise DegenerateInputError(f"{f} involves a non-x variable")
                v[i] = field.convert(c)
            vecs.append(v)
        else:
            vecs.append([field.convert(c) for c in f])
    if len({len(v) for v in vecs}) > 1:
        raise DegenerateInputError("forms live in different numbers of variables")
    return vecs


def normalize_forms(raw, c: int = 2, field: Field = QQ, nvars: int | None = None) -> NormalizedForms:
    """Greedy change of coordinates sending a maximal independent subfamily to ``x_1..x_n``.

    ``raw`` holds coefficient vectors, linear ``Poly`` objects or strings.
    The first forms (in input order) that raise the rank become the new
    variables; the rest become the columns of ``U``.
    """
    vecs = _raw_vectors(list(raw), field, nvars)
    if not vecs or all(all(c_ == 0 for c_ in v) for v in vecs):
        raise DegenerateInputError("all forms are zero")
    chosen = []
    cur = 0
    for k, v in enumerate(vecs):
        nr = rank(Matrix.from_rows([vecs[i] for i in chosen] + [v], field))
        if nr > cur:
            chosen.append(k)
            cur = nr
    rest = [k for k in range(len(vecs)) if k not in chosen]
    n = len(chosen)
    basis = Matrix.from_rows([vecs[k] for k in chosen], field)
    # coordinates of each remaining form in the chosen basis: solve basis^T u = v
    cols = []
    bt = basis.transpose()
    for k in rest:
        aug = Matrix(field, tuple(tuple(row) + (field.convert(vk),) for row, vk in zip(bt.rows, vecs[k])))
        R, piv = rref(aug)
        if n in piv:
            raise DegenerateInputError("form outside the span of the chosen basis")  # pragma: no cover
        sol = [field.zero] * n
        for i, pc in enumerate(piv):
            sol[pc] = field.convert(R[i][n])
        cols.append(sol)
    Urows = [[cols[i][j] for i in range(len(rest))] for j in range(n)]
    cfg = StarConfig.create(Matrix.from_rows(Urows, field) if rest else Matrix(field, tuple(() for _ in range(n))),
                            min(c, n), field=field)
    return NormalizedForms(cfg, tuple(chosen + rest), basis)


def _omitted_sets(t: int, c: int):
    return list(itertools.combinations(range(1, t + 1), c - 1))


def star_generators(cfg, c: int | None = None, ring: PolyRing | None = None) -> list:
    """All ``(t-c+1)``-fold products of distinct forms.

    Ordered lexicographically by the omitted index set; for ``c = 2`` the
    ``i``-th generator is the product of every form except ``F_i``.
    """
    c = cfg.c if c is None and isinstance(cfg, StarConfig) else c
    if c is None:
        raise ParameterError("height c is required")
    n_equiv = cfg.n
    if not 1 <= c <= min(n_equiv, cfg.t):
        raise ParameterError(f"height c = {c} out of range 1..{min(n_equiv, cfg.t)}")
    F = cfg.forms(ring)
    gens = []
    for omit in _omitted_sets(cfg.t, c):
        om = set(omit)
        g = None
        for k in range(1, cfg.t + 1):
            if k not in om:
                g = F[k - 1] if g is None else g * F[k - 1]
        gens.append(g)
    return gens


def omitted_index_sets(t: int, c: int) -> list:
    """Omitted sets matching :func:`star_generators` order."""
    return _omitted_sets(t, c)


def is_regular_sequence(cfg: StarConfig, subset: Sequence[int]) -> bool:
    subset = list(subset)
    if len(subset) > cfg.n:
        return False
    if len(set(subset)) != len(subset):
        return False
    if any(not 1 <= k <= cfg.t for k in subset):
        raise ParameterError("form index out of range")
    return cfg.subset_rank(subset) == len(subset)


def verify_star_condition(cfg: StarConfig, strict: bool = False) -> bool:
    """Every ``min(c+1, n)`` forms independent (``strict``: every ``c+1``)."""
    k = cfg.c + 1 if strict else min(cfg.c + 1, cfg.n)
    if k > cfg.t:
        return True
    if k > cfg.n:
        return False
    return all(is_regular_sequence(cfg, S) for S in itertools.combinations(range(1, cfg.t + 1), k))


# --------------------------------------------------------------------------
# rank condition on U and the brute-force equivalence sweep
# --------------------------------------------------------------------------


def _integral_array(U: Matrix):
    if U.field.characteristic == 0 and U.is_integral():
        return np.array([[int(v) for v in row] for row in U.rows], dtype=np.int64).reshape(U.nrows, U.ncols)
    return None


def subset_rank_condition(cfg: StarConfig, s: int) -> bool:
    """For ``1 <= h <= min(r, s)`` every ``(h+n-s) x h`` submatrix of ``U`` has rank ``h``."""
    n, r = cfg.n, cfg.r
    if not 2 <= s <= n:
        raise ParameterError(f"s = {s} must satisfy 2 <= s <= n = {n}")
    if r == 0:
        return True
    arr = _integral_array(cfg.U)
    if arr is not None:
        return bool(rank_condition_batch(arr[None], s)[0])
    for h in range(1, min(r, s) + 1):
        a = h + n - s
        for rows in itertools.combinations(range(n), a):
            for cols in itertools.combinations(range(r), h):
                if rank(cfg.U.submatrix(rows, cols)) < h:
                    return False
    return True


def rank_condition_batch(Us: np.ndarray, s: int) -> np.ndarray:
    """Vectorized :func:`subset_rank_condition` over a ``(B, n, r)`` integer stack."""
    B, n, r = Us.shape
    ok = np.ones(B, dtype=bool)
    for h in range(1, min(r, s) + 1):
        a = h + n - s
        for rows in itertools.combinations(range(n), a):
            sub_r = Us[:, list(rows), :]
            for cols in itertools.combinations(range(r), h):
                sub = np.ascontiguousarray(sub_r[:, :, list(cols)])
                ok &= _kernels.int_rank_batch(sub) == h
    return ok


def all_subsets_regular_batch(Us: np.ndarray, s: int) -> np.ndarray:
    """Vectorized check that every ``s``-subset of ``[I | U]`` columns is independent."""
    B, n, r = Us.shape
    t = n + r
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), (B, n, n))
    full = np.concatenate([eye, Us], axis=2)
    ok = np.ones(B, dtype=bool)
    for S in itertools.combinations(range(t), s):
        sub = np.ascontiguousarray(full[:, :, list(S)])
        ok &= _kernels.int_rank_batch(sub) == s
    return ok


def enumerate_matrices(n: int, r: int, entries: Sequence[int]) -> np.ndarray:
    vals = np.asarray(entries, dtype=np.int64)
    if n * r == 0:
        return np.zeros((1, n, r), dtype=np.int64)
    grid = np.array(np.meshgrid(*([vals] * (n * r)), indexing="ij")).reshape(n * r, -1).T
    return np.ascontiguousarray(grid.reshape(-1, n, r))


@dataclass
class SweepResult:
    n: int
    r: int
    s: int
    total: int
    agree: int
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total == self.agree


def rank_condition_sweep(n: int, r: int, s: int, entries: Sequence[int] = (-1, 0, 1, 2)) -> SweepResult:
    """Compare the rank condition with exhaustive s-subset independence for every ``U``."""
    Us = enumerate_matrices(n, r, entries)
    lhs = rank_condition_batch(Us, s)
    rhs = all_subsets_regular_batch(Us, s)
    bad = np.nonzero(lhs != rhs)[0]
    return SweepResult(n, r, s, len(Us), int(len(Us) - len(bad)), [Us[i].tolist() for i in bad[:10]])


# --------------------------------------------------------------------------
# local properties
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Flat:
    """Forms lying in the prime spanned by a subfamily, with its height."""

    forms: tuple
    height: int

    def describe(self, n: int) -> str:
        return "(" + ", ".join(form_name(n, k) for k in self.forms) + ")"


def flat_of(cfg: StarConfig, subset: Sequence[int]) -> Flat:
    subset = sorted(set(subset))
    h = cfg.subset_rank(subset)
    members = tuple(k for k in range(1, cfg.t + 1) if k in subset or cfg.subset_rank(subset + [k]) == h)
    return Flat(members, h)


@dataclass(frozen=True)
class GsResult:
    holds: bool
    witness: tuple | None = None
    height: int | None = None

    def __bool__(self):
        return self.holds


def check_Gs(cfg: StarConfig, s: int) -> GsResult:
    """Whether no prime of height ``<= s-1`` is in the non-linear-type locus.

    On failure ``witness`` lists the forms (1-based) of the offending
    subfamily: a dependent set for ``c = 2``, the forms of the flat for
    ``c >= 3``.
    """
    n, t, c = cfg.n, cfg.t, cfg.c
    if not 2 <= s <= n:
        raise ParameterError(f"s = {s} must satisfy 2 <= s <= n = {n}")
    idx = range(1, t + 1)
    if c == 2:
        for size in range(2, n + 1):
            for H in itertools.combinations(idx, size):
                rk = cfg.subset_rank(H)
                if rk < size and rk <= s - 1:
                    return GsResult(False, H, rk)
        return GsResult(True)
    for size in range(1, s):
        for H in itertools.combinations(idx, size):
            if cfg.subset_rank(H) < size:
                continue
            fl = flat_of(cfg, H)
            if len(fl.forms) > c:
                return GsResult(False, fl.forms, fl.height)
    return GsResult(True)


def linear_type_check(cfg: StarConfig) -> bool:
    return cfg.c == 2 and cfg.t == cfg.n


@dataclass(frozen=True)
class Localization:
    kind: str  # "unit" | "complete-intersection" | "star-config"
    forms: tuple
    height: int

    def describe(self, n: int) -> str:
        names = ", ".join(form_name(n, k) for k in self.forms)
        return f"{self.kind}({names})" if self.kind != "unit" else "unit"


def localize(cfg: StarConfig, subset: Sequence[int]) -> Localization:
    """Classify the configuration ideal at the prime spanned by ``subset``."""
    if not subset:
        raise ParameterError("the prime needs at least one form")
    if any(not 1 <= k <= cfg.t for k in subset):
        raise ParameterError("form index out of range")
    fl = flat_of(cfg, subset)
    if len(fl.forms) < cfg.c:
        return Localization("unit", (), fl.height)
    if len(fl.forms) == cfg.c:
        return Localization("complete-intersection", fl.forms, fl.height)
    return Localization("star-config", fl.forms, fl.height)


def nlt_minimal_primes(cfg: StarConfig) -> list:
    """Inclusion-minimal non-maximal primes where the ideal is not of linear type."""
    n, t, c = cfg.n, cfg.t, cfg.c
    flats = set()
    idx = range(1, t + 1)
    if c == 2:
        for size in range(2, n + 1):
            for H in itertools.combinations(idx, size):
                rk = cfg.subset_rank(H)
                if rk < size and rk < n:
                    flats.add(flat_of(cfg, H))
    else:
        for size in range(1, n):
            for H in itertools.combinations(idx, size):
                if cfg.subset_rank(H) < size:
                    continue
                fl = flat_of(cfg, H)
                if len(fl.forms) > c:
                    flats.add(fl)
    minimal = [f for f in flats if not any(g != f and set(g.forms) <= set(f.forms) for g in flats)]
    return sorted(minimal, key=lambda f: (f.height, f.forms))


def generator_count(t: int, c: int) -> int:
    return comb(t, t - c + 1)

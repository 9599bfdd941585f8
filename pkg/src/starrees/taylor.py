"""Powers of star configurations over a regular sequence.

Generators of ``I^m`` are monomials in ``F_1..F_t`` and are handled as
exponent vectors.  Rees relations come in two kinds: Taylor relations of
T-degree one and binomial quadrics among the fiber variables.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .polyring import Poly, PolyRing, sort_polys
from .star import AbstractRegularSeq, ParameterError


def _check(t: int, c: int, m: int):
    if t < 1:
        raise ParameterError("t must be positive")
    if not 1 <= c <= t:
        raise ParameterError(f"c = {c} must satisfy 1 <= c <= t = {t}")
    if m < 1:
        raise ParameterError("the power m must be positive")


def power_generators(t: int, c: int, m: int) -> list:
    """Exponent vectors of degree ``(t-c+1) m`` with entries ``<= m``, descending lex."""
    _check(t, c, m)
    total = (t - c + 1) * m
    out = []

    def rec(prefix: list, left: int, slots: int):
        if slots == 0:
            if left == 0:
                out.append(tuple(prefix))
            return
        for e in range(min(m, left), -1, -1):
            if left - e <= m * (slots - 1):
                rec(prefix + [e], left - e, slots - 1)

    rec([], total, t)
    return out


def power_generators_by_products(t: int, c: int, m: int) -> list:
    """Sums of ``m`` degree-one generators, deduplicated (descending lex)."""
    base = power_generators(t, c, 1)
    sums = {tuple(map(sum, zip(*combo))) for combo in itertools.combinations_with_replacement(base, m)}
    return sorted(sums, reverse=True)


@dataclass(frozen=True)
class TaylorRelation:
    alpha: tuple  # 1-based generator indices
    beta: tuple
    theta: tuple  # exponent vector multiplying T_alpha
    delta: tuple  # exponent vector multiplying T_beta


def _sum_exps(gens: Sequence[tuple], idx: Sequence[int]) -> tuple:
    t = len(gens[0])
    acc = [0] * t
    for i in idx:
        for k, e in enumerate(gens[i - 1]):
            acc[k] += e
    return tuple(acc)


def taylor_data(gens: Sequence[tuple], alpha: Sequence[int], beta: Sequence[int]) -> TaylorRelation:
    if len(alpha) != len(beta) or not alpha:
        raise ParameterError("alpha and beta must be non-empty and of equal length")
    if any(not 1 <= i <= len(gens) for i in list(alpha) + list(beta)):
        raise ParameterError("generator index out of range")
    ga = _sum_exps(gens, alpha)
    gb = _sum_exps(gens, beta)
    g = tuple(min(a, b) for a, b in zip(ga, gb))
    theta = tuple(b - x for b, x in zip(gb, g))
    delta = tuple(a - x for a, x in zip(ga, g))
    return TaylorRelation(tuple(alpha), tuple(beta), theta, delta)


class Realization:
    """Concrete forms ``F_i = x_i^{e_i}`` in a ring with weights, plus the T-block."""

    def __init__(self, seq: AbstractRegularSeq, mu: int, aux: bool = False):
        self.seq = seq
        self.ring = PolyRing(seq.t, mu, aux, seq.field, seq.variable_weights)
        self.F = seq.forms(self.ring)

    def f_monomial(self, exps: Sequence[int]) -> Poly:
        p = self.ring.one
        for F, e in zip(self.F, exps):
            if e:
                p = p * F**e
        return p


def taylor_polynomial(rel: TaylorRelation, real: Realization) -> Poly:
    ring = real.ring
    if sorted(rel.alpha) == sorted(rel.beta):
        return ring.zero
    Ta = ring.T_monomial(rel.alpha)
    Tb = ring.T_monomial(rel.beta)
    return real.f_monomial(rel.theta) * Ta - real.f_monomial(rel.delta) * Tb


def taylor_relation(
    t: int, c: int, m: int, alpha: Sequence[int], beta: Sequence[int], seq: AbstractRegularSeq | None = None
):
    """``T_{alpha,beta}`` as data and as a polynomial in ``K[x, T]``."""
    gens = power_generators(t, c, m)
    seq = seq or AbstractRegularSeq(t)
    rel = taylor_data(gens, alpha, beta)
    return rel, taylor_polynomial(rel, Realization(seq, len(gens)))


def _monic_binomial(ring: PolyRing, a: tuple, b: tuple) -> Poly:
    return (ring.T_monomial(a) - ring.T_monomial(b)).monic()


def fiber_quadrics(t: int, c: int, m: int, ring: PolyRing | None = None) -> list:
    """All ``T_iT_j - T_kT_l`` with ``g_i + g_j = g_k + g_l`` (monic, deduplicated)."""
    gens = power_generators(t, c, m)
    mu = len(gens)
    ring = ring or PolyRing(t, mu)
    groups = defaultdict(list)
    for i, j in itertools.combinations_with_replacement(range(1, mu + 1), 2):
        groups[_sum_exps(gens, (i, j))].append((i, j))
    seen = set()
    out = []
    for key in sorted(groups):
        pairs = groups[key]
        for p, q in itertools.combinations(pairs, 2):
            hi, lo = (p, q) if p > q else (q, p)
            f = _monic_binomial(ring, hi, lo)
            fk = frozenset(f.terms.items())
            if fk not in seen:
                seen.add(fk)
                out.append(f)
    return sort_polys(out)


def linear_taylor_relations(t: int, c: int, m: int, seq: AbstractRegularSeq | None = None, ring=None) -> list:
    gens = power_generators(t, c, m)
    seq = seq or AbstractRegularSeq(t)
    real = Realization(seq, len(gens))
    if ring is not None:
        real.ring = ring
        real.F = seq.forms(ring)
    out = []
    seen = set()
    for i, j in itertools.combinations(range(1, len(gens) + 1), 2):
        f = taylor_polynomial(taylor_data(gens, (i,), (j,)), real)
        if not f:
            continue
        f = f.monic()
        key = frozenset(f.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(f)
    return sort_polys(out)


def power_generator_polys(t: int, c: int, m: int, seq: AbstractRegularSeq | None = None, ring=None) -> list:
    """``g_gamma`` realized in the x-block."""
    seq = seq or AbstractRegularSeq(t)
    ring = ring or seq.ring()
    real_F = seq.forms(ring)
    out = []
    for exps in power_generators(t, c, m):
        p = ring.one
        for F, e in zip(real_F, exps):
            if e:
                p = p * F**e
        out.append(p)
    return out


def regular_case_equations(t: int, c: int, m: int, seq: AbstractRegularSeq | None = None):
    """Degree-one Taylor relations and fiber quadrics for ``I^m``."""
    _check(t, c, m)
    seq = seq or AbstractRegularSeq(t)
    if seq.t != t:
        raise ParameterError("realization has the wrong number of forms")
    mu = len(power_generators(t, c, m))
    ring = PolyRing(t, mu, False, seq.field, seq.variable_weights)
    return linear_taylor_relations(t, c, m, seq, ring), fiber_quadrics(t, c, m, ring)

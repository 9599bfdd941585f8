"""Buchberger engine: reduced bases, membership, elimination, intersection.

Internally a monomial is packed into a single Python int.  Each field is
16 bits wide (15 value bits plus a guard bit); the fields hold, from the most
significant down, the weighted degree of an order block followed by the
exponents of that block's variables in reverse order, block after block.
With that layout

* multiplying monomials is integer addition,
* divisibility is one subtraction with guard bits, and
* the order key is ``(M & DEG) - (M & EXP)``: a signed-digit number whose
  numeric order is the monomial order.
"""

from __future__ import annotations

import heapq
import os
from operator import lshift
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import _binomial
from .polyring import MonomialOrder, Poly, PolyRing

_BITS = 16
_VALMAX = (1 << (_BITS - 1)) - 1


class ResourceError(RuntimeError):
    """A Gröbner computation exceeded the configured basis size or degree cap."""


def _cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)


def max_basis_size() -> int:
    return _cap("STARREES_GB_MAX_BASIS", 20000)


def max_degree() -> int:
    return _cap("STARREES_GB_MAX_DEGREE", 200)


# --------------------------------------------------------------------------
# packed monomials
# --------------------------------------------------------------------------


class _Layout:
    """Packing of exponent vectors for one (ring, order) pair."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.nvars = nvars
        w = order.weights or (1,) * nvars
        if len(w) != nvars:
            raise ValueError("order weights do not match the number of variables")
        self.weights = tuple(w)
        if order.kind == "lex":
            segments = [(None, list(range(nvars)))]
        elif order.kind == "degrevlex":
            segments = [(tuple(range(nvars)), list(range(nvars - 1, -1, -1)))]
        else:
            first = sorted(order.block)
            rest = [i for i in range(nvars) if i not in set(first)]
            segments = [(tuple(first), first[::-1]), (tuple(rest), rest[::-1])]
        fields = []  # (kind, payload, sign) from most significant
        for degvars, exp_order in segments:
            if degvars is not None:
                fields.append(("deg", degvars, 1))
            sign = 1 if degvars is None else -1
            for i in exp_order:
                fields.append(("var", i, sign))
        nf = len(fields)
        self.fields = fields
        self.nfields = nf
        self.var_shift = [0] * nvars
        self.deg_fields = []
        pos_mask = 0
        neg_mask = 0
        guard = 0
        for k, (kind, payload, sign) in enumerate(fields):
            shift = (nf - 1 - k) * _BITS
            fmask = _VALMAX << shift
            guard |= 1 << (shift + _BITS - 1)
            if kind == "var":
                self.var_shift[payload] = shift
            else:
                self.deg_fields.append((shift, payload))
            if sign > 0:
                pos_mask |= fmask
            else:
                neg_mask |= fmask
        self.pos_mask = pos_mask
        self.neg_mask = neg_mask
        self.guard = guard
        self.weighted = any(v != 1 for v in self.weights)
        self.var_mask = sum(_VALMAX << sh for sh in self.var_shift)
        self.var_guard = sum(1 << (sh + _BITS - 1) for sh in self.var_shift)

    def pack(self, exps: Sequence[int]) -> int:
        if max(exps, default=0) > _VALMAX:
            raise ResourceError("exponent too large for packed monomials")
        m = sum(map(lshift, exps, self.var_shift))
        w = self.weights
        for shift, vs in self.deg_fields:
            d = sum([w[i] * exps[i] for i in vs]) if self.weighted else sum([exps[i] for i in vs])
            if d > _VALMAX:
                raise ResourceError("degree too large for packed monomials")
            m |= d << shift
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> s) & _VALMAX for s in self.var_shift)

    def key(self, m: int) -> int:
        return (m & self.pos_mask) - (m & self.neg_mask)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm_exps(self, ea: tuple, eb: tuple):
        e = tuple(map(max, ea, eb))
        return e, self.pack(e)

    def lcm(self, a: int, b: int) -> int:
        return self.lcm_exps(self.unpack(a), self.unpack(b))[1]

    def support_bits(self, m: int) -> int:
        """Guard bit set exactly in the fields of variables occurring in ``m``."""
        return ((m & self.var_mask) + self.var_mask) & self.var_guard

    def coprime(self, a: int, b: int) -> bool:
        return not (self.support_bits(a) & self.support_bits(b))

    def total_degree(self, m: int) -> int:
        return sum(self.unpack(m))


# --------------------------------------------------------------------------
# core algorithm on packed polynomials
#   a packed polynomial is a list [(M, c), ...] sorted by decreasing key
# --------------------------------------------------------------------------


class _Engine:
    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.layout = _Layout(ring.nvars, order)
        self.field = ring.field
        self.p = ring.field.characteristic

    # conversions
    def to_packed(self, f: Poly) -> list:
        lay = self.layout
        terms = [(lay.pack(m), c) for m, c in f.terms.items()]
        terms.sort(key=lambda mc: lay.key(mc[0]), reverse=True)
        return terms

    def to_poly(self, g: list) -> Poly:
        unpack = self.layout.unpack
        return Poly(self.ring, {unpack(m): c for m, c in g})

    def monic(self, g: list) -> list:
        c0 = g[0][1]
        if c0 == 1:
            return g
        inv = self.field.inv(c0)
        if self.p:
            p = self.p
            return [(m, c * inv % p) for m, c in g]
        return [(m, c * inv) for m, c in g]

    def reduce(self, rem: dict, reducers: list, full: bool = True) -> list:
        """Normal form of the polynomial ``rem`` (dict M -> c, consumed).

        ``reducers`` is a list of monic packed polynomials.  Returns a packed
        polynomial (possibly empty).
        """
        lay = self.layout
        posm, negm, guard = lay.pos_mask, lay.neg_mask, lay.guard
        p = self.p
        heap = [((m & negm) - (m & posm), m) for m in rem]
        heapq.heapify(heap)
        push, pop = heapq.heappush, heapq.heappop
        out = []
        leads = [(g[0][0], g) for g in reducers]
        while heap:
            _, m = pop(heap)
            c = rem.pop(m, None)
            if c is None:
                continue
            mg = m | guard
            for lm, g in leads:
                if (mg - lm) & guard == guard:
                    break
            else:
                out.append((m, c))
                if not full:
                    out.extend(sorted(rem.items(), key=lambda mc: lay.key(mc[0]), reverse=True))
                    return out
                continue
            q = m - lm
            if p:
                for mt, ct in g[1:]:
                    mn = mt + q
                    v = rem.get(mn)
                    if v is None:
                        rem[mn] = -c * ct % p
                        push(heap, ((mn & negm) - (mn & posm), mn))
                    else:
                        v = (v - c * ct) % p
                        if v:
                            rem[mn] = v
                        else:
                            del rem[mn]
            else:
                for mt, ct in g[1:]:
                    mn = mt + q
                    v = rem.get(mn)
                    if v is None:
                        rem[mn] = -c * ct
                        push(heap, ((mn & negm) - (mn & posm), mn))
                    else:
                        v = v - c * ct
                        if v:
                            rem[mn] = v
                        else:
                            del rem[mn]
        return out

    def spoly_dict(self, f: list, g: list, lcm: int) -> dict:
        p = self.p
        qf = lcm - f[0][0]
        qg = lcm - g[0][0]
        rem = {m + qf: c for m, c in f[1:]}
        for m, c in g[1:]:
            mn = m + qg
            v = rem.get(mn)
            if v is None:
                rem[mn] = -c % p if p else -c
            else:
                v = (v - c) % p if p else v - c
                if v:
                    rem[mn] = v
                else:
                    del rem[mn]
        return rem

    def binomial_pairs(self, gens: list):
        """Exponent pairs ``(a, b)`` when every input is ``c (x^a - x^b)``; else None."""
        # pairs are selected by weighted degree, which suits graded and block orders only
        if self.order.kind == "lex" or not _binomial.available() or self.ring.nvars > _binomial.MAX_VARS:
            return None
        f = self.field
        unpack = self.layout.unpack
        out = []
        for g in gens:
            if not g:
                continue
            if len(g) != 2 or f.add(g[0][1], g[1][1]) != 0:
                return None
            out.append((unpack(g[0][0]), unpack(g[1][0])))
        return out

    def buchberger_binomial(self, pairs: list) -> list:
        lay = self.layout
        rows = _binomial.order_rows(lay.nvars, lay.fields, lay.weights)
        status, rules = _binomial.buchberger_binomial(pairs, rows, lay.weights, max_basis_size(), max_degree())
        if status == _binomial.STATUS_BASIS_CAP:
            raise ResourceError(f"Gröbner basis exceeded {max_basis_size()} elements")
        if status == _binomial.STATUS_DEGREE_CAP:
            raise ResourceError(f"Gröbner basis degree exceeded {max_degree()}")
        one = self.field.one
        minus = self.field.neg(one)
        basis = [[(lay.pack(a), one), (lay.pack(b), minus)] for a, b in rules]
        basis.sort(key=lambda g: lay.key(g[0][0]))
        return basis

    def buchberger(self, gens: list, fast: bool = True) -> list:
        lay = self.layout
        pairs = self.binomial_pairs(gens) if fast else None
        if pairs:
            return self.buchberger_binomial(pairs)
        cap_n = max_basis_size()
        cap_d = max_degree()
        polys: list = []  # every basis element ever added
        active: list = []  # indices into polys
        pairs: list = []  # heap of (key(lcm), i, j, lcm)
        live_pairs: set = set()

        lead_exps: list = []
        lead_supp: list = []

        def add(h: list):
            if len(polys) >= cap_n:
                raise ResourceError(f"Gröbner basis exceeded {cap_n} elements")
            hl = h[0][0]
            he = lay.unpack(hl)
            if sum(he) > cap_d:
                raise ResourceError(f"Gröbner basis degree exceeded {cap_d}")
            hs = lay.support_bits(hl)
            k = len(polys)
            polys.append(h)
            lead_exps.append(he)
            lead_supp.append(hs)
            # Gebauer-Moeller update
            lcm_h = {}
            cand = []
            for i in active:
                l1 = lay.lcm_exps(lead_exps[i], he)[1]
                lcm_h[i] = l1
                cand.append((i, l1))

            def lcm_with_h(i):
                if i not in lcm_h:
                    lcm_h[i] = lay.lcm_exps(lead_exps[i], he)[1]
                return lcm_h[i]

            g = lay.guard
            kept = []
            for idx, (i, l1) in enumerate(cand):
                if not (lead_supp[i] & hs):
                    kept.append((i, l1, True))
                    continue
                l1g = l1 | g
                dominated = False
                for j, l2 in cand[idx + 1 :]:
                    if (l1g - l2) & g == g:
                        dominated = True
                        break
                if not dominated:
                    for j, l2, _ in kept:
                        if (l1g - l2) & g == g:
                            dominated = True
                            break
                if not dominated:
                    kept.append((i, l1, False))
            # drop old pairs killed by the chain criterion
            for entry in list(live_pairs):
                i, j, lij = entry
                if ((lij | g) - hl) & g == g and lij != lcm_with_h(i) and lij != lcm_with_h(j):
                    live_pairs.discard(entry)
            for i, l1, copr in kept:
                if copr:
                    continue
                entry = (i, k, l1)
                live_pairs.add(entry)
                heapq.heappush(pairs, (lay.key(l1), i, k, l1))
            active[:] = [i for i in active if ((polys[i][0][0] | g) - hl) & g != g]
            active.append(k)

        # seed with reduced, monic inputs (smallest first)
        seeds = [g for g in gens if g]
        seeds.sort(key=lambda g: lay.key(g[0][0]))
        for g in seeds:
            h = self.reduce(dict(g), [polys[i] for i in active])
            if h:
                h.sort(key=lambda mc: lay.key(mc[0]), reverse=True)
                add(self.monic(h))

        while pairs:
            _, i, j, l = heapq.heappop(pairs)
            if (i, j, l) not in live_pairs:
                continue
            live_pairs.discard((i, j, l))
            rem = self.spoly_dict(polys[i], polys[j], l)
            if not rem:
                continue
            h = self.reduce(rem, [polys[a] for a in active])
            if h:
                add(self.monic(h))

        basis = [polys[i] for i in active]
        basis.sort(key=lambda g: lay.key(g[0][0]))
        reduced = []
        for idx, g in enumerate(basis):
            others = basis[:idx] + basis[idx + 1 :]
            tail = self.reduce(dict(g[1:]), others)
            reduced.append([g[0]] + tail)
        basis = reduced
        return basis


# --------------------------------------------------------------------------
# public API
# --------------------------------------------------------------------------


@dataclass
class GroebnerBasis:
    order: MonomialOrder
    basis: list
    source: list = field(default_factory=list)

    @property
    def ring(self) -> PolyRing | None:
        if self.basis:
            return self.basis[0].ring
        if self.source:
            return self.source[0].ring
        return None

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].total_degree() == 0

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def _common_ring(polys: Sequence[Poly]) -> PolyRing | None:
    ring = None
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            from .polyring import IncompatibleOperandsError

            raise IncompatibleOperandsError(f"{ring!r} vs {f.ring!r}")
    return ring


def buchberger_reduced(
    gens: Sequence[Poly], order: MonomialOrder | None = None, binomial_fast_path: bool = True
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    ``order`` defaults to the order of the generators' ring.  The basis is
    listed by increasing leading monomial.  Ideals generated by binomials
    ``x^a - x^b`` go through a compiled rewriting kernel when numba is
    available, unless ``binomial_fast_path`` is off.
    """
    gens = list(gens)
    ring = _common_ring(gens)
    if ring is None:
        return GroebnerBasis(order or MonomialOrder(), [], [])
    order = order or ring.order
    eng = _Engine(ring, order)
    basis = eng.buchberger([eng.to_packed(g) for g in gens], binomial_fast_path)
    return GroebnerBasis(order, [eng.to_poly(g) for g in basis], gens)


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    if not gb.basis:
        return f
    ring = gb.basis[0].ring
    if f.ring != ring:
        from .polyring import IncompatibleOperandsError

        raise IncompatibleOperandsError(f"{f.ring!r} vs {ring!r}")
    eng = _Engine(ring, gb.order)
    reducers = [eng.to_packed(g) for g in gb.basis]
    rem = {eng.layout.pack(m): c for m, c in f.terms.items()}
    return eng.to_poly(eng.reduce(rem, reducers))


def ideal_member(f: Poly, gb: GroebnerBasis) -> bool:
    if not f:
        return True
    return not normal_form(f, gb)


def _same_basis(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    return sorted(map(_frozen, a.basis)) == sorted(map(_frozen, b.basis))


def _frozen(f: Poly):
    return tuple(sorted(f.terms.items()))


def ideal_equal(gens_a: Sequence[Poly], gens_b: Sequence[Poly], order: MonomialOrder | None = None) -> bool:
    """Equality of generated ideals, via reduced bases under one order."""
    gens_a = [g for g in gens_a if g]
    gens_b = [g for g in gens_b if g]
    if not gens_a or not gens_b:
        return not gens_a and not gens_b
    ring = _common_ring(list(gens_a) + list(gens_b))
    order = order or ring.order
    return _same_basis(buchberger_reduced(gens_a, order), buchberger_reduced(gens_b, order))


def contains_all(gb: GroebnerBasis, polys: Iterable[Poly]) -> bool:
    return all(ideal_member(f, gb) for f in polys)


def _block_indices(ring: PolyRing, block) -> tuple:
    out = []
    for v in block:
        if isinstance(v, str):
            if v not in ring.index:
                raise KeyError(f"unknown variable {v!r}")
            out.append(ring.index[v])
        else:
            if not 0 <= v < ring.nvars:
                raise KeyError(f"variable index {v} out of range")
            out.append(v)
    return tuple(sorted(set(out)))


def eliminate(
    gens: Sequence[Poly], block: Iterable, weights: Sequence[int] | None = None
) -> list:
    """Generators of ``(gens) ∩ K[variables outside block]``.

    ``block`` lists variable names or indices.  Optional ``weights`` (one per
    variable) make the block order weighted, which helps when they render the
    generators homogeneous.
    """
    gens = [g for g in gens if g]
    ring = _common_ring(gens)
    if ring is None:
        return []
    idx = _block_indices(ring, block)
    order = MonomialOrder("block", idx, tuple(weights) if weights else None)
    gb = buchberger_reduced(gens, order)
    bset = set(idx)
    return [g for g in gb.basis if not (g.variables() & bset)]


def _with_extra_variable(ring: PolyRing) -> PolyRing:
    if ring.aux:
        raise ValueError("ring already carries an auxiliary variable")
    name = "s"
    while name in ring.index:
        name = "_" + name
    return PolyRing(ring.nx, ring.nt, True, ring.field, ring.x_weights, ring.order, ring.names + (name,))


def ideal_intersect(gens_a: Sequence[Poly], gens_b: Sequence[Poly]) -> list:
    """Generators of (A) ∩ (B) via elimination of s from s·A + (1−s)·B."""
    gens_a = [g for g in gens_a if g]
    gens_b = [g for g in gens_b if g]
    if not gens_a or not gens_b:
        return []
    ring = _common_ring(gens_a + gens_b)
    big = _with_extra_variable(ring)
    s = big.var(big.nvars - 1)
    lifted = [s * big.embed(a) for a in gens_a] + [(1 - s) * big.embed(b) for b in gens_b]
    elim = eliminate(lifted, [big.nvars - 1])
    return [ring.embed(g) for g in elim]


def rees_ideal_oracle(gens: Sequence[Poly], field=None) -> list:
    """Kernel of ``T_i -> g_i s`` by eliminating ``s`` from ``{T_i - s g_i}``.

    ``gens`` live in a ring whose x-block carries the variables; the result
    lives in ``K[x, T1..Tmu]`` over ``field`` (default: the generators' field).
    Weights x_j -> ring weight, s -> 1, T_i -> deg(g_i) + 1 keep the input
    homogeneous whenever each g_i is.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("rees_ideal_oracle needs at least one generator")
    if any(not g for g in gens):
        raise ValueError("Rees generators must be nonzero")
    src = _common_ring(gens)
    fld = field or src.field
    nx = src.nx
    mu = len(gens)
    big = PolyRing(nx, mu, True, fld, src.x_weights)
    out_ring = PolyRing(nx, mu, False, fld, src.x_weights)
    s = big.s()
    pad = (0,) * (mu + 1)
    lifted = []
    tw = []
    for i, g in enumerate(gens):
        if g.variables() - set(range(nx)):
            raise ValueError("Rees generators must involve only x-variables")
        terms = {m[:nx] + pad: fld.convert(c) for m, c in g.terms.items()}
        gb = Poly(big, {m: c for m, c in terms.items() if c != 0})
        if not gb:
            raise ValueError("Rees generator vanishes over the target field")
        lifted.append(big.T(i + 1) - s * gb)
        d = max(sum(src.x_weights[j] * m[j] for j in range(nx)) for m in g.terms)
        tw.append(d + 1)
    weights = tuple(src.x_weights) + tuple(tw) + (1,)
    elim = eliminate(lifted, [big.nvars - 1], weights=weights)
    return [out_ring.embed(g) for g in elim]

"""Sparse multivariate polynomials over an exact field.

Variables live in a bigraded space: an x-block ``x1..xn`` (ring variables,
optionally weighted), a T-block ``T1..Tt`` (Rees variables) and an optional
auxiliary variable ``s`` used by the elimination oracle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import QQ, Field, Scalar

Monomial = tuple  # tuple[int, ...] of exponents, one per ring variable


class IncompatibleOperandsError(TypeError):
    """Polynomials from different rings (or fields) were combined."""


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"block"``.  A block order
    compares the variables listed in ``block`` first (weighted degrevlex on
    them), then the remaining variables (weighted degrevlex); it is an
    elimination order for ``block``.  ``weights`` gives one positive weight
    per variable for the degree parts; ``None`` means all ones.
    """

    kind: str = "degrevlex"
    block: tuple = ()
    weights: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.weights is not None and any(w <= 0 for w in self.weights):
            raise ValueError("order weights must be positive")

    def key_function(self, nvars: int):
        """Return ``key(exps)`` with ``key(a) < key(b)`` iff ``a < b``."""
        w = self.weights or (1,) * nvars
        if len(w) != nvars:
            raise ValueError("order weights do not match the number of variables")
        if self.kind == "lex":
            return tuple
        rev = tuple(range(nvars - 1, -1, -1))
        if self.kind == "degrevlex":
            if all(x == 1 for x in w):
                def key(e):
                    return (sum(e),) + tuple([-e[i] for i in rev])
            else:
                def key(e):
                    return (sum([w[i] * e[i] for i in range(nvars)]),) + tuple([-e[i] for i in rev])
            return key
        first = tuple(sorted(self.block))
        rest = tuple(i for i in range(nvars) if i not in set(first))
        first_rev = first[::-1]
        rest_rev = rest[::-1]

        def key(e):
            return (
                (sum([w[i] * e[i] for i in first]),)
                + tuple([-e[i] for i in first_rev])
                + (sum([w[i] * e[i] for i in rest]),)
                + tuple([-e[i] for i in rest_rev])
            )

        return key


DEGREVLEX = MonomialOrder()
LEX = MonomialOrder("lex")


class PolyRing:
    """Polynomial ring ``K[x1..xn, T1..Tt(, s)]``."""

    def __init__(
        self,
        nx: int,
        nt: int = 0,
        aux: bool = False,
        field: Field = QQ,
        x_weights: Sequence[int] | None = None,
        order: MonomialOrder = DEGREVLEX,
        names: Sequence[str] | None = None,
    ):
        if nx < 0 or nt < 0:
            raise ValueError("variable counts must be non-negative")
        self.nx = nx
        self.nt = nt
        self.aux = aux
        self.field = field
        self.x_weights = tuple(x_weights) if x_weights is not None else (1,) * nx
        if len(self.x_weights) != nx or any(w <= 0 for w in self.x_weights):
            raise ValueError("x-weights must be positive, one per x-variable")
        if names is None:
            names = [f"x{i}" for i in range(1, nx + 1)] + [f"T{i}" for i in range(1, nt + 1)]
            if aux:
                names.append("s")
        self.names = tuple(names)
        if len(self.names) != nx + nt + int(aux):
            raise ValueError("wrong number of variable names")
        self.nvars = len(self.names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.order = order
        self._key = order.key_function(self.nvars)

    # -- identity -----------------------------------------------------------
    def _sig(self):
        return (self.names, self.field, self.x_weights)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r})"

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.nx, self.nt, self.aux, self.field, self.x_weights, order, self.names)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.nx, self.nt, self.aux, field, self.x_weights, self.order, self.names)

    def with_aux(self) -> "PolyRing":
        if self.aux:
            return self
        return PolyRing(self.nx, self.nt, True, self.field, self.x_weights, self.order)

    def key(self, exps: Monomial):
        return self._key(exps)

    # -- constructors -------------------------------------------------------
    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field.convert(c)
        return Poly(self, {(0,) * self.nvars: c} if c != 0 else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector")
        c = self.field.convert(coeff)
        return Poly(self, {exps: c} if c != 0 else {})

    def var(self, name_or_index) -> "Poly":
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def x(self, i: int) -> "Poly":
        """The ring variable x_i (1-based)."""
        if not 1 <= i <= self.nx:
            raise IndexError(f"x{i} out of range")
        return self.var(i - 1)

    def T(self, i: int) -> "Poly":
        """The Rees variable T_i (1-based)."""
        if not 1 <= i <= self.nt:
            raise IndexError(f"T{i} out of range")
        return self.var(self.nx + i - 1)

    def s(self) -> "Poly":
        if not self.aux:
            raise IndexError("ring has no auxiliary variable")
        return self.var(self.nvars - 1)

    def T_monomial(self, indices: Iterable[int], coeff=1) -> "Poly":
        """Product of T_i over ``indices`` (1-based, repetition allowed)."""
        e = [0] * self.nvars
        for i in indices:
            e[self.nx + i - 1] += 1
        return self.monomial(e, coeff)

    def from_dict(self, terms: Mapping[Monomial, Scalar]) -> "Poly":
        f = self.field
        return Poly(self, {tuple(m): f.convert(c) for m, c in terms.items() if f.convert(c) != 0})

    def linear_form(self, coeffs: Sequence) -> "Poly":
        """sum_j coeffs[j] * x_{j+1}."""
        if len(coeffs) != self.nx:
            raise ValueError("linear form needs one coefficient per x-variable")
        out = {}
        for j, c in enumerate(coeffs):
            c = self.field.convert(c)
            if c != 0:
                e = [0] * self.nvars
                e[j] = 1
                out[tuple(e)] = c
        return Poly(self, out)

    def parse(self, text: str) -> "Poly":
        return _Parser(self, text).parse()

    # -- variable classes ---------------------------------------------------
    def x_indices(self) -> range:
        return range(0, self.nx)

    def t_indices(self) -> range:
        return range(self.nx, self.nx + self.nt)

    def embed(self, f: "Poly", mapping: Mapping[str, str] | None = None) -> "Poly":
        """Map ``f`` (from another ring) into this ring by variable names.

        ``mapping`` renames source variables first; names not present in
        this ring raise ``IncompatibleOperandsError``.
        """
        mapping = mapping or {}
        pos = []
        for name in f.ring.names:
            target = mapping.get(name, name)
            if target not in self.index:
                pos.append(None)
            else:
                pos.append(self.index[target])
        out: dict = {}
        conv = self.field.convert
        for m, c in f.terms.items():
            e = [0] * self.nvars
            for i, a in enumerate(m):
                if a:
                    if pos[i] is None:
                        raise IncompatibleOperandsError(
                            f"variable {f.ring.names[i]} does not exist in {self!r}"
                        )
                    e[pos[i]] += a
            key = tuple(e)
            v = conv(c) if self.field != f.ring.field else c
            if key in out:
                v = self.field.add(out[key], v)
            out[key] = v
        return Poly(self, {m: c for m, c in out.items() if c != 0})


class Poly:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic protocol -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise IncompatibleOperandsError(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise IncompatibleOperandsError(f"cannot combine Poly with {type(other).__name__}")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        add = self.ring.field.add
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                v = add(out[m], c)
                if v == 0:
                    del out[m]
                else:
                    out[m] = v
            else:
                out[m] = c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Poly(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        field = self.ring.field
        add, mul = field.add, field.mul
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                c = mul(c1, c2)
                if m in out:
                    v = add(out[m], c)
                    if v == 0:
                        del out[m]
                    else:
                        out[m] = v
                elif c != 0:
                    out[m] = c
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        field = self.ring.field
        c = field.convert(c)
        if c == 0:
            return self.ring.zero
        return Poly(self.ring, {m: field.mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, exps: Monomial, c=1) -> "Poly":
        field = self.ring.field
        c = field.convert(c)
        if c == 0:
            return self.ring.zero
        return Poly(
            self.ring,
            {tuple([a + b for a, b in zip(m, exps)]): field.mul(v, c) for m, v in self.terms.items()},
        )

    # -- order-dependent views ---------------------------------------------
    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        """Terms ``(exps, coeff)`` in strictly decreasing order."""
        key = self.ring.key if order is None else order.key_function(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        key = self.ring.key if order is None else order.key_function(self.ring.nvars)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder | None = None) -> Scalar:
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder | None = None) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    # -- structure ----------------------------------------------------------
    def content_monomial(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self.terms:
            raise ValueError("content of the zero polynomial is undefined")
        it = iter(self.terms)
        g = list(next(it))
        for m in it:
            for i, a in enumerate(m):
                if a < g[i]:
                    g[i] = a
        return tuple(g)

    def div_monomial(self, exps: Monomial) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            q = tuple([a - b for a, b in zip(m, exps)])
            if min(q, default=0) < 0:
                raise ValueError("monomial does not divide the polynomial")
            out[q] = c
        return Poly(self.ring, out)

    def bidegree(self):
        """``(weighted x-degree, T-degree)`` if bihomogeneous, else ``None``."""
        ring = self.ring
        if not self.terms:
            return None
        seen = None
        w = ring.x_weights
        for m in self.terms:
            d = (
                sum(w[i] * m[i] for i in range(ring.nx)),
                sum(m[ring.nx : ring.nx + ring.nt]),
            )
            if seen is None:
                seen = d
            elif d != seen:
                return None
        return seen

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        """Indices of variables occurring in the polynomial."""
        used = set()
        for m in self.terms:
            used.update(i for i, a in enumerate(m) if a)
        return used

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_proportional(self, other: "Poly"):
        """Return ``c`` with ``self == c * other`` or ``None``."""
        self._check(other)
        if set(self.terms) != set(other.terms) or not self.terms:
            return None
        field = self.ring.field
        it = iter(self.terms)
        m0 = next(it)
        c = field.div(self.terms[m0], other.terms[m0])
        for m in it:
            if self.terms[m] != field.mul(c, other.terms[m]):
                return None
        return c

    # -- evaluation ---------------------------------------------------------
    def substitute(self, images: Mapping[int, "Poly"], target: PolyRing | None = None) -> "Poly":
        """Replace variable ``i`` by ``images[i]`` (a Poly of ``target``).

        Variables without an image are carried over by name into ``target``.
        """
        target = target or self.ring
        field = target.field
        powers: dict = {}
        ident = {}
        for i, name in enumerate(self.ring.names):
            if i not in images:
                ident[i] = target.var(name) if name in target.index else None

        def power(i, a):
            k = (i, a)
            if k not in powers:
                base = images[i] if i in images else ident[i]
                if base is None:
                    raise IncompatibleOperandsError(f"no image for {self.ring.names[i]}")
                powers[k] = base ** a
            return powers[k]

        acc = target.zero
        for m, c in self.terms.items():
            term = target.const(field.convert(c) if field != self.ring.field else c)
            for i, a in enumerate(m):
                if a:
                    term = term * power(i, a)
            acc = acc + term
        return acc

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if ``other`` does not divide."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        field = self.ring.field
        key = self.ring.key
        lm_d, lc_d = other.leading_term()
        inv = field.inv(lc_d)
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            m = max(rem, key=key)
            q = tuple([a - b for a, b in zip(m, lm_d)])
            if min(q, default=0) < 0:
                raise ValueError("polynomial division is not exact")
            c = field.mul(rem[m], inv)
            quot[q] = c
            for md, cd in other.terms.items():
                mm = tuple([a + b for a, b in zip(md, q)])
                v = field.sub(rem.get(mm, field.zero), field.mul(c, cd))
                if v == 0:
                    rem.pop(mm, None)
                else:
                    rem[mm] = v
        return Poly(self.ring, quot)

    # -- text ---------------------------------------------------------------
    def to_str(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.names
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms(order)):
            neg = field.is_negative(c)
            mag = field.neg(c) if neg else c
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(m) if a
            )
            cs = field.coeff_str(mag)
            if mono:
                body = mono if mag == field.one else f"{cs}*{mono}"
            else:
                body = cs
            if k == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens: list = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise PolyParseError("unexpected character", text, pos)
            start = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("num", int(m.group(1)), start))
            elif m.group(2):
                self.tokens.append(("var", m.group(2), start))
            else:
                op = "^" if m.group(3) == "**" else m.group(3)
                self.tokens.append(("op", op, start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolyParseError("empty polynomial", self.text, 0)
        p = self._expr()
        kind, val, pos = self._peek()
        if kind is not None:
            raise PolyParseError(f"unexpected {val!r}", self.text, pos)
        return p

    def _expr(self) -> Poly:
        sign = 1
        kind, val, _ = self._peek()
        if kind == "op" and val in "+-":
            self._next()
            sign = -1 if val == "-" else 1
        acc = self._term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self._peek()
            if kind == "op" and val in "+-":
                self._next()
                t = self._term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def _term(self) -> Poly:
        acc = self._factor()
        while True:
            kind, val, pos = self._peek()
            if kind == "op" and val == "*":
                self._next()
                acc = acc * self._factor()
            elif kind == "op" and val == "/":
                self._next()
                k2, v2, p2 = self._next()
                if k2 != "num":
                    raise PolyParseError("only division by integer literals is allowed", self.text, p2)
                if v2 == 0:
                    raise PolyParseError("division by zero", self.text, p2)
                acc = acc.scale(self.ring.field.inv(self.ring.field.convert(v2)))
            else:
                return acc

    def _factor(self) -> Poly:
        base = self._atom()
        kind, val, _ = self._peek()
        if kind == "op" and val == "^":
            self._next()
            k2, v2, p2 = self._next()
            if k2 != "num":
                raise PolyParseError("exponent must be a non-negative integer", self.text, p2)
            base = base ** v2
        return base

    def _atom(self) -> Poly:
        kind, val, pos = self._next()
        if kind == "num":
            return self.ring.const(val)
        if kind == "var":
            if val not in self.ring.index:
                raise PolyParseError(f"unknown variable {val!r}", self.text, pos)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self._expr()
            k2, v2, p2 = self._next()
            if (k2, v2) != ("op", ")"):
                raise PolyParseError("missing ')'", self.text, p2)
            return inner
        if kind == "op" and val == "-":
            return -self._factor()
        raise PolyParseError("expected a number, variable or '('", self.text, pos)


def sort_polys(polys: Iterable[Poly]) -> list:
    """Sort by (bidegree, leading monomial) with degrevlex leading monomials descending."""
    def k(f: Poly):
        bd = f.bidegree() or (f.total_degree(), 0)
        lm = f.leading_monomial() if f else ()
        return (bd, tuple(-x for x in f.ring.key(lm)) if f else ())
    return sorted(polys, key=k)


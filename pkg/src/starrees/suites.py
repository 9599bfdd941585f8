"""Named verification suites over fixed pseudo-random corpora.

Each suite compares a closed form against an independent computation and
returns a :class:`SuiteReport`.  Corpora are generated from fixed seeds so
that reports are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .groebner import buchberger_reduced, eliminate, ideal_equal, ideal_member, normal_form, rees_ideal_oracle
from .polyring import PolyRing
from .rees import (
    all_max_minors,
    all_theta_nonzero,
    delta,
    h_theta,
    h_theta_dependency,
    ideal_P,
    jacobian_dual,
    lambda_Q,
    linear_relations,
    minor_U,
    minors_ideal_generators,
    p_theta_recursion_check,
    primary_decomposition_check,
    prime_of,
    rees_map_vanishes,
    rees_ring,
    theta_sets,
)
from .scalars import GF, QQ, Field, field_descriptor
from .star import AbstractRegularSeq, StarConfig, rank_condition_sweep, star_generators
from .taylor import (
    linear_taylor_relations,
    power_generator_polys,
    regular_case_equations,
)

CORPUS_SEED = 20240601
ENTRY_POOL = (-1, 0, 0, 1, 1, 2, 3)
WORKED_U = ((1, 0), (1, 1), (1, 2), (1, 3))
SINGLE_FORM_U = ((0,), (1,), (1,))


@dataclass
class SuiteReport:
    name: str
    version: int
    field: str
    instances: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    lines: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, label: str, why: str):
        self.failures.append(f"{label}: {why}")

    def render(self) -> str:
        head = f"suite {self.name} v{self.version} field {self.field}"
        out = [head] + [f"  {ln}" for ln in self.lines]
        out += [f"  FAIL {f}" for f in self.failures]
        status = "pass" if self.passed else "fail"
        out.append(f"{status}: {self.instances} instances, {self.checks} checks, {len(self.failures)} failures")
        return "\n".join(out)

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "version": self.version,
            "field": self.field,
            "instances": self.instances,
            "checks": self.checks,
            "passed": self.passed,
            "failures": list(self.failures),
            "lines": list(self.lines),
        }


# --------------------------------------------------------------------------
# corpora
# --------------------------------------------------------------------------


def worked_example(field: Field = QQ) -> StarConfig:
    return StarConfig.create(WORKED_U, 2, field=field)


def single_form_example(field: Field = QQ) -> StarConfig:
    return StarConfig.create(SINGLE_FORM_U, 2, field=field)


def _random_config(rng: random.Random, n: int, r: int, field: Field) -> StarConfig:
    while True:
        U = [[rng.choice(ENTRY_POOL) for _ in range(r)] for _ in range(n)]
        cfg = StarConfig.create(U, 2, field=field)
        if not cfg.flagged:
            return cfg


def minors_corpus(field: Field = GF(101), size: int = 20, seed: int = CORPUS_SEED) -> list:
    """Instances with ``n`` in 2..5 and ``r`` in 1..3, cycling through the shapes."""
    rng = random.Random(seed)
    shapes = [(n, r) for n in range(2, 6) for r in range(1, 4)]
    return [_random_config(rng, *shapes[k % len(shapes)], field) for k in range(size)]


def rees_corpus(field: Field = GF(101), size: int = 10, seed: int = CORPUS_SEED + 1) -> list:
    """The worked example, the single-extra-form example, then random shapes with n <= 4, r <= 2."""
    rng = random.Random(seed)
    out = [worked_example(field), single_form_example(field)]
    shapes = [(n, r) for n in range(2, 5) for r in (1, 2)]
    k = 0
    while len(out) < size:
        out.append(_random_config(rng, *shapes[k % len(shapes)], field))
        k += 1
    return out


def full_corpus(field: Field = GF(101)) -> list:
    return minors_corpus(field) + rees_corpus(field)


def describe(cfg: StarConfig) -> str:
    rows = ";".join(",".join(cfg.field.coeff_str(v) for v in row) for row in cfg.U.rows)
    return f"n={cfg.n} r={cfg.r} U=[{rows}]"


# --------------------------------------------------------------------------
# suites
# --------------------------------------------------------------------------


def suite_minors(field: Field) -> SuiteReport:
    rep = SuiteReport("minors", 1, field_descriptor(field))
    for cfg in minors_corpus(field):
        rep.instances += 1
        ring = rees_ring(cfg)
        full = [m for m in all_max_minors(jacobian_dual(cfg, ring)) if m]
        closed = [g.m for g in minors_ideal_generators(cfg, ring) if g.m]
        ok = ideal_equal(full, closed)
        rep.checks += 1
        rep.lines.append(f"{describe(cfg)}: {len(full)} minors vs {len(closed)} closed forms: {'equal' if ok else 'DIFFER'}")
        if not ok:
            rep.fail(describe(cfg), "minor ideal differs from the closed-form ideal")
    return rep


def suite_rees(field: Field) -> SuiteReport:
    rep = SuiteReport("rees", 1, field_descriptor(field))
    for cfg in rees_corpus(field):
        rep.instances += 1
        ring = rees_ring(cfg)
        claimed = linear_relations(cfg, ring) + ideal_P(cfg, ring)
        oracle = rees_ideal_oracle(star_generators(cfg, 2, cfg.ring()))
        ok = ideal_equal(claimed, oracle)
        rep.checks += 1
        rep.lines.append(f"{describe(cfg)}: {len(claimed)} claimed vs {len(oracle)} oracle: {'equal' if ok else 'DIFFER'}")
        if not ok:
            rep.fail(describe(cfg), "linear relations plus fiber generators differ from the elimination ideal")
    return rep


def suite_decomposition(field: Field) -> SuiteReport:
    rep = SuiteReport("decomposition", 1, field_descriptor(field))
    for cfg in full_corpus(field):
        ring = rees_ring(cfg)
        if not all_theta_nonzero(cfg, ring):
            continue
        rep.instances += 1
        res = primary_decomposition_check(cfg, field)
        rep.checks += 1
        q = ", ".join(str(g) for g in res.Q)
        rep.lines.append(f"{describe(cfg)}: Q = ({q}): {'equal' if res.equal else 'DIFFER'}")
        if not res.ok:
            rep.fail(describe(cfg), res.note or "decomposition check failed")
    cfg = worked_example(field)
    ring = rees_ring(cfg)
    Q = lambda_Q(cfg, ring).Q
    rep.checks += 1
    if sorted(map(str, Q)) != ["T1", "T5"]:
        rep.fail("worked example", f"Q = {[str(g) for g in Q]}")
    return rep


def suite_containment(field: Field) -> SuiteReport:
    rep = SuiteReport("containment", 1, field_descriptor(field))
    for cfg in full_corpus(field):
        rep.instances += 1
        ring = rees_ring(cfg)
        minors = [m for m in all_max_minors(jacobian_dual(cfg, ring)) if m]
        hits = 0
        for chi in itertools.combinations(range(1, cfg.t + 1), cfg.r):
            gb = buchberger_reduced(prime_of(chi, ring))
            inside = all(ideal_member(m, gb) for m in minors)
            vanishes = minor_U(cfg, chi) == 0
            rep.checks += 1
            hits += inside
            if inside != vanishes:
                rep.fail(describe(cfg), f"chi = {list(chi)}: contained {inside}, minor zero {vanishes}")
        rep.lines.append(f"{describe(cfg)}: {hits} primes contain the minors")
    return rep


def suite_rank_sweep(field: Field) -> SuiteReport:
    rep = SuiteReport("rank-sweep", 1, "Z")
    for n in range(2, 5):
        for r in (1, 2):
            for s in range(2, n + 1):
                res = rank_condition_sweep(n, r, s)
                rep.instances += res.total
                rep.checks += 1
                rep.lines.append(f"n={n} r={r} s={s}: {res.total} matrices, {res.total - res.agree} mismatches")
                if not res.ok:
                    rep.fail(f"n={n} r={r} s={s}", f"{res.total - res.agree} mismatches, e.g. {res.mismatches[0]}")
    return rep


def regular_cases(tmax: int = 5):
    for t in range(3, tmax + 1):
        for c in range(2, t):
            for m in (1, 2):
                for d in (1, 2):
                    yield t, c, m, d


def suite_regular(field: Field, tmax: int = 5) -> SuiteReport:
    rep = SuiteReport("regular", 1, field_descriptor(field))
    for t, c, m, d in regular_cases(tmax):
        rep.instances += 1
        seq = AbstractRegularSeq(t, d, field)
        lin, quad = regular_case_equations(t, c, m, seq)
        oracle = rees_ideal_oracle(power_generator_polys(t, c, m, seq))
        ok = ideal_equal(lin + quad, oracle)
        rep.checks += 1
        rep.lines.append(f"t={t} c={c} m={m} deg={d}: {len(lin)} linear, {len(quad)} quadrics: {'equal' if ok else 'DIFFER'}")
        if not ok:
            rep.fail(f"t={t} c={c} m={m} deg={d}", "closed form differs from the elimination ideal")
    # height two, no extra forms: linear relations alone
    for n in range(2, tmax + 1):
        for d in (1, 2):
            rep.instances += 1
            seq = AbstractRegularSeq(n, d, field)
            oracle = rees_ideal_oracle(power_generator_polys(n, 2, 1, seq))
            lin = linear_taylor_relations(n, 2, 1, seq, PolyRing(n, n, False, field, seq.variable_weights))
            ok = ideal_equal(lin, oracle) and all(g.bidegree()[1] == 1 for g in oracle)
            rep.checks += 1
            rep.lines.append(f"t=n={n} c=2 m=1 deg={d}: linear type {'confirmed' if ok else 'REFUTED'}")
            if not ok:
                rep.fail(f"n={n} deg={d}", "oracle is not generated by linear relations")
    return rep


def suite_recursion(field: Field) -> SuiteReport:
    rep = SuiteReport("recursion", 1, field_descriptor(field))
    for cfg in full_corpus(field):
        if cfg.r - 1 > cfg.n - 1:
            continue
        rep.instances += 1
        ring = rees_ring(cfg)
        count = 0
        for theta in itertools.combinations(range(1, cfg.n), cfg.r - 1):
            res = p_theta_recursion_check(cfg, theta, ring)
            count += res.identities_checked + 1
            rep.checks += res.identities_checked + 1
            if not res.ok:
                rep.fail(describe(cfg), f"theta = {list(theta)}: {res.failures or 'last minor is not ±m_theta'}")
        rep.lines.append(f"{describe(cfg)}: {count} identities")
    return rep


def suite_substitution(field: Field) -> SuiteReport:
    rep = SuiteReport("substitution", 1, field_descriptor(field))
    for cfg in rees_corpus(field):
        rep.instances += 1
        ring = rees_ring(cfg)
        gens = star_generators(cfg, 2, cfg.ring())
        polys = list(linear_relations(cfg, ring))
        for th in theta_sets(cfg, include_n=True):
            g = [x.m for x in minors_ideal_generators(cfg, ring, include_n=True) if x.theta == th][0]
            if g:
                polys += [g, h_theta(cfg, th, ring), delta(h_theta_dependency(cfg, th), ring)]
        rep.checks += len(polys)
        ok = rees_map_vanishes(polys, gens)
        rep.lines.append(f"{describe(cfg)}: {len(polys)} equations: {'vanish' if ok else 'DO NOT VANISH'}")
        if not ok:
            rep.fail(describe(cfg), "an emitted equation survives the substitution")
    for t, c, m in [(3, 2, 2), (4, 2, 2), (4, 3, 2), (5, 3, 1)]:
        rep.instances += 1
        seq = AbstractRegularSeq(t, 1, field)
        lin, quad = regular_case_equations(t, c, m, seq)
        ring = lin[0].ring if lin else PolyRing(t, 1, False, field)
        gens = power_generator_polys(t, c, m, seq, PolyRing(t, 0, False, field, seq.variable_weights))
        rep.checks += len(lin) + len(quad)
        ok = rees_map_vanishes(lin + quad, gens)
        rep.lines.append(f"t={t} c={c} m={m}: {len(lin) + len(quad)} equations: {'vanish' if ok else 'DO NOT VANISH'}")
        if not ok:
            rep.fail(f"t={t} c={c} m={m}", "an emitted equation survives the substitution")
    return rep


def suite_degrees(field: Field) -> SuiteReport:
    """Literal degree window: ``3 <= deg h <= n`` and dependency support in ``[4, n+1]``."""
    rep = SuiteReport("degrees", 1, field_descriptor(field))
    for cfg in full_corpus(field):
        rep.instances += 1
        ring = rees_ring(cfg)
        bad = 0
        for th in theta_sets(cfg, include_n=True):
            h = h_theta(cfg, th, ring)
            if h is None:
                continue
            rep.checks += 1
            bideg = h.bidegree()
            supp = len(h_theta_dependency(cfg, th).support)
            if bideg is None or bideg[0] != 0 or not 3 <= bideg[1] <= cfg.n or not 4 <= supp <= cfg.n + 1:
                bad += 1
                rep.fail(describe(cfg), f"theta = {list(th)}: bidegree {bideg}, support size {supp}")
        rep.lines.append(f"{describe(cfg)}: {bad} out-of-window factors")
    return rep


def _random_polys(rng: random.Random, ring: PolyRing, count: int) -> list:
    out = []
    for _ in range(count):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = tuple(rng.randint(0, 2) for _ in range(ring.nvars))
            terms[exps] = ring.field.convert(rng.randint(-3, 3))
        f = ring.from_dict(terms)
        if f:
            out.append(f)
    return out


def suite_groebner(field: Field, samples: int = 40) -> SuiteReport:
    rep = SuiteReport("groebner", 1, field_descriptor(field))
    rng = random.Random(CORPUS_SEED + 2)
    for k in range(samples):
        ring = PolyRing(3, 0, False, field)
        gens = _random_polys(rng, ring, rng.randint(1, 3))
        if not gens:
            continue
        rep.instances += 1
        gb = buchberger_reduced(gens)
        shuffled = list(gens)
        rng.shuffle(shuffled)
        same = sorted(map(str, buchberger_reduced(shuffled).basis)) == sorted(map(str, gb.basis))
        member = all(not normal_form(g, gb) for g in gens)
        elim = eliminate(gens, [0])
        clean = all(0 not in g.variables() for g in elim)
        rep.checks += 3
        for label, ok in (("permutation", same), ("membership", member), ("elimination", clean)):
            if not ok:
                rep.fail(f"sample {k}", f"{label} check failed")
    rep.lines.append(f"{rep.instances} random ideals in 3 variables")
    return rep


SUITES: dict = {
    "minors": suite_minors,
    "rees": suite_rees,
    "decomposition": suite_decomposition,
    "containment": suite_containment,
    "rank-sweep": suite_rank_sweep,
    "regular": suite_regular,
    "recursion": suite_recursion,
    "substitution": suite_substitution,
    "degrees": suite_degrees,
    "groebner": suite_groebner,
}


def run_suite(name: str, field: Field = GF(101)) -> SuiteReport:
    fn: Callable = SUITES.get(name)
    if fn is None:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    return fn(field)

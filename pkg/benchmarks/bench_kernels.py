"""Compare the numba kernels with their fallbacks.

Run with ``python benchmarks/bench_kernels.py``.  Three workloads:

* batched integer rank on the 4x2 rank-condition sweep (numba vs numpy),
* RREF over GF(101) of a random 120x160 matrix (numba vs numpy),
* a Rees elimination for a power of a star configuration over a regular
  sequence (binomial kernel vs the generic Buchberger engine).

Setting STARREES_NO_NUMBA=1 makes the library itself use the fallbacks; this
script always times both sides directly.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from starrees import _kernels
from starrees.groebner import buchberger_reduced
from starrees.polyring import MonomialOrder
from starrees.scalars import GF
from starrees.star import AbstractRegularSeq, enumerate_matrices
from starrees.taylor import power_generator_polys


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rank(repeat: int):
    Us = enumerate_matrices(4, 2, (-1, 0, 1, 2))
    eye = np.broadcast_to(np.eye(4, dtype=np.int64), (len(Us), 4, 4))
    stack = np.ascontiguousarray(np.concatenate([eye, Us], axis=2))
    ref = _kernels.int_rank_batch_numpy(stack)
    out = {"numpy": _best(lambda: _kernels.int_rank_batch_numpy(stack), repeat)}
    if _kernels.use_numba():
        _kernels.int_rank_batch(stack)  # compile
        assert np.array_equal(_kernels.int_rank_batch(stack), ref)
        out["numba"] = _best(lambda: _kernels.int_rank_batch(stack), repeat)
    return f"batched rank, {len(Us)} matrices 4x6", out


def bench_rref(repeat: int):
    rng = np.random.default_rng(7)
    A = rng.integers(0, 101, size=(120, 160))
    R0, p0 = _kernels.rref_mod_p_numpy(A, 101)
    out = {"numpy": _best(lambda: _kernels.rref_mod_p_numpy(A, 101), repeat)}
    if _kernels.use_numba():
        R1, p1 = _kernels.rref_mod_p(A, 101)
        assert np.array_equal(R0, R1) and np.array_equal(p0, p1)
        out["numba"] = _best(lambda: _kernels.rref_mod_p(A, 101), repeat)
    return "rref mod 101, 120x160", out


def bench_binomial(repeat: int):
    from starrees.polyring import PolyRing

    F = GF(101)
    seq = AbstractRegularSeq(4, 1, F)
    gens = power_generator_polys(4, 3, 2, seq)
    mu = len(gens)
    big = PolyRing(4, mu, True, F)
    s = big.s()
    lifted = [big.T(i + 1) - s * big.embed(g) for i, g in enumerate(gens)]
    weights = (1,) * 4 + (7,) * mu + (1,)
    order = MonomialOrder("block", (big.nvars - 1,), weights)
    out = {"generic": _best(lambda: buchberger_reduced(lifted, order, binomial_fast_path=False), 1)}
    if _kernels.use_numba():
        buchberger_reduced(lifted, order)  # compile
        out["numba"] = _best(lambda: buchberger_reduced(lifted, order), repeat)
    return f"Rees elimination t=4 c=3 m=2 ({mu} generators)", out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"library backend: {_kernels.BACKEND}")
    for bench in (bench_rank, bench_rref, bench_binomial):
        label, times = bench(args.repeat)
        parts = ", ".join(f"{k} {v * 1000:.1f} ms" for k, v in times.items())
        ratio = ""
        slow = times.get("numpy", times.get("generic"))
        if "numba" in times and times["numba"] > 0:
            ratio = f"  (speedup x{slow / times['numba']:.1f})"
        print(f"{label}: {parts}{ratio}")


if __name__ == "__main__":
    main()

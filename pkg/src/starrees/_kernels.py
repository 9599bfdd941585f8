"""Hot integer linear-algebra kernels.

Two implementations of each kernel live here: a numba ``@njit`` version and
a pure-numpy version.  The numba path is used when numba imports and the
environment variable ``STARREES_NO_NUMBA`` is unset (or ``0``); otherwise the
numpy path is used.  Both are exact on int64 data; callers are responsible
for keeping intermediate values in range (see :func:`hadamard_bits`).

Kernels:

* ``int_rank_batch(A)``  -- rank of each integer matrix in a (B, m, n) stack,
  fraction-free (Bareiss) elimination.
* ``rref_mod_p(A, p)``   -- reduced row echelon form over GF(p) and pivots.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "BACKEND",
    "hadamard_bits",
    "int_rank_batch",
    "int_rank_batch_numpy",
    "rref_mod_p",
    "rref_mod_p_numpy",
    "use_numba",
]


def _numba_requested() -> bool:
    flag = os.environ.get("STARREES_NO_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by STARREES_NO_NUMBA")
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:
    _HAVE_NUMBA = False

BACKEND = "numba" if _HAVE_NUMBA else "numpy"


def use_numba() -> bool:
    return _HAVE_NUMBA


def hadamard_bits(rows) -> float:
    """log2 of the Hadamard bound of an integer matrix (bounds every minor)."""
    bits = 0.0
    for row in rows:
        norm2 = sum(int(v) * int(v) for v in row)
        if norm2 == 0:
            return 0.0
        bits += 0.5 * math.log2(norm2)
    return bits


# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------


def int_rank_batch_numpy(A: np.ndarray) -> np.ndarray:
    A = np.array(A, dtype=np.int64, copy=True)
    if A.ndim != 3:
        raise ValueError("expected a (batch, rows, cols) array")
    nb, m, n = A.shape
    rk = np.zeros(nb, dtype=np.int64)
    if nb == 0 or m == 0 or n == 0:
        return rk
    prev = np.ones(nb, dtype=np.int64)
    rows = np.arange(m)
    for j in range(n):
        cand = (rows[None, :] >= rk[:, None]) & (A[:, :, j] != 0)
        has = cand.any(axis=1)
        if not has.any():
            continue
        hb = np.nonzero(has)[0]
        piv = np.argmax(cand[hb], axis=1)
        r0 = rk[hb]
        tmp = A[hb, r0].copy()
        A[hb, r0] = A[hb, piv]
        A[hb, piv] = tmp
        sub = A[hb]
        pivrow = sub[np.arange(len(hb)), r0]
        pv = pivrow[:, j]
        below = rows[None, :] > r0[:, None]
        new = (pv[:, None, None] * sub - sub[:, :, j][:, :, None] * pivrow[:, None, :]) // prev[hb][
            :, None, None
        ]
        A[hb] = np.where(below[:, :, None], new, sub)
        prev[hb] = pv
        rk[hb] += 1
    return rk


def rref_mod_p_numpy(A: np.ndarray, p: int):
    R = np.array(A, dtype=np.int64, copy=True) % p
    m, n = R.shape
    pivots = []
    r = 0
    for j in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, j])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, j]), -1, p)
        R[r] = R[r] * inv % p
        f = R[:, j].copy()
        f[r] = 0
        R = (R - f[:, None] * R[r][None, :]) % p
        pivots.append(j)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _int_rank_one(M):
        m, n = M.shape
        rk = 0
        prev = 1
        for j in range(n):
            if rk == m:
                break
            piv = -1
            for i in range(rk, m):
                if M[i, j] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rk:
                for k in range(n):
                    t = M[rk, k]
                    M[rk, k] = M[piv, k]
                    M[piv, k] = t
            pv = M[rk, j]
            for i in range(rk + 1, m):
                a = M[i, j]
                for k in range(j + 1, n):
                    M[i, k] = (pv * M[i, k] - a * M[rk, k]) // prev
                M[i, j] = 0
            prev = pv
            rk += 1
        return rk

    @njit(cache=True)
    def _int_rank_batch_nb(A):
        nb = A.shape[0]
        out = np.zeros(nb, dtype=np.int64)
        for b in range(nb):
            out[b] = _int_rank_one(A[b].copy())
        return out

    @njit(cache=True)
    def _rref_mod_p_nb(R, p):
        m, n = R.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for j in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if R[i, j] % p != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for k in range(n):
                    t = R[r, k]
                    R[r, k] = R[piv, k]
                    R[piv, k] = t
            # modular inverse by extended Euclid
            a = R[r, j] % p
            t0, t1, r0, r1 = 0, 1, p, a
            while r1 != 0:
                q = r0 // r1
                t0, t1 = t1, t0 - q * t1
                r0, r1 = r1, r0 - q * r1
            inv = t0 % p
            for k in range(n):
                R[r, k] = R[r, k] * inv % p
            for i in range(m):
                if i != r:
                    f = R[i, j] % p
                    if f != 0:
                        for k in range(n):
                            R[i, k] = (R[i, k] - f * R[r, k]) % p
            pivots[r] = j
            r += 1
        return pivots[:r]


def int_rank_batch(A) -> np.ndarray:
    """Exact rank of every integer matrix in a (B, m, n) stack."""
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.ndim != 3:
        raise ValueError("expected a (batch, rows, cols) array")
    if not _HAVE_NUMBA:
        return int_rank_batch_numpy(A)
    if A.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return _int_rank_batch_nb(A)


def rref_mod_p(A, p: int):
    """Reduced row echelon form of ``A`` over GF(p); returns ``(R, pivots)``."""
    if p >= 2**31:
        raise ValueError("rref_mod_p needs p < 2^31 to stay inside int64")
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    if not _HAVE_NUMBA or A.size == 0:
        return rref_mod_p_numpy(A, p)
    R = A % p
    pivots = _rref_mod_p_nb(R, p)
    return R, pivots

"""Buchberger for pure-difference binomial ideals as a compiled kernel.

When every generator has the shape ``x^a - x^b`` the whole computation is
monomial rewriting: S-polynomials and reductions of such binomials are again
such binomials, independent of the coefficient field.  A basis element is the
rule ``lead -> trail`` stored as two exponent rows.

The monomial order arrives as a list of key rows: a row is either a weighted
degree (weights over all variables) or a single signed exponent.  Comparing
two monomials means comparing their key vectors lexicographically.

Only the numba build is provided; without numba callers use the generic
engine.
"""

from __future__ import annotations

import heapq

import numpy as np

from ._kernels import use_numba

MAX_VARS = 64

STATUS_OK = 0
STATUS_BASIS_CAP = 1
STATUS_DEGREE_CAP = 2


def _cmp(a, b, kind, rw, rv, rs):
    for r in range(kind.shape[0]):
        if kind[r] == 0:
            d = 0
            for v in range(a.shape[0]):
                d += rw[r, v] * (a[v] - b[v])
        else:
            d = rs[r] * (a[rv[r]] - b[rv[r]])
        if d > 0:
            return 1
        if d < 0:
            return -1
    return 0


def _mask(e):
    m = np.uint64(0)
    for v in range(e.shape[0]):
        if e[v] != 0:
            m |= np.uint64(1) << np.uint64(v)
    return m


def _divides(a, b):
    for v in range(a.shape[0]):
        if a[v] > b[v]:
            return False
    return True


def _same(a, b):
    for v in range(a.shape[0]):
        if a[v] != b[v]:
            return False
    return True


def _normal_form(m, LE, TE, LM, act, nact):
    """Rewrite ``m`` in place until no active lead divides it."""
    while True:
        mm = _mask(m)
        hit = -1
        for q in range(nact):
            k = act[q]
            if LM[k] & ~mm:
                continue
            if _divides(LE[k], m):
                hit = k
                break
        if hit < 0:
            return
        for v in range(m.shape[0]):
            m[v] += TE[hit, v] - LE[hit, v]


def _grow2(a, n):
    out = np.zeros((n, a.shape[1]), a.dtype)
    out[: a.shape[0]] = a
    return out


def _grow1(a, n):
    out = np.zeros(n, a.dtype)
    out[: a.shape[0]] = a
    return out


def _buchberger(G0, G1, kind, rw, rv, rs, sw, cap_n, cap_d):
    nv = G0.shape[1]
    cap = 256
    LE = np.zeros((cap, nv), np.int64)
    TE = np.zeros((cap, nv), np.int64)
    LM = np.zeros(cap, np.uint64)
    act = np.zeros(cap, np.int64)
    nact = 0
    n = 0

    pcap = 1024
    PI = np.zeros(pcap, np.int64)
    PJ = np.zeros(pcap, np.int64)
    PL = np.zeros((pcap, nv), np.int64)
    PM = np.zeros(pcap, np.uint64)
    Palive = np.zeros(pcap, np.bool_)
    npairs = 0
    live = np.zeros(pcap, np.int64)
    nlive = 0
    heap = [(np.int64(0), np.int64(0))]
    heap.pop()

    u = np.zeros(nv, np.int64)
    w = np.zeros(nv, np.int64)
    status = 0

    # seeds, in increasing selection degree
    sdeg = np.zeros(G0.shape[0], np.int64)
    for g in range(G0.shape[0]):
        a = 0
        b = 0
        for v in range(nv):
            a += sw[v] * G0[g, v]
            b += sw[v] * G1[g, v]
        sdeg[g] = max(a, b)
    order = np.argsort(sdeg, kind="mergesort")

    queue_src = 0  # seeds first, then pairs
    while True:
        if queue_src < G0.shape[0]:
            g = order[queue_src]
            queue_src += 1
            u[:] = G0[g]
            w[:] = G1[g]
        else:
            if len(heap) == 0:
                break
            _, p = heapq.heappop(heap)
            if not Palive[p]:
                continue
            Palive[p] = False
            i = PI[p]
            j = PJ[p]
            for v in range(nv):
                u[v] = PL[p, v] - LE[i, v] + TE[i, v]
                w[v] = PL[p, v] - LE[j, v] + TE[j, v]
        _normal_form(u, LE, TE, LM, act, nact)
        _normal_form(w, LE, TE, LM, act, nact)
        c = _cmp(u, w, kind, rw, rv, rs)
        if c == 0:
            continue
        if c < 0:
            tmp = u.copy()
            u[:] = w
            w[:] = tmp
        if n >= cap_n:
            status = 1
            break
        tot = 0
        for v in range(nv):
            tot += u[v]
        if tot > cap_d:
            status = 2
            break

        # store the new rule
        if n >= cap:
            cap *= 2
            LE = _grow2(LE, cap)
            TE = _grow2(TE, cap)
            LM = _grow1(LM, cap)
            act = _grow1(act, cap)
        k = n
        n += 1
        LE[k] = u
        TE[k] = w
        hm = _mask(u)
        LM[k] = hm

        # Gebauer-Moeller update
        C = np.zeros((nact, nv), np.int64)
        copr = np.zeros(nact, np.bool_)
        for q in range(nact):
            i = act[q]
            for v in range(nv):
                C[q, v] = max(LE[i, v], u[v])
            copr[q] = (LM[i] & hm) == 0
        keep = np.zeros(nact, np.bool_)
        for q in range(nact):
            if copr[q]:
                keep[q] = True
                continue
            dom = False
            for q2 in range(q + 1, nact):
                if _divides(C[q2], C[q]):
                    dom = True
                    break
            if not dom:
                for q2 in range(q):
                    if keep[q2] and _divides(C[q2], C[q]):
                        dom = True
                        break
            if not dom:
                keep[q] = True
        # chain criterion on older pairs, compacting the live list
        tmpl = np.zeros(nv, np.int64)
        nl2 = 0
        for z in range(nlive):
            p = live[z]
            if not Palive[p]:
                continue
            if (hm & ~PM[p]) == 0 and _divides(u, PL[p]):
                kill = True
                for v in range(nv):
                    tmpl[v] = max(LE[PI[p], v], u[v])
                if _same(tmpl, PL[p]):
                    kill = False
                else:
                    for v in range(nv):
                        tmpl[v] = max(LE[PJ[p], v], u[v])
                    if _same(tmpl, PL[p]):
                        kill = False
                if kill:
                    Palive[p] = False
                    continue
            live[nl2] = p
            nl2 += 1
        nlive = nl2
        for q in range(nact):
            if not keep[q] or copr[q]:
                continue
            if npairs >= pcap:
                pcap *= 2
                PI = _grow1(PI, pcap)
                PJ = _grow1(PJ, pcap)
                PL = _grow2(PL, pcap)
                PM = _grow1(PM, pcap)
                Palive = _grow1(Palive, pcap)
            if nlive >= live.shape[0]:
                live = _grow1(live, 2 * live.shape[0])
            p = npairs
            npairs += 1
            PI[p] = act[q]
            PJ[p] = k
            PL[p] = C[q]
            PM[p] = _mask(C[q])
            Palive[p] = True
            live[nlive] = p
            nlive += 1
            d = 0
            for v in range(nv):
                d += sw[v] * C[q, v]
            heapq.heappush(heap, (np.int64(d), np.int64(p)))
        nq = 0
        for q in range(nact):
            i = act[q]
            if (hm & ~LM[i]) == 0 and _divides(u, LE[i]):
                continue
            act[nq] = i
            nq += 1
        act[nq] = k
        nact = nq + 1

    outL = np.zeros((nact, nv), np.int64)
    outT = np.zeros((nact, nv), np.int64)
    if status != 0:
        return status, outL, outT
    for q in range(nact):
        i = act[q]
        outL[q] = LE[i]
        w[:] = TE[i]
        _normal_form(w, LE, TE, LM, act, nact)
        outT[q] = w
    return status, outL, outT


if use_numba():
    from numba import njit

    _cmp = njit(cache=True)(_cmp)
    _mask = njit(cache=True)(_mask)
    _divides = njit(cache=True)(_divides)
    _same = njit(cache=True)(_same)
    _normal_form = njit(cache=True)(_normal_form)
    _grow2 = njit(cache=True)(_grow2)
    _grow1 = njit(cache=True)(_grow1)
    _buchberger_kernel = njit(cache=True)(_buchberger)
else:
    _buchberger_kernel = None


def available() -> bool:
    return _buchberger_kernel is not None


def order_rows(nvars: int, fields: list, weights: tuple):
    """Key rows from a field description ``[(kind, payload, sign), ...]``.

    ``kind`` is ``"deg"`` (payload: variables of the segment) or ``"var"``
    (payload: one variable index).
    """
    nk = len(fields)
    kind = np.zeros(nk, np.int64)
    rw = np.zeros((nk, nvars), np.int64)
    rv = np.zeros(nk, np.int64)
    rs = np.zeros(nk, np.int64)
    for r, (k, payload, sign) in enumerate(fields):
        if k == "deg":
            for v in payload:
                rw[r, v] = weights[v]
        else:
            kind[r] = 1
            rv[r] = payload
            rs[r] = sign
    return kind, rw, rv, rs


def buchberger_binomial(pairs, rows, select_weights, cap_n: int, cap_d: int):
    """Reduced basis of the ideal of ``x^a - x^b`` for ``(a, b)`` in ``pairs``.

    Returns ``(status, [(lead, trail), ...])`` with exponent tuples.
    """
    nv = len(select_weights)
    G0 = np.array([a for a, _ in pairs], dtype=np.int64).reshape(len(pairs), nv)
    G1 = np.array([b for _, b in pairs], dtype=np.int64).reshape(len(pairs), nv)
    kind, rw, rv, rs = rows
    sw = np.asarray(select_weights, dtype=np.int64)
    status, L, T = _buchberger_kernel(G0, G1, kind, rw, rv, rs, sw, cap_n, cap_d)
    out = [(tuple(int(x) for x in L[q]), tuple(int(x) for x in T[q])) for q in range(L.shape[0])]
    return int(status), out

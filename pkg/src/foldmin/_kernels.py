"""Hot scanning kernels, written in a numba-compilable subset of Python.

Everything here works on flat ``int64`` arrays so the same source runs
either plain (pure-Python fallback) or under ``numba.njit``; the choice
is made in :mod:`foldmin.backend`.  Letters are encoded as in
:mod:`foldmin.words`: generator ``i`` is ``i + 1``, its inverse
``-(i + 1)``; involutive words use positive letters only.

These loops dominate the runtime of the word-problem oracles and of the
audit passes that check thousands of loop labels per minimization run.
"""

import numpy as np


def _reduce_arr(w, involutive):
    """Stack-based free reduction.  Returns a fresh array."""
    n = w.shape[0]
    buf = np.empty(n, np.int64)
    top = 0
    if involutive:
        for t in range(n):
            x = w[t]
            if top > 0 and buf[top - 1] == x:
                top -= 1
            else:
                buf[top] = x
                top += 1
    else:
        for t in range(n):
            x = w[t]
            if top > 0 and buf[top - 1] == -x:
                top -= 1
            else:
                buf[top] = x
                top += 1
    return buf[:top].copy()


def _dehn_fixpoint_arr(w, mmat):
    """Dehn reduction to a fixpoint for an involutive two-generator-relation
    presentation.

    ``mmat[i, j]`` is the relation exponent for generators ``i, j`` (it is
    symmetric) with ``0`` meaning no relation.  A maximal alternating run
    over a related pair longer than the exponent is replaced by the shorter
    complement of the full relation cycle; runs of at least twice the
    exponent contain the whole relation and are deleted outright.  The scan
    is leftmost-first, so the fixpoint is deterministic.
    """
    n0 = w.shape[0]
    buf = np.empty(n0, np.int64)
    top = 0
    for t in range(n0):
        x = w[t]
        if top > 0 and buf[top - 1] == x:
            top -= 1
        else:
            buf[top] = x
            top += 1
    L = top
    changed = True
    while changed:
        changed = False
        i = 0
        while i < L - 1:
            j = i + 1
            while j + 1 < L and buf[j + 1] == buf[j - 1]:
                j += 1
            g0 = buf[i]
            g1 = buf[i + 1]
            m = mmat[g0 - 1, g1 - 1]
            run = j - i + 1
            if m > 0 and run > m:
                if run >= 2 * m:
                    for t in range(i + 2 * m, L):
                        buf[t - 2 * m] = buf[t]
                    L -= 2 * m
                else:
                    comp_len = 2 * m - run
                    nxt = buf[j - 1]
                    oth = buf[j]
                    shift = run - comp_len
                    for t in range(j + 1, L):
                        buf[t - shift] = buf[t]
                    L -= shift
                    for t in range(comp_len):
                        if (comp_len - 1 - t) % 2 == 0:
                            buf[i + t] = nxt
                        else:
                            buf[i + t] = oth
                top = 0
                for t in range(L):
                    x = buf[t]
                    if top > 0 and buf[top - 1] == x:
                        top -= 1
                    else:
                        buf[top] = x
                        top += 1
                L = top
                changed = True
                break
            i = j
    return buf[:L].copy()


def _newman_fixpoint_arr(w, rots, xlens, m):
    """One-relator spelling reduction to a fixpoint.

    ``rots`` holds every cyclic rotation of the relator root and of its
    inverse, one per row; ``xlens[ri]`` is the length of the shortest
    initial segment of row ``ri`` containing every generator occurring in
    the root.  A subword matching ``row^(m-1)`` followed by that initial
    segment is replaced by the inverse of the rest of the row, which is
    strictly shorter for ``m >= 2``.
    """
    n0 = w.shape[0]
    buf = np.empty(n0, np.int64)
    top = 0
    for t in range(n0):
        x = w[t]
        if top > 0 and buf[top - 1] == -x:
            top -= 1
        else:
            buf[top] = x
            top += 1
    L = top
    R = rots.shape[0]
    rl = rots.shape[1]
    changed = True
    while changed:
        changed = False
        p = 0
        while p < L and not changed:
            for ri in range(R):
                plen = (m - 1) * rl + xlens[ri]
                if p + plen > L:
                    continue
                ok = True
                for t in range(plen):
                    if buf[p + t] != rots[ri, t % rl]:
                        ok = False
                        break
                if ok:
                    xl = xlens[ri]
                    rep_len = rl - xl
                    shift = plen - rep_len
                    for t in range(p + plen, L):
                        buf[t - shift] = buf[t]
                    L -= shift
                    for t in range(rep_len):
                        buf[p + t] = -rots[ri, rl - 1 - t]
                    top = 0
                    for t in range(L):
                        x = buf[t]
                        if top > 0 and buf[top - 1] == -x:
                            top -= 1
                        else:
                            buf[top] = x
                            top += 1
                    L = top
                    changed = True
                    break
            p += 1
    return buf[:L].copy()

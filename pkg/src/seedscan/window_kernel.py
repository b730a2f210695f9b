"""Compiled version of the per-window pipeline of :mod:`range_engine`.

Same steps and verdicts as the reference implementation there, over the
flat arrays of :class:`~seedscan.induced_tree.PackedTree`.  Nodes are
visited children first (``post``) or parents first (``post`` reversed).
"""
from __future__ import annotations

import numpy as np
from numba import njit

BELOW = -1
ABOVE = -2
OUTSIDE = -3


# Buckets are interleaved: ``bk[2b]`` is the minimum of bucket ``b`` and
# ``bk[2b+1]`` its maximum (``-1`` when empty).


@njit(cache=True)
def _cross_gap(bk, base, nb, cap):
    best = 0
    prev = -1
    for k in range(base, base + nb):
        h = bk[2 * k + 1]
        if h < 0:
            continue
        if prev >= 0 and bk[2 * k] - prev > best:
            best = bk[2 * k] - prev
        prev = h
    return min(best, cap)


@njit(cache=True)
def _local_gap(bk, base, nb, q, cap):
    left = q - 1 if q >= 1 and bk[2 * (base + q - 1) + 1] >= 0 else q - 2
    if left < 0 or bk[2 * (base + left) + 1] < 0:
        return cap
    right = q + 1 if q + 1 < nb and bk[2 * (base + q + 1) + 1] >= 0 else q + 2
    if right >= nb or bk[2 * (base + right) + 1] < 0:
        return cap
    lmax = bk[2 * (base + left) + 1]
    rmin = bk[2 * (base + right)]
    if bk[2 * (base + q) + 1] < 0:
        return min(rmin - lmax, cap)
    return min(max(bk[2 * (base + q)] - lmax, rmin - bk[2 * (base + q) + 1]), cap)


@njit(cache=True)
def _put(bk, b, p):
    """Insert ``p`` into bucket ``b``; returns False when it changes nothing."""
    if bk[2 * b + 1] < 0:
        bk[2 * b] = p
        bk[2 * b + 1] = p
    elif p < bk[2 * b]:
        bk[2 * b] = p
    elif p > bk[2 * b + 1]:
        bk[2 * b + 1] = p
    else:
        return False
    return True


@njit(cache=True)
def _push_own(x, nodes, cstart, pk, lo, hi, leaves, i, d, bk, base):
    """Insert the leaves whose nearest plausible ancestor is local node ``x``."""
    v = nodes[x]
    r = lo[v]
    total = 0
    for y in range(cstart[x], cstart[x] + pk[x]):
        c = nodes[y]
        for rr in range(r, lo[c]):
            p = leaves[rr]
            _put(bk, base + (p - i) // d, p)
        total += lo[c] - r
        r = hi[c]
    for rr in range(r, hi[v]):
        p = leaves[rr]
        _put(bk, base + (p - i) // d, p)
    return total + hi[v] - r


@njit(cache=True)
def _grow_own(x, nodes, cstart, pk, lo, hi, leaves, i, d, bk, base, log, top):
    """As :func:`_push_own`, logging ``(bucket, old min, old max)`` of every
    change for the later undo."""
    v = nodes[x]
    r = lo[v]
    y = cstart[x]
    end = cstart[x] + pk[x]
    while True:
        stop = hi[v] if y == end else lo[nodes[y]]
        for rr in range(r, stop):
            p = leaves[rr]
            q = (p - i) // d
            b = base + q
            lo_b = bk[2 * b]
            hi_b = bk[2 * b + 1]
            if _put(bk, b, p):
                log[3 * top] = q
                log[3 * top + 1] = lo_b
                log[3 * top + 2] = hi_b
                top += 1
        if y == end:
            return top
        r = hi[nodes[y]]
        y += 1


@njit(cache=True)
def plausible_subtree(d, i, j, kid_ptr, kids, lo, hi, first, last, nodes, lpar, cstart, pk,
                      flags, up):
    """Collect the plausible nodes breadth first into ``nodes`` (local ids),
    with local parents, the start and number of plausible children,
    ``flags`` (bit 0: active, bit 1: has an active proper descendant) and
    ``up``, the nearest active ancestor-or-self.

    Plausibility is inherited by ancestors, so these form a top subtree.
    Returns the number of plausible nodes and of bucket slots needed.
    """
    N = j - i + 1
    two_d = 2 * d
    low_edge = i + two_d
    high_edge = j - 4 * d + 1
    need = N + 2 - 4 * d
    nodes[0] = 0
    lpar[0] = -1
    cnt = 1
    x = 0
    while x < cnt:
        v = nodes[x]
        cstart[x] = cnt
        for t in range(kid_ptr[v], kid_ptr[v + 1]):
            c = kids[t]
            if (first[c] < low_edge and last[c] > high_edge
                    and two_d * (hi[c] - lo[c]) >= need):
                nodes[cnt] = c
                lpar[cnt] = x
                cnt += 1
        pk[x] = cnt - cstart[x]
        x += 1
    nslots = 0
    for x in range(cnt):
        flags[x] = 1 if x == 0 or pk[x] != 1 else 0
        up[x] = x if flags[x] else up[lpar[x]]
        if x and flags[x]:
            flags[up[lpar[x]]] |= 2
    for x in range(cnt):
        if flags[x] == 1:
            nslots += 1
    return cnt, nslots


@njit(cache=True)
def window(d, i, j, parent, lo, hi, leaves, first, last, wlen, cnt, nodes, lpar, cstart, pk,
           flags, up, slot, gap, chain, marks, log, bk, out, exact_only, ops):
    """Verdicts for the window ``[d, 2d]`` after :func:`plausible_subtree`.

    Only plausible nodes are written (the caller fills ``out`` with
    ``ABOVE``); with ``exact_only`` just exact values are kept, as a
    running maximum.  ``ops`` accumulates bucket updates and bucket scans.
    The plausible nodes are handled bottom-up; each node's leaves are a
    contiguous run of ``leaves`` (suffix order).
    """
    N = j - i + 1
    two_d = 2 * d
    cap = two_d + 1
    low_edge = i + two_d
    high_edge = j - 4 * d + 1
    slot[:cnt] = -1
    nb = (N + d - 1) // d
    used = 0
    n_upd = 0
    n_scan = 0

    for x in range(cnt - 1, -1, -1):
        if not flags[x] & 1:
            continue
        s = slot[x]
        if s < 0:
            s = used
            used += 1
        base = s * nb
        # own leaves, then those of the regular chains hanging below
        n_upd += _push_own(x, nodes, cstart, pk, lo, hi, leaves, i, d, bk, base)
        for y0 in range(cstart[x], cstart[x] + pk[x]):
            y = y0
            while not flags[y] & 1:
                n_upd += _push_own(y, nodes, cstart, pk, lo, hi, leaves, i, d, bk, base)
                y = cstart[y]
        gap[x] = _cross_gap(bk, base, nb, cap)
        n_scan += nb

        # regular plausible nodes above: grow, then peel
        clen = 0
        c = lpar[x]
        while c >= 0 and not flags[c] & 1:
            chain[clen] = c
            clen += 1
            c = lpar[c]
        if clen:
            top = 0
            below = hi[nodes[x]] - lo[nodes[x]]
            for t in range(clen):
                marks[t] = top
                c = chain[t]
                top = _grow_own(c, nodes, cstart, pk, lo, hi, leaves, i, d, bk, base, log, top)
                n_upd += hi[nodes[c]] - lo[nodes[c]] - below
                below = hi[nodes[c]] - lo[nodes[c]]
            curr = _cross_gap(bk, base, nb, cap)
            n_scan += nb
            for t in range(clen - 1, -1, -1):
                gap[chain[t]] = curr
                while top > marks[t]:
                    top -= 1
                    q = log[3 * top]
                    b = base + q
                    lo_b = log[3 * top + 1]
                    hi_b = log[3 * top + 2]
                    if hi_b < 0 or bk[2 * b] != lo_b:
                        removed = bk[2 * b]
                    else:
                        removed = bk[2 * b + 1]
                    bk[2 * b] = lo_b
                    bk[2 * b + 1] = hi_b
                    if removed < low_edge or removed > high_edge:
                        curr = _cross_gap(bk, base, nb, cap)
                        n_scan += nb
                    else:
                        g = _local_gap(bk, base, nb, q, cap)
                        n_scan += 5
                        if g > curr:
                            curr = g

        if x != 0:
            t = up[lpar[x]]
            if slot[t] < 0:
                slot[t] = s
            else:
                tb = slot[t] * nb
                for q in range(nb):
                    h = bk[2 * (base + q) + 1]
                    if h < 0:
                        continue
                    u = 2 * (tb + q)
                    if bk[u + 1] < 0:
                        bk[u] = bk[2 * (base + q)]
                        bk[u + 1] = h
                    else:
                        if bk[2 * (base + q)] < bk[u]:
                            bk[u] = bk[2 * (base + q)]
                        if h > bk[u + 1]:
                            bk[u + 1] = h
                n_upd += nb

    for x in range(1, cnt):
        v = nodes[x]
        g = gap[x]
        if g > two_d:
            continue
        others = max(first[v] - i + 1, (j - last[v] + 1) // 2 + 1, wlen[parent[v]] + 1)
        length = wlen[v]
        if g >= d or others >= d:
            m = max(g, others)
            verdict = ABOVE if (m > length or m > two_d) else m
        elif others > length:
            verdict = ABOVE
        elif length >= d:
            verdict = BELOW
        else:
            verdict = OUTSIDE
        if not exact_only:
            out[v] = verdict
        elif verdict > out[v]:
            out[v] = verdict
    ops[0] += n_upd
    ops[1] += n_scan


@njit(cache=True)
def range_exact(l, r, i, j, kid_ptr, kids, parent, lo, hi, leaves, first, last, wlen,
                nodes, lpar, cstart, pk, flags, up, slot, gap, chain, marks, log, bk, found,
                ops):
    """Running maximum into ``found`` of the exact values of the windows
    ``[d, 2d]`` for ``d = l, 2l, 4l, ...`` until ``2d >= r``.

    ``bk`` must hold ``16 * N + 16`` entries: a window never needs more
    than ``8 * N + 8`` buckets.
    """
    N = j - i + 1
    d = l
    while True:
        cnt, nslots = plausible_subtree(d, i, j, kid_ptr, kids, lo, hi, first, last, nodes,
                                        lpar, cstart, pk, flags, up)
        nb = (N + d - 1) // d
        if 2 * nslots * nb > bk.shape[0]:
            raise ValueError("bucket workspace too small")
        bk[:2 * nslots * nb] = -1
        window(d, i, j, parent, lo, hi, leaves, first, last, wlen, cnt, nodes, lpar, cstart,
               pk, flags, up, slot, gap, chain, marks, log, bk, found, True, ops)
        if 2 * d >= r:
            return
        d *= 2

"""Compiled loops over flat ``int64`` arrays.

Each function here is the inner loop of an operation exposed elsewhere in
the package; the callers own validation and the friendly signatures.
"""
from __future__ import annotations

import numpy as np
from numba import njit

INF = 1 << 62


# -------------------------------------------------------- suffix arrays


@njit(cache=True)
def _induce(s, stype, seeds, starts, ends, sa):
    """Induced sorting from the LMS suffixes ``seeds`` (in sorted order)."""
    n = s.shape[0]
    sa[:] = -1
    tails = ends.copy()
    for t in range(seeds.shape[0] - 1, -1, -1):
        p = seeds[t]
        c = s[p]
        tails[c] -= 1
        sa[tails[c]] = p
    heads = starts.copy()
    for x in range(n):
        p = sa[x] - 1
        if p >= 0 and not stype[p]:
            c = s[p]
            sa[heads[c]] = p
            heads[c] += 1
    tails = ends.copy()
    for x in range(n - 1, -1, -1):
        p = sa[x] - 1
        if p >= 0 and stype[p]:
            c = s[p]
            tails[c] -= 1
            sa[tails[c]] = p


@njit(cache=True)
def sais(s, k):
    """Suffix array (0-based) of ``s`` over ``0..k-1``; ``s[-1]`` is a
    unique ``0``."""
    n = s.shape[0]
    sa = np.empty(n, np.int64)
    if n == 1:
        sa[0] = 0
        return sa
    if n == 2:
        sa[0] = 1
        sa[1] = 0
        return sa
    stype = np.zeros(n, np.bool_)
    stype[n - 1] = True
    for p in range(n - 2, -1, -1):
        stype[p] = s[p] < s[p + 1] or (s[p] == s[p + 1] and stype[p + 1])
    is_lms = np.zeros(n, np.bool_)
    nl = 0
    for p in range(1, n):
        if stype[p] and not stype[p - 1]:
            is_lms[p] = True
            nl += 1
    lms = np.empty(nl, np.int64)
    t = 0
    for p in range(1, n):
        if is_lms[p]:
            lms[t] = p
            t += 1
    starts = np.zeros(k, np.int64)
    for p in range(n):
        starts[s[p]] += 1
    ends = np.cumsum(starts)
    starts = ends - starts

    _induce(s, stype, lms, starts, ends, sa)
    names = np.full(n, -1, np.int64)
    name = -1
    prev = -1
    for x in range(n):
        p = sa[x]
        if not is_lms[p]:
            continue
        same = prev >= 0
        if same:
            d = 0
            while True:
                if s[prev + d] != s[p + d] or stype[prev + d] != stype[p + d]:
                    same = False
                    break
                if d > 0 and (is_lms[prev + d] or is_lms[p + d]):
                    same = is_lms[prev + d] and is_lms[p + d]
                    break
                d += 1
        if not same:
            name += 1
        names[p] = name
        prev = p
    reduced = np.empty(nl, np.int64)
    for t in range(nl):
        reduced[t] = names[lms[t]]
    if name + 1 < nl:
        order = sais(reduced, name + 1)
    else:
        order = np.empty(nl, np.int64)
        for t in range(nl):
            order[reduced[t]] = t
    seeds = np.empty(nl, np.int64)
    for t in range(nl):
        seeds[t] = lms[order[t]]
    _induce(s, stype, seeds, starts, ends, sa)
    return sa


@njit(cache=True)
def kasai(s, sa):
    """``lcp[r]`` of the suffixes at ranks ``r-1`` and ``r``; ``lcp[0] = 0``."""
    n = s.shape[0]
    rank = np.empty(n, np.int64)
    for r in range(n):
        rank[sa[r]] = r
    lcp = np.zeros(n, np.int64)
    h = 0
    for p in range(n):
        r = rank[p]
        if r == 0:
            h = 0
            continue
        q = sa[r - 1]
        while p + h < n and q + h < n and s[p + h] == s[q + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


# ---------------------------------------------------------------- tries


@njit(cache=True)
def build_trie(leaves, lcp, n):
    """Stack construction of a compacted trie over sorted suffixes.

    Returns ``depth, wlen, parent, lo, hi, leaf_of, post, bnode``.
    """
    count = leaves.shape[0]
    cap = 2 * count + 1
    depth = np.empty(cap, leaves.dtype)
    wlen = np.empty(cap, leaves.dtype)
    parent = np.empty(cap, leaves.dtype)
    lo = np.empty(cap, leaves.dtype)
    hi = np.empty(cap, leaves.dtype)
    post = np.empty(cap, leaves.dtype)
    leaf_of = np.empty(count, leaves.dtype)
    bnode = np.zeros(count, leaves.dtype)
    stack = np.empty(cap, leaves.dtype)
    depth[0] = 0
    wlen[0] = 0
    parent[0] = -1
    lo[0] = 0
    hi[0] = count
    size = 1
    sp = 1
    stack[0] = 0
    npost = 0
    for r in range(count):
        p = leaves[r]
        if r:
            h = lcp[r]
            popped = -1
            while depth[stack[sp - 1]] > h:
                popped = stack[sp - 1]
                sp -= 1
                hi[popped] = r
                post[npost] = popped
                npost += 1
            top = stack[sp - 1]
            if depth[top] < h:
                node = size
                size += 1
                depth[node] = h
                wlen[node] = h
                parent[node] = top
                lo[node] = lo[popped]
                hi[node] = -1
                parent[popped] = node
                stack[sp] = node
                sp += 1
                top = node
            bnode[r] = top
        leaf = size
        size += 1
        depth[leaf] = n - p + 2
        wlen[leaf] = n - p + 1
        parent[leaf] = stack[sp - 1]
        lo[leaf] = r
        hi[leaf] = r + 1
        leaf_of[r] = leaf
        stack[sp] = leaf
        sp += 1
    while sp > 1:
        v = stack[sp - 1]
        sp -= 1
        hi[v] = count
        post[npost] = v
        npost += 1
    post[npost] = 0
    npost += 1
    return _relabel_bfs(depth[:size], wlen[:size], parent[:size], lo[:size], hi[:size],
                        leaf_of, bnode)


@njit(cache=True)
def _relabel_bfs(depth, wlen, parent, lo, hi, leaf_of, bnode):
    """Renumber nodes breadth first, siblings by leaf range.

    Afterwards parents precede children, the children of a node are
    consecutive ids, and descending ids list the nodes children first.
    """
    size = parent.shape[0]
    ptr, kids = children_csr(parent, lo, leaf_of.shape[0])
    order = np.empty(size, parent.dtype)
    order[0] = 0
    cnt = 1
    for x in range(size):
        v = order[x]
        for t in range(ptr[v], ptr[v + 1]):
            order[cnt] = kids[t]
            cnt += 1
    nid = np.empty(size, parent.dtype)
    for x in range(size):
        nid[order[x]] = x
    n_depth = depth[order]
    n_wlen = wlen[order]
    n_lo = lo[order]
    n_hi = hi[order]
    n_parent = np.empty(size, parent.dtype)
    n_parent[0] = -1
    for x in range(1, size):
        n_parent[x] = nid[parent[order[x]]]
    n_leaf_of = nid[leaf_of]
    n_bnode = nid[bnode]
    post = np.arange(size - 1, -1, -1).astype(parent.dtype)
    return n_depth, n_wlen, n_parent, n_lo, n_hi, n_leaf_of, post, n_bnode


@njit(cache=True)
def occurrence_bounds(leaves, leaf_of, parent, post, n):
    """First and last leaf position below every node."""
    size = parent.shape[0]
    first = np.full(size, n + 1, leaves.dtype)
    last = np.zeros(size, leaves.dtype)
    for r in range(leaves.shape[0]):
        v = leaf_of[r]
        first[v] = leaves[r]
        last[v] = leaves[r]
    for k in range(post.shape[0]):
        v = post[k]
        p = parent[v]
        if p >= 0:
            if first[v] < first[p]:
                first[p] = first[v]
            if last[v] > last[p]:
                last[p] = last[v]
    return first, last


@njit(cache=True)
def children_csr(parent, lo, nleaves):
    """Children lists in CSR form, each ordered by leaf range."""
    size = parent.shape[0]
    # stable counting sort of the nodes by ``lo``
    cnt = np.zeros(nleaves + 1, parent.dtype)
    for v in range(size):
        cnt[lo[v] + 1] += 1
    for r in range(nleaves):
        cnt[r + 1] += cnt[r]
    order = np.empty(size, parent.dtype)
    for v in range(size):
        order[cnt[lo[v]]] = v
        cnt[lo[v]] += 1
    ptr = np.zeros(size + 1, parent.dtype)
    for v in range(1, size):
        ptr[parent[v] + 1] += 1
    for v in range(size):
        ptr[v + 1] += ptr[v]
    fill = ptr[:-1].copy()
    kids = np.empty(max(size - 1, 0), parent.dtype)
    for k in range(size):
        v = order[k]
        p = parent[v]
        if p >= 0:
            kids[fill[p]] = v
            fill[p] += 1
    return ptr, kids


@njit(cache=True)
def node_depths(parent, post):
    depth = np.zeros(parent.shape[0], parent.dtype)
    for k in range(post.shape[0] - 1, -1, -1):
        v = post[k]
        if parent[v] >= 0:
            depth[v] = depth[parent[v]] + 1
    return depth


# -------------------------------------------------------- factorization


@njit(cache=True)
def _lpnf(p, i, j, rank, kid_ptr, kids, kid_lo, first, wlen):
    r = rank[p - i]
    cap = j - p + 1
    x = 0
    best = 0
    while True:
        a = kid_ptr[x]
        b = kid_ptr[x + 1]
        if a == b:
            return best
        # last child whose leaf range starts at or before r
        lo_, hi_ = a, b - 1
        while lo_ < hi_:
            mid = (lo_ + hi_ + 1) // 2
            if kid_lo[mid] <= r:
                lo_ = mid
            else:
                hi_ = mid - 1
        y = kids[lo_]
        allowed = min(p - first[y], cap, wlen[y])
        if allowed <= wlen[x]:
            return best
        best = allowed
        if allowed < wlen[y]:
            return best
        x = y


@njit(cache=True)
def lpnf_table(i, j, rank, kid_ptr, kids, kid_lo, first, wlen):
    out = np.empty(j - i + 1, np.int64)
    for p in range(i, j + 1):
        out[p - i] = _lpnf(p, i, j, rank, kid_ptr, kids, kid_lo, first, wlen)
    return out


@njit(cache=True)
def f_factors(i, j, rank, kid_ptr, kids, kid_lo, first, wlen):
    starts = np.empty(j - i + 1, np.int64)
    lengths = np.empty(j - i + 1, np.int64)
    k = 0
    p = i
    while p <= j:
        length = max(1, _lpnf(p, i, j, rank, kid_ptr, kids, kid_lo, first, wlen))
        starts[k] = p
        lengths[k] = length
        k += 1
        p += length
    return starts[:k].copy(), lengths[:k].copy()


# ------------------------------------------------------------ block RMQ

_BLOCK = 32


@njit(cache=True)
def rmq_build(values):
    """Sparse table over block minima (argmin positions)."""
    n = values.shape[0]
    nblk = (n + _BLOCK - 1) // _BLOCK
    levels = 1
    while (1 << levels) <= nblk:
        levels += 1
    table = np.empty((levels, max(nblk, 1)), np.int64)
    for b in range(nblk):
        best = b * _BLOCK
        for k in range(b * _BLOCK + 1, min(n, (b + 1) * _BLOCK)):
            if values[k] < values[best]:
                best = k
        table[0, b] = best
    for lev in range(1, levels):
        w = 1 << (lev - 1)
        for b in range(nblk - (1 << lev) + 1):
            x = table[lev - 1, b]
            y = table[lev - 1, b + w]
            table[lev, b] = y if values[y] < values[x] else x
    return table


@njit(cache=True)
def _scan(values, lo, hi):
    best = lo
    for k in range(lo + 1, hi + 1):
        if values[k] < values[best]:
            best = k
    return best


@njit(cache=True)
def rmq_argmin(values, table, lo, hi):
    """Leftmost position of the minimum of ``values[lo..hi]``."""
    bl = lo // _BLOCK
    bh = hi // _BLOCK
    if bh - bl <= 1:
        return _scan(values, lo, hi)
    best = _scan(values, lo, (bl + 1) * _BLOCK - 1)
    a, b = bl + 1, bh - 1
    lev = 0
    while (1 << (lev + 1)) <= b - a + 1:
        lev += 1
    x = table[lev, a]
    y = table[lev, b - (1 << lev) + 1]
    mid = y if values[y] < values[x] else x
    if values[mid] < values[best]:
        best = mid
    tail = _scan(values, bh * _BLOCK, hi)
    if values[tail] < values[best]:
        best = tail
    return best


# ------------------------------------------------------------ extraction


@njit(cache=True)
def extract_leaf_orders(i, starts, ends, rank, plcp, table):
    """For every interval, its positions' parent ranks in increasing order
    and, between consecutive ones, the rank holding their lcp minimum.

    Returns ``(ptr, ranks, arg)``; ``arg[ptr[x]]`` is unused.
    """
    nint = starts.shape[0]
    N = rank.shape[0]
    # intervals containing each rank
    cnt = np.zeros(N + 1, rank.dtype)
    ptr = np.zeros(nint + 1, np.int64)
    for x in range(nint):
        ptr[x + 1] = ptr[x] + ends[x] - starts[x] + 1
        for p in range(starts[x], ends[x] + 1):
            cnt[rank[p - i] + 1] += 1
    for r in range(N):
        cnt[r + 1] += cnt[r]
    own = np.empty(cnt[N], rank.dtype)
    fill = cnt[:-1].copy()
    for x in range(nint):
        for p in range(starts[x], ends[x] + 1):
            r = rank[p - i]
            own[fill[r]] = x
            fill[r] += 1
    ranks = np.empty(ptr[nint], rank.dtype)
    at = ptr[:-1].copy()
    for r in range(N):
        for k in range(cnt[r], cnt[r + 1]):
            x = own[k]
            ranks[at[x]] = r
            at[x] += 1
    arg = np.zeros(ptr[nint], rank.dtype)
    for x in range(nint):
        for k in range(ptr[x] + 1, ptr[x + 1]):
            arg[k] = rmq_argmin(plcp, table, ranks[k - 1] + 1, ranks[k])
    return ptr, ranks, arg


@njit(cache=True)
def map_nodes(child_leaf_of, child_bnode, parent_leaf_of, parent_bnode, ranks, arg, size):
    """Node of the parent tree spelling the same word, per child node."""
    g = np.zeros(size, child_leaf_of.dtype)
    m = ranks.shape[0]
    for r in range(m):
        g[child_leaf_of[r]] = parent_leaf_of[ranks[r]]
    for r in range(1, m):
        g[child_bnode[r]] = parent_bnode[arg[r]]
    return g


# ------------------------------------------------------------- tree paths


@njit(cache=True)
def path_sum(parent, post, pv, pu, pw):
    total = np.zeros(parent.shape[0], np.int64)
    for k in range(pv.shape[0]):
        total[pv[k]] += pw[k]
        if pu[k] >= 0:
            total[pu[k]] -= pw[k]
    for k in range(post.shape[0]):
        v = post[k]
        if parent[v] >= 0:
            total[parent[v]] += total[v]
    return total


@njit(cache=True)
def _find(up, x):
    root = x
    steps = 0
    while up[root] != root:
        root = up[root]
        steps += 1
    while up[x] != root:
        nxt = up[x]
        up[x] = root
        x = nxt
    return root, steps


@njit(cache=True)
def path_max(parent, depth, order, pv, pu, pw, empty):
    """Per-node maximum over paths visited in ``order`` (non-increasing
    weights); returns the values and the number of union-find steps."""
    size = parent.shape[0]
    best = np.full(size, empty, np.int64)
    done = np.zeros(size, np.bool_)
    up = np.arange(size).astype(parent.dtype)
    rnk = np.zeros(size, parent.dtype)
    top = np.arange(size).astype(parent.dtype)
    ops = 0
    for t in range(order.shape[0]):
        k = order[t]
        v, u, wt = pv[k], pu[k], pw[k]
        du = depth[u] if u >= 0 else -1
        root, s = _find(up, v)
        ops += s + 1
        x = top[root]
        while depth[x] > du:
            if not done[x]:
                done[x] = True
                best[x] = wt
            p = parent[x]
            if p < 0 or depth[p] <= du:
                break
            a, s1 = _find(up, x)
            b, s2 = _find(up, p)
            ops += s1 + s2 + 2
            if a != b:
                tb = top[b]
                if rnk[a] < rnk[b]:
                    a, b = b, a
                up[b] = a
                if rnk[a] == rnk[b]:
                    rnk[a] += 1
                top[a] = tb
            x = top[a]
    return best, ops


@njit(cache=True)
def counting_order(pw, cap):
    """Indices of ``pw`` by non-increasing weight (weights in ``0..cap``)."""
    cnt = np.zeros(cap + 2, np.int64)
    for k in range(pw.shape[0]):
        cnt[cap - pw[k] + 1] += 1
    for b in range(cap + 1):
        cnt[b + 1] += cnt[b]
    out = np.empty(pw.shape[0], np.int64)
    for k in range(pw.shape[0]):
        b = cap - pw[k]
        out[cnt[b]] = k
        cnt[b] += 1
    return out


# ------------------------------------------------------------- quasigaps


@njit(cache=True)
def direct_quasigaps(i, j, parent, lo, hi, leaves, wlen):
    """Quasigap of every node from its sorted occurrence list."""
    size = parent.shape[0]
    out = np.full(size, INF, np.int64)
    for v in range(1, size):
        occ = np.sort(leaves[lo[v]:hi[v]])
        gap = 0
        for k in range(1, occ.shape[0]):
            if occ[k] - occ[k - 1] > gap:
                gap = occ[k] - occ[k - 1]
        m = max(gap, occ[0] - i + 1, (j - occ[-1] + 1) // 2 + 1, wlen[parent[v]] + 1)
        if m <= wlen[v]:
            out[v] = m
    return out


# ------------------------------------------------------ batched base cases


@njit(cache=True)
def base_paths(sel, starts, ends, ptr, ranks, arg, p_leaves, plcp, p_leaf_of, p_bnode, n, cap):
    """Merge paths ``(v, u, min(quasigap, cap))`` in the parent tree for the
    selected extracted intervals, each solved directly.

    Per interval the trie is built from its leaf order, its quasigaps are
    evaluated from the occurrence lists, and its nodes are mapped into the
    parent.  Also returns the total number of trie nodes built.
    """
    total = 0
    for x in sel:
        total += 2 * (ptr[x + 1] - ptr[x])
    pv = np.empty(total, p_leaf_of.dtype)
    pu = np.empty(total, p_leaf_of.dtype)
    pw = np.empty(total, np.int64)
    k = 0
    built = 0
    for x in sel:
        rk = ranks[ptr[x]:ptr[x + 1]]
        ag = arg[ptr[x]:ptr[x + 1]]
        leaves = p_leaves[rk]
        lcp = plcp[ag]
        lcp[0] = 0
        _, wlen, parent, lo, hi, leaf_of, _, bnode = build_trie(leaves, lcp, n)
        size = parent.shape[0]
        vals = direct_quasigaps(starts[x], ends[x], parent, lo, hi, leaves, wlen)
        g = map_nodes(leaf_of, bnode, p_leaf_of, p_bnode, rk, ag, size)
        for v in range(1, size):
            pv[k] = g[v]
            pu[k] = g[parent[v]]
            pw[k] = min(vals[v], cap)
            k += 1
        built += size
    return pv[:k].copy(), pu[:k].copy(), pw[:k].copy(), built

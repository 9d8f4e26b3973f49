"""Hot numeric kernels over CSR adjacency arrays.

Every kernel takes ``indptr``/``indices`` (int64, neighbors sorted per row)
and is compiled with numba unless ``ARBSPARSE_DISABLE_JIT`` is set. Vertex
subsets are boolean masks of length ``n``.

The exact solvers are recursive branch-and-bound searches. They share a node
counter ``counter[0]`` that is compared against ``limit``; once exceeded the
search unwinds and returns a failure value, and the caller turns that into a
capability error.
"""

from __future__ import annotations

import numpy as np

from arbsparse._jit import njit


# --------------------------------------------------------------------------
# degeneracy / density


@njit
def core_numbers(indptr, indices):
    """Batagelj-Zaversnik bucket peeling; returns the core number per vertex."""
    n = indptr.size - 1
    deg = np.empty(n, np.int64)
    maxd = 0
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] > maxd:
            maxd = deg[v]
    bins = np.zeros(maxd + 1, np.int64)
    for v in range(n):
        bins[deg[v]] += 1
    start = 0
    for d in range(maxd + 1):
        num = bins[d]
        bins[d] = start
        start += num
    pos = np.empty(n, np.int64)
    vert = np.empty(n, np.int64)
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(maxd, 0, -1):
        bins[d] = bins[d - 1]
    if maxd >= 0 and bins.size > 0:
        bins[0] = 0
    for i in range(n):
        v = vert[i]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bins[du] += 1
                deg[u] -= 1
    return deg


@njit
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def max_subset_arboricity(adjmask):
    """max over vertex subsets U, |U| >= 2, of ceil(|E(U)| / (|U| - 1)).

    ``adjmask[v]`` is the neighbor bitmask of ``v``; only usable for n <= 20.
    Edge counts are filled by a subset DP: e[S] = e[S - low] + |N(low) & S|.
    """
    n = adjmask.size
    total = 1 << n
    e = np.zeros(total, np.int64)
    size = np.zeros(total, np.int64)
    best = 0
    for s in range(1, total):
        v = 0
        while not (s >> v) & 1:
            v += 1
        rest = s & ~(1 << v)
        e[s] = e[rest] + _popcount(adjmask[v] & rest)
        size[s] = size[rest] + 1
        k = size[s]
        if k >= 2:
            a = (e[s] + k - 2) // (k - 1)
            if a > best:
                best = a
    return best


# --------------------------------------------------------------------------
# sparsifier marking


@njit
def matching_sparsifier_mask(indptr, indices, delta):
    """Per-CSR-entry keep flags: entry (v, u) survives iff both v and u list
    each other among their first ``delta`` slots."""
    n = indptr.size - 1
    keep = np.zeros(indices.size, np.bool_)
    for v in range(n):
        lo = indptr[v]
        hi = min(indptr[v + 1], lo + delta)
        for j in range(lo, hi):
            u = indices[j]
            p = np.searchsorted(indices[indptr[u]:indptr[u + 1]], v)
            if p < delta:
                keep[j] = True
    return keep


# --------------------------------------------------------------------------
# greedy heuristics


@njit
def greedy_matching_edges(n, eu, ev):
    """Scan edges in the given order, keep each edge whose endpoints are free."""
    mate = np.full(n, -1, np.int64)
    for k in range(eu.size):
        u = eu[k]
        v = ev[k]
        if mate[u] < 0 and mate[v] < 0:
            mate[u] = v
            mate[v] = u
    return mate


@njit
def greedy_matching_masked(indptr, indices, alive):
    """Lexicographic greedy maximal matching of G[alive]; returns its size."""
    n = indptr.size - 1
    mate = np.full(n, -1, np.int64)
    size = 0
    for u in range(n):
        if not alive[u] or mate[u] >= 0:
            continue
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if v > u and alive[v] and mate[v] < 0:
                mate[u] = v
                mate[v] = u
                size += 1
                break
    return size


@njit
def greedy_is_min_degree(indptr, indices):
    """Pick a minimum-degree vertex (lowest id on ties), drop its closed
    neighborhood, repeat."""
    n = indptr.size - 1
    alive = np.ones(n, np.bool_)
    deg = np.empty(n, np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
    chosen = np.zeros(n, np.bool_)
    remaining = n
    while remaining > 0:
        best = -1
        for v in range(n):
            if alive[v] and (best < 0 or deg[v] < deg[best]):
                best = v
        chosen[best] = True
        alive[best] = False
        remaining -= 1
        for j in range(indptr[best], indptr[best + 1]):
            u = indices[j]
            if alive[u]:
                alive[u] = False
                remaining -= 1
                for k in range(indptr[u], indptr[u + 1]):
                    w = indices[k]
                    if alive[w]:
                        deg[w] -= 1
    return chosen


# --------------------------------------------------------------------------
# branch-and-bound helpers


@njit
def _alive_degrees(indptr, indices, alive):
    n = indptr.size - 1
    deg = np.zeros(n, np.int64)
    for v in range(n):
        if alive[v]:
            c = 0
            for j in range(indptr[v], indptr[v + 1]):
                if alive[indices[j]]:
                    c += 1
            deg[v] = c
    return deg


@njit
def _kill(v, indptr, indices, alive, deg, stack, sp):
    """Remove v; push neighbors whose residual degree drops to <= 1."""
    alive[v] = False
    for j in range(indptr[v], indptr[v + 1]):
        w = indices[j]
        if alive[w]:
            deg[w] -= 1
            if deg[w] <= 1:
                stack[sp] = w
                sp += 1
    return sp


@njit
def _first_alive_neighbor(v, indptr, indices, alive):
    for j in range(indptr[v], indptr[v + 1]):
        if alive[indices[j]]:
            return indices[j]
    return -1


@njit
def _component(start, indptr, indices, alive):
    """Mask and size of the component of G[alive] containing ``start``."""
    n = indptr.size - 1
    comp = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int64)
    comp[start] = True
    queue[0] = start
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for j in range(indptr[x], indptr[x + 1]):
            y = indices[j]
            if alive[y] and not comp[y]:
                comp[y] = True
                queue[tail] = y
                tail += 1
    return comp, tail


@njit
def _count(mask):
    c = 0
    for i in range(mask.size):
        if mask[i]:
            c += 1
    return c


@njit
def _first_true(mask):
    for i in range(mask.size):
        if mask[i]:
            return i
    return -1


# --------------------------------------------------------------------------
# exact maximum independent set


@njit(cache=False)
def mis_search(indptr, indices, alive_in, floor, counter, limit):
    """Largest independent set of G[alive_in], if its size exceeds ``floor``.

    Returns ``(size, mask)``; when ``size <= floor`` no set is claimed.
    """
    n = indptr.size - 1
    chosen = np.zeros(n, np.bool_)
    counter[0] += 1
    if counter[0] > limit:
        return floor, chosen
    alive = alive_in.copy()
    deg = _alive_degrees(indptr, indices, alive)
    stack = np.empty(3 * n + 1, np.int64)
    sp = 0
    for v in range(n):
        if alive[v] and deg[v] <= 1:
            stack[sp] = v
            sp += 1
    base = 0
    # degree <= 1 vertices always belong to some maximum independent set
    while sp > 0:
        sp -= 1
        v = stack[sp]
        if not alive[v] or deg[v] > 1:
            continue
        u = _first_alive_neighbor(v, indptr, indices, alive) if deg[v] == 1 else -1
        chosen[v] = True
        base += 1
        sp = _kill(v, indptr, indices, alive, deg, stack, sp)
        if u >= 0:
            sp = _kill(u, indptr, indices, alive, deg, stack, sp)
    k = _count(alive)
    if k == 0:
        return base, chosen
    comp, csize = _component(_first_true(alive), indptr, indices, alive)
    if csize < k:
        rest = alive & ~comp
        s1, c1 = mis_search(indptr, indices, comp, -1, counter, limit)
        if counter[0] > limit:
            return floor, chosen
        need = floor - base - s1
        s2, c2 = mis_search(indptr, indices, rest, need, counter, limit)
        if counter[0] > limit or s2 <= need:
            return floor, chosen
        return base + s1 + s2, chosen | c1 | c2
    if base + k - greedy_matching_masked(indptr, indices, alive) <= floor:
        return floor, chosen
    v = -1
    for x in range(n):
        if alive[x] and (v < 0 or deg[x] > deg[v]):
            v = x
    best = floor
    best_mask = chosen.copy()
    # branch 1: v in the set
    a = alive.copy()
    a[v] = False
    for j in range(indptr[v], indptr[v + 1]):
        a[indices[j]] = False
    sa, ca = mis_search(indptr, indices, a, best - base - 1, counter, limit)
    if counter[0] > limit:
        return floor, chosen
    if base + 1 + sa > best:
        best = base + 1 + sa
        best_mask = chosen | ca
        best_mask[v] = True
    # branch 2: v excluded
    b = alive.copy()
    b[v] = False
    sb, cb = mis_search(indptr, indices, b, best - base, counter, limit)
    if counter[0] > limit:
        return floor, chosen
    if base + sb > best:
        best = base + sb
        best_mask = chosen | cb
    return best, best_mask


# --------------------------------------------------------------------------
# exact minimum vertex cover


@njit(cache=False)
def mvc_search(indptr, indices, alive_in, ceiling, counter, limit):
    """Smallest vertex cover of G[alive_in], if smaller than ``ceiling``.

    Returns ``(size, mask)``; when ``size >= ceiling`` no cover is claimed.
    Branches on the endpoint of maximum residual degree: either it joins the
    cover or all of its neighbors do. Pruned by a greedy matching lower bound.
    """
    n = indptr.size - 1
    cover = np.zeros(n, np.bool_)
    counter[0] += 1
    if counter[0] > limit:
        return ceiling, cover
    alive = alive_in.copy()
    deg = _alive_degrees(indptr, indices, alive)
    stack = np.empty(3 * n + 1, np.int64)
    sp = 0
    for v in range(n):
        if alive[v] and deg[v] <= 1:
            stack[sp] = v
            sp += 1
    base = 0
    # pendant vertex: its neighbor is in some minimum cover
    while sp > 0:
        sp -= 1
        v = stack[sp]
        if not alive[v] or deg[v] > 1:
            continue
        if deg[v] == 0:
            alive[v] = False
            continue
        u = _first_alive_neighbor(v, indptr, indices, alive)
        cover[u] = True
        base += 1
        sp = _kill(u, indptr, indices, alive, deg, stack, sp)
    k = _count(alive)
    if k == 0:
        return base, cover
    if base >= ceiling:
        return ceiling, cover
    comp, csize = _component(_first_true(alive), indptr, indices, alive)
    if csize < k:
        rest = alive & ~comp
        big = n + 1
        s1, c1 = mvc_search(indptr, indices, comp, big, counter, limit)
        if counter[0] > limit:
            return ceiling, cover
        room = ceiling - base - s1
        s2, c2 = mvc_search(indptr, indices, rest, room, counter, limit)
        if counter[0] > limit or s2 >= room:
            return ceiling, cover
        return base + s1 + s2, cover | c1 | c2
    if base + greedy_matching_masked(indptr, indices, alive) >= ceiling:
        return ceiling, cover
    v = -1
    for x in range(n):
        if alive[x] and (v < 0 or deg[x] > deg[v]):
            v = x
    best = ceiling
    best_mask = cover.copy()
    # branch 1: v in the cover
    a = alive.copy()
    a[v] = False
    sa, ca = mvc_search(indptr, indices, a, best - base - 1, counter, limit)
    if counter[0] > limit:
        return ceiling, cover
    if base + 1 + sa < best:
        best = base + 1 + sa
        best_mask = cover | ca
        best_mask[v] = True
    # branch 2: v out, every alive neighbor in
    b = alive.copy()
    b[v] = False
    dv = 0
    nb = np.zeros(n, np.bool_)
    for j in range(indptr[v], indptr[v + 1]):
        u = indices[j]
        if alive[u]:
            b[u] = False
            nb[u] = True
            dv += 1
    sb, cb = mvc_search(indptr, indices, b, best - base - dv, counter, limit)
    if counter[0] > limit:
        return ceiling, cover
    if base + dv + sb < best:
        best = base + dv + sb
        best_mask = cover | cb | nb
    return best, best_mask


# --------------------------------------------------------------------------
# exact maximum matching


@njit
def _greedy_cover_bound(indptr, indices, alive, deg):
    """Size of a vertex cover of G[alive]: complement of a greedy independent
    set taken in ascending residual degree."""
    n = indptr.size - 1
    order = np.argsort(deg, kind="mergesort")
    blocked = np.zeros(n, np.bool_)
    taken = 0
    k = 0
    for i in range(n):
        v = order[i]
        if not alive[v]:
            continue
        k += 1
        if blocked[v]:
            continue
        taken += 1
        blocked[v] = True
        for j in range(indptr[v], indptr[v + 1]):
            blocked[indices[j]] = True
    return k - taken


@njit(cache=False)
def mm_search(indptr, indices, alive_in, floor, counter, limit):
    """Maximum matching of G[alive_in], if its size exceeds ``floor``.

    Returns ``(size, mate)`` with ``mate[v] = -1`` for unmatched vertices.
    A non-isolated vertex is matched in some maximum matching, so the search
    only branches over the partner of a minimum-degree vertex.
    """
    n = indptr.size - 1
    mate = np.full(n, -1, np.int64)
    counter[0] += 1
    if counter[0] > limit:
        return floor, mate
    alive = alive_in.copy()
    deg = _alive_degrees(indptr, indices, alive)
    stack = np.empty(3 * n + 1, np.int64)
    sp = 0
    for v in range(n):
        if alive[v] and deg[v] <= 1:
            stack[sp] = v
            sp += 1
    base = 0
    while sp > 0:
        sp -= 1
        v = stack[sp]
        if not alive[v] or deg[v] > 1:
            continue
        if deg[v] == 0:
            alive[v] = False
            continue
        u = _first_alive_neighbor(v, indptr, indices, alive)
        mate[v] = u
        mate[u] = v
        base += 1
        sp = _kill(v, indptr, indices, alive, deg, stack, sp)
        sp = _kill(u, indptr, indices, alive, deg, stack, sp)
    k = _count(alive)
    if k == 0:
        return base, mate
    comp, csize = _component(_first_true(alive), indptr, indices, alive)
    if csize < k:
        rest = alive & ~comp
        s1, m1 = mm_search(indptr, indices, comp, -1, counter, limit)
        if counter[0] > limit:
            return floor, mate
        need = floor - base - s1
        s2, m2 = mm_search(indptr, indices, rest, need, counter, limit)
        if counter[0] > limit or s2 <= need:
            return floor, mate
        for x in range(n):
            if m1[x] >= 0:
                mate[x] = m1[x]
            elif m2[x] >= 0:
                mate[x] = m2[x]
        return base + s1 + s2, mate
    ub = k // 2
    cb = _greedy_cover_bound(indptr, indices, alive, deg)
    if cb < ub:
        ub = cb
    if base + ub <= floor:
        return floor, mate
    v = -1
    for x in range(n):
        if alive[x] and (v < 0 or deg[x] < deg[v]):
            v = x
    best = floor
    best_mate = mate.copy()
    for j in range(indptr[v], indptr[v + 1]):
        u = indices[j]
        if not alive[u]:
            continue
        a = alive.copy()
        a[v] = False
        a[u] = False
        s, m = mm_search(indptr, indices, a, best - base - 1, counter, limit)
        if counter[0] > limit:
            return floor, mate
        if base + 1 + s > best:
            best = base + 1 + s
            for x in range(n):
                best_mate[x] = mate[x] if mate[x] >= 0 else m[x]
            best_mate[v] = u
            best_mate[u] = v
            if best >= base + ub:
                break
    return best, best_mate


# --------------------------------------------------------------------------
# short augmenting paths


@njit(cache=False)
def _augment_dfs(indptr, indices, mate, onpath, path, depth, max_len):
    x = path[depth]
    for j in range(indptr[x], indptr[x + 1]):
        y = indices[j]
        if onpath[y] or mate[x] == y:
            continue
        if mate[y] < 0:
            path[depth + 1] = y
            return depth + 1
        # through matched y we need two more edges before a free endpoint
        if depth + 3 > max_len:
            continue
        z = mate[y]
        if onpath[z]:
            continue
        onpath[y] = True
        onpath[z] = True
        path[depth + 1] = y
        path[depth + 2] = z
        r = _augment_dfs(indptr, indices, mate, onpath, path, depth + 2, max_len)
        if r > 0:
            return r
        onpath[y] = False
        onpath[z] = False
    return -1


# callers of a recursive kernel cannot be cached either
@njit(cache=False)
def find_short_augmenting_path(indptr, indices, mate, start, max_len):
    """Exhaustive DFS over simple alternating paths from free ``start``.

    Returns the path as an int64 array of vertices (empty if none of length
    <= ``max_len`` edges exists).
    """
    n = indptr.size - 1
    onpath = np.zeros(n, np.bool_)
    path = np.empty(max_len + 2, np.int64)
    path[0] = start
    onpath[start] = True
    r = _augment_dfs(indptr, indices, mate, onpath, path, 0, max_len)
    if r < 0:
        return path[:0].copy()
    return path[: r + 1].copy()


@njit(cache=False)
def augment_short_paths(indptr, indices, mate, max_len):
    """Augment along alternating paths of at most ``max_len`` edges until none
    remains. Mutates ``mate``; returns the number of augmentations."""
    n = indptr.size - 1
    total = 0
    improved = True
    while improved:
        improved = False
        for s in range(n):
            if mate[s] >= 0 or indptr[s + 1] == indptr[s]:
                continue
            p = find_short_augmenting_path(indptr, indices, mate, s, max_len)
            if p.size == 0:
                continue
            for k in range(0, p.size - 1, 2):
                a = p[k]
                b = p[k + 1]
                mate[a] = b
                mate[b] = a
            total += 1
            improved = True
    return total

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled product-graph search kernels for systems with at most 64 points.

Same contracts as ``_pykernel`` except that the graph arrives as one
successor bitmask per point instead of sorted successor lists. Successors are
visited in increasing order by peeling the lowest set bit, so walks match the
pure-Python kernels exactly. Masks are ``uint64_t``; callers must dispatch
larger systems to the pure-Python kernels.
"""

from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from cython.operator cimport dereference as deref

cdef extern from *:
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil

cdef enum:
    OK = 0
    LASSO = 1
    CAP = 2
    PASS = 0
    FAIL = 1

MAX_POINTS = 64


cdef inline bint _alive(uint64_t u, vector[uint64_t]& tg) noexcept nogil:
    cdef size_t j
    for j in range(tg.size()):
        if (u & tg[j]) == 0:
            return False
    return True


cdef int _load(adjacency, cover, targets, vector[uint64_t]& adj,
               vector[uint64_t]& cov, vector[uint64_t]& tg, uint64_t* full) except -1:
    cdef int n = len(adjacency)
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 points")
    for x in range(n):
        adj.push_back(<uint64_t>adjacency[x])
        cov.push_back(<uint64_t>cover[x])
    full[0] = 0
    for t in targets:
        tg.push_back(<uint64_t>t)
        full[0] |= <uint64_t>t
    return 0


def lasso_search(adjacency, cover, targets, long long cap):
    cdef vector[uint64_t] adj, cov, tg
    cdef uint64_t full
    _load(adjacency, cover, targets, adj, cov, tg, &full)
    cdef int n = adj.size()
    cdef int x0
    for x0 in range(n):
        if _alive(full & ~cov[x0], tg):
            break
    else:
        return OK, 0, None, -1, 0

    cdef vector[unordered_map[uint64_t, int]] heights = vector[unordered_map[uint64_t, int]](n)
    cdef vector[unordered_map[uint64_t, int]] on_stack = vector[unordered_map[uint64_t, int]](n)
    # DFS frames: point, mask, successors still to try, best height below
    cdef vector[int] fx, fh
    cdef vector[uint64_t] fu, fr
    cdef long long states = 0
    cdef int best = -1
    cdef int x, y, h, pos, top
    cdef uint64_t u0, u, v, rest
    cdef unordered_map[uint64_t, int].iterator it

    for x0 in range(n):
        u0 = full & ~cov[x0]
        if not _alive(u0, tg):
            continue
        it = heights[x0].find(u0)
        if it != heights[x0].end():
            if deref(it).second > best:
                best = deref(it).second
            continue
        if states >= cap:
            return CAP, -1, None, -1, states
        states += 1
        on_stack[x0][u0] = 0
        fx.push_back(x0); fu.push_back(u0); fr.push_back(adj[x0]); fh.push_back(0)
        while fx.size() > 0:
            top = fx.size() - 1
            x = fx[top]; u = fu[top]; rest = fr[top]; h = fh[top]
            if rest:
                fr[top] = rest & (rest - 1)
                y = ctz64(rest)
                v = u & ~cov[y]
                if not _alive(v, tg):
                    continue
                it = heights[y].find(v)
                if it != heights[y].end():
                    if deref(it).second + 1 > h:
                        fh[top] = deref(it).second + 1
                    continue
                it = on_stack[y].find(v)
                if it != on_stack[y].end():
                    pos = deref(it).second
                    walk = [fx[k] for k in range(fx.size())]
                    walk.append(y)
                    return LASSO, -1, walk, pos, states
                if states >= cap:
                    return CAP, -1, None, -1, states
                states += 1
                on_stack[y][v] = fx.size()
                fx.push_back(y); fu.push_back(v); fr.push_back(adj[y]); fh.push_back(0)
            else:
                fx.pop_back(); fu.pop_back(); fr.pop_back(); fh.pop_back()
                on_stack[x].erase(u)
                heights[x][u] = h
                if fx.size() > 0:
                    top = fx.size() - 1
                    if h + 1 > fh[top]:
                        fh[top] = h + 1
                elif h > best:
                    best = h
    return OK, best + 1, None, -1, states


def layered_search(adjacency, cover, targets, int n_steps, long long cap):
    cdef vector[uint64_t] adj, cov, tg
    cdef uint64_t full
    _load(adjacency, cover, targets, adj, cov, tg, &full)
    cdef int n = adj.size()

    # layers[k][x] holds the masks of alive states at point x after k steps
    cdef vector[vector[unordered_set[uint64_t]]] layers
    cdef vector[unordered_set[uint64_t]] cur = vector[unordered_set[uint64_t]](n)
    cdef vector[unordered_set[uint64_t]] nxt
    cdef long long states = 0, size
    cdef int k, x, y, x0
    cdef uint64_t u, v, rest
    cdef bint found

    for x0 in range(n):
        u = full & ~cov[x0]
        if _alive(u, tg):
            cur[x0].insert(u)
            states += 1
    if states > cap:
        return CAP, None, states
    layers.push_back(cur)
    for k in range(n_steps):
        size = 0
        nxt = vector[unordered_set[uint64_t]](n)
        for x in range(n):
            for u in layers[k][x]:
                rest = adj[x]
                while rest:
                    y = ctz64(rest)
                    rest &= rest - 1
                    v = u & ~cov[y]
                    if _alive(v, tg) and nxt[y].insert(v).second:
                        size += 1
        if size == 0:
            return PASS, None, states
        states += size
        if states > cap:
            return CAP, None, states
        layers.push_back(nxt)

    size = 0
    for x in range(n):
        size += layers[n_steps][x].size()
    if size == 0:
        return PASS, None, states

    # prune each layer to states with a surviving continuation
    for k in range(n_steps - 1, -1, -1):
        for x in range(n):
            doomed = []
            for u in layers[k][x]:
                found = False
                rest = adj[x]
                while rest:
                    y = ctz64(rest)
                    rest &= rest - 1
                    if layers[k + 1][y].count(u & ~cov[y]):
                        found = True
                        break
                if not found:
                    doomed.append(u)
            for u in doomed:
                layers[k][x].erase(<uint64_t>u)

    x = 0
    while layers[0][x].size() == 0:
        x += 1
    u = full & ~cov[x]
    walk = [x]
    for k in range(1, n_steps + 1):
        rest = adj[x]
        while rest:
            y = ctz64(rest)
            rest &= rest - 1
            v = u & ~cov[y]
            if layers[k][y].count(v):
                x = y
                u = v
                break
        walk.append(x)
    return FAIL, walk, states

"""Pure-Python product-graph search kernels.

A product state is ``(x, u)``: the current point and the bitmask of target
points not yet covered by the eps-balls of the walk so far. ``targets`` is a
list of disjoint bitmasks (the cycles, or the whole space); a state is alive
while every target still has an uncovered point. Moving to ``y`` clears
``cover[y]`` from ``u``, so masks only shrink along a walk.

Both kernels take sorted successor lists, so exploration order and all
returned walks are deterministic. Return conventions are shared with the
compiled kernel:

``lasso_search(succ, cover, targets, cap) -> (status, n, walk, loop_start, states)``
    status 0: no reachable alive cycle; ``n`` is the least walk length with
    no alive state. status 1: lasso; ``walk[loop_start]`` and ``walk[-1]``
    are the same product state. status 2: ``cap`` states exceeded.

``layered_search(succ, cover, targets, n, cap) -> (status, walk, states)``
    status 0: every length-``n`` walk dies. status 1: ``walk`` is the
    lexicographically least surviving length-``n`` walk. status 2: cap.
"""

from __future__ import annotations

OK, LASSO, CAP = 0, 1, 2
PASS, FAIL = 0, 1


def _alive(u: int, targets) -> bool:
    for t in targets:
        if not u & t:
            return False
    return True


def lasso_search(succ, cover, targets, cap):
    full = 0
    for t in targets:
        full |= t
    heights = {}
    on_stack = {}
    states = 0
    best = -1
    for x0 in range(len(succ)):
        u0 = full & ~cover[x0]
        if not _alive(u0, targets):
            continue
        root = (x0, u0)
        h0 = heights.get(root)
        if h0 is not None:
            best = max(best, h0)
            continue
        if states >= cap:
            return CAP, -1, None, -1, states
        states += 1
        on_stack[root] = 0
        stack = [[x0, u0, 0, 0]]
        while stack:
            fr = stack[-1]
            x, u, i, h = fr
            nbrs = succ[x]
            if i < len(nbrs):
                fr[2] = i + 1
                y = nbrs[i]
                v = u & ~cover[y]
                if not _alive(v, targets):
                    continue
                key = (y, v)
                hy = heights.get(key)
                if hy is not None:
                    if hy + 1 > h:
                        fr[3] = hy + 1
                    continue
                pos = on_stack.get(key)
                if pos is not None:
                    walk = [f[0] for f in stack]
                    walk.append(y)
                    return LASSO, -1, walk, pos, states
                if states >= cap:
                    return CAP, -1, None, -1, states
                states += 1
                on_stack[key] = len(stack)
                stack.append([y, v, 0, 0])
            else:
                stack.pop()
                key = (x, u)
                del on_stack[key]
                heights[key] = h
                if stack:
                    if h + 1 > stack[-1][3]:
                        stack[-1][3] = h + 1
                elif h > best:
                    best = h
    return OK, best + 1, None, -1, states


def layered_search(succ, cover, targets, n, cap):
    full = 0
    for t in targets:
        full |= t
    layer = set()
    for x0 in range(len(succ)):
        u0 = full & ~cover[x0]
        if _alive(u0, targets):
            layer.add((x0, u0))
    states = len(layer)
    if states > cap:
        return CAP, None, states
    layers = [layer]
    for _ in range(n):
        if not layer:
            return PASS, None, states
        nxt = set()
        for x, u in layer:
            for y in succ[x]:
                v = u & ~cover[y]
                if _alive(v, targets):
                    nxt.add((y, v))
        states += len(nxt)
        if states > cap:
            return CAP, None, states
        layers.append(nxt)
        layer = nxt
    if not layer:
        return PASS, None, states

    good = [None] * (n + 1)
    good[n] = layers[n]
    for k in range(n - 1, -1, -1):
        later = good[k + 1]
        good[k] = {
            (x, u) for x, u in layers[k] if any((y, u & ~cover[y]) in later for y in succ[x])
        }
    x = min(x0 for x0, _ in good[0])
    u = full & ~cover[x]
    walk = [x]
    for k in range(1, n + 1):
        for y in succ[x]:
            v = u & ~cover[y]
            if (y, v) in good[k]:
                x, u = y, v
                break
        walk.append(x)
    return FAIL, walk, states

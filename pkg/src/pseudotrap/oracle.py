"""Brute-force oracles for the trap and cover checks.

These walk every pseudo-orbit prefix in lexicographic order and test the
covering condition on plain Python sets. The condition only depends on the
set of points a walk visits, so a subtree rooted at (depth, point, visited)
that produced no counterexample once is skipped when met again; the first
counterexample found is still the lexicographically smallest. Nothing is
shared with the product-graph kernels.
"""

from __future__ import annotations

from .core import FiniteSystem
from .pseudo_orbit import DEFAULT_WALK_CAP, EnumerationLimitExceeded, metric_graph

__all__ = ["brute_cycles", "oracle_trap_check", "oracle_cover_check"]

WITNESS_MODE = "oracle: exhaustive walk enumeration"


def brute_cycles(s: FiniteSystem) -> list[frozenset[int]]:
    """Cycles found by iterating the map from each periodic point."""
    cycles = set()
    for p in s.points:
        x = p
        members = [p]
        for _ in range(s.num_points):
            x = s.map[x]
            if x == p:
                cycles.add(frozenset(members))
                break
            members.append(x)
    return sorted(cycles, key=min)


def _blown_up(s: FiniteSystem, pts, eps: int) -> set[int]:
    return {y for y in s.points if any(s.dist[x][y] < eps for x in pts)}


def _first_failure(s, eps, delta, n, targets, cap):
    succ = metric_graph(s, delta).succ
    balls = [_blown_up(s, {x}, eps) for x in s.points]
    targets = [set(c) for c in targets]
    clean = set()  # (steps left, point, visited) with no failing completion
    leaf = {}  # visited set -> does its eps-blowup contain a target

    def captured(visited):
        hit = leaf.get(visited)
        if hit is None:
            region = set().union(*(balls[x] for x in visited))
            hit = leaf[visited] = any(c <= region for c in targets)
        return hit

    def search(walk, visited):
        left = n + 1 - len(walk)
        if left == 0:
            return None if captured(visited) else tuple(walk)
        key = (left, walk[-1], visited)
        if key in clean:
            return None
        for y in succ[walk[-1]]:
            walk.append(y)
            found = search(walk, visited | {y})
            walk.pop()
            if found is not None:
                return found
        clean.add(key)
        if len(clean) > cap:
            raise EnumerationLimitExceeded(len(clean), cap)
        return None

    for x0 in s.points:
        found = search([x0], frozenset([x0]))
        if found is not None:
            return found
    return None


def oracle_trap_check(s: FiniteSystem, eps: int, delta: int, n: int, cap: int = DEFAULT_WALK_CAP):
    """Same statement as :func:`pseudotrap.verifier.trap_check`, by enumeration.

    Raises :class:`~pseudotrap.pseudo_orbit.EnumerationLimitExceeded` once more
    than ``cap`` subtrees have been memoized.
    """
    from .verifier import TrapCertificate

    walk = _first_failure(s, eps, delta, n, brute_cycles(s), cap)
    return TrapCertificate(
        eps=eps,
        delta=delta,
        n=n,
        verdict="pass" if walk is None else "fail",
        witness_mode=WITNESS_MODE,
        counterexample=walk,
    )


def oracle_cover_check(s: FiniteSystem, eps: int, delta: int, n: int, cap: int = DEFAULT_WALK_CAP):
    from .verifier import CoverCertificate

    walk = _first_failure(s, eps, delta, n, [frozenset(s.points)], cap)
    return CoverCertificate(
        eps=eps,
        delta=delta,
        n=n,
        verdict="pass" if walk is None else "fail",
        witness_mode=WITNESS_MODE,
        counterexample=walk,
    )

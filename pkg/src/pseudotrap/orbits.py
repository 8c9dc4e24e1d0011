"""Functional-graph dynamics on finite systems.

On a finite discrete space closures are trivial, so the omega-limit set of a
point is exactly the cycle its orbit eventually enters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteSystem, PointSet, Walk

__all__ = [
    "OmegaSet",
    "HausdorffResult",
    "orbit",
    "omega_limit",
    "all_omega_sets",
    "is_positively_invariant",
    "is_minimal",
    "hausdorff_distance",
    "orbit_trap_horizon",
    "uniform_trap_horizon",
]


@dataclass(frozen=True)
class OmegaSet:
    cycle: PointSet
    entry_time: int
    anchor: int

    def as_dict(self) -> dict:
        return {"anchor": self.anchor, "entry_time": self.entry_time, "cycle": self.cycle.to_list()}


@dataclass(frozen=True)
class HausdorffResult:
    h: int
    least_eps: int

    def as_dict(self) -> dict:
        return {"h": self.h, "least_eps": self.least_eps}


def orbit(s: FiniteSystem, x: int) -> Walk:
    """Orbit sequence of ``x`` up to and including the first repeated point."""
    seen = set()
    out = []
    while x not in seen:
        seen.add(x)
        out.append(x)
        x = s.map[x]
    out.append(x)
    return tuple(out)


def omega_limit(s: FiniteSystem, z: int) -> OmegaSet:
    path = orbit(s, z)
    entry = path.index(path[-1])
    return OmegaSet(PointSet.of(s.num_points, path[entry:-1]), entry, z)


def all_omega_sets(s: FiniteSystem) -> list[OmegaSet]:
    """Every cycle of the map once, ordered by least member.

    The anchor of each entry is that least member, so ``entry_time`` is 0.
    """
    state = [0] * s.num_points  # 0 new, 1 on current path, 2 done
    cycles = []
    for start in s.points:
        path = []
        x = start
        while state[x] == 0:
            state[x] = 1
            path.append(x)
            x = s.map[x]
        if state[x] == 1:
            cycles.append(PointSet.of(s.num_points, path[path.index(x):]))
        for p in path:
            state[p] = 2
    cycles.sort(key=PointSet.min)
    return [OmegaSet(c, 0, c.min()) for c in cycles]


def is_positively_invariant(s: FiniteSystem, a: PointSet) -> bool:
    return all(s.map[x] in a for x in a)


def is_minimal(s: FiniteSystem) -> bool:
    """True iff the map is one cyclic permutation of all points."""
    x, steps = 0, 0
    while True:
        x = s.map[x]
        steps += 1
        if x == 0 or steps > s.num_points:
            break
    return x == 0 and steps == s.num_points


def hausdorff_distance(s: FiniteSystem, a: PointSet, b: PointSet) -> HausdorffResult:
    """Classical max-min Hausdorff distance ``h`` and the least strict-ball
    radius ``h + 1`` for which each set lies in the open ball of the other."""
    if not a or not b:
        raise ValueError("Hausdorff distance needs nonempty sets")
    d = s.dist
    one = max(min(d[x][y] for y in b) for x in a)
    two = max(min(d[x][y] for x in a) for y in b)
    h = max(one, two)
    return HausdorffResult(h, h + 1)


def orbit_trap_horizon(s: FiniteSystem, x: int, eps: int) -> tuple[int, int]:
    """Least ``n >= 1`` with some cycle inside ``∪_{i=1..n} B_eps(f^i(x))``.

    Returns ``(n, z)`` where ``z`` is the least point of the first covered
    cycle (in least-member order); ``omega(z)`` is that cycle.
    """
    if eps < 1:
        raise ValueError("eps must be >= 1")
    cycles = [c.cycle.bits for c in all_omega_sets(s)]
    covered = 0
    y = x
    n = 0
    while True:
        n += 1
        y = s.map[y]
        covered |= s.ball_mask(y, eps)
        for c in cycles:
            if c & ~covered == 0:
                return n, (c & -c).bit_length() - 1


def uniform_trap_horizon(s: FiniteSystem, eps: int) -> int:
    return max(orbit_trap_horizon(s, x, eps)[0] for x in s.points)

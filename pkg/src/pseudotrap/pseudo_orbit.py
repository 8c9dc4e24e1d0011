"""Pseudo-orbit graphs and walks.

The pseudo-orbit graph of a system under an entourage ``D`` has an edge
``x -> y`` exactly when ``(f(x), y) ∈ D``, so its walks of length ``n`` are
the ``D``-pseudo-orbit prefixes ``(x_0, ..., x_n)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .core import Entourage, FiniteSystem, Walk, metric_entourage

__all__ = [
    "EnumerationLimitExceeded",
    "PseudoOrbitGraph",
    "build_graph",
    "metric_graph",
    "delta_grid",
    "eps_grid",
    "is_pseudo_orbit",
    "first_violation",
    "sample_walk",
    "count_walks",
    "enumerate_walks",
    "to_dot",
    "DEFAULT_WALK_CAP",
]

DEFAULT_WALK_CAP = 10**7


class EnumerationLimitExceeded(RuntimeError):
    """The number of walks requested exceeds the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} walks exceed the enumeration cap of {cap}")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class PseudoOrbitGraph:
    num_points: int
    adjacency: tuple[int, ...]  # bitmask of successors per point
    source: str

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        """Sorted successor lists."""
        return tuple(
            tuple(y for y in range(self.num_points) if row >> y & 1) for row in self.adjacency
        )

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.adjacency[x] >> y & 1)

    def out_degree(self, x: int) -> int:
        return bin(self.adjacency[x]).count("1")

    def table(self) -> list[list[bool]]:
        return [[bool(r >> y & 1) for y in range(self.num_points)] for r in self.adjacency]


def build_graph(s: FiniteSystem, d: Entourage, source: str | None = None) -> PseudoOrbitGraph:
    if d.num_points != s.num_points:
        raise ValueError(f"dimension mismatch: entourage on {d.num_points}, system on {s.num_points}")
    # Entourage construction already enforces reflexivity.
    adj = tuple(d.rows[s.map[x]] for x in s.points)
    return PseudoOrbitGraph(s.num_points, adj, source or "entourage")


def metric_graph(s: FiniteSystem, delta: int) -> PseudoOrbitGraph:
    """Graph of delta-pseudo-orbits: ``x -> y`` iff ``d(f(x), y) < delta``."""
    key = ("graph", delta)
    g = s._cache.get(key)
    if g is None:
        g = s._cache[key] = build_graph(s, metric_entourage(s, delta), f"delta={delta}")
    return g


def _grid(values) -> list[int]:
    return [1] + sorted({v + 1 for v in values if v >= 1})


def delta_grid(s: FiniteSystem) -> list[int]:
    """Every threshold at which the delta-pseudo-orbit graph changes.

    The graph for any ``delta > 0`` equals the graph for the largest grid
    value not exceeding it, so sweeping the grid covers all ``delta``.
    """
    grid = s._cache.get("delta_grid")
    if grid is None:
        grid = s._cache["delta_grid"] = _grid(s.dist[s.map[x]][y] for x in s.points for y in s.points)
    return list(grid)


def eps_grid(s: FiniteSystem) -> list[int]:
    grid = s._cache.get("eps_grid")
    if grid is None:
        grid = s._cache["eps_grid"] = _grid(v for row in s.dist for v in row)
    return list(grid)


def first_violation(s: FiniteSystem, walk: Walk, delta: int) -> int | None:
    """Index ``i`` of the first step with ``d(f(x_i), x_{i+1}) >= delta``, or None."""
    for i in range(len(walk) - 1):
        if s.dist[s.map[walk[i]]][walk[i + 1]] >= delta:
            return i
    return None


def is_pseudo_orbit(s: FiniteSystem, walk: Walk, delta: int) -> bool:
    return first_violation(s, walk, delta) is None


def sample_walk(g: PseudoOrbitGraph, start: int, steps: int, seed: int) -> Walk:
    """Uniform random out-edge at every step.

    The generator is ``random.Random(seed)`` (Mersenne Twister) and each step
    draws ``randrange(out_degree)`` over the sorted successor list.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    rng = random.Random(seed)
    succ = g.succ
    walk = [start]
    x = start
    for _ in range(steps):
        options = succ[x]
        x = options[rng.randrange(len(options))]
        walk.append(x)
    return tuple(walk)


def count_walks(g: PseudoOrbitGraph, steps: int) -> int:
    """Number of length-``steps`` walks over all starts."""
    ways = [1] * g.num_points  # walks of length k starting at x
    succ = g.succ
    for _ in range(steps):
        ways = [sum(ways[y] for y in succ[x]) for x in range(g.num_points)]
    return sum(ways)


def enumerate_walks(g: PseudoOrbitGraph, steps: int, cap: int = DEFAULT_WALK_CAP) -> Iterator[Walk]:
    """All walks of length ``steps`` in lexicographic order.

    The count can be exponential in ``steps``; it is computed first and
    :class:`EnumerationLimitExceeded` is raised if it exceeds ``cap``.
    """
    total = count_walks(g, steps)
    if total > cap:
        raise EnumerationLimitExceeded(total, cap)
    return _walks(g.succ, g.num_points, steps)


def _walks(succ, num_points: int, steps: int) -> Iterator[Walk]:
    for x0 in range(num_points):
        if steps == 0:
            yield (x0,)
            continue
        path = [x0]
        stack = [iter(succ[x0])]
        while stack:
            y = next(stack[-1], None)
            if y is None:
                stack.pop()
                path.pop()
                continue
            path.append(y)
            if len(path) == steps + 1:
                yield tuple(path)
                path.pop()
            else:
                stack.append(iter(succ[y]))


def to_dot(s: FiniteSystem, g: PseudoOrbitGraph) -> str:
    """Graphviz text with nodes and edges in index order."""
    q = lambda x: '"' + s.label(x).replace("\\", "\\\\").replace('"', '\\"') + '"'  # noqa: E731
    lines = ["digraph pseudo_orbit {", f"  // {g.source}"]
    lines += [f"  {q(x)};" for x in s.points]
    for x, ys in enumerate(g.succ):
        lines += [f"  {q(x)} -> {q(y)};" for y in ys]
    lines.append("}")
    return "\n".join(lines) + "\n"

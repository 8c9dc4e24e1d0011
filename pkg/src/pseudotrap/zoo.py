"""Deterministic generators of test systems."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterator, Sequence

from .core import FiniteSystem

__all__ = [
    "cyclic_rotation",
    "interval_map_grid",
    "random_map",
    "disjoint_attractors",
    "line_metric",
    "zoo_systems",
]


def line_metric(n: int, scale: int = 1) -> list[list[int]]:
    return [[abs(i - j) * scale for j in range(n)] for i in range(n)]


def _arc(i: int, j: int, q: int) -> int:
    k = abs(i - j)
    return min(k, q - k)


def cyclic_rotation(q: int, metric: str = "arc", scale: int = 1) -> FiniteSystem:
    """Rotation ``i -> i + 1 mod q``.

    ``arc``: ``d(i, j) = min(|i - j|, q - |i - j|) * scale``.
    ``chordlike``: chord length of the regular q-gon inscribed in the unit
    circle, ``2 sin(pi k / q)`` for arc separation ``k``, multiplied by
    ``scale`` and rounded up to an integer. The table is validated like any
    other system, so a scale too coarse to keep the triangle inequality (or
    positivity) raises ``SystemValidationError``.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if metric == "arc":
        dist = [[_arc(i, j, q) * scale for j in range(q)] for i in range(q)]
    elif metric == "chordlike":
        table = [math.ceil(2 * scale * math.sin(math.pi * k / q) - 1e-9) for k in range(q // 2 + 1)]
        table[0] = 0
        dist = [[table[_arc(i, j, q)] for j in range(q)] for i in range(q)]
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return FiniteSystem.build(dist, [(i + 1) % q for i in range(q)], scale=scale)


def _nearest_center(y: Fraction, n: int) -> int:
    # centres (2k+1)/(2n); the cell boundary k/n is a tie and rounds down
    k = math.ceil(y * n) - 1
    return min(max(k, 0), n - 1)


def interval_map_grid(
    kind: str,
    grid: int,
    scale: int = 1,
    r: tuple[int, int] = (4, 1),
) -> FiniteSystem:
    """Discretize a map of ``[0, 1]`` onto the cell centres ``(2k+1)/(2N)``.

    ``kind`` is ``"logistic"`` (``r x (1 - x)`` with rational ``r``) or
    ``"tent"`` (``2x`` on ``[0, 1/2]``, ``2 - 2x`` above). Images are exact
    rationals, clamped to ``[0, 1]``, sent to the nearest centre.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    rr = Fraction(r[0], r[1])
    fmap = []
    for k in range(grid):
        x = Fraction(2 * k + 1, 2 * grid)
        if kind == "logistic":
            y = rr * x * (1 - x)
        elif kind == "tent":
            y = 2 * x if x <= Fraction(1, 2) else 2 - 2 * x
        else:
            raise ValueError(f"unknown interval map {kind!r}")
        y = min(max(y, Fraction(0)), Fraction(1))
        fmap.append(_nearest_center(y, grid))
    labels = [f"{2 * k + 1}/{2 * grid}" for k in range(grid)]
    return FiniteSystem.build(line_metric(grid, scale), fmap, scale=scale, labels=labels)


def _closure(w: list[list[int]]) -> list[list[int]]:
    n = len(w)
    d = [row[:] for row in w]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def random_map(n: int, metric: str = "line", seed: int = 0, scale: int = 1, max_weight: int = 9) -> FiniteSystem:
    """Seeded random self-map.

    ``line``: ``d(i, j) = |i - j| * scale``. ``random-valid``: shortest-path
    closure of a complete graph with weights drawn from ``1..max_weight``
    (times ``scale``), which satisfies the triangle inequality by construction.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    fmap = [rng.randrange(n) for _ in range(n)]
    if metric == "line":
        dist = line_metric(n, scale)
    elif metric == "random-valid":
        w = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                w[i][j] = w[j][i] = rng.randint(1, max_weight) * scale
        dist = _closure(w)
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return FiniteSystem.build(dist, fmap, scale=scale)


def disjoint_attractors(gaps: Sequence[int], separation: int, scale: int = 1) -> FiniteSystem:
    """Disjoint rotations of the given sizes; arc metric inside each cycle and
    ``separation`` between points of different cycles."""
    if len(gaps) < 2 or any(g < 1 for g in gaps):
        raise ValueError("need at least two cycles of positive size")
    diam = max(g // 2 for g in gaps) * scale
    if separation < max(diam, 1):
        raise ValueError(f"separation {separation} is below the largest cycle diameter {diam}")
    owner, offset, fmap = [], [], []
    for c, g in enumerate(gaps):
        base = len(fmap)
        for i in range(g):
            owner.append(c)
            offset.append(i)
            fmap.append(base + (i + 1) % g)
    n = len(fmap)
    dist = [
        [
            _arc(offset[i], offset[j], gaps[owner[i]]) * scale if owner[i] == owner[j] else separation
            for j in range(n)
        ]
        for i in range(n)
    ]
    return FiniteSystem.build(dist, fmap, scale=scale)


def zoo_systems(max_points: int = 8, random_seeds: int = 20) -> Iterator[tuple[str, FiniteSystem]]:
    """Named test systems with at most ``max_points`` points.

    Rotations use every ``q`` up to 12 and then a sparse ladder; random maps
    use the random-valid metric up to 8 points and the line metric above.
    """
    qs = [q for q in list(range(1, 13)) + [16, 24, 32, 48, 64] if q <= max_points]
    for q in qs:
        yield f"rotation-arc-{q}", cyclic_rotation(q)
    for q in (5, 8, 12):
        if q <= max_points:
            yield f"rotation-chord-{q}", cyclic_rotation(q, "chordlike", 100)
    for gaps in ([1, 1], [2, 1], [2, 2], [3, 1], [1, 1, 1], [4, 3], [6, 6, 4]):
        if sum(gaps) <= max_points:
            yield f"attractors-{'-'.join(map(str, gaps))}", disjoint_attractors(gaps, 10)
    for n in (2, 3, 4, 5, 6, 7, 8, 16, 32, 64):
        if n <= max_points:
            yield f"tent-{n}", interval_map_grid("tent", n, 10)
            yield f"logistic4-{n}", interval_map_grid("logistic", n, 10, (4, 1))
            yield f"logistic7/2-{n}", interval_map_grid("logistic", n, 10, (7, 2))
    for seed in range(random_seeds):
        n = 1 + seed % 8
        if n <= max_points:
            yield f"random-valid-{seed}", random_map(n, "random-valid", seed)
    for n in (12, 16, 24, 32, 48, 64):
        if n <= max_points:
            for seed in range(3):
                yield f"random-line-{n}-{seed}", random_map(n, "line", seed, 10)

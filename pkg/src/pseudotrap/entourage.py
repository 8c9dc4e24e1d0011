"""Relation algebra on entourages: composition, inverse, n-fold powers, balls,
and the base axioms of a uniformity."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import Entourage, PointSet

__all__ = [
    "compose",
    "inverse",
    "n_fold",
    "ball",
    "ball_set",
    "AxiomResult",
    "UniformityReport",
    "check_uniformity_base",
]


def _same_size(a: Entourage, b: Entourage) -> None:
    if a.num_points != b.num_points:
        raise ValueError(f"dimension mismatch: {a.num_points} vs {b.num_points} points")


def compose(a: Entourage, b: Entourage) -> Entourage:
    """``a ∘ b = {(x, z) : (x, y) ∈ a and (y, z) ∈ b for some y}``."""
    _same_size(a, b)
    rows = []
    for r in a.rows:
        out, y = 0, 0
        while r:
            if r & 1:
                out |= b.rows[y]
            r >>= 1
            y += 1
        rows.append(out)
    return Entourage(a.num_points, tuple(rows))


def inverse(a: Entourage) -> Entourage:
    n = a.num_points
    rows = [0] * n
    for i, r in enumerate(a.rows):
        for j in range(n):
            if r >> j & 1:
                rows[j] |= 1 << i
    return Entourage(n, tuple(rows))


def n_fold(a: Entourage, n: int) -> Entourage:
    if n < 1:
        raise ValueError("n-fold composition needs n >= 1")
    out = a
    for _ in range(n - 1):
        out = compose(out, a)
    return out


def ball(a: Entourage, p: int) -> PointSet:
    """``B_a(p) = {y : (p, y) ∈ a}``."""
    return PointSet(a.num_points, a.rows[p])


def ball_set(a: Entourage, s: PointSet) -> PointSet:
    bits = 0
    for p in s:
        bits |= a.rows[p]
    return PointSet(a.num_points, bits)


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    witness: tuple[int, ...] | None = None

    def as_dict(self) -> dict:
        return {"axiom": self.name, "passed": self.passed, "witness": list(self.witness) if self.witness else None}


@dataclass(frozen=True)
class UniformityReport:
    axioms: tuple[AxiomResult, ...]
    separating: bool
    family_size: int = field(default=0)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.axioms)

    def as_dict(self) -> dict:
        return {
            "family_size": self.family_size,
            "axioms": [a.as_dict() for a in self.axioms],
            "separating": self.separating,
            "passed": self.passed,
        }


def check_uniformity_base(fam: Sequence[Entourage]) -> UniformityReport:
    """Check the three base axioms on a finite family.

    1. intersection: for every ``E1, E2`` some member lies inside ``E1 ∩ E2``
    2. halving: for every ``E`` some member ``D`` has ``D ∘ D ⊆ E``
    3. inverse: for every ``E`` some member ``D`` has ``D⁻¹ ⊆ E``

    A failing axiom carries the family indices that have no witness.
    """
    if not fam:
        raise ValueError("empty family")
    for e in fam[1:]:
        _same_size(fam[0], e)
    n = fam[0].num_points
    squares = [compose(d, d) for d in fam]
    inverses = [inverse(d) for d in fam]

    def meet(e1: Entourage, e2: Entourage) -> Entourage:
        return Entourage(n, tuple(x & y for x, y in zip(e1.rows, e2.rows)))

    ax1 = AxiomResult("intersection", True)
    for i in range(len(fam)):
        for j in range(i, len(fam)):
            m = meet(fam[i], fam[j])
            if not any(d.issubset(m) for d in fam):
                ax1 = AxiomResult("intersection", False, (i, j))
                break
        if not ax1.passed:
            break

    ax2 = AxiomResult("halving", True)
    for i, e in enumerate(fam):
        if not any(sq.issubset(e) for sq in squares):
            ax2 = AxiomResult("halving", False, (i,))
            break

    ax3 = AxiomResult("inverse", True)
    for i, e in enumerate(fam):
        if not any(inv.issubset(e) for inv in inverses):
            ax3 = AxiomResult("inverse", False, (i,))
            break

    common = (1 << n) - 1
    rows = [common] * n
    for e in fam:
        rows = [x & y for x, y in zip(rows, e.rows)]
    separating = all(r == 1 << i for i, r in enumerate(rows))
    return UniformityReport((ax1, ax2, ax3), separating, len(fam))

"""Finite models of compact metric dynamical systems.

A :class:`FiniteSystem` is a finite point set carrying an exact integer metric
and a self-map. Every finite discrete space is compact Hausdorff and every
self-map of it is continuous, so these are honest instances of a dynamical
system ``(X, f)``. Distances are stored as integers in units of ``1/scale``;
nothing in here touches floating point.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "SystemValidationError",
    "FiniteSystem",
    "Entourage",
    "PointSet",
    "Walk",
    "load_system",
    "save_system",
    "system_hash",
    "metric_entourage",
]


class SystemValidationError(ValueError):
    """Raised when a system document or table breaks a model invariant."""


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


@dataclass(frozen=True)
class PointSet:
    """Subset of ``0..num_points-1`` stored as a bitmask."""

    num_points: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.num_points:
            raise ValueError("point set has members outside 0..%d" % (self.num_points - 1))

    @classmethod
    def of(cls, num_points: int, indices: Iterable[int]) -> "PointSet":
        bits = 0
        for i in indices:
            if not 0 <= i < num_points:
                raise ValueError(f"point index {i} out of range for {num_points} points")
            bits |= 1 << i
        return cls(num_points, bits)

    @classmethod
    def full(cls, num_points: int) -> "PointSet":
        return cls(num_points, (1 << num_points) - 1)

    @classmethod
    def empty(cls, num_points: int) -> "PointSet":
        return cls(num_points, 0)

    def __iter__(self) -> Iterator[int]:
        b, i = self.bits, 0
        while b:
            if b & 1:
                yield i
            b >>= 1
            i += 1

    def __contains__(self, i) -> bool:
        return 0 <= i < self.num_points and bool(self.bits >> i & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.num_points, self.bits | other.bits)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.num_points, self.bits & other.bits)

    def __sub__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.num_points, self.bits & ~other.bits)

    def issubset(self, other: "PointSet") -> bool:
        return self.bits & ~other.bits == 0

    __le__ = issubset

    def min(self) -> int:
        if not self.bits:
            raise ValueError("empty point set has no least element")
        return (self.bits & -self.bits).bit_length() - 1

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"PointSet({self.to_list()})"


# A walk is a plain tuple of point indices (x_0, ..., x_n); its length is n.
Walk = tuple


@dataclass(frozen=True)
class FiniteSystem:
    """Point set, scaled integer metric and self-map.

    Construct through :meth:`build` (or :func:`load_system`) to get the
    invariants checked; the bare constructor trusts its arguments.
    """

    num_points: int
    dist: tuple[tuple[int, ...], ...]
    map: tuple[int, ...]
    scale: int = 1
    labels: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        dist: Sequence[Sequence[int]],
        fmap: Sequence[int],
        scale: int = 1,
        labels: Sequence[str] | None = None,
    ) -> "FiniteSystem":
        n = len(fmap)
        s = cls(
            num_points=n,
            dist=tuple(tuple(row) for row in dist),
            map=tuple(fmap),
            scale=scale,
            labels=tuple(labels) if labels is not None else None,
        )
        s.validate()
        return s

    def validate(self) -> None:
        n = self.num_points
        if not _is_int(n) or n < 1:
            raise SystemValidationError("num_points must be a positive integer")
        if not _is_int(self.scale) or self.scale < 1:
            raise SystemValidationError("scale must be a positive integer")
        if len(self.map) != n:
            raise SystemValidationError(f"map has {len(self.map)} entries, expected {n}")
        for i, j in enumerate(self.map):
            if not _is_int(j) or not 0 <= j < n:
                raise SystemValidationError(f"map[{i}] = {j!r} is not a point index")
        if self.labels is not None:
            if len(self.labels) != n or not all(isinstance(x, str) for x in self.labels):
                raise SystemValidationError(f"labels must be {n} strings")
        if len(self.dist) != n:
            raise SystemValidationError(f"dist has {len(self.dist)} rows, expected {n}")
        for i, row in enumerate(self.dist):
            if len(row) != n:
                raise SystemValidationError(f"dist row {i} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if not _is_int(v) or v < 0:
                    raise SystemValidationError(f"dist[{i}][{j}] = {v!r} is not a nonnegative integer")
        for i in range(n):
            if self.dist[i][i] != 0:
                raise SystemValidationError(f"dist[{i}][{i}] = {self.dist[i][i]} is not zero")
            for j in range(i + 1, n):
                if self.dist[i][j] != self.dist[j][i]:
                    raise SystemValidationError(f"dist is not symmetric at ({i}, {j})")
                if self.dist[i][j] == 0:
                    raise SystemValidationError(f"distinct points ({i}, {j}) at distance 0")
        # object dtype keeps arbitrary-size ints exact
        d = np.array(self.dist, dtype=np.int64 if self._fits_int64() else object)
        bad = d[:, None, :] > d[:, :, None] + d[None, :, :]
        if bad.any():
            i, j, k = (int(v) for v in np.argwhere(bad)[0])
            raise SystemValidationError(
                f"triangle inequality fails at ({i}, {j}, {k}): "
                f"dist[{i}][{k}] = {self.dist[i][k]} > "
                f"{self.dist[i][j]} + {self.dist[j][k]}"
            )

    def _fits_int64(self) -> bool:
        return max(max(row) for row in self.dist) < 2**61

    def f(self, x: int) -> int:
        return self.map[x]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    @property
    def points(self) -> range:
        return range(self.num_points)

    def diameter(self) -> int:
        return max(max(row) for row in self.dist)

    def ball_mask(self, x: int, eps: int) -> int:
        """Bitmask of the open ball ``{y : d(x, y) < eps}``."""
        return self.ball_masks(eps)[x]

    def ball_masks(self, eps: int) -> tuple[int, ...]:
        """Open-ball bitmasks of every point, memoized per radius."""
        key = ("balls", eps)
        masks = self._cache.get(key)
        if masks is None:
            masks = tuple(
                sum(1 << y for y, v in enumerate(row) if v < eps) for row in self.dist
            )
            self._cache[key] = masks
        return masks

    def __hash__(self):
        return hash((self.num_points, self.dist, self.map))


@dataclass(frozen=True, eq=True)
class Entourage:
    """Reflexive relation on the points of a system, one bitmask per row.

    ``rows[i] >> j & 1`` means ``(i, j)`` belongs to the relation.
    """

    num_points: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.num_points:
            raise ValueError(f"expected {self.num_points} rows, got {len(self.rows)}")
        full = (1 << self.num_points) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise ValueError(f"row {i} relates to points outside the space")
            if not r >> i & 1:
                raise ValueError(f"relation is not reflexive: ({i}, {i}) missing")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[bool]]) -> "Entourage":
        return cls(len(table), tuple(sum(1 << j for j, v in enumerate(row) if v) for row in table))

    @classmethod
    def from_pairs(cls, num_points: int, pairs: Iterable[tuple[int, int]]) -> "Entourage":
        """Reflexive closure of ``pairs``."""
        rows = [1 << i for i in range(num_points)]
        for i, j in pairs:
            rows[i] |= 1 << j
        return cls(num_points, tuple(rows))

    @classmethod
    def diagonal(cls, num_points: int) -> "Entourage":
        return cls(num_points, tuple(1 << i for i in range(num_points)))

    @classmethod
    def full(cls, num_points: int) -> "Entourage":
        full = (1 << num_points) - 1
        return cls(num_points, (full,) * num_points)

    @property
    def rel(self) -> list[list[bool]]:
        return [[bool(r >> j & 1) for j in range(self.num_points)] for r in self.rows]

    def __contains__(self, pair) -> bool:
        i, j = pair
        return bool(self.rows[i] >> j & 1)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i, r in enumerate(self.rows):
            for j in range(self.num_points):
                if r >> j & 1:
                    yield i, j

    def issubset(self, other: "Entourage") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    __le__ = issubset

    def is_symmetric(self) -> bool:
        return all((i, j) in self for j, i in self.pairs())


def metric_entourage(s: FiniteSystem, eps: int) -> Entourage:
    """The entourage ``{(x, y) : d(x, y) < eps}``."""
    if not _is_int(eps) or eps < 1:
        raise ValueError(f"eps must be a positive integer, got {eps!r}")
    return Entourage(s.num_points, s.ball_masks(eps))


_KEYS = ("num_points", "labels", "scale", "dist", "map")


def save_system(s: FiniteSystem) -> str:
    """Canonical JSON text: fixed key order, 2-space indent, LF, trailing newline."""
    dump = lambda v: json.dumps(v, ensure_ascii=False, separators=(", ", ": "))  # noqa: E731
    lines = ["{", f'  "num_points": {s.num_points},']
    if s.labels is not None:
        lines.append(f'  "labels": {dump(list(s.labels))},')
    lines.append(f'  "scale": {s.scale},')
    lines.append('  "dist": [')
    for i, row in enumerate(s.dist):
        lines.append("    " + dump(list(row)) + ("," if i < s.num_points - 1 else ""))
    lines.append("  ],")
    lines.append(f'  "map": {dump(list(s.map))}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_system(data: str | bytes) -> FiniteSystem:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SystemValidationError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SystemValidationError("system document must be a JSON object")
    unknown = set(doc) - set(_KEYS)
    if unknown:
        raise SystemValidationError(f"unknown keys: {sorted(unknown)}")
    for key in ("num_points", "dist", "map"):
        if key not in doc:
            raise SystemValidationError(f"missing key {key!r}")
    n = doc["num_points"]
    if not _is_int(n) or n < 1:
        raise SystemValidationError("num_points must be a positive integer")
    dist, fmap = doc["dist"], doc["map"]
    if not isinstance(dist, list) or not all(isinstance(r, list) for r in dist):
        raise SystemValidationError("dist must be a list of lists")
    if not isinstance(fmap, list):
        raise SystemValidationError("map must be a list")
    if len(fmap) != n:
        raise SystemValidationError(f"map has {len(fmap)} entries, num_points is {n}")
    labels = doc.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise SystemValidationError("labels must be a list of strings")
    s = FiniteSystem(
        num_points=n,
        dist=tuple(tuple(r) for r in dist),
        map=tuple(fmap),
        scale=doc.get("scale", 1),
        labels=tuple(labels) if labels is not None else None,
    )
    s.validate()
    return s


def system_hash(s: FiniteSystem) -> str:
    """sha256 of the canonical serialization."""
    h = s._cache.get("sha256")
    if h is None:
        h = s._cache["sha256"] = hashlib.sha256(save_system(s).encode("utf-8")).hexdigest()
    return h

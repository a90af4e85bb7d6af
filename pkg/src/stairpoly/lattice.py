"""Binomial paths and staircase polygons on the 45-degree rotated square lattice."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

UP = 1
DOWN = -1


class LatticeError(ValueError):
    """Raised when a path or polygon violates the lattice constraints."""


@dataclass(frozen=True)
class BinomialPath:
    start: tuple[int, int]
    steps: tuple[int, ...]
    half_space: bool = False

    def __post_init__(self):
        x0, y0 = self.start
        if (x0 - y0) % 2:
            raise LatticeError(f"start {self.start} is not a lattice vertex (x and y must share parity)")
        object.__setattr__(self, "steps", tuple(self.steps))
        if any(s not in (UP, DOWN) for s in self.steps):
            raise LatticeError("steps must be +1 (up) or -1 (down)")
        if self.half_space and min(self.heights) < 0:
            raise LatticeError("half-space path dips below y = 0")

    @classmethod
    def from_heights(cls, x0: int, heights: Sequence[int], half_space: bool = False) -> BinomialPath:
        steps = tuple(b - a for a, b in zip(heights, heights[1:]))
        return cls((x0, heights[0]), steps, half_space)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def heights(self) -> tuple[int, ...]:
        h = [self.start[1]]
        for s in self.steps:
            h.append(h[-1] + s)
        return tuple(h)

    @property
    def vertices(self) -> tuple[tuple[int, int], ...]:
        x0 = self.start[0]
        return tuple((x0 + i, h) for i, h in enumerate(self.heights))

    def reflected(self) -> BinomialPath:
        """Mirror image through a vertical line; the new start is the old end vertex."""
        return BinomialPath.from_heights(self.start[0] + len(self), self.heights[::-1], self.half_space)


@dataclass(frozen=True)
class StaircasePolygon:
    upper: BinomialPath
    lower: BinomialPath

    def __post_init__(self):
        up, lo = self.upper, self.lower
        n = len(up)
        if n != len(lo):
            raise LatticeError("upper and lower paths must have the same length")
        if n < 2:
            raise LatticeError("a staircase polygon needs paths of at least two steps")
        if up.start != lo.start:
            raise LatticeError("paths must share their first vertex")
        hu, hl = up.heights, lo.heights
        if hu[-1] != hl[-1]:
            raise LatticeError("paths must share their last vertex")
        if any(u <= l for u, l in zip(hu[1:-1], hl[1:-1])):
            raise LatticeError("upper path must lie strictly above the lower path between the endpoints")

    @classmethod
    def from_heights(cls, upper: Sequence[int], lower: Sequence[int]) -> StaircasePolygon:
        x0 = upper[0] % 2
        return cls(BinomialPath.from_heights(x0, upper), BinomialPath.from_heights(x0, lower))

    @property
    def half_length(self) -> int:
        return len(self.upper)

    @property
    def length(self) -> int:
        return 2 * len(self.upper)

    @property
    def in_half_space(self) -> bool:
        return min(self.lower.heights) >= 0

    def reflected(self) -> StaircasePolygon:
        return StaircasePolygon.from_heights(self.upper.heights[::-1], self.lower.heights[::-1])


@dataclass(frozen=True)
class PolygonStats:
    v: int
    h: int


class PolygonClass(str, enum.Enum):
    S = "S"
    G = "G"
    C = "C"
    GC = "GC"


def to_class(c: PolygonClass | str) -> PolygonClass:
    return c if isinstance(c, PolygonClass) else PolygonClass(str(c).upper())


# endpoint ordinates (left, right) of grafted-and-centred polygons by n mod 4
GC_ENDPOINTS = {0: (2, 2), 1: (2, 1), 2: (1, 1), 3: (1, 2)}


def polygon_stats(p: StaircasePolygon) -> PolygonStats:
    if not p.in_half_space:
        raise LatticeError("polygon leaves the half-space y >= 0")
    n = p.half_length
    hl = p.lower.heights
    # the upper interior is strictly above the lower one, so every surface
    # vertex of the polygon is a vertex of the lower path; endpoints count once
    v = sum(1 for h in hl if h == 0)
    return PolygonStats(v=v, h=p.upper.heights[n // 2])


def classify(p: StaircasePolygon) -> set[PolygonClass]:
    stats = polygon_stats(p)
    if stats.v < 1:
        return set()
    out = {PolygonClass.S}
    n = p.half_length
    left = p.lower.heights[0]
    right = p.lower.heights[-1]
    if left == 1 and right == (1 if n % 2 == 0 else 2):
        out.add(PolygonClass.G)
    if p.lower.heights[n // 2] == 0:
        out.add(PolygonClass.C)
        if (left, right) == GC_ENDPOINTS[n % 4]:
            out.add(PolygonClass.GC)
    return out

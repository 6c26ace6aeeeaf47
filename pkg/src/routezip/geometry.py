"""Planar geometry shared by the simplifier, the edge thinner, and sweep scaling.

All distances are plain Euclidean on raw coordinate values: route files carry
lon/lat in degrees and the thinning thresholds are expressed in the same
units, so no geodesic correction is applied anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Point",
    "Segment",
    "Polyline",
    "perpendicular_distance",
    "chord_offsets",
    "mean_adjacent_distance",
    "scale_route",
]


@dataclass(frozen=True)
class Point:
    """2-D point; x/y are lon/lat for GPS data or plain plane coordinates."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate ({self.x!r}, {self.y!r})")


@dataclass(frozen=True)
class Segment:
    """Segment between two points; a == b is allowed (degenerate)."""

    a: Point
    b: Point


class Polyline:
    """Ordered point sequence; index i doubles as the vertex label in the graph model."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Point | Sequence[float]]):
        self.points: tuple[Point, ...] = tuple(
            p if isinstance(p, Point) else Point(float(p[0]), float(p[1]))
            for p in points
        )

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polyline) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"Polyline({len(self.points)} points)"

    def as_array(self) -> np.ndarray:
        """Coordinates as an (n, 2) float64 array."""
        return np.array([(p.x, p.y) for p in self.points], dtype=float).reshape(-1, 2)

    def take(self, indices: Iterable[int]) -> "Polyline":
        """New polyline keeping only the given original indices, in order."""
        return Polyline(self.points[i] for i in indices)


def perpendicular_distance(p: Point, s: Segment) -> float:
    """Distance from p to the infinite line through s.

    Falls back to the point-to-point distance when the segment is degenerate,
    so duplicate consecutive route points never raise.
    """
    dx = s.b.x - s.a.x
    dy = s.b.y - s.a.y
    norm = math.hypot(dx, dy)
    if norm == 0.0:
        return math.hypot(p.x - s.a.x, p.y - s.a.y)
    return abs(dx * (p.y - s.a.y) - dy * (p.x - s.a.x)) / norm


def chord_offsets(coords: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Distances of coords[lo+1:hi] to the infinite line through coords[lo], coords[hi].

    Vectorized twin of :func:`perpendicular_distance`; the arithmetic matches
    it operation for operation so the two never disagree on a comparison
    against a threshold.
    """
    ax, ay = float(coords[lo, 0]), float(coords[lo, 1])
    bx, by = float(coords[hi, 0]), float(coords[hi, 1])
    interior = coords[lo + 1 : hi]
    dx = bx - ax
    dy = by - ay
    norm = math.hypot(dx, dy)
    if norm == 0.0:
        return np.hypot(interior[:, 0] - ax, interior[:, 1] - ay)
    return np.abs(dx * (interior[:, 1] - ay) - dy * (interior[:, 0] - ax)) / norm


def mean_adjacent_distance(route: Polyline) -> float:
    """Arithmetic mean of Euclidean distances between consecutive points."""
    if len(route) < 2:
        raise ValueError("degenerate route: need at least 2 points")
    arr = route.as_array()
    steps = np.hypot(np.diff(arr[:, 0]), np.diff(arr[:, 1]))
    return float(steps.mean())


def scale_route(route: Polyline, target_mean: float) -> Polyline:
    """Uniformly scale the route about the origin so the mean adjacent distance becomes target_mean."""
    if target_mean <= 0.0:
        raise ValueError("target mean must be positive")
    mean = mean_adjacent_distance(route)
    if mean == 0.0:
        raise ValueError("cannot scale degenerate route (zero mean adjacent distance)")
    factor = target_mean / mean
    return Polyline(Point(p.x * factor, p.y * factor) for p in route)

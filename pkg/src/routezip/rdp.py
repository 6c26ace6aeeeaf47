"""Classical baseline: recursive Ramer-Douglas-Peucker polyline simplification.

The recursion keeps a range's endpoints, finds the interior point farthest
from the endpoint chord, and splits there whenever that distance exceeds the
threshold. It is implemented with an explicit stack (same kept set as the
plain recursion, without the call-depth limit on long tracks).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import Polyline, chord_offsets

__all__ = ["RdpResult", "RdpStats", "rdp_simplify", "rdp_compression_stats"]


@dataclass(frozen=True)
class RdpResult:
    """Sorted original indices retained by the simplification."""

    kept_indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.kept_indices)


class RdpStats(NamedTuple):
    selected: int
    dropped: int
    ratio: float


def rdp_simplify(route: Polyline, epsilon: float) -> RdpResult:
    """Simplify a route, returning the retained original point indices.

    Ties on the farthest interior point go to the lowest index (the strict
    "greater than current max" update). Endpoints are always retained.
    """
    n = len(route)
    if n < 2:
        raise ValueError("route too short: need at least 2 points")
    if epsilon < 0:
        raise ValueError("negative threshold")

    coords = route.as_array()
    keep = np.zeros(n, dtype=bool)
    keep[0] = keep[n - 1] = True
    stack: list[tuple[int, int]] = [(0, n - 1)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        offsets = chord_offsets(coords, lo, hi)
        at = int(np.argmax(offsets))  # first maximizer
        if offsets[at] > epsilon:
            split = lo + 1 + at
            keep[split] = True
            stack.append((split, hi))
            stack.append((lo, split))
    return RdpResult(tuple(int(i) for i in np.flatnonzero(keep)))


def rdp_compression_stats(route: Polyline, epsilon: float) -> RdpStats:
    """Selected/dropped counts and the selected/total ratio for one epsilon."""
    selected = len(rdp_simplify(route, epsilon).kept_indices)
    n = len(route)
    return RdpStats(selected, n - selected, selected / n)

"""Shared fixtures: the synthetic route corpus and the 5-vertex toy graph."""

import math

import numpy as np
import pytest

from routezip.geometry import Polyline
from routezip.route_graph import CandidateGraph

# 5-vertex example graph used throughout: vertex 0 has three forward edges,
# vertices 1 and 2 have two, vertex 3 has one.
TOY_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]


def toy_graph() -> CandidateGraph:
    return CandidateGraph.from_edges(5, TOY_EDGES)


def collinear_route(n: int, spacing: float = 1.0) -> Polyline:
    return Polyline([(i * spacing, 0.0) for i in range(n)])


def sine_route(n: int = 100, step: float = 0.1, amplitude: float = 1.0) -> Polyline:
    return Polyline([(i * step, amplitude * math.sin(i * step)) for i in range(n)])


def zigzag_route(n: int, height: float = 1.0, spacing: float = 1.0) -> Polyline:
    return Polyline([(i * spacing, height * (i % 2)) for i in range(n)])


def random_walk_route(n: int, seed: int, step: float = 1.0) -> Polyline:
    rng = np.random.default_rng(seed)
    deltas = rng.normal(scale=step, size=(n - 1, 2))
    pts = np.vstack([[0.0, 0.0], np.cumsum(deltas, axis=0)])
    return Polyline([tuple(p) for p in pts])


def skip_one_chain(n: int) -> CandidateGraph:
    """Chain where every vertex also connects two ahead (single-skip graph)."""
    edges = [(i, i + 1) for i in range(n - 1)] + [(i, i + 2) for i in range(n - 2)]
    return CandidateGraph.from_edges(n, edges)


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, Polyline]]:
    """Named routes exercising flat, smooth, jagged, and irregular shapes."""
    return [
        ("collinear", collinear_route(30)),
        ("sine", sine_route(60)),
        ("zigzag", zigzag_route(25, height=0.8)),
        ("walk-a", random_walk_route(30, seed=101)),
        ("walk-b", random_walk_route(45, seed=202, step=0.5)),
        ("walk-c", random_walk_route(20, seed=303, step=2.0)),
    ]


@pytest.fixture()
def toy():
    return toy_graph()

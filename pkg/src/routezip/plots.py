"""Matplotlib figure rendering for the CLI report paths; always writes files."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .geometry import Polyline
from .pipeline import SweepRow

__all__ = [
    "plot_compression",
    "plot_route_comparison",
    "plot_sweep",
    "plot_expectation_trace",
]


def _draw_route(ax, route: Polyline, kept: Sequence[int], title: str) -> None:
    xs = [p.x for p in route]
    ys = [p.y for p in route]
    ax.plot(xs, ys, color="lightgray", linewidth=1.0, zorder=1, label="original")
    kx = [route[i].x for i in kept]
    ky = [route[i].y for i in kept]
    ax.plot(kx, ky, color="tab:red", linewidth=1.2, zorder=2, label="kept")
    ax.scatter(kx, ky, color="tab:red", s=12, zorder=3)
    ax.set_title(f"{title} ({len(kept)}/{len(route)} points)")
    ax.set_xlabel("lon")
    ax.set_ylabel("lat")
    ax.grid(True, alpha=0.3)


def plot_compression(route: Polyline, kept: Sequence[int], path: str) -> None:
    """Original route with the kept points overlaid."""
    fig, ax = plt.subplots(figsize=(8, 6))
    _draw_route(ax, route, kept, "compressed")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_route_comparison(
    route: Polyline,
    rdp_kept: Sequence[int],
    proposed_kept: Sequence[int],
    path: str,
) -> None:
    """Side-by-side panels: RDP result vs the graph-optimization result."""
    fig, axes = plt.subplots(1, 2, figsize=(12, 5), sharex=True, sharey=True)
    _draw_route(axes[0], route, rdp_kept, "RDP")
    _draw_route(axes[1], route, proposed_kept, "proposed")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(rows: Sequence[SweepRow], path: str) -> None:
    """Selected-count ratio (proposed/RDP) against epsilon."""
    eps = [r.epsilon for r in rows]
    ratio = [r.ratio for r in rows]
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(eps, ratio, marker="o", markersize=3, linewidth=1.2)
    ax.axhline(1.0, color="gray", linestyle="--", linewidth=0.8)
    ax.set_xlabel("epsilon")
    ax.set_ylabel("proposed / RDP selected points")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_expectation_trace(trace: Sequence[float], path: str) -> None:
    """Objective value per optimizer evaluation for one QAOA solve."""
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(range(len(trace)), trace, linewidth=1.0)
    ax.set_xlabel("evaluation")
    ax.set_ylabel("Hamiltonian expectation")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

"""Figures written next to the text reports (matplotlib, non-interactive backend)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .. import bttree  # noqa: E402
from ..orbicurve import index_bound_branches  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 150,
}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_energy_trace(trace, path, title="energy per sweep"):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3))
        ax.plot(range(len(trace)), trace, marker="o", color="#1f4e79")
        ax.set_xlabel("sweep")
        ax.set_ylabel("energy")
        ax.set_title(title)
        ax.set_xticks(range(len(trace)))
        ax.set_ylim(bottom=0)
        return _save(fig, path)


def _radial_layout(center, radius):
    """Positions for the ball: each subtree gets an angular wedge proportional to its leaf count."""
    verts = bttree.ball(center, radius)
    inside = set(verts)
    dist = {v: bttree.distance(center, v) for v in verts}
    kids = {v: [w for w in bttree.fast_neighbors(v) if w in inside and dist[w] == dist[v] + 1] for v in verts}
    leaves = {}
    for v in sorted(verts, key=lambda u: -dist[u]):
        leaves[v] = max(1, sum(leaves[w] for w in kids[v]))
    pos = {center: (0.0, 0.0)}

    def place(v, lo, hi):
        start = lo
        for w in kids[v]:
            span = (hi - lo) * leaves[w] / leaves[v]
            mid = start + span / 2
            r = dist[w]
            pos[w] = (r * math.cos(mid), r * math.sin(mid))
            place(w, start, start + span)
            start += span

    place(center, 0.0, 2 * math.pi)
    return pos, kids


def plot_tree_ball(center, radius, path, highlight=(), title=None):
    pos, kids = _radial_layout(center, radius)
    marked = set(highlight)
    with plt.rc_context({**STYLE, "axes.grid": False}):
        fig, ax = plt.subplots(figsize=(5, 5))
        for v, ws in kids.items():
            for w in ws:
                (x0, y0), (x1, y1) = pos[v], pos[w]
                ax.plot([x0, x1], [y0, y1], color="0.6", lw=0.8, zorder=1)
        plain = [pos[v] for v in pos if v not in marked and v != center]
        hot = [pos[v] for v in pos if v in marked]
        if plain:
            ax.scatter(*zip(*plain), s=12, color="0.3", zorder=2)
        if hot:
            ax.scatter(*zip(*hot), s=36, color="#2a9d8f", zorder=3, label="highlighted")
        ax.scatter([0], [0], s=60, color="#e9c46a", edgecolor="k", zorder=4, label=str(center))
        ax.set_aspect("equal")
        ax.axis("off")
        ax.legend(loc="upper right", frameon=False, fontsize=7)
        ax.set_title(title or f"ball of radius {radius} around {center}")
        return _save(fig, path)


def plot_index_bounds(genus, punctures, path, span=6):
    bs = list(range(max(0, punctures - span // 2), punctures + span // 2 + 1))
    rows = []
    for b in bs:
        try:
            rows.append((b, index_bound_branches(genus, b)))
        except ValueError:
            continue
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3))
        xs = [b for b, _ in rows]
        ax.plot(xs, [r.some_index_at_least_3 for _, r in rows], marker="o", label="42(3b+2g-2) branch")
        ax.plot(xs, [r.two_indices_equal_2 for _, r in rows], marker="s", label="6(4b+2g-2) branch")
        ax.plot(xs, [r.positive_genus for _, r in rows], marker="^", label="2g-1 branch")
        ax.axvline(punctures, color="0.5", ls=":", lw=1)
        ax.set_xlabel("puncture bound b")
        ax.set_ylabel("index bound")
        ax.set_title(f"index bound branches, g = {genus}")
        ax.legend(frameon=False, fontsize=7)
        return _save(fig, path)

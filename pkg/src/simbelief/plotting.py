"""Draw a model's complex to an image file.

Vertices are colored by agent, every face of size three or more is shaded
through its triangles, and each world is labeled at its barycenter.  The
layout is a seeded spring layout, so the same model always gives the same
picture.
"""

from __future__ import annotations

import itertools
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from simbelief.dot import skeleton_edges  # noqa: E402
from simbelief.model import PolychromaticModel, sorted_names  # noqa: E402

LAYOUT_SEED = 7


def layout(model: PolychromaticModel) -> dict[str, tuple[float, float]]:
    g = nx.Graph()
    g.add_nodes_from(sorted_names(model.complex.vertices))
    g.add_edges_from(skeleton_edges(model))
    pos = nx.spring_layout(g, seed=LAYOUT_SEED)
    return {v: (float(x), float(y)) for v, (x, y) in pos.items()}


def draw_model(model: PolychromaticModel, path: str | Path, title: str | None = None) -> Path:
    """Render ``model`` to ``path``; the format follows the file suffix."""
    path = Path(path)
    pos = layout(model)
    agents = sorted_names(model.agents)
    palette = plt.get_cmap("tab10")
    shade = {a: palette(i % 10) for i, a in enumerate(agents)}

    fig, ax = plt.subplots(figsize=(5, 4))
    try:
        for f in sorted(model.complex.facets, key=sorted_names):
            for tri in itertools.combinations(sorted_names(f), 3):
                ax.add_patch(Polygon([pos[v] for v in tri], closed=True,
                                     facecolor="0.85", edgecolor="none", zorder=0))
        for u, v in skeleton_edges(model):
            (x0, y0), (x1, y1) = pos[u], pos[v]
            ax.plot([x0, x1], [y0, y1], color="0.3", lw=1.2, zorder=1)
        for v in sorted_names(model.complex.vertices):
            x, y = pos[v]
            color = model.coloring.get(v)
            ax.scatter([x], [y], s=260, color=shade.get(color, "white"), edgecolor="black", zorder=2)
            ax.annotate(f"{v}:{color or ''}", (x, y), textcoords="offset points", xytext=(0, 11),
                        ha="center", fontsize=8)
        for w in model.world_names:
            pts = [pos[v] for v in model.face(w)]
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            ax.text(cx, cy, w, ha="center", va="center", fontsize=9, style="italic", color="darkred")
        handles = [plt.Line2D([], [], marker="o", ls="", color=shade[a], label=a) for a in agents]
        if handles:
            ax.legend(handles=handles, title="agent", loc="best", fontsize=8)
        ax.set_title(title or model.name or "model")
        ax.set_aspect("equal")
        ax.margins(0.15)
        ax.axis("off")
        fig.tight_layout()
        fig.savefig(path, dpi=120)
    finally:
        plt.close(fig)
    return path

"""Render an embedding to a number-line figure or a delimited coordinate dump."""

from __future__ import annotations

import csv

from .embeddings import OutlierEmbedding
from .graphs import Graph


def write_coords_csv(path: str, g: Graph, oe: OutlierEmbedding) -> None:
    """One row per vertex: id, role, exact coordinate, float coordinate."""
    out = set(oe.outliers)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "role", "coord", "coord_float"])
        for v in g.vertices():
            if v in out:
                writer.writerow([v, "outlier", "", ""])
            else:
                x = oe.embedding.coord(v)
                writer.writerow([v, "embedded", str(x), float(x)])


def render_embedding_figure(
    path: str, g: Graph, oe: OutlierEmbedding, title: str | None = None
) -> None:
    """Draw the residual vertices on a line with edges as arcs above it."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Arc

    xs = {v: float(x) for v, x in oe.embedding.coords.items()}
    fig, ax = plt.subplots(figsize=(10.0, 3.4))
    if not xs:
        ax.text(0.5, 0.5, "empty residual", ha="center", va="center")
        ax.set_axis_off()
    else:
        lo, hi = min(xs.values()), max(xs.values())
        pad = max((hi - lo) * 0.05, 1.0)
        ax.hlines(0, lo - pad, hi + pad, color="0.65", lw=1, zorder=1)
        ax.plot(
            sorted(xs.values()), [0] * len(xs), "o", ms=4, color="tab:blue", zorder=3
        )
        if len(xs) <= 60:
            for v, x in xs.items():
                ax.annotate(
                    str(v),
                    (x, 0),
                    textcoords="offset points",
                    xytext=(0, -14),
                    ha="center",
                    fontsize=7,
                )
        tallest = 0.0
        for u, w in g.edges():
            if u in xs and w in xs:
                a, b = sorted((xs[u], xs[w]))
                if a == b:
                    continue
                height = (b - a) * 0.55
                tallest = max(tallest, height)
                ax.add_patch(
                    Arc(
                        ((a + b) / 2, 0),
                        b - a,
                        height,
                        theta1=0,
                        theta2=180,
                        color="0.4",
                        lw=0.8,
                        zorder=2,
                    )
                )
        ax.set_xlim(lo - pad, hi + pad)
        ax.set_ylim(-max(tallest, 1.0) * 0.25, max(tallest, 1.0) * 0.62)
        ax.set_yticks([])
        for side in ("left", "right", "top"):
            ax.spines[side].set_visible(False)
    label = title or (
        f"residual embedding of {len(xs)} vertices, "
        f"distortion {oe.report.distortion}"
    )
    ax.set_title(label, fontsize=10)
    if oe.outliers:
        shown = ", ".join(str(v) for v in oe.outliers[:20])
        if len(oe.outliers) > 20:
            shown += ", ..."
        fig.text(0.01, 0.01, f"outliers removed: {shown}", fontsize=8, color="tab:red")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)

"""Static SVG figures: triangulated polygons Q_LR(l) and census histograms."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import PolyCollection  # noqa: E402

from .ias import EllVector, comb_type  # noqa: E402
from .triangulation import ia_divisor, triangulate  # noqa: E402

# fixed ids and no timestamp, so that reruns produce identical bytes
matplotlib.rcParams["svg.hashsalt"] = "k3fan"
matplotlib.rcParams["svg.fonttype"] = "none"
_META = {"Date": None, "Creator": "k3fan"}


def _save(fig, path: str) -> None:
    fig.savefig(path, format="svg", metadata=_META, bbox_inches="tight")
    plt.close(fig)


def ias_figure(e: EllVector, path: str) -> dict:
    """Draw the triangulated polygon with its singular points and divisor; returns a summary."""
    ct = comb_type(e)
    fig, ax = plt.subplots(figsize=(8, 4))
    if ct.type_ii:
        ax.plot([0, 1], [0, 0], color="black", lw=2)
        for x, s in zip((0, 1), ct.symbols):
            ax.plot([x], [0], "o", color="tab:red")
            ax.annotate(str(s), (x, 0), textcoords="offset points", xytext=(0, 8), ha="center")
        ax.set_title(f"Type II segment {ct}")
        ax.set_axis_off()
        _save(fig, path)
        return {"type": str(ct), "type_ii": True, "path": path}
    T = triangulate(e)
    polys = [tri.pts for tri in T.triangles]
    lw = 0.3 if len(polys) <= 2000 else 0.0
    ax.add_collection(PolyCollection(polys, facecolors="#e8eef7", edgecolors="#7a8ca8", linewidths=lw))
    for ln in ia_divisor(T):
        if ln.kind == "horizontal":
            ax.plot([0, T.width], [0, 0], color="tab:blue", lw=1.5)
        else:
            ax.plot([ln.x, ln.x], [0, T.heights[ln.x]], color="tab:green", lw=1.0 + 0.1 * ln.weight)
    for v, info in sorted(T.singular.items()):
        x, y = info["position"]
        ax.plot([x], [y], "o", color="tab:red", ms=4)
        ax.annotate(info["symbol"], (x, y), textcoords="offset points", xytext=(3, 5), fontsize=7)
    ax.set_xlim(-0.5, T.width + 0.5)
    ax.set_ylim(-0.5, max(T.heights) + 0.5)
    ax.set_title(f"Q_{e.L}{e.R}: {ct}")
    _save(fig, path)
    return {"type": str(ct), "type_ii": False, "triangles": len(T.triangles),
            "singular_points": len(T.singular), "path": path}


def census_figure(by_dim: dict[int, int], title: str, path: str) -> None:
    dims = sorted(by_dim)
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.bar(dims, [by_dim[d] for d in dims], color="#4c72b0")
    ax.set_yscale("log")
    ax.set_xlabel("cone dimension")
    ax.set_ylabel("faces")
    ax.set_title(title)
    ax.set_xticks(dims)
    _save(fig, path)

"""Figures for the analyze report: the poset 1-skeleton and bundle transitions."""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from . import cechbundle as cb  # noqa: E402
from .catalog import spec_slug  # noqa: E402
from .psubgroups import node_orbits  # noqa: E402


def setup_rc(width=6.0, height=None):
    """Small, print-friendly defaults; returns the figure size used."""
    golden = (math.sqrt(5) - 1.0) / 2.0
    size = (width, height or width * golden)
    plt.rcParams.update({
        "font.size": 9,
        "font.family": "serif",
        "axes.titlesize": 10,
        "axes.labelsize": 9,
        "axes.spines.top": False,
        "axes.spines.right": False,
        "figure.figsize": size,
        "figure.dpi": 100,
        "savefig.bbox": "tight",
        # keep the files reproducible
        "svg.hashsalt": "brownlab",
    })
    return size


def hasse_layout(poset):
    """Vertices layered by ``log_p |Q|`` and grouped by orbit within a layer."""
    orbit_of = {}
    for k, orb in enumerate(node_orbits(poset)):
        for v in orb:
            orbit_of[v] = k
    layers = {}
    for i, Q in enumerate(poset.nodes):
        layers.setdefault(round(math.log(Q.order, poset.prime)), []).append(i)
    pos = {}
    for level, verts in layers.items():
        verts.sort(key=lambda v: (orbit_of[v], v))
        n = len(verts)
        for j, v in enumerate(verts):
            pos[v] = ((j - (n - 1) / 2) / max(n, 1), level)
    return pos, orbit_of


def plot_complex(analysis, path):
    setup_rc()
    poset = analysis.poset
    fig, ax = plt.subplots()
    if poset.empty:
        ax.text(0.5, 0.5, "empty poset", ha="center", va="center", transform=ax.transAxes)
    else:
        pos, orbit_of = hasse_layout(poset)
        for i, j in sorted(poset.less_than):
            (x0, y0), (x1, y1) = pos[i], pos[j]
            ax.plot([x0, x1], [y0, y1], color="0.75", lw=0.6, zorder=1)
        cmap = plt.get_cmap("tab10")
        xs = [pos[v][0] for v in range(len(poset))]
        ys = [pos[v][1] for v in range(len(poset))]
        colors = [cmap(orbit_of[v] % 10) for v in range(len(poset))]
        ax.scatter(xs, ys, c=colors, s=28, zorder=2, edgecolors="k", linewidths=0.4)
        levels = sorted(set(ys))
        ax.set_yticks(levels)
        ax.set_yticklabels([f"{poset.prime}^{k}" for k in levels])
        ax.set_xticks([])
        ax.set_ylabel("subgroup order")
    ax.set_title(f"p-subgroup poset of {analysis.spec}, p = {analysis.p}")
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_transitions(analysis, path):
    """Heat map of ``c(s, t)`` for the first torsion generator.

    Pairs outside the bundle domain are left blank.
    """
    setup_rc(5.0, 5.0)
    G, P, A = analysis.group, analysis.sylow, analysis.weakhoms
    if A.generators:
        c = cb.bundle_from_weakhom(A.generators[0].reduced())
    else:
        c = cb.zero_bundle(G, P, 1)
    n = G.order
    grid = [[math.nan] * n for _ in range(n)]
    for (s, t), v in c.transitions.items():
        grid[s][t] = v
    fig, ax = plt.subplots()
    cmap = ListedColormap(plt.get_cmap("viridis")(
        [k / max(c.modulus - 1, 1) for k in range(c.modulus)]))
    cmap.set_bad("white")
    im = ax.imshow(grid, cmap=cmap, vmin=-0.5, vmax=c.modulus - 0.5,
                   interpolation="nearest")
    fig.colorbar(im, ax=ax, ticks=range(c.modulus), label=f"exponent mod {c.modulus}")
    ax.set_xlabel("t")
    ax.set_ylabel("s")
    ax.set_title(f"transitions c(s, t), {analysis.spec}, p = {analysis.p}")
    fig.savefig(path)
    plt.close(fig)
    return path


def write_figures(analysis, directory):
    os.makedirs(directory, exist_ok=True)
    stem = f"{spec_slug(analysis.spec)}_p{analysis.p}"
    return [
        plot_complex(analysis, os.path.join(directory, f"{stem}_complex.png")),
        plot_transitions(analysis, os.path.join(directory, f"{stem}_transitions.png")),
    ]

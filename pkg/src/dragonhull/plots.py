"""Matplotlib figures for the report paths of the command line tool.

Import stays lazy-friendly: the Agg backend is forced before pyplot so
the figures render headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .params import params_from_alpha
from .polygon import FoldPolygon, make_pi0, make_pi1
from .hull import HullModel, boundary_polyline, transform_hull


def save_polygon_figure(path: str, poly: FoldPolygon, hull: HullModel | None = None,
                        contacts=None) -> None:
    fig, ax = plt.subplots(figsize=(8, 6))
    v = poly.vertices
    ax.plot(v[:, 0], v[:, 1], lw=0.7, color="#1f3b70",
            label=f"level {poly.level}")
    if hull is not None:
        b = boundary_polyline(hull, 360, 1e-6)
        ax.plot(b[:, 0], b[:, 1], lw=1.0, color="#b04a2f", label="hull")
    if contacts:
        xs = [e.location[0] for e in contacts]
        ys = [e.location[1] for e in contacts]
        ax.scatter(xs, ys, s=40, facecolors="none", edgecolors="#c02020",
                   label="contacts", zorder=5)
    ax.set_aspect("equal")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(f"alpha = {poly.params.alpha_deg:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_split_figure(path: str, hull: HullModel) -> None:
    """The two mapped hull images, for eyeballing their separation."""
    params = hull.params
    fig, ax = plt.subplots(figsize=(8, 6))
    for sim, color, label in ((make_pi0(params), "#1f3b70", "image 0"),
                              (make_pi1(params), "#b04a2f", "image 1")):
        b = boundary_polyline(transform_hull(hull, sim), 360, 1e-6)
        ax.plot(b[:, 0], b[:, 1], lw=0.9, color=color, label=label)
    j = hull.anchors["P11"]
    ax.plot([j[0]], [j[1]], "k.", ms=4)
    ax.set_aspect("equal")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(f"alpha = {params.alpha_deg:g}: mapped hull images")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_threshold_figure(path: str, condition_ids, evaluate, alpha_range=(90.0, 108.0),
                          markers=None) -> None:
    """Residual curves over the angle window with recovered roots marked."""
    alphas = np.linspace(alpha_range[0], alpha_range[1], 400)
    fig, ax = plt.subplots(figsize=(8, 5))
    for cid in condition_ids:
        residuals = [evaluate(cid, params_from_alpha(a)) for a in alphas]
        ax.plot(alphas, residuals, lw=1.2, label=cid)
    ax.axhline(0.0, color="k", lw=0.6)
    for label, alpha in (markers or {}).items():
        ax.axvline(alpha, color="#888888", lw=0.8, ls="--")
        ax.annotate(f"{label}\n{alpha:.3f}", (alpha, 0.0), fontsize=7,
                    textcoords="offset points", xytext=(4, 12))
    ax.set_xlabel("unfolding angle (deg)")
    ax.set_ylabel("residual (positive = holds)")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_lemma11_figure(path: str, rows) -> None:
    alphas = [r["alpha_deg"] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(alphas, [r["lhs"] for r in rows], "o-", lw=1.2, ms=4, label="hull reach")
    ax.plot(alphas, [r["rhs"] for r in rows], "s-", lw=1.2, ms=4, label="gap width")
    flip = next((r["alpha_deg"] for r in rows if r["satisfied"]), None)
    if flip is not None:
        ax.axvline(flip, color="#888888", lw=0.8, ls="--")
    ax.set_xlabel("unfolding angle (deg)")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("gap clearance crossover")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

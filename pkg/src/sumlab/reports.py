"""Artifact emission for the CLI: deterministic CSV/JSON files plus a
rendered figure next to each delimited output."""

import hashlib
import json
import math

import numpy as np

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from . import __version__


def config_hash(cfg_items):
    text = "\n".join(f"{k} = {v}" for k, v in sorted(cfg_items))
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def meta_line(cfg_items, seed):
    return f"# sumlab {__version__} config={config_hash(cfg_items)} seed={seed}"


def fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, meta, columns, rows):
    lines = [meta, ",".join(columns)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path, meta, payload):
    doc = {"meta": meta, **payload}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def kernel_figure(path, theta, profiles, N_show):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, vals in profiles.items():
        ax.plot(theta, vals, label=label, lw=1.0)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel("kernel value")
    ax.set_title(f"critical-index kernel decomposition, N={N_show}")
    ax.legend(loc="best", fontsize=8)
    ax.axvline(math.pi / 2, color="k", ls=":", lw=0.6)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def packing_figure(path, mu):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    pts = mu.points
    lon = np.arctan2(pts[:, 1], pts[:, 0])
    z = pts[:, -1]
    ax.scatter(lon, z, s=6)
    ax.set_xlabel("longitude")
    ax.set_ylabel("last coordinate (equal-area)")
    ax.set_title(f"packing: m={mu.size}, r={mu.separation}")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def scan_figure(path, gs):
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    ok = np.isfinite(gs.target)
    axes[0].scatter(gs.target[ok], gs.sup_abs[ok], s=4, alpha=0.4)
    lim = max(np.max(gs.target[ok]), np.max(gs.sup_abs))
    axes[0].plot([0, lim], [0, lim], "k:", lw=0.8)
    axes[0].set_xlabel("equidistribution target")
    axes[0].set_ylabel(f"running sup (N <= {gs.N_max})")
    axes[1].hist(gs.sup_abs, bins=60)
    axes[1].set_xlabel("running sup")
    axes[1].set_ylabel("grid points")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def summability_figure(path, rows):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_method = {}
    for method, delta, c, cutoff, value in rows:
        by_method.setdefault(method, ([], []))
        by_method[method][0].append(cutoff)
        by_method[method][1].append(value)
    for method, (xs, ys) in sorted(by_method.items()):
        ax.plot(xs, ys, marker=".", ms=3, lw=0.8, label=method)
    ax.set_xscale("log")
    ax.set_xlabel("cutoff")
    ax.set_ylabel("mean value")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def stage_figure(path, records):
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    idx = [rec.index for rec in records]
    axes[0].bar(idx, [rec.fraction for rec in records], label="achieved")
    axes[0].plot(idx, [rec.fraction_target for rec in records], "r_",
                 ms=20, label="target")
    axes[0].set_xlabel("stage")
    axes[0].set_ylabel("grid fraction")
    axes[0].legend(fontsize=8)
    axes[1].plot(idx, [rec.achieved_median_total for rec in records],
                 marker="o")
    axes[1].set_xlabel("stage")
    axes[1].set_ylabel("median running max of the full sum")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)

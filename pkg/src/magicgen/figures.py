"""Headless PNG rendering for the scan commands.

Each renderer takes the same row lists the CSV writers take, so the
figure next to a data file is always drawn from identical numbers.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .tcount import CcrzScanRow, HeisenbergScanRow, RzScanRow, TWO_MINUS_LOG2_3


def render_rz_scan(rows: list[RzScanRow], path) -> None:
    rows = sorted(rows, key=lambda r: r.theta)
    theta = [r.theta for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    ax.plot(theta, [r.amortized_sre_lb for r in rows], "-", color="tab:blue",
            label="amortized 2-SRE (ascent lower bound)")
    ax.plot(theta, [r.strict_sre for r in rows], "--", color="tab:blue",
            label="strict amortized 2-SRE")
    ax.plot(theta, [r.strict_log_rom for r in rows], "-", color="tab:orange",
            label="amortized log robustness")
    ax.plot(theta, [r.strict_log_extent for r in rows], "--", color="tab:orange",
            label="amortized log extent")
    ax.set_xlabel(r"$\theta$ (radians)")
    ax.set_ylabel("bits")
    ax.set_title(r"Nonstabilizerness generation of $R_z(\theta)$")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_heisenberg_scan(rows: list[HeisenbergScanRow], path) -> None:
    by_w: dict[float, list[HeisenbergScanRow]] = {}
    for row in rows:
        by_w.setdefault(row.w, []).append(row)
    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    colors = plt.cm.viridis([i / max(1, len(by_w) - 1) for i in range(len(by_w))])
    for color, (w, group) in zip(colors, sorted(by_w.items())):
        group = sorted(group, key=lambda r: r.t)
        t = [r.t for r in group]
        ax.plot(t, [r.sre_bound for r in group], "-", color=color, label=f"W={w:g} (entropy)")
        ax.plot(t, [r.nullity_bound for r in group], "--", color=color, label=f"W={w:g} (nullity)")
    ax.set_xlabel("evolution time t")
    ax.set_ylabel("T-count lower bound")
    ax.set_title("Disordered Heisenberg evolution")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_ccrz_scan(rows: list[CcrzScanRow], path) -> None:
    rows = sorted(rows, key=lambda r: r.theta)
    theta = [r.theta for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    ax.plot(theta, [r.choi_sre / TWO_MINUS_LOG2_3 for r in rows], "-",
            color="tab:gray", alpha=0.6, label="entropy ratio (unrounded)")
    ax.step(theta, [r.sre_bound for r in rows], where="mid", color="tab:blue",
            label="entropy bound")
    ax.step(theta, [r.nullity_bound for r in rows], where="mid", linestyle="--",
            color="tab:orange", label="nullity bound")
    ax.set_xlabel(r"$\theta$ (radians)")
    ax.set_ylabel("T-count lower bound")
    ax.set_title(r"Doubly controlled $R_z(\theta)$")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

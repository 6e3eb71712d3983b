"""Render joint amplitudes and sweep curves to image files.

File output only (Agg backend); every function returns the path it wrote.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .grid import Domain, JointAmplitude


def _axis_scaling(ja: JointAmplitude) -> tuple[float, str]:
    if ja.domain is Domain.TIME:
        return 1e12, "time (ps)"
    return 1e-12, "detuning (10$^{12}$ rad/s)"


def save_joint_amplitude_figure(ja: JointAmplitude, path: str, title: str | None = None) -> str:
    """Magnitude of the joint amplitude as a filled color map."""
    scale, unit = _axis_scaling(ja)
    s_vals, i_vals = ja.axis_values()
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    mesh = ax.pcolormesh(
        i_vals * scale, s_vals * scale, np.abs(ja.matrix), cmap="magma", shading="auto"
    )
    ax.set_xlabel(f"idler {unit}")
    ax.set_ylabel(f"signal {unit}")
    if title:
        ax.set_title(title)
    fig.colorbar(mesh, ax=ax, label="|amplitude| (arb.)")
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def save_purity_vs_rate_figure(rows: list[dict], path: str, title: str | None = None) -> str:
    """Purity against target generation rate from sweep rows."""
    ok = [r for r in rows if r.get("status") == "ok"]
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    ax.plot([r["rate_target"] for r in ok], [r["purity"] for r in ok], "o-")
    ax.set_xlabel("generation rate R (pairs/pulse)")
    ax.set_ylabel("purity")
    ax.set_ylim(0.0, 1.02)
    ax.grid(alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def save_filter_curves_figure(rows: list[dict], path: str, title: str | None = None) -> str:
    """Purity against effective rate R T, one curve per unfiltered rate."""
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    for rate in sorted({r["rate"] for r in rows}):
        curve = sorted((r for r in rows if r["rate"] == rate),
                       key=lambda r: r["effective_rate"])
        ax.plot([r["effective_rate"] for r in curve], [r["purity"] for r in curve],
                "o-", label=f"R = {rate:g}")
    ax.set_xlabel("effective generation rate R T")
    ax.set_ylabel("purity")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def save_tau_trace_figure(trace, path: str, title: str | None = None) -> str:
    """Evaluated (duration, purity) points from a duration optimization."""
    pts = sorted(trace)
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    ax.plot([t * 1e15 for t, _ in pts], [p for _, p in pts], "o-")
    ax.set_xlabel("pump duration (fs)")
    ax.set_ylabel("purity")
    ax.grid(alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path

"""Render sweep curves to figure files next to their CSV datasets."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweep import SweepRow


def render_ch_figure(
    curves: dict[str, list[SweepRow]], path: str | Path, title: str = ""
) -> Path:
    """Plot C(kappa) for one or more labeled sweeps, with the CH bounds."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, rows in curves.items():
        ax.plot([r.kappa for r in rows], [r.c_value for r in rows], label=label)
    ax.axhline(0.0, color="k", lw=0.8, ls="--")
    ax.axhline(-1.0, color="k", lw=0.8, ls="--")
    ax.set_xlabel(r"$\kappa$")
    ax.set_ylabel("C")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_nl_figure(
    curves: dict[str, list[SweepRow]], path: str | Path, title: str = ""
) -> Path:
    """Plot the nonlinear criterion against its bounds exp(-kappa) and 1."""
    fig, ax = plt.subplots(figsize=(6, 4))
    lower_drawn = False
    for label, rows in curves.items():
        kappas = [r.kappa for r in rows]
        ax.plot(kappas, [r.cnl_value for r in rows], label=label)
        if not lower_drawn:
            ax.plot(kappas, [r.cnl_lower for r in rows],
                    color="k", lw=0.8, ls="--", label=r"$e^{-\kappa}$")
            lower_drawn = True
    ax.axhline(1.0, color="k", lw=0.8, ls=":")
    ax.set_yscale("log")
    ax.set_xlabel(r"$\kappa$")
    ax.set_ylabel("nonlinear criterion")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path

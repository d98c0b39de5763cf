"""Figure rendering for the CLI report path.

Each CSV gets a companion PNG next to it. Rendering is file-only (Agg
backend); nothing here opens a window.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["save_curves", "save_tail_table"]

_EXACT_STYLE = dict(color="black", linewidth=1.8)


def save_curves(path: str | Path, t: np.ndarray, curves: dict[str, np.ndarray],
                title: str, ylabel: str, exact_key: str | None = "exact") -> Path:
    """Line plot of named curves against t; the exact curve, when present,
    is drawn black and solid, the rest dashed."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for name, vals in curves.items():
        vals = np.asarray(vals, dtype=float)
        if np.all(np.isnan(vals)):
            continue
        if name == exact_key:
            ax.plot(t, vals, label=name, **_EXACT_STYLE)
        else:
            ax.plot(t, vals, label=name, linestyle="--", linewidth=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def save_tail_table(path: str | Path, offsets: np.ndarray,
                    rows: dict[str, np.ndarray], title: str) -> Path:
    """Coefficient-tail magnitudes against N - n, one line per row label."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for name, vals in rows.items():
        ax.semilogy(offsets, np.abs(np.asarray(vals, dtype=float)), marker="o",
                    markersize=3.5, linewidth=1.1, label=name)
    ax.set_xlabel("N - n")
    ax.set_ylabel("|tail|")
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path

"""Figures for the report subcommands (m tables, rates, the tech gap)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_RC = {
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def plot_m_table(d, ns, values, lm=None, mb=None, averaging=None, path="m_table.png"):
    """Oracle m(n, d) against the available lower bounds."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.5, 3.6))
        ax.plot(ns, values, "ko-", label="m(n, d) exact")
        if averaging:
            ax.plot(ns, averaging, ":", color="0.5", label="averaging")
        if lm:
            xs = [n for n, v in zip(ns, lm) if v is not None]
            ax.plot(xs, [v for v in lm if v is not None], "s--", ms=4, label="random pair")
        if mb:
            xs = [n for n, v in zip(ns, mb) if v is not None]
            ax.plot(xs, [v for v in mb if v is not None], "^--", ms=4, label="packing")
        ax.set_xlabel("|X|")
        ax.set_ylabel("points on best origin hyperplane")
        ax.set_title(f"d = {d}")
        ax.legend(frameon=False, fontsize=8)
        _save(fig, path)


def plot_rates(ds, rates, limit=3.10, path="rate.png"):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.5, 3.6))
        ax.semilogx(ds, rates, "ko-")
        ax.axhline(limit, color="C3", lw=0.8, ls="--", label=f"{limit:.2f}")
        ax.set_xlabel("d")
        ax.set_ylabel(r"$(\binom{2d}{d/3}2^{d/3})^{1/d}$")
        ax.legend(frameon=False)
        _save(fig, path)


def plot_tech_gap(d, alphas, lhs, rhs, crossover=None, path="tech.png"):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.5, 3.6))
        ax.plot(alphas, lhs, "C0-", label="left exponent")
        ax.plot(alphas, rhs, "C1-", label="right exponent")
        if crossover is not None:
            ax.axvline(crossover, color="0.4", lw=0.8, ls="--", label=f"alpha* = {crossover:.4f}")
        ax.set_xlabel("alpha")
        ax.set_ylabel("log per unit d")
        ax.set_title(f"d = {d}")
        ax.legend(frameon=False, fontsize=8)
        _save(fig, path)

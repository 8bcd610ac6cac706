"""Render the report figures that accompany the CSV outputs.

Figures are drawn on explicit ``Figure`` objects (no pyplot, no global
state) so rendering is safe from library code and deterministic for a
given matplotlib install.
"""

from __future__ import annotations

from matplotlib.figure import Figure


def save_bounds_figure(rows, path) -> None:
    """Classical (solid) vs qubit (dashed) guessing probability against the
    min-entropy loss of the key."""
    c = [row[0] for row in rows]
    classical = [row[1] for row in rows]
    quantum = [row[2] for row in rows]

    fig = Figure(figsize=(6.4, 4.0))
    ax = fig.subplots()
    ax.plot(c, classical, "-", color="black", label="classical ciphertext")
    ax.plot(c, quantum, "--", color="tab:blue", label="qubit ciphertext")
    ax.set_xlabel("min-entropy loss $c$ (bits)")
    ax.set_ylabel("adversary success probability")
    ax.set_ylim(0.45, 1.05)
    ax.grid(alpha=0.3)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path)


def save_convergence_figure(rows, slope: float, path) -> None:
    """Log-log gap between the finite-code worst case and the continuous
    optimum, with the fitted power law."""
    ns = [row[0] for row in rows]
    gaps = [row[3] for row in rows]

    fig = Figure(figsize=(6.4, 4.0))
    ax = fig.subplots()
    ax.loglog(ns, gaps, "o", color="tab:blue", label="measured gap")
    anchor = gaps[0] / ns[0] ** slope
    fitted = [anchor * n ** slope for n in ns]
    ax.loglog(ns, fitted, "-", color="black", alpha=0.7, label=f"fit, slope {slope:.3f}")
    ax.set_xlabel("number of keys $n$")
    ax.set_ylabel("excess success probability")
    ax.grid(alpha=0.3, which="both")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path)

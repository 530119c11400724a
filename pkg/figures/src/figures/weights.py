"""Retention-weight figure: (t/(t+1))^γ(t) per schedule, with the
iteration where each curve first reaches the threshold marked on the
x-axis.  γ is recomputed locally from the schedule token (see
``schedule_math``), so this figure needs no solver output at all.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from figures.schedule_math import (GammaCurve, parse_schedule_token,
                                   weight_crossing, weight_curve)

PALETTE = ("#2ca02c", "#d62728", "#1f77b4", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def build_weight_figure(curves: list[GammaCurve], n: int,
                        threshold: float = 0.9) -> "plt.Figure":
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    t_axis = list(range(1, n + 1))
    for k, curve in enumerate(curves):
        color = PALETTE[k % len(PALETTE)]
        weights = weight_curve(curve, n)
        cross = weight_crossing(curve, n, threshold)
        label = curve.label
        if cross is not None:
            label += f"  (≥{threshold:g} at t={cross})"
        ax.plot(t_axis, weights, color=color, linewidth=1.4, label=label)
        if cross is not None:
            ax.axvline(cross, color=color, linewidth=0.8, linestyle=":")
            ax.annotate(f"t={cross}", xy=(cross, threshold),
                        xytext=(cross, threshold - 0.12 * (1 + k % 2)),
                        fontsize=7, color=color, ha="center")
    ax.axhline(threshold, color="black", linewidth=0.7, linestyle="--")
    ax.set_xlabel("iteration t")
    ax.set_ylabel("average-strategy retention")
    ax.set_ylim(0.0, 1.05)
    ax.legend(fontsize=7, frameon=False, loc="lower right")
    fig.tight_layout()
    return fig


def render_weight_curves(tokens: list[str], n: int, out: str,
                         threshold: float = 0.9) -> None:
    curves = [parse_schedule_token(tok) for tok in tokens]
    fig = build_weight_figure(curves, n, threshold)
    try:
        fig.savefig(out, dpi=150)
    finally:
        plt.close(fig)

"""Multi-panel convergence figure from solver checkpoint CSVs.

Each panel is one game; each curve is one run's exploitability-vs-
iteration series read from a CSV with the ``iteration,exploitability,
elapsed_ms`` header.  The y-axis is log-scale.  Styling is fixed so that
re-rendering the same inputs produces the same bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

EXPECTED_HEADER = ["iteration", "exploitability", "elapsed_ms"]

#: Fixed curve palette, assigned by position within a panel.
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


class FigureSpecError(ValueError):
    """Spec document is malformed (bad JSON shape, duplicate labels …)."""


class CurveDataError(ValueError):
    """A CSV exists but is not a valid checkpoint series."""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"{path}: {reason}")


@dataclass(frozen=True)
class Curve:
    path: str
    label: str


@dataclass(frozen=True)
class Panel:
    game: str
    curves: tuple[Curve, ...]


@dataclass(frozen=True)
class FigureSpec:
    panels: tuple[Panel, ...]
    out: str | None = None

    @classmethod
    def from_mapping(cls, doc) -> "FigureSpec":
        if not isinstance(doc, dict) or "panels" not in doc:
            raise FigureSpecError("spec must be an object with a 'panels' list")
        raw_panels = doc["panels"]
        if not isinstance(raw_panels, list) or not raw_panels:
            raise FigureSpecError("'panels' must be a non-empty list")
        panels = []
        for i, p in enumerate(raw_panels):
            if not isinstance(p, dict):
                raise FigureSpecError(f"panel #{i} must be an object")
            game = p.get("game")
            if not isinstance(game, str) or not game:
                raise FigureSpecError(f"panel #{i} needs a 'game' name")
            raw_curves = p.get("curves")
            if not isinstance(raw_curves, list) or not raw_curves:
                raise FigureSpecError(
                    f"panel {game!r} needs a non-empty 'curves' list")
            curves = []
            for j, c in enumerate(raw_curves):
                if not isinstance(c, dict) or "path" not in c:
                    raise FigureSpecError(
                        f"curve #{j} in panel {game!r} needs a 'path'")
                curves.append(Curve(str(c["path"]),
                                    str(c.get("label", c["path"]))))
            labels = [c.label for c in curves]
            if len(set(labels)) != len(labels):
                raise FigureSpecError(
                    f"panel {game!r} has duplicate curve labels")
            panels.append(Panel(game, tuple(curves)))
        out = doc.get("out")
        if out is not None and not isinstance(out, str):
            raise FigureSpecError("'out' must be a string path")
        return cls(tuple(panels), out)

    @classmethod
    def from_json_file(cls, path: str) -> "FigureSpec":
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FigureSpecError(f"{path}: not valid JSON ({exc})") \
                    from exc
        return cls.from_mapping(doc)


def load_series(path: str) -> tuple[list[int], list[float]]:
    """Read one checkpoint CSV; reject anything the solver cannot have
    written (wrong header, empty body, non-increasing iterations,
    non-finite or negative exploitability)."""
    import csv

    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CurveDataError(path, "empty file") from None
        if header != EXPECTED_HEADER:
            raise CurveDataError(
                path, f"header {header!r} != {EXPECTED_HEADER!r}")
        iterations, values = [], []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise CurveDataError(path, f"line {lineno}: expected 3 cells")
            try:
                it = int(row[0])
                e = float(row[1])
                float(row[2])
            except ValueError as exc:
                raise CurveDataError(path, f"line {lineno}: {exc}") from exc
            if iterations and it <= iterations[-1]:
                raise CurveDataError(
                    path, f"line {lineno}: iteration {it} not increasing")
            if not math.isfinite(e) or e < 0.0:
                raise CurveDataError(
                    path, f"line {lineno}: exploitability {e!r} out of range")
            iterations.append(it)
            values.append(e)
    if not iterations:
        raise CurveDataError(path, "no data rows")
    return iterations, values


def build_convergence_figure(spec: FigureSpec,
                             max_cols: int = 5) -> "plt.Figure":
    n = len(spec.panels)
    ncols = min(max_cols, n)
    nrows = math.ceil(n / ncols)
    fig, axes = plt.subplots(nrows, ncols, squeeze=False,
                             figsize=(3.1 * ncols, 2.6 * nrows))
    for ax in axes.flat[n:]:
        ax.set_visible(False)
    for ax, panel in zip(axes.flat, spec.panels):
        for k, curve in enumerate(panel.curves):
            iters, values = load_series(curve.path)
            # log axis drops exact zeros silently; clip so a fully solved
            # run still leaves a visible trace at the floor
            floored = [max(v, 1e-300) for v in values]
            ax.plot(iters, floored, label=curve.label,
                    color=PALETTE[k % len(PALETTE)], linewidth=1.2)
        ax.set_yscale("log")
        ax.set_title(panel.game, fontsize=9)
        ax.set_xlabel("iteration", fontsize=7)
        ax.set_ylabel("exploitability", fontsize=7)
        ax.tick_params(labelsize=6)
        ax.legend(fontsize=5.5, frameon=False)
    fig.tight_layout()
    return fig


def render_convergence(spec: FigureSpec, out: str) -> None:
    fig = build_convergence_figure(spec)
    try:
        fig.savefig(out, dpi=150)
    finally:
        plt.close(fig)

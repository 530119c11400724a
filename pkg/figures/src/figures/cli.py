"""Command-line front end: ``figures convergence`` and ``figures weights``.

Exit codes follow the solver CLI: 0 success, 2 usage, 3 validation
(a file exists but its contents are wrong), 4 I/O (a named file is
missing or unreadable).
"""

from __future__ import annotations

import functools
import sys

import click

from figures.convergence import (CurveDataError, FigureSpec, FigureSpecError,
                                 render_convergence)
from figures.schedule_math import ScheduleTokenError
from figures.weights import render_weight_curves

EXIT_VALIDATION = 3
EXIT_IO = 4


def _mapped_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ScheduleTokenError as exc:
            raise click.UsageError(str(exc)) from exc
        except (FigureSpecError, CurveDataError) as exc:
            click.echo(f"validation error: {exc}", err=True)
            sys.exit(EXIT_VALIDATION)
        except OSError as exc:
            name = getattr(exc, "filename", None)
            click.echo(f"I/O error: {name or exc}: {exc.strerror or exc}",
                       err=True)
            sys.exit(EXIT_IO)
    return wrapper


@click.group()
def main():
    """Render figures from solver CSV output."""


@main.command()
@click.option("--spec", "spec_path", required=True,
              type=click.Path(dir_okay=False),
              help="JSON: {'panels': [{'game': ..., 'curves': "
                   "[{'path': ..., 'label': ...}]}], 'out': optional}.")
@click.option("--out", default=None, type=click.Path(dir_okay=False),
              help="Output image; overrides the spec's 'out'.")
@_mapped_errors
def convergence(spec_path, out):
    """Panel grid of log-scale exploitability curves, one panel per game."""
    spec = FigureSpec.from_json_file(spec_path)
    target = out or spec.out
    if target is None:
        raise click.UsageError(
            "no output path: pass --out or put 'out' in the spec")
    render_convergence(spec, target)
    click.echo(f"wrote {target} ({len(spec.panels)} panels)")


@main.command()
@click.option("--schedules", required=True,
              help="Comma-separated tokens: hs<K> or γ<C>/g<C>.")
@click.option("--n", type=int, default=1000, show_default=True,
              help="Run horizon (x-axis extent).")
@click.option("--threshold", type=float, default=0.9, show_default=True,
              help="Retention level whose first crossing gets marked.")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@_mapped_errors
def weights(schedules, n, threshold, out):
    """Average-strategy retention per schedule with crossings marked."""
    tokens = [tok for tok in schedules.split(",") if tok.strip()]
    if not tokens:
        raise click.UsageError("--schedules must name at least one schedule")
    render_weight_curves(tokens, n, out, threshold)
    click.echo(f"wrote {out} ({len(tokens)} curves)")


if __name__ == "__main__":
    main()

"""Benchmark command-line front end.

Five subcommands: ``stats`` (tree sizes against the reference table),
``solve`` (one run → convergence CSV), ``bench`` (a matrix of runs from a
JSON config or the built-in benchmark matrix, optionally on a process
pool, plus an order-of-magnitude summary), ``exploit`` (evaluate a saved
profile), and ``bound`` (worst-case guarantees, plus a schedule dump for
external plotting tools).

Exit codes: 0 success, 2 usage (click), 3 validation, 4 I/O.  ``bench``
exits 1 when at least one run failed but the rest completed.

Every float written to CSV uses ``repr``, which round-trips exactly; with
timing disabled (the ``bench`` default) outputs are byte-identical across
repeats and across serial/concurrent execution.
"""

from __future__ import annotations

import csv
import functools
import json
import math
import os
import sys
import time
from multiprocessing import get_context

import click

from .evaluation import BoundInput, exploitability, theorem_bound
from .game_core import CoverageError, GameBuildError, StrategyProfile, TreeGame
from .games import GAME_NAMES, GameConfigError, load_game, make_game
from .regret_kernels import VARIANTS
from .schedules import (BUILTIN_SCHEDULES, ScheduleError, builtin_schedule,
                        eval_schedule, weight_curve)
from .solver import UPDATE_MODES, SolverConfig, SolverConfigError, run

EXIT_VALIDATION = 3
EXIT_IO = 4

#: Reference sizes (histories, infosets, leaves) for the shipped games, in
#: the two-significant-figure spelling that ``stats`` prints.
REFERENCE_SIZES = {
    "kuhn": ("58", "12", "30"),
    "leduc": ("9.5e3", "9.4e2", "5.5e3"),
    "big_leduc": ("6.2e6", "1.0e5", "4.0e6"),
    "goofspiel_li-3": ("67", "16", "36"),
    "goofspiel-4": ("1.1e3", "2.7e2", "5.8e2"),
    "goofspiel_li-4": ("1.1e3", "1.6e2", "5.8e2"),
    "goofspiel-5": ("2.7e4", "3.3e3", "1.4e4"),
    "goofspiel_li-5": ("2.7e4", "2.1e3", "1.4e4"),
    "liars_dice-4": ("8.2e3", "1.0e3", "4.1e3"),
    "liars_dice-6": ("2.9e5", "2.5e4", "1.5e5"),
    "battleship-2": ("1.0e4", "3.3e3", "5.6e3"),
    "battleship-3": ("7.3e5", "8.1e4", "5.5e5"),
}

#: The ten benchmark games of the default ``bench`` matrix.
MATRIX_GAMES = ("kuhn", "leduc", "liars_dice-4", "battleship-2",
                "battleship-3", "goofspiel_li-3", "goofspiel-4",
                "goofspiel_li-4", "goofspiel-5", "blotto")

#: The eight (variant, schedule) pairs of the default matrix: the four
#: constant-schedule baselines and the four scheduled algorithms.
MATRIX_ALGORITHMS = (
    ("cfr", "uniform"),
    ("cfr_plus", "cfr_plus"),
    ("dcfr", "dcfr"),
    ("pcfr_plus", "pcfr_plus"),
    ("dcfr", "hs30"),
    ("dcfr", "hs15"),
    ("pcfr_plus", "hs30"),
    ("pcfr_plus", "hs15"),
)

#: Schedules whose runs count as baselines in the bench summary; every
#: other schedule (the hs family) lands in the scheduled column.
BASELINE_SCHEDULES = frozenset(
    {"uniform", "cfr_plus", "dcfr", "pcfr_plus", "dcfr_nc"})


def _sig2(n: int) -> str:
    """Two-significant-figure rendering: small counts verbatim, larger
    ones as mantissa-e-exponent (the reference table's spelling)."""
    if n < 100:
        return str(n)
    exp = int(math.floor(math.log10(n)))
    mant = round(n / 10 ** exp, 1)
    if mant >= 10.0:
        mant /= 10.0
        exp += 1
    return f"{mant:.1f}e{exp}"


def _mapped_errors(fn):
    """Translate domain errors to the documented exit codes."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (GameConfigError, GameBuildError, ScheduleError,
                SolverConfigError, CoverageError, json.JSONDecodeError,
                ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_VALIDATION)
        except OSError as exc:
            path = getattr(exc, "filename", None)
            where = f" ({path})" if path else ""
            click.echo(f"I/O error{where}: {exc}", err=True)
            sys.exit(EXIT_IO)
    return wrapper


def _game_params(x, fields, resources) -> dict:
    params = {}
    if x is not None:
        params["x"] = x
    if fields is not None:
        params["fields"] = fields
    if resources is not None:
        params["resources"] = resources
    return params


def _check_game_id(game_id: str) -> None:
    """Unknown base names are usage errors; bad parameters surface later
    as validation errors."""
    base = game_id
    if "-" in game_id:
        head, _, suffix = game_id.rpartition("-")
        if suffix.isdigit():
            base = head
    if base not in GAME_NAMES:
        raise click.UsageError(
            f"unknown game {game_id!r}; expected one of "
            f"{', '.join(GAME_NAMES)}")


def _write_convergence_csv(path: str, records, *, keep_timing: bool) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["iteration", "exploitability", "elapsed_ms"])
        for rec in records:
            ms = rec.elapsed_ms if keep_timing else 0.0
            w.writerow([rec.iteration, repr(rec.exploitability), repr(ms)])


@click.group()
def main():
    """Solver benchmarks for two-player zero-sum games."""


# ───────────────────────────────── stats ───────────────────────────────────


@main.command()
@click.argument("game")
@click.option("--x", type=int, default=None, help="Size parameter of sized games.")
@click.option("--fields", type=int, default=None, help="Blotto battlefields.")
@click.option("--resources", type=int, default=None, help="Blotto resources.")
@_mapped_errors
def stats(game, x, fields, resources):
    """Print histories/infosets/leaves for GAME and the reference check."""
    _check_game_id(game)
    tree = load_game(game, **_game_params(x, fields, resources))
    s = tree.stats()
    rendered = (_sig2(s.histories), _sig2(s.infosets), _sig2(s.leaves))
    line = " ".join(rendered)
    expected = REFERENCE_SIZES.get(tree.name)
    if expected is not None:
        if rendered == expected:
            line += " (match)"
        else:
            line += f" (MISMATCH: reference says {' '.join(expected)})"
    click.echo(line)


# ───────────────────────────────── solve ───────────────────────────────────


@main.command()
@click.option("--game", "game_id", required=True)
@click.option("--x", type=int, default=None)
@click.option("--fields", type=int, default=None)
@click.option("--resources", type=int, default=None)
@click.option("--variant", required=True, type=click.Choice(VARIANTS))
@click.option("--schedule", default=None,
              help=f"One of: {', '.join(BUILTIN_SCHEDULES)}; default is the "
                   "variant's companion.")
@click.option("--iters", type=int, default=1000, show_default=True)
@click.option("--mode", type=click.Choice(UPDATE_MODES), default="alternating",
              show_default=True)
@click.option("--checkpoint-every", type=int, default=10, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Convergence CSV path [default: <game>_<variant>_<schedule>.csv].")
@click.option("--save-profile", type=click.Path(dir_okay=False), default=None,
              help="Also write the average strategy as JSON.")
@_mapped_errors
def solve(game_id, x, fields, resources, variant, schedule, iters, mode,
          checkpoint_every, out, save_profile):
    """Run one algorithm on one game and write its convergence CSV."""
    _check_game_id(game_id)
    cfg = SolverConfig(variant=variant, schedule=schedule, iterations=iters,
                       update_mode=mode, checkpoint_every=checkpoint_every)
    sched_name = cfg.resolved_schedule().name
    tree = load_game(game_id, **_game_params(x, fields, resources))
    t0 = time.perf_counter()
    result = run(tree, cfg)
    total = time.perf_counter() - t0
    if out is None:
        out = f"{tree.name}_{variant}_{sched_name}.csv"
    _write_convergence_csv(out, result.checkpoints, keep_timing=True)
    if save_profile is not None:
        result.profile.save(save_profile)
    click.echo(f"{tree.name} {variant}/{sched_name}: final exploitability "
               f"{result.final_exploitability!r} "
               f"({iters} iterations, {total:.2f}s) -> {out}")


# ───────────────────────────────── bench ───────────────────────────────────

_RUN_KEYS = {"game", "x", "fields", "resources", "variant", "schedule",
             "iterations", "update_mode", "checkpoint_every", "out"}
_RUN_INT_KEYS = {"x", "fields", "resources", "iterations", "checkpoint_every"}

_WORKER_GAMES: dict[tuple, TreeGame] = {}


def _run_config(spec: dict) -> SolverConfig:
    return SolverConfig(
        variant=spec["variant"],
        schedule=spec.get("schedule"),
        iterations=spec.get("iterations", 1000),
        update_mode=spec.get("update_mode", "alternating"),
        checkpoint_every=spec.get("checkpoint_every", 10),
    )


def _validate_runs(runs) -> None:
    if not isinstance(runs, list):
        raise ValueError("config must contain a 'runs' array")
    seen_out = {}
    for i, spec in enumerate(runs):
        where = f"runs[{i}]"
        if not isinstance(spec, dict):
            raise ValueError(f"{where}: each run must be an object")
        unknown = set(spec) - _RUN_KEYS
        if unknown:
            raise ValueError(
                f"{where}: unknown keys {sorted(unknown)}; allowed keys are "
                f"{sorted(_RUN_KEYS)}")
        for key in ("game", "variant", "out"):
            if key not in spec:
                raise ValueError(f"{where}: missing required key {key!r}")
        for key in _RUN_INT_KEYS & set(spec):
            if not isinstance(spec[key], int):
                raise ValueError(f"{where}: {key} must be an integer")
        # every referenced name must resolve before anything runs
        make_game(spec["game"], **{k: spec[k] for k in
                                   ("x", "fields", "resources") if k in spec})
        _run_config(spec).resolved_schedule()
        if spec["out"] in seen_out:
            raise ValueError(
                f"{where}: output path {spec['out']!r} already used by "
                f"runs[{seen_out[spec['out']]}]")
        seen_out[spec["out"]] = i


def _execute_run(task: dict):
    """Worker body: solve one run and write its CSV.  Returns
    (index, final_exploitability, error_message)."""
    spec, out_dir, keep_timing = (task["spec"], task["out_dir"],
                                  task["timing"])
    try:
        key = (spec["game"], spec.get("x"), spec.get("fields"),
               spec.get("resources"))
        tree = _WORKER_GAMES.get(key)
        if tree is None:
            params = {k: spec[k] for k in ("x", "fields", "resources")
                      if k in spec}
            tree = load_game(spec["game"], **params)
            _WORKER_GAMES[key] = tree
        result = run(tree, _run_config(spec))
        path = os.path.join(out_dir, spec["out"])
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        _write_convergence_csv(path, result.checkpoints,
                               keep_timing=keep_timing)
        return task["index"], result.final_exploitability, None
    except Exception as exc:  # reported per run; the matrix continues
        return task["index"], None, f"{type(exc).__name__}: {exc}"


def matrix_runs(iterations: int = 1000, checkpoint_every: int = 10) -> list:
    """The built-in benchmark matrix: ten games × eight algorithms."""
    runs = []
    for game in MATRIX_GAMES:
        for variant, schedule in MATRIX_ALGORITHMS:
            runs.append({
                "game": game,
                "variant": variant,
                "schedule": schedule,
                "iterations": iterations,
                "update_mode": "alternating",
                "checkpoint_every": checkpoint_every,
                "out": f"{game}__{variant}__{schedule}.csv",
            })
    return runs


def _oom_cell(baseline, scheduled) -> str:
    if baseline is None or scheduled is None:
        return ""
    if baseline <= 0.0 and scheduled <= 0.0:
        return "0.0"
    if scheduled <= 0.0:
        return "inf"
    if baseline <= 0.0:
        return "-inf"
    return repr(math.log10(baseline / scheduled))


def _canonical_game_id(spec: dict) -> str:
    params = {k: spec[k] for k in ("x", "fields", "resources") if k in spec}
    return make_game(spec["game"], **params).name


def _write_summary(path: str, runs, finals) -> None:
    games = []
    per_game = {}
    for spec, final in zip(runs, finals):
        g = _canonical_game_id(spec)
        if g not in per_game:
            per_game[g] = {"baseline": None, "scheduled": None}
            games.append(g)
        if final is None:
            continue
        sched = _run_config(spec).resolved_schedule().name
        side = "baseline" if sched in BASELINE_SCHEDULES else "scheduled"
        best = per_game[g][side]
        if best is None or final < best:
            per_game[g][side] = final
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["game", "min_baseline", "min_scheduled", "oom"])
        for g in games:
            base = per_game[g]["baseline"]
            hs = per_game[g]["scheduled"]
            w.writerow([g,
                        "" if base is None else repr(base),
                        "" if hs is None else repr(hs),
                        _oom_cell(base, hs)])


@main.command()
@click.argument("config", required=False,
                type=click.Path(dir_okay=False))
@click.option("--matrix", is_flag=True,
              help="Run the built-in ten-game × eight-algorithm matrix "
                   "instead of a config file.")
@click.option("--emit-matrix", type=click.Path(dir_okay=False), default=None,
              help="Write the built-in matrix as a JSON config and exit.")
@click.option("--iters", type=int, default=1000, show_default=True,
              help="Iteration count for --matrix/--emit-matrix runs.")
@click.option("--checkpoint-every", type=int, default=10, show_default=True,
              help="Checkpoint cadence for --matrix/--emit-matrix runs.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".",
              show_default=True)
@click.option("--workers", type=int, default=None,
              help="Process-pool size [default: CPU count].")
@click.option("--timing", is_flag=True,
              help="Record real solver wall time in elapsed_ms (off by "
                   "default so outputs are byte-identical).")
@click.option("--summary", "summary_path", type=click.Path(dir_okay=False),
              default=None, help="Summary CSV path [default: <out-dir>/summary.csv].")
@_mapped_errors
def bench(config, matrix, emit_matrix, iters, checkpoint_every, out_dir,
          workers, timing, summary_path):
    """Run a matrix of solves and summarize scheduled-vs-baseline gaps."""
    if emit_matrix is not None:
        doc = {"runs": matrix_runs(iters, checkpoint_every)}
        with open(emit_matrix, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        click.echo(f"wrote {len(doc['runs'])} runs -> {emit_matrix}")
        return
    if matrix == (config is not None):
        raise click.UsageError("pass exactly one of CONFIG or --matrix")
    if matrix:
        runs = matrix_runs(iters, checkpoint_every)
    else:
        with open(config) as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict) or "runs" not in doc:
            raise ValueError("config must be an object with a 'runs' array")
        runs = doc["runs"]
    _validate_runs(runs)

    os.makedirs(out_dir, exist_ok=True)
    if summary_path is None:
        summary_path = os.path.join(out_dir, "summary.csv")

    tasks = [{"index": i, "spec": spec, "out_dir": out_dir, "timing": timing}
             for i, spec in enumerate(runs)]
    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, min(workers, len(tasks) or 1))
    if workers == 1 or len(tasks) <= 1:
        outcomes = [_execute_run(t) for t in tasks]
    else:
        with get_context().Pool(processes=workers) as pool:
            outcomes = pool.map(_execute_run, tasks)

    finals = [None] * len(runs)
    failures = []
    for index, final, err in outcomes:
        finals[index] = final
        if err is not None:
            failures.append((index, err))
    _write_summary(summary_path, runs, finals)

    done = len(runs) - len(failures)
    click.echo(f"{done}/{len(runs)} runs completed -> {out_dir} "
               f"(summary: {summary_path})")
    for index, err in failures:
        click.echo(f"run failed: {runs[index]['out']}: {err}", err=True)
    if failures:
        sys.exit(1)


# ──────────────────────────────── exploit ──────────────────────────────────


@main.command()
@click.option("--game", "game_id", required=True)
@click.option("--x", type=int, default=None)
@click.option("--fields", type=int, default=None)
@click.option("--resources", type=int, default=None)
@click.option("--profile", "profile_path", required=True,
              type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Also write the report as a one-row CSV.")
@_mapped_errors
def exploit(game_id, x, fields, resources, profile_path, out):
    """Evaluate a saved strategy profile: best-response values and e(σ)."""
    _check_game_id(game_id)
    tree = load_game(game_id, **_game_params(x, fields, resources))
    profile = StrategyProfile.load(tree, profile_path)
    report = exploitability(tree, profile)
    click.echo(f"best-response values: p0={report.br_values[0]!r} "
               f"p1={report.br_values[1]!r}")
    click.echo(f"exploitability: {report.exploitability!r}")
    if out is not None:
        with open(out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["br_value_p0", "br_value_p1", "exploitability"])
            w.writerow([repr(report.br_values[0]),
                        repr(report.br_values[1]),
                        repr(report.exploitability)])


# ───────────────────────────────── bound ───────────────────────────────────


@main.command()
@click.option("--game", "game_id", required=True)
@click.option("--x", type=int, default=None)
@click.option("--fields", type=int, default=None)
@click.option("--resources", type=int, default=None)
@click.option("--schedule", default="hs30", show_default=True)
@click.option("--iters", type=int, default=1000, show_default=True)
@click.option("--k", type=float, default=1.0, show_default=True,
              help="The undetermined constant of the plus-family bound.")
@click.option("--dump-schedule", "dump_path",
              type=click.Path(dir_okay=False), default=None,
              help="Write t,alpha,beta,gamma,weight rows for t=1..iters.")
@_mapped_errors
def bound(game_id, x, fields, resources, schedule, iters, k, dump_path):
    """Print worst-case exploitability guarantees for a schedule."""
    _check_game_id(game_id)
    sset = builtin_schedule(schedule)
    tree = load_game(game_id, **_game_params(x, fields, resources))
    inputs = BoundInput.for_game(tree, sset.declared_u, iters)
    click.echo(f"{tree.name}: Δ={inputs.utility_range!r} "
               f"|I|={inputs.infosets} |A|={inputs.max_actions} "
               f"U={sset.declared_u!r} T={iters}")
    click.echo(f"hs_dcfr bound:      {theorem_bound(inputs, 'hs_dcfr')!r}")
    click.echo(f"hs_pcfr_plus bound: "
               f"{theorem_bound(inputs, 'hs_pcfr_plus', k=k)!r} "
               f"(K={k!r}, informational)")
    if dump_path is not None:
        weights = weight_curve(sset.gamma, iters)
        with open(dump_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "alpha", "beta", "gamma", "weight"])
            for t in range(1, iters + 1):
                a, b, g = eval_schedule(sset, t, iters)
                w.writerow([t, repr(float(a)), repr(float(b)),
                            repr(float(g)), repr(float(weights[t - 1]))])
        click.echo(f"schedule dump -> {dump_path}")


if __name__ == "__main__":
    main()

"""Hyperparameter schedules for discounted regret minimization.

A schedule maps the completed-iteration count t and the run horizon n to
the discounting parameters (α, β, γ):  positive cumulative regrets are
multiplied by t^α/(t^α+1), negative ones by t^β/(t^β+1), and the cumulative
strategy by (t/(t+1))^γ.  Built-ins cover the dynamic sets

    α(t) = 1 + 3t/n      β(t) = −1 − 2t/n      γ(t) = g0 − 5t/n

for g0 ∈ {30, 15, 40, 5}, the constant baselines (1.5, 0, 2) and γ ∈ {1, 2},
and the no-contribution ablation that zeroes the average-strategy weight for
a prefix of the run.

Solver variants consume only the parts of a schedule they use: the
plus-style variants clip negative regrets instead of discounting, so they
read γ alone; a schedule therefore composes with any variant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Theorem-compatible parameter windows.  Sets outside them must be
#: constructed with ``bound_exempt=True`` and get no convergence guarantee.
ALPHA_RANGE = (1.0, 5.0)
BETA_RANGE = (-5.0, 0.0)


class ScheduleError(ValueError):
    """Unknown schedule name or invalid schedule parameters."""


class ScheduleRangeError(ValueError):
    """Schedule evaluated outside its horizon."""


@dataclass(frozen=True)
class ScalarSchedule:
    """One parameter as a function of progress: start + slope·(t/n).

    A constant is the slope-0 special case.  The slope is specified per
    horizon, so the same object traces the same start/end values whatever
    n is.
    """

    start: float
    slope_per_horizon: float = 0.0

    @classmethod
    def constant(cls, v: float) -> "ScalarSchedule":
        return cls(float(v), 0.0)

    @classmethod
    def linear(cls, start: float, slope_per_horizon: float) -> "ScalarSchedule":
        return cls(float(start), float(slope_per_horizon))

    @property
    def form(self) -> str:
        return "constant" if self.slope_per_horizon == 0.0 else "linear"

    @property
    def end(self) -> float:
        return self.start + self.slope_per_horizon

    def value(self, t, n: int):
        """Evaluate at t ∈ [0, n] (accepts scalars or numpy arrays)."""
        return self.start + self.slope_per_horizon * (np.asarray(t) / n) \
            if isinstance(t, np.ndarray) else \
            self.start + self.slope_per_horizon * (t / n)

    def bounds(self) -> tuple[float, float]:
        lo, hi = sorted((self.start, self.end))
        return (lo, hi)


@dataclass(frozen=True)
class ScheduleSet:
    """A complete (α, β, γ) schedule plus the zero-contribution prefix.

    ``zero_weight_prefix_fraction`` f forces the average-strategy
    contribution weight to 0 while t < f·n (used by the no-contribution
    DCFR ablation).  Construction validates the theorem windows
    α ∈ [1, 5], β ∈ [−5, 0], γ ∈ [0, U]; out-of-window sets must say so
    via ``bound_exempt`` and are excluded from bound guarantees.
    """

    name: str
    alpha: ScalarSchedule
    beta: ScalarSchedule
    gamma: ScalarSchedule
    zero_weight_prefix_fraction: float = 0.0
    bound_exempt: bool = False

    def __post_init__(self):
        if not 0.0 <= self.zero_weight_prefix_fraction < 1.0:
            raise ScheduleError(
                f"zero_weight_prefix_fraction must lie in [0, 1), got "
                f"{self.zero_weight_prefix_fraction}")
        if self.bound_exempt:
            return
        for label, sched, window in (("alpha", self.alpha, ALPHA_RANGE),
                                     ("beta", self.beta, BETA_RANGE),
                                     ("gamma", self.gamma, (0.0, np.inf))):
            lo, hi = sched.bounds()
            if lo < window[0] or hi > window[1]:
                raise ScheduleError(
                    f"{self.name}: {label} covers [{lo}, {hi}], outside the "
                    f"guaranteed window {list(window)}; pass "
                    f"bound_exempt=True to allow it")

    @property
    def declared_u(self) -> float:
        """The finite U with γ(t) ∈ [0, U] over the whole run."""
        return self.gamma.bounds()[1]


def eval_schedule(sset: ScheduleSet, t, n: int) -> tuple[float, float, float]:
    """(α, β, γ) at completed-iteration count t of an n-iteration run."""
    if n < 1:
        raise ScheduleRangeError(f"horizon must be ≥ 1, got {n}")
    tmax = float(np.max(t)) if isinstance(t, np.ndarray) else t
    tmin = float(np.min(t)) if isinstance(t, np.ndarray) else t
    if tmin < 0 or tmax > n:
        raise ScheduleRangeError(
            f"t={t} outside the schedule domain [0, {n}]")
    return (sset.alpha.value(t, n), sset.beta.value(t, n),
            sset.gamma.value(t, n))


# ─────────────────────────────── built-ins ─────────────────────────────────

_HS_ALPHA = ScalarSchedule.linear(1.0, 3.0)
_HS_BETA = ScalarSchedule.linear(-1.0, -2.0)


def _hs(name: str, gamma_start: float) -> ScheduleSet:
    return ScheduleSet(name, _HS_ALPHA, _HS_BETA,
                       ScalarSchedule.linear(gamma_start, -5.0))


_BUILTINS = {
    "hs30": _hs("hs30", 30.0),
    "hs15": _hs("hs15", 15.0),
    "hs40": _hs("hs40", 40.0),
    "hs5": _hs("hs5", 5.0),
    "hs30_fixed": ScheduleSet("hs30_fixed", _HS_ALPHA, _HS_BETA,
                              ScalarSchedule.constant(30.0)),
    "dcfr": ScheduleSet("dcfr", ScalarSchedule.constant(1.5),
                        ScalarSchedule.constant(0.0),
                        ScalarSchedule.constant(2.0)),
    "dcfr_nc": ScheduleSet("dcfr_nc", ScalarSchedule.constant(1.5),
                           ScalarSchedule.constant(0.0),
                           ScalarSchedule.constant(2.0),
                           zero_weight_prefix_fraction=1.0 / 3.0),
    # The two plus-family baselines only contribute γ; their α/β entries
    # are inert placeholders because those variants clip instead of
    # discounting.
    "cfr_plus": ScheduleSet("cfr_plus", ScalarSchedule.constant(1.0),
                            ScalarSchedule.constant(0.0),
                            ScalarSchedule.constant(1.0)),
    "pcfr_plus": ScheduleSet("pcfr_plus", ScalarSchedule.constant(1.0),
                             ScalarSchedule.constant(0.0),
                             ScalarSchedule.constant(2.0)),
    # Uniform averaging, no discounting: the vanilla-CFR companion.
    "uniform": ScheduleSet("uniform", ScalarSchedule.constant(1.0),
                           ScalarSchedule.constant(0.0),
                           ScalarSchedule.constant(0.0)),
}

BUILTIN_SCHEDULES = tuple(sorted(_BUILTINS))


def builtin_schedule(name: str) -> ScheduleSet:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise ScheduleError(
            f"unknown schedule {name!r}; expected one of "
            f"{', '.join(BUILTIN_SCHEDULES)}") from None


# ─────────────────────────── strategy-weight curve ─────────────────────────


def weight_curve(gamma_schedule: ScalarSchedule, n: int) -> np.ndarray:
    """(t/(t+1))^{γ(t)} for t = 1..n — the average-strategy retention."""
    t = np.arange(1, n + 1, dtype=np.float64)
    g = gamma_schedule.value(t, n)
    return (t / (t + 1.0)) ** g


def weight_threshold(gamma_schedule: ScalarSchedule, n: int,
                     w: float) -> int | None:
    """Smallest t ≥ 1 with (t/(t+1))^{γ(t)} ≥ w, or None if never ≤ n."""
    if not 0.0 < w < 1.0:
        raise ScheduleError(f"threshold must lie in (0, 1), got {w}")
    hits = np.nonzero(weight_curve(gamma_schedule, n) >= w)[0]
    return int(hits[0]) + 1 if hits.size else None

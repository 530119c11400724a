"""Local evaluation of average-strategy retention weights.

The solver multiplies its cumulative strategy by (t/(t+1))^γ(t) after
iteration t, where γ either stays constant or decays linearly over the
run.  This module recomputes those weights from the schedule token alone
so the weight figure never has to import the solver; a cross-check
against ``cfrbench bound --dump-schedule`` lives in the test suite.

Recognized tokens:

========  ==========================================  ===============
token     γ(t) over an n-iteration run                example
========  ==========================================  ===============
hs<K>     K − 5·t/n  (linear decay, K → K−5)          hs30, hs15
γ<C>      C  (constant; ``g<C>`` is the ASCII form)   γ2, g0.5
========  ==========================================  ===============
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

_HS = re.compile(r"hs(\d+(?:\.\d+)?)\Z")
_CONST = re.compile(r"(?:γ|g)(\d+(?:\.\d+)?)\Z")


class ScheduleTokenError(ValueError):
    """Token does not name a γ curve this tool knows how to draw."""


@dataclass(frozen=True)
class GammaCurve:
    """γ as a function of progress, plus a display label."""

    token: str
    label: str
    value: Callable[[float, int], float]


def parse_schedule_token(token: str) -> GammaCurve:
    stripped = token.strip()
    m = _HS.fullmatch(stripped)
    if m:
        start = float(m.group(1))
        return GammaCurve(stripped, f"γ: {start:g} → {start - 5.0:g}",
                          lambda t, n, s=start: s - 5.0 * (t / n))
    m = _CONST.fullmatch(stripped)
    if m:
        const = float(m.group(1))
        return GammaCurve(stripped, f"γ = {const:g}",
                          lambda t, n, c=const: c)
    raise ScheduleTokenError(
        f"unknown schedule token {token!r}; expected hs<K> (e.g. hs30) "
        f"or γ<C>/g<C> (e.g. γ2)")


def gamma_curve(curve: GammaCurve, n: int) -> list[float]:
    """γ(t) for t = 1..n."""
    if n < 1:
        raise ScheduleTokenError(f"horizon must be ≥ 1, got {n}")
    return [curve.value(t, n) for t in range(1, n + 1)]


def weight_curve(curve: GammaCurve, n: int) -> list[float]:
    """(t/(t+1))^γ(t) for t = 1..n — cumulative-strategy retention."""
    return [(t / (t + 1.0)) ** g
            for t, g in enumerate(gamma_curve(curve, n), start=1)]


def dynamic_alpha_beta(t: float, n: int) -> tuple[float, float]:
    """(α, β) of the linearly scheduled family: 1 + 3t/n and −1 − 2t/n.

    The weight figure never reads these — only γ shapes the retention —
    but the dump cross-check verifies all four columns, so the full
    parameter set is recomputed here.
    """
    return 1.0 + 3.0 * (t / n), -1.0 - 2.0 * (t / n)


def weight_crossing(curve: GammaCurve, n: int, threshold: float) -> int | None:
    """Smallest t with retention ≥ threshold, or None if never within n."""
    if not 0.0 < threshold < 1.0:
        raise ScheduleTokenError(
            f"threshold must lie in (0, 1), got {threshold}")
    for t, w in enumerate(weight_curve(curve, n), start=1):
        if w >= threshold:
            return t
    return None

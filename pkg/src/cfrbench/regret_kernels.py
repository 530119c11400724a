"""Per-information-set regret-minimizer arithmetic.

The four solver variants share two building blocks: a strategy rule mapping
accumulated regrets to a distribution (plain regret matching, or its
predictive form that adds the last observed instantaneous regret before
clipping), and an update rule folding one iteration's instantaneous regret
into the accumulator (discount-then-add for the discounted family,
clip-at-zero for the plus family, plain addition for vanilla).

Everything here operates on one information set at a time and is the
reference semantics; the traversal engine in :mod:`.solver` applies the
same arithmetic across all information sets at once and is pinned to these
functions by an equivalence test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: Normalization denominators below this fall to the uniform branch.
MIN_DENOM = 1e-300

#: Solver variants understood by ``apply_regret_update``.
VARIANTS = ("cfr", "cfr_plus", "dcfr", "pcfr_plus")

#: Variants whose update clips cumulative regrets at zero (and therefore
#: never applies the α/β discounts).
PLUS_VARIANTS = ("cfr_plus", "pcfr_plus")


@dataclass
class InfoSetState:
    """Mutable accumulator state of a single information set.

    ``prediction`` holds the most recent instantaneous-regret vector and is
    only consulted by the predictive variant; it starts at zero so the
    first iteration's predictive strategy equals plain regret matching.
    """

    cum_regret: np.ndarray
    cum_strategy: np.ndarray
    current_strategy: np.ndarray
    prediction: np.ndarray

    @classmethod
    def zero(cls, n_actions: int) -> "InfoSetState":
        return cls(
            cum_regret=np.zeros(n_actions),
            cum_strategy=np.zeros(n_actions),
            current_strategy=np.full(n_actions, 1.0 / n_actions),
            prediction=np.zeros(n_actions),
        )


@dataclass(frozen=True)
class DiscountTriple:
    """Multipliers applied between iterations: positive / negative
    cumulative regrets and the cumulative strategy."""

    pos_mult: float
    neg_mult: float
    strat_mult: float


def match_strategy(cum_regret: np.ndarray) -> np.ndarray:
    """Distribution proportional to positive regret, else uniform."""
    pos = np.maximum(cum_regret, 0.0)
    denom = pos.sum()
    if denom < MIN_DENOM:
        return np.full(pos.shape, 1.0 / pos.shape[0])
    return pos / denom


def predictive_strategy(cum_regret: np.ndarray,
                        prediction: np.ndarray) -> np.ndarray:
    """Regret matching on the prediction-adjusted regrets."""
    return match_strategy(cum_regret + prediction)


def discount_triple(t: int, alpha: float, beta: float,
                    gamma: float) -> DiscountTriple:
    """Eq.-style multipliers at completed-iteration count t ≥ 1.

    pos = t^α/(t^α+1), neg = t^β/(t^β+1), strat = (t/(t+1))^γ.  Overflowing
    t^α saturates to a multiplier of 1.
    """
    try:
        ta = float(t) ** alpha
    except OverflowError:       # python float pow raises instead of inf-ing
        ta = math.inf
    pos = 1.0 if math.isinf(ta) else ta / (ta + 1.0)
    tb = float(t) ** beta       # β ≤ 0 can only underflow, which is silent
    neg = 1.0 if math.isinf(tb) else tb / (tb + 1.0)
    strat = (t / (t + 1.0)) ** gamma
    return DiscountTriple(pos, neg, strat)


def apply_regret_update(state: InfoSetState, instant_regret: np.ndarray,
                        triple: DiscountTriple, variant: str) -> InfoSetState:
    """Fold one iteration's instantaneous regret into ``state`` (in place).

    * ``dcfr``: each stored entry is multiplied by ``pos_mult`` if it was
      > 0, by ``neg_mult`` otherwise (zero rides the negative branch, which
      cannot change it), then the instantaneous regret is added.
    * ``cfr_plus`` / ``pcfr_plus``: entry ← max(entry + r, 0); no α/β
      discounting ever.  The predictive variant also overwrites the
      prediction with this iteration's instantaneous regret.
    * ``cfr``: plain addition.
    """
    r = state.cum_regret
    if variant == "dcfr":
        np.multiply(r, np.where(r > 0.0, triple.pos_mult, triple.neg_mult),
                    out=r)
        r += instant_regret
    elif variant in PLUS_VARIANTS:
        r += instant_regret
        np.maximum(r, 0.0, out=r)
        if variant == "pcfr_plus":
            state.prediction[:] = instant_regret
    elif variant == "cfr":
        r += instant_regret
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return state


def accumulate_strategy(state: InfoSetState, own_reach: float,
                        sigma: np.ndarray, strat_mult: float) -> InfoSetState:
    """C ← C·strat_mult + own_reach·σ (in place)."""
    c = state.cum_strategy
    c *= strat_mult
    c += own_reach * sigma
    return state


def refresh_strategy(state: InfoSetState, variant: str) -> np.ndarray:
    """Recompute and store the current strategy for ``variant``."""
    if variant == "pcfr_plus":
        sigma = predictive_strategy(state.cum_regret, state.prediction)
    else:
        sigma = match_strategy(state.cum_regret)
    state.current_strategy = sigma
    return sigma

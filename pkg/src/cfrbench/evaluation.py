"""Exact evaluation: best response, exploitability, convergence bounds.

Best response is a two-pass expectimax over the arena: a forward sweep
accumulates opponent-and-chance reach, then a deepest-first backward sweep
resolves each of the responding player's information sets by picking the
action maximizing reach-weighted continuation value (ties to the lowest
action index, so regression values are stable).  Exploitability averages
the two best-response values, which for zero-sum games equals the distance
to equilibrium without knowing the game value.

Also here: the closed-form convergence guarantees for schedule-driven
discounting (used as loose sanity ceilings by the test suite) and the
order-of-magnitude comparison metric used in benchmark summaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game_core import (CoverageError, StrategyProfile, TreeGame,
                        forward_reach)


@dataclass(frozen=True)
class ExploitabilityReport:
    """Best-response values for both players and their average.

    ``br_values[i]`` is u_i(BR_i, σ_{-i}): what player i could get by best
    responding to the profile.  ``exploitability`` is their mean — the
    distance of σ from equilibrium in raw utility units.  Per-player
    exploitability against a known game value v is br_values[i] − v_i and
    is left to callers that know v.
    """

    br_values: tuple[float, float]
    exploitability: float


@dataclass(frozen=True)
class BoundInput:
    """Quantities entering the convergence guarantees."""

    utility_range: float     # Δ
    infosets: int            # |I|, both players
    max_actions: int         # |A|
    gamma_max: float         # U: upper bound of γ over the run
    iterations: int          # T

    @classmethod
    def for_game(cls, game: TreeGame, gamma_max: float,
                 iterations: int) -> "BoundInput":
        s = game.stats()
        return cls(s.utility_range, s.infosets, s.max_actions, gamma_max,
                   iterations)


def best_response(game: TreeGame, opponent_profile: StrategyProfile,
                  player: int) -> tuple[float, StrategyProfile]:
    """(value, pure best-response profile) for ``player`` against the
    opponent half of ``opponent_profile``."""
    if player not in (0, 1):
        raise ValueError(f"player must be 0 or 1, got {player}")
    if opponent_profile.game is not game:
        raise CoverageError("profile was built for a different game")
    comp = game.compiled()
    opp = 1 - player

    # forward: opponent-and-chance reach (responder's actions weight 1)
    w = comp.base_w.copy()
    if comp.dec_e[opp].size:
        w[comp.dec_e[opp]] = opponent_profile.tables[opp][comp.dec_slot[opp]]
    reach = forward_reach(game, w)

    sign = 1.0 if player == 0 else -1.0
    v = np.empty(game.num_nodes)
    terms = game.terminal_nodes
    v[terms] = game.util0[terms] * sign

    astar = np.zeros(game.num_infosets(player), dtype=np.int64)
    wpad = np.append(w, 1.0)
    br_groups = comp.br_depths[player]
    for d in range(len(comp.lvl_nodes) - 1, -1, -1):
        nodes = comp.lvl_nodes[d]
        if nodes.size:
            e = comp.lvl_edges[d]
            contrib = wpad[e] * v[game.edge_child[e]]
            v[nodes] = np.add.reduceat(contrib, comp.lvl_edge_off[d])
        group = br_groups.get(d)
        if group is None:
            continue
        edges, slots, pnodes, iids, slotcat, segoff, local = group
        # reach-weighted action values per slot, then argmax per infoset
        q = np.bincount(slots,
                        weights=reach[game.edge_parent[edges]]
                        * v[game.edge_child[edges]],
                        minlength=game.num_slots[player])
        qseg = q[slotcat]
        best = np.maximum.reduceat(qseg, segoff)
        counts = np.diff(np.append(segoff, qseg.size))
        hit = qseg >= best.repeat(counts)
        astar[iids] = np.minimum.reduceat(
            np.where(hit, local, np.iinfo(np.int64).max), segoff)
        # overwrite the responder's node values with the chosen child's
        pick = game.child_start[pnodes] + astar[game.infoset[pnodes]]
        v[pnodes] = v[game.edge_child[pick]]

    value = float(v[game.root])

    tables = [None, None]
    tables[opp] = opponent_profile.tables[opp].copy()
    mine = np.zeros(game.num_slots[player])
    if mine.size:
        mine[game.infoset_offset[player][:-1] + astar] = 1.0
    tables[player] = mine
    br_profile = StrategyProfile(game, tables, validate=False)
    return value, br_profile


def exploitability(game: TreeGame,
                   profile: StrategyProfile) -> ExploitabilityReport:
    """Average of both players' best-response values against ``profile``."""
    v0, _ = best_response(game, profile, 0)
    v1, _ = best_response(game, profile, 1)
    return ExploitabilityReport(br_values=(v0, v1),
                                exploitability=0.5 * (v0 + v1))


def theorem_bound(inputs: BoundInput, which: str, k: float = 1.0) -> float:
    """Worst-case exploitability ceiling after T iterations.

    ``hs_dcfr``: (U+1)·Δ·|I|·(8/3·√|A| + 2/√T)/√T — the exact guarantee
    for discounting with α ∈ [1,5], β ∈ [−5,0], γ ∈ [0,U].
    ``hs_pcfr_plus``: (U+1)·|I|·K/√T with the constant K left as a knob
    (default 1), since the guarantee only fixes it up to a constant.
    """
    u1 = inputs.gamma_max + 1.0
    rt = math.sqrt(inputs.iterations)
    if which == "hs_dcfr":
        return (u1 * inputs.utility_range * inputs.infosets
                * (8.0 / 3.0 * math.sqrt(inputs.max_actions) + 2.0 / rt)
                / rt)
    if which == "hs_pcfr_plus":
        return u1 * inputs.infosets * k / rt
    raise ValueError(f"unknown bound {which!r}; expected hs_dcfr or "
                     f"hs_pcfr_plus")


def oom(baseline_exploitability: float,
        candidate_exploitability: float) -> float:
    """Orders of magnitude by which the candidate improves on the baseline:
    log10(baseline/candidate)."""
    if baseline_exploitability <= 0.0 or candidate_exploitability <= 0.0:
        raise ValueError("oom requires strictly positive exploitabilities")
    return math.log10(baseline_exploitability / candidate_exploitability)

"""The CFR iteration engine.

``run`` executes n iterations of a regret-minimization variant under a
hyperparameter schedule, in alternating (default) or simultaneous update
mode, records exploitability at checkpoints, and returns the weighted
average strategy.  Everything is deterministic: no randomness exists
anywhere in the pipeline, so identical configs produce bitwise-identical
trajectories.

Two traversal implementations coexist:

* :func:`cfr_traverse` — the literal depth-first recursion over the arena,
  one information set at a time through :mod:`.regret_kernels`.  It is the
  readable reference and the oracle target.
* the production engine — per-depth array sweeps over the arena that
  compute every node's reach and counterfactual value with a handful of
  numpy operations per tree level, accumulating per-slot sums in the same
  left-to-right order as the recursion (``np.bincount`` and
  ``np.add.reduceat`` both reduce in input order); an equivalence test
  holds the two paths together at 1e-12.

Iteration bookkeeping follows the cumulative-update equations literally:
entering iteration τ ≥ 2, the stored regrets and strategy sums are first
decayed with multipliers evaluated at t = τ − 1 completed iterations, then
the new traversal's contributions are added.  Iteration 1 applies no decay.
In alternating mode player 0 updates first and player 1's traversal sees
player 0's refreshed current strategy; both share the same t.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .evaluation import exploitability
from .game_core import CHANCE, TERMINAL, StrategyProfile, TreeGame
from .regret_kernels import (MIN_DENOM, PLUS_VARIANTS, VARIANTS,
                             InfoSetState, discount_triple)
from .schedules import ScheduleSet, builtin_schedule, eval_schedule

UPDATE_MODES = ("alternating", "simultaneous")


class SolverConfigError(ValueError):
    """Invalid solver configuration (bad variant, mode, or counts)."""


@dataclass(frozen=True)
class SolverConfig:
    """What to run: variant × schedule × horizon × update discipline.

    ``schedule`` may be a :class:`ScheduleSet`, the name of a built-in one,
    or None to select the variant's customary companion:  uniform averaging
    for cfr, the γ=1 / γ=2 constants for cfr_plus / pcfr_plus, and the
    (1.5, 0, 2) constants for dcfr.  Variants consume only the schedule
    parts they define: cfr ignores schedules entirely, the plus variants
    read γ alone, dcfr reads all three.
    """

    variant: str
    schedule: ScheduleSet | str | None = None
    iterations: int = 1000
    update_mode: str = "alternating"
    checkpoint_every: int = 10

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise SolverConfigError(
                f"unknown variant {self.variant!r}; expected one of "
                f"{', '.join(VARIANTS)}")
        if self.update_mode not in UPDATE_MODES:
            raise SolverConfigError(
                f"unknown update mode {self.update_mode!r}")
        if self.iterations < 1:
            raise SolverConfigError("iterations must be ≥ 1")
        if self.checkpoint_every < 1:
            raise SolverConfigError("checkpoint_every must be ≥ 1")

    def resolved_schedule(self) -> ScheduleSet:
        if isinstance(self.schedule, str):
            return builtin_schedule(self.schedule)
        if self.schedule is not None:
            return self.schedule
        return builtin_schedule(
            {"cfr": "uniform", "cfr_plus": "cfr_plus", "dcfr": "dcfr",
             "pcfr_plus": "pcfr_plus"}[self.variant])


@dataclass(frozen=True)
class ConvergenceRecord:
    """One checkpoint: exploitability of the current average profile and
    the solver-only wall time spent so far (evaluation excluded)."""

    iteration: int
    exploitability: float
    elapsed_ms: float


@dataclass
class RunResult:
    profile: StrategyProfile
    checkpoints: list[ConvergenceRecord]
    state: "SolverState"

    @property
    def final_exploitability(self) -> float:
        return self.checkpoints[-1].exploitability


# ──────────────────────────────── state ────────────────────────────────────


class SolverState:
    """All accumulators of one run, as flat per-slot vectors per player.

    ``infoset_state(p, i)`` exposes the slices of one information set as an
    :class:`InfoSetState` of numpy views, so kernel functions applied to it
    mutate this state directly.  ``weighted_value``/``weight_total`` track
    the strategy-weighted realized values alongside the cumulative
    strategy — they let tests tie average-regret gaps to exploitability
    without re-walking the trajectory.
    """

    def __init__(self, game: TreeGame, variant: str):
        self.game = game
        self.variant = variant
        comp = game.compiled()
        self.cum_regret = [np.zeros(game.num_slots[p]) for p in (0, 1)]
        self.cum_strategy = [np.zeros(game.num_slots[p]) for p in (0, 1)]
        self.prediction = [np.zeros(game.num_slots[p]) for p in (0, 1)]
        self.current = [np.asarray(1.0 / comp.slot_count[p])
                        if game.num_slots[p] else np.zeros(0)
                        for p in (0, 1)]
        self.completed_iterations = 0
        self.weighted_value = np.zeros(2)
        self.weight_total = 0.0

    def infoset_state(self, player: int, infoset_id: int) -> InfoSetState:
        off = self.game.infoset_offset[player]
        sl = slice(int(off[infoset_id]), int(off[infoset_id + 1]))
        return InfoSetState(
            cum_regret=self.cum_regret[player][sl],
            cum_strategy=self.cum_strategy[player][sl],
            current_strategy=self.current[player][sl],
            prediction=self.prediction[player][sl],
        )

    def refresh_current(self, player: int) -> None:
        """Vectorized strategy rule over every slot of ``player``."""
        g, comp = self.game, self.game.compiled()
        if not g.num_slots[player]:
            return
        base = self.cum_regret[player]
        if self.variant == "pcfr_plus":
            base = base + self.prediction[player]
        pos = np.maximum(base, 0.0)
        sums = np.add.reduceat(pos, g.infoset_offset[player][:-1])
        sums_rep = sums[comp.slot_infoset[player]]
        uniform = 1.0 / comp.slot_count[player]
        with np.errstate(invalid="ignore", divide="ignore"):
            self.current[player] = np.where(
                sums_rep < MIN_DENOM, uniform, pos / sums_rep)

    def average_tables(self) -> list[np.ndarray]:
        g, comp = self.game, self.game.compiled()
        out = []
        for p in (0, 1):
            c = self.cum_strategy[p]
            if not c.size:
                out.append(np.zeros(0))
                continue
            sums = np.add.reduceat(c, g.infoset_offset[p][:-1])
            sums_rep = sums[comp.slot_infoset[p]]
            uniform = 1.0 / comp.slot_count[p]
            with np.errstate(invalid="ignore", divide="ignore"):
                out.append(np.where(sums_rep < MIN_DENOM, uniform,
                                    c / sums_rep))
        return out


def average_strategy(state: SolverState) -> StrategyProfile:
    """Normalized cumulative strategy; unreached infosets fall to uniform."""
    return StrategyProfile(state.game, state.average_tables(),
                           validate=False)


# ───────────────────────── reference recursion ─────────────────────────────


def cfr_traverse(game: TreeGame, state: SolverState, updating_player: int,
                 node: int, own_reach: float, opp_reach: float) -> float:
    """One depth-first pass: returns the node's value for the updating
    player under the current strategies, accumulating that player's
    instantaneous regrets (weighted by ``opp_reach``, the opponent-and-
    chance reach) and average-strategy contributions (``own_reach``) along
    the way.  Strategy decay multipliers are *not* applied here — the
    caller decays state between iterations.
    """
    kind = game.kind[node]
    if kind == TERMINAL:
        u0 = game.util0[node]
        return float(u0 if updating_player == 0 else -u0)
    children = game.children(node)
    if kind == CHANCE:
        s = game.child_start[node]
        total = 0.0
        for j, child in enumerate(children):
            p = game.edge_prob[s + j]
            total += p * cfr_traverse(game, state, updating_player,
                                      int(child), own_reach, opp_reach * p)
        return total

    actor = int(game.actor[node])
    iss = state.infoset_state(actor, int(game.infoset[node]))
    sigma = iss.current_strategy
    if actor != updating_player:
        total = 0.0
        for j, child in enumerate(children):
            w = float(sigma[j])
            total += w * cfr_traverse(game, state, updating_player,
                                      int(child), own_reach, opp_reach * w)
        return total

    values = np.empty(len(children))
    for j, child in enumerate(children):
        values[j] = cfr_traverse(game, state, updating_player, int(child),
                                 own_reach * float(sigma[j]), opp_reach)
    node_value = float(np.dot(sigma, values))
    iss.cum_regret += opp_reach * (values - node_value)
    iss.cum_strategy += own_reach * sigma
    return node_value


# ───────────────────────────── sweep engine ────────────────────────────────


class _Engine:
    """Array-sweep pass machinery bound to one game (scratch reuse)."""

    def __init__(self, game: TreeGame):
        self.game = game
        self.comp = game.compiled()
        n, e = game.num_nodes, game.num_edges
        self._w = np.empty(e + 1)      # padded so in_edge sentinel → 1.0
        self._w2 = np.empty(e + 1)
        self._wf = np.empty(e + 1)
        self._reach_own = np.empty(n)
        self._reach_rest = np.empty(n)
        self._v = np.empty(n)

    def _forward(self, reach: np.ndarray, wpad: np.ndarray) -> None:
        g, comp = self.game, self.comp
        reach[g.root] = 1.0
        for lvl in comp.levels_all[1:]:
            reach[lvl] = reach[g.parent[lvl]] * wpad[g.in_edge[lvl]]

    def _backward(self, v: np.ndarray, w: np.ndarray, sign: float) -> None:
        g, comp = self.game, self.comp
        terms = g.terminal_nodes
        v[terms] = g.util0[terms] * sign
        for d in range(len(comp.lvl_nodes) - 1, -1, -1):
            nodes = comp.lvl_nodes[d]
            if not nodes.size:
                continue
            e = comp.lvl_edges[d]
            contrib = w[e] * v[g.edge_child[e]]
            v[nodes] = np.add.reduceat(contrib, comp.lvl_edge_off[d])

    def pass_for(self, state: SolverState, player: int,
                 add_strategy: bool) -> float:
        """Traverse once for ``player``; add regrets (and, if requested,
        average-strategy mass).  Returns the root value for ``player``."""
        g, comp = self.game, self.comp
        opp = 1 - player
        sig_p, sig_o = state.current[player], state.current[opp]

        wo = self._w            # own-action reach weights
        wo[:-1] = 1.0
        wo[-1] = 1.0
        wo[comp.dec_e[player]] = sig_p[comp.dec_slot[player]]
        self._forward(self._reach_own, wo)

        wr = self._w2           # opponent-and-chance reach weights
        wr[:-1] = comp.base_w
        wr[-1] = 1.0
        wr[comp.dec_e[opp]] = sig_o[comp.dec_slot[opp]]
        self._forward(self._reach_rest, wr)

        wf = self._wf           # full weights for the value sweep
        wf[:-1] = wr[:-1]
        wf[comp.dec_e[player]] = sig_p[comp.dec_slot[player]]
        self._backward(self._v, wf[:-1], 1.0 if player == 0 else -1.0)

        e = comp.dec_e[player]
        if e.size:
            par = comp.dec_par[player]
            sl = comp.dec_slot[player]
            instant = np.bincount(
                sl,
                weights=self._reach_rest[par] * (self._v[g.edge_child[e]]
                                                 - self._v[par]),
                minlength=g.num_slots[player])
            r = state.cum_regret[player]
            r += instant
            if state.variant in PLUS_VARIANTS:
                np.maximum(r, 0.0, out=r)
                if state.variant == "pcfr_plus":
                    state.prediction[player] = instant
            if add_strategy:
                mass = np.bincount(sl, weights=self._reach_own[par],
                                   minlength=g.num_slots[player])
                state.cum_strategy[player] += mass * sig_p
        return float(self._v[g.root])


# ─────────────────────────────── the run loop ──────────────────────────────


def run(game: TreeGame, config: SolverConfig) -> RunResult:
    """Execute the configured solve and checkpoint its convergence.

    Checkpoints land every ``checkpoint_every`` iterations and always at
    the final one; their exploitability evaluation is excluded from the
    reported elapsed time.
    """
    schedule = config.resolved_schedule()
    n = config.iterations
    # surfaces schedule-domain problems before iterating
    eval_schedule(schedule, n, n)
    prefix = schedule.zero_weight_prefix_fraction * n

    state = SolverState(game, config.variant)
    engine = _Engine(game)
    discount_regrets = config.variant == "dcfr"
    discount_strategy = config.variant != "cfr"
    checkpoints: list[ConvergenceRecord] = []
    elapsed = 0.0

    for it in range(1, n + 1):
        tick = time.perf_counter()
        t = it - 1
        if t >= 1:
            alpha, beta, gamma = eval_schedule(schedule, t, n)
            triple = discount_triple(t, alpha, beta, gamma)
            if discount_regrets:
                for p in (0, 1):
                    r = state.cum_regret[p]
                    np.multiply(r, np.where(r > 0.0, triple.pos_mult,
                                            triple.neg_mult), out=r)
            if discount_strategy:
                for p in (0, 1):
                    state.cum_strategy[p] *= triple.strat_mult
                state.weighted_value *= triple.strat_mult
                state.weight_total *= triple.strat_mult
        add_strategy = t >= prefix

        if config.update_mode == "simultaneous":
            state.refresh_current(0)
            state.refresh_current(1)
            v0 = engine.pass_for(state, 0, add_strategy)
            v1 = engine.pass_for(state, 1, add_strategy)
        else:
            state.refresh_current(0)
            state.refresh_current(1)
            v0 = engine.pass_for(state, 0, add_strategy)
            state.refresh_current(0)
            v1 = engine.pass_for(state, 1, add_strategy)
        if add_strategy:
            state.weighted_value += (v0, v1)
            state.weight_total += 1.0
        state.completed_iterations = it
        elapsed += time.perf_counter() - tick

        if it % config.checkpoint_every == 0 or it == n:
            profile = average_strategy(state)
            report = exploitability(game, profile)
            checkpoints.append(ConvergenceRecord(
                iteration=it,
                exploitability=report.exploitability,
                elapsed_ms=elapsed * 1e3))

    return RunResult(profile=average_strategy(state),
                     checkpoints=checkpoints, state=state)


def reference_run(game: TreeGame, config: SolverConfig) -> SolverState:
    """Run the full loop through :func:`cfr_traverse` instead of the sweep
    engine.  Only sensible on small games; tests compare its final state
    against the engine's."""
    schedule = config.resolved_schedule()
    n = config.iterations
    prefix = schedule.zero_weight_prefix_fraction * n
    state = SolverState(game, config.variant)
    discount_regrets = config.variant == "dcfr"
    discount_strategy = config.variant != "cfr"

    for it in range(1, n + 1):
        t = it - 1
        if t >= 1:
            alpha, beta, gamma = eval_schedule(schedule, t, n)
            triple = discount_triple(t, alpha, beta, gamma)
            if discount_regrets:
                for p in (0, 1):
                    r = state.cum_regret[p]
                    np.multiply(r, np.where(r > 0.0, triple.pos_mult,
                                            triple.neg_mult), out=r)
            if discount_strategy:
                for p in (0, 1):
                    state.cum_strategy[p] *= triple.strat_mult
        add_strategy = t >= prefix

        refresh = ((0, 1) if config.update_mode == "simultaneous" else None)
        if refresh:
            for p in refresh:
                state.refresh_current(p)
        for p in (0, 1):
            if not refresh:          # alternating: refresh right before use
                state.refresh_current(0)
                state.refresh_current(1)
            pre_r = state.cum_regret[p].copy()
            pre_c = state.cum_strategy[p].copy()
            cfr_traverse(game, state, p, game.root, 1.0, 1.0)
            if state.variant in PLUS_VARIANTS:
                instant = state.cum_regret[p] - pre_r
                np.maximum(state.cum_regret[p], 0.0,
                           out=state.cum_regret[p])
                if state.variant == "pcfr_plus":
                    state.prediction[p] = instant
            if not add_strategy:
                state.cum_strategy[p] = pre_c
        state.completed_iterations = it
    return state

"""Arena representation of finite two-player zero-sum extensive-form games.

A game tree is materialized once into a flat, integer-indexed arena (numpy
arrays, one slot per node / per edge) and frozen.  Node ids are assigned in
depth-first preorder with children expanded in action order, so parents always
precede children and the subtree of any node is a contiguous id range.  That
ordering is load-bearing: solver and evaluation code rely on it to replace
per-node recursion with level-ordered array sweeps while accumulating sums in
the exact order a depth-first recursion would.

Information sets are per-player tables.  Ids are handed out in first-visit
order during the build traversal, and every infoset owns a contiguous block of
"slots" (one slot per action) inside that player's flat state vectors; all
solver state (regrets, cumulative strategy, predictions) and all strategy
profiles live in those flat vectors.

Players are 0 and 1; chance is represented by actor -1 on chance nodes.
Terminal utilities are validated to be zero-sum and stored as player 0's
payoff only.
"""

from __future__ import annotations

import json
import math
from array import array
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

# ─────────────────────────────── node kinds ────────────────────────────────

DECISION = 0
CHANCE = 1
TERMINAL = 2

CHANCE_PLAYER = -1


class GameBuildError(ValueError):
    """Structural validation failure while materializing a game tree."""


class CoverageError(KeyError):
    """A strategy profile does not cover every required information set."""


# ───────────────────────────── rules interface ─────────────────────────────


class GameRules:
    """Interface a concrete game implements so ``build_tree`` can expand it.

    States are opaque to the builder (games use small tuples).  ``expand``
    classifies one state and returns everything the builder needs in a single
    call:

    * ``(DECISION, actor, infoset_key, labels, children)`` — ``labels`` is a
      tuple of action-label strings, ``children`` the matching child states.
      ``infoset_key`` must be a stable string unique to the acting player's
      view of the state.
    * ``(CHANCE, probs, children)`` — ``probs`` sum to 1 within 1e-12.
    * ``(TERMINAL, (u0, u1))`` — payoffs summing to 0 within 1e-12.
    """

    name: str = "game"
    params: dict = {}

    def root_state(self):
        raise NotImplementedError

    def expand(self, state):
        raise NotImplementedError


# ─────────────────────────────── stats record ──────────────────────────────


@dataclass(frozen=True)
class GameStats:
    """Size measurements of a built tree (all counts are exact)."""

    histories: int          # every node: decision + chance + terminal
    infosets: int           # summed over both players
    leaves: int             # terminal nodes
    infosets_per_player: tuple[int, int]
    max_actions: int
    depth: int
    utility_range: float    # max over players of (max u_i - min u_i)


# ─────────────────────────────── the arena ─────────────────────────────────


class TreeGame:
    """Immutable flattened game tree.

    Per-node arrays (length ``num_nodes``): ``kind``, ``actor``, ``infoset``
    (id within the actor's table, -1 otherwise), ``child_start``/``child_count``
    (range into the edge arrays), ``parent``, ``in_edge`` (edge from the
    parent; the root stores ``num_edges`` as a sentinel that maps to weight 1
    in padded gathers), ``depth`` and ``util0`` (player 0's terminal payoff).

    Per-edge arrays (length ``num_edges``): ``edge_child``, ``edge_parent``,
    ``edge_prob`` (chance probability, 1.0 on non-chance edges).

    Per player ``p``: ``infoset_keys[p]`` / ``infoset_labels[p]`` /
    ``infoset_key_to_id[p]``, ``infoset_offset[p]`` (length K+1 slot offsets)
    and ``num_slots[p]``.
    """

    def __init__(self, name, params, nodes, edges, infotables):
        self.name = name
        self.params = dict(params)
        (self.kind, self.actor, self.infoset, self.child_start,
         self.child_count, self.parent, self.in_edge, self.depth,
         self.util0) = nodes
        self.edge_child, self.edge_parent, self.edge_prob = edges
        self.infoset_keys, self.infoset_labels, self.infoset_key_to_id = infotables

        self.num_nodes = int(self.kind.shape[0])
        self.num_edges = int(self.edge_child.shape[0])
        self.root = 0

        self.infoset_offset = []
        self.num_slots = []
        for p in (0, 1):
            counts = np.fromiter(
                (len(l) for l in self.infoset_labels[p]), dtype=np.int64,
                count=len(self.infoset_labels[p]))
            off = np.zeros(len(counts) + 1, dtype=np.int64)
            np.cumsum(counts, out=off[1:])
            self.infoset_offset.append(off)
            self.num_slots.append(int(off[-1]))
        self.infoset_offset = tuple(self.infoset_offset)
        self.num_slots = tuple(self.num_slots)

        terms = self.kind == TERMINAL
        self.terminal_nodes = np.nonzero(terms)[0].astype(np.int32)
        # |A| counts information-set actions only; chance branching is not
        # an action set and must not enter the regret bounds.
        dec = self.kind == DECISION
        self.max_actions = int(self.child_count[dec].max()) if dec.any() else 0
        if terms.any():
            u0 = self.util0[self.terminal_nodes]
            d0 = float(u0.max() - u0.min())
            self.utility_ranges = (d0, d0)   # zero-sum: player 1 sees -u0
        else:
            self.utility_ranges = (0.0, 0.0)
        self.utility_range = max(self.utility_ranges)

        for arr in (*nodes, *edges):
            arr.setflags(write=False)
        self._compiled = None

    # ---- small accessors -------------------------------------------------

    def num_infosets(self, player: int) -> int:
        return len(self.infoset_keys[player])

    def infoset_actions(self, player: int, infoset_id: int) -> tuple[str, ...]:
        return self.infoset_labels[player][infoset_id]

    def terminal_utilities(self, node: int) -> tuple[float, float]:
        if self.kind[node] != TERMINAL:
            raise ValueError(f"node {node} is not terminal")
        u0 = float(self.util0[node])
        return (u0, -u0)

    def children(self, node: int) -> np.ndarray:
        s = self.child_start[node]
        return self.edge_child[s:s + self.child_count[node]]

    def stats(self) -> GameStats:
        per_player = (self.num_infosets(0), self.num_infosets(1))
        return GameStats(
            histories=self.num_nodes,
            infosets=per_player[0] + per_player[1],
            leaves=int(self.terminal_nodes.shape[0]),
            infosets_per_player=per_player,
            max_actions=self.max_actions,
            depth=int(self.depth.max()),
            utility_range=self.utility_range,
        )

    def compiled(self) -> "_CompiledArena":
        if self._compiled is None:
            self._compiled = _CompiledArena(self)
        return self._compiled


# ───────────────────────────────── builder ─────────────────────────────────


def build_tree(rules: GameRules) -> TreeGame:
    """Materialize and validate a game described by ``rules``.

    Nodes are assigned ids in depth-first preorder, children in action order;
    information-set ids per player in first-visit order.  Raises
    :class:`GameBuildError` naming the offending node on any structural
    problem (non-normalized chance, non-zero-sum terminal, inconsistent
    action labels within an information set).
    """
    kind = array("b")
    actor = array("b")
    infoset = array("i")
    child_start = array("q")
    child_count = array("i")
    parent = array("i")
    in_edge = array("i")
    depth = array("i")
    util0 = array("d")

    edge_child = array("i")
    edge_parent = array("i")
    edge_prob = array("d")

    key_to_id: tuple[dict, dict] = ({}, {})
    keys: tuple[list, list] = ([], [])
    labels: tuple[list, list] = ([], [])

    # Stack entries: (state, parent_id, edge_slot, depth).  Children are
    # pushed in reverse so the leftmost action is expanded first (preorder).
    stack = [(rules.root_state(), -1, -1, 0)]
    while stack:
        state, par, eslot, d = stack.pop()
        nid = len(kind)
        if nid >= 2**31 - 1:
            raise GameBuildError("game exceeds the 2^31 node limit")
        parent.append(par)
        depth.append(d)
        if eslot >= 0:
            edge_child[eslot] = nid
            in_edge.append(eslot)
        else:
            in_edge.append(-1)  # root sentinel, patched after the walk

        spec = rules.expand(state)
        k = spec[0]
        kind.append(k)
        if k == TERMINAL:
            _, (u0, u1) = spec
            if abs(u0 + u1) > 1e-12:
                raise GameBuildError(
                    f"node {nid}: terminal payoff {(u0, u1)} is not zero-sum")
            actor.append(-1)
            infoset.append(-1)
            child_start.append(0)
            child_count.append(0)
            util0.append(float(u0))
            continue

        util0.append(0.0)
        if k == CHANCE:
            _, probs, children = spec
            if len(probs) != len(children) or not children:
                raise GameBuildError(f"node {nid}: malformed chance branch")
            tot = math.fsum(probs)
            if abs(tot - 1.0) > 1e-12 or any(p < 0.0 for p in probs):
                raise GameBuildError(
                    f"node {nid}: chance probabilities sum to {tot!r}")
            actor.append(CHANCE_PLAYER)
            infoset.append(-1)
            es = len(edge_child)
            child_start.append(es)
            child_count.append(len(children))
            for p in probs:
                edge_child.append(-1)
                edge_parent.append(nid)
                edge_prob.append(float(p))
            for i in range(len(children) - 1, -1, -1):
                stack.append((children[i], nid, es + i, d + 1))
            continue

        if k != DECISION:
            raise GameBuildError(f"node {nid}: unknown node kind {k!r}")
        _, who, ikey, labs, children = spec
        if who not in (0, 1):
            raise GameBuildError(f"node {nid}: invalid actor {who!r}")
        if not children or len(labs) != len(children):
            raise GameBuildError(f"node {nid}: malformed action list")
        table = key_to_id[who]
        iid = table.get(ikey)
        if iid is None:
            iid = len(keys[who])
            table[ikey] = iid
            keys[who].append(ikey)
            labels[who].append(tuple(labs))
        elif labels[who][iid] != tuple(labs):
            raise GameBuildError(
                f"node {nid}: action labels {tuple(labs)} disagree with "
                f"information set {ikey!r} ({labels[who][iid]})")
        actor.append(who)
        infoset.append(iid)
        es = len(edge_child)
        child_start.append(es)
        child_count.append(len(children))
        for _ in children:
            edge_child.append(-1)
            edge_parent.append(nid)
            edge_prob.append(1.0)
        for i in range(len(children) - 1, -1, -1):
            stack.append((children[i], nid, es + i, d + 1))

    nodes = (
        np.frombuffer(kind, dtype=np.int8).copy(),
        np.frombuffer(actor, dtype=np.int8).copy(),
        np.frombuffer(infoset, dtype=np.int32).copy(),
        np.frombuffer(child_start, dtype=np.int64).copy(),
        np.frombuffer(child_count, dtype=np.int32).copy(),
        np.frombuffer(parent, dtype=np.int32).copy(),
        np.frombuffer(in_edge, dtype=np.int32).copy(),
        np.frombuffer(depth, dtype=np.int32).copy(),
        np.frombuffer(util0, dtype=np.float64).copy(),
    )
    edges = (
        np.frombuffer(edge_child, dtype=np.int32).copy(),
        np.frombuffer(edge_parent, dtype=np.int32).copy(),
        np.frombuffer(edge_prob, dtype=np.float64).copy(),
    )
    # Root's in_edge points one past the real edges; padded weight gathers
    # (np.append(w, 1.0)) then give the root an implicit incoming weight of 1.
    nodes[6][0] = edges[0].shape[0]
    if (edges[0] < 0).any():
        raise GameBuildError("dangling edge after build (internal error)")

    game = TreeGame(rules.name, getattr(rules, "params", {}), nodes, edges,
                    (keys, labels, key_to_id))
    _validate_decision_counts(game)
    return game


def _validate_decision_counts(game: TreeGame) -> None:
    dec = game.kind == DECISION
    if not dec.any():
        return
    for p in (0, 1):
        mine = dec & (game.actor == p)
        if not mine.any():
            continue
        counts = np.fromiter((len(l) for l in game.infoset_labels[p]),
                             dtype=np.int64)
        if not (game.child_count[mine] == counts[game.infoset[mine]]).all():
            bad = np.nonzero(mine)[0][
                game.child_count[mine] != counts[game.infoset[mine]]][0]
            raise GameBuildError(
                f"node {int(bad)}: action count disagrees with its information set")


def tree_stats(game: TreeGame) -> GameStats:
    return game.stats()


# ──────────────────────────── compiled sweep plan ──────────────────────────


class _CompiledArena:
    """Precomputed index structures for array-sweep traversals.

    Built lazily once per game and shared (read-only) by every solver run and
    best-response evaluation:

    * ``levels_all[d]`` — node ids at depth d (ascending), for forward reach
      sweeps.
    * ``lvl_nodes[d]`` / ``lvl_edges[d]`` / ``lvl_edge_off[d]`` — internal
      (non-terminal) nodes at depth d with their outgoing edges concatenated,
      for backward value sweeps via ``np.add.reduceat``.
    * ``base_w`` — per-edge weight with chance probabilities filled in and
      1.0 on decision edges; strategy-dependent weights overlay this.
    * ``dec_e[p]`` / ``dec_slot[p]`` / ``dec_par[p]`` — player p's decision
      edges, their flat state slots, and parent node ids.
    * ``slot_infoset[p]`` / ``slot_count[p]`` / ``slot_local[p]`` — per-slot
      owner infoset id, that infoset's action count, local action index.
    * per-depth infoset grouping for best response: ``br_depths[p]`` with,
      for each depth, the decision nodes, edges, and the contiguous slot
      segments of the infosets that live there.

    Best response requires every infoset's member nodes to share one tree
    depth; all shipped games satisfy this and it is checked here.
    """

    def __init__(self, g: TreeGame):
        dmax = int(g.depth.max()) if g.num_nodes else 0
        order = np.argsort(g.depth, kind="stable").astype(np.int32)
        bounds = np.searchsorted(g.depth[order], np.arange(dmax + 2))
        self.levels_all = [order[bounds[d]:bounds[d + 1]]
                           for d in range(dmax + 1)]

        internal = g.kind != TERMINAL
        self.lvl_nodes, self.lvl_edges, self.lvl_edge_off = [], [], []
        for d in range(dmax + 1):
            nd = self.levels_all[d]
            nd = nd[internal[nd]]
            self.lvl_nodes.append(nd)
            if nd.size:
                counts = g.child_count[nd].astype(np.int64)
                off = np.zeros(nd.size, dtype=np.int64)
                np.cumsum(counts[:-1], out=off[1:])
                self.lvl_edges.append(_edge_ranges(g.child_start[nd], counts))
                self.lvl_edge_off.append(off)
            else:
                self.lvl_edges.append(np.zeros(0, dtype=np.int64))
                self.lvl_edge_off.append(np.zeros(0, dtype=np.int64))

        self.base_w = np.where(g.actor[g.edge_parent] == CHANCE_PLAYER,
                               g.edge_prob, 1.0)

        self.dec_e, self.dec_slot, self.dec_par = [], [], []
        self.slot_infoset, self.slot_count, self.slot_local = [], [], []
        for p in (0, 1):
            mask = g.actor[g.edge_parent] == p
            e = np.nonzero(mask)[0].astype(np.int64)
            par = g.edge_parent[e]
            local = (e - g.child_start[par]).astype(np.int64)
            slot = g.infoset_offset[p][g.infoset[par]] + local
            self.dec_e.append(e)
            self.dec_par.append(par)
            self.dec_slot.append(slot)

            counts = np.diff(g.infoset_offset[p]).astype(np.int64)
            self.slot_infoset.append(
                np.arange(counts.size, dtype=np.int64).repeat(counts))
            self.slot_count.append(counts.repeat(counts))
            self.slot_local.append(_ramp(counts))

        self._check_uniform_depth(g)
        self._build_br_groups(g)

    def _check_uniform_depth(self, g: TreeGame) -> None:
        self.infoset_depth = []
        for p in (0, 1):
            k = g.num_infosets(p)
            idepth = np.full(k, -1, dtype=np.int64)
            dec = np.nonzero((g.kind == DECISION) & (g.actor == p))[0]
            ids = g.infoset[dec]
            idepth[ids] = g.depth[dec]
            # all members must agree with the (arbitrary) last write above
            if not (g.depth[dec] == idepth[ids]).all() or \
               not (np.bincount(ids, minlength=k) > 0).all():
                raise GameBuildError(
                    "information set members span multiple depths; the sweep "
                    "best-response planner does not support this shape")
            self.infoset_depth.append(idepth)

    def _build_br_groups(self, g: TreeGame) -> None:
        dmax = int(g.depth.max()) if g.num_nodes else 0
        self.br_depths = []
        for p in (0, 1):
            per_depth = {}
            e = self.dec_e[p]
            if e.size:
                ed = g.depth[self.dec_par[p]]
                off = g.infoset_offset[p]
                idepth = self.infoset_depth[p]
                for d in range(dmax + 1):
                    sel = ed == d
                    if not sel.any():
                        continue
                    iids = np.nonzero(idepth == d)[0].astype(np.int64)
                    counts = (off[iids + 1] - off[iids]).astype(np.int64)
                    segoff = np.zeros(iids.size, dtype=np.int64)
                    np.cumsum(counts[:-1], out=segoff[1:])
                    slotcat = off[iids].repeat(counts) + _ramp(counts)
                    nodes = self.lvl_nodes[d]
                    nodes = nodes[g.actor[nodes] == p]
                    per_depth[d] = (e[sel], self.dec_slot[p][sel], nodes,
                                    iids, slotcat, segoff, _ramp(counts))
            self.br_depths.append(per_depth)


def _ramp(counts: np.ndarray) -> np.ndarray:
    """[0..c0-1, 0..c1-1, ...] for segment lengths ``counts``."""
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.ones(total, dtype=np.int64)
    out[0] = 0
    ends = np.cumsum(counts)[:-1]
    out[ends] = 1 - counts[:-1]
    return np.cumsum(out)


def _edge_ranges(starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Concatenate the ranges [starts_i, starts_i + counts_i)."""
    return starts.astype(np.int64).repeat(counts) + _ramp(counts)


# ──────────────────────────── strategy profiles ────────────────────────────


class StrategyProfile:
    """Behavioral strategy for both players, stored as flat per-slot vectors.

    ``tables[p]`` has one probability per (infoset, action) slot of player p,
    in the game's slot layout.  Each infoset block is nonnegative and sums to
    1 within 1e-9 (validated on construction unless ``validate=False``).
    """

    def __init__(self, game: TreeGame, tables: Sequence[np.ndarray], *,
                 validate: bool = True):
        self.game = game
        self.tables = tuple(np.asarray(t, dtype=np.float64) for t in tables)
        for p in (0, 1):
            if self.tables[p].shape != (game.num_slots[p],):
                raise CoverageError(
                    f"player {p} table has shape {self.tables[p].shape}, "
                    f"expected ({game.num_slots[p]},)")
        if validate:
            self._validate()

    def _validate(self) -> None:
        for p in (0, 1):
            t = self.tables[p]
            if t.size == 0:
                continue
            if (t < -1e-12).any():
                raise ValueError(f"player {p} strategy has negative entries")
            sums = np.add.reduceat(t, self.game.infoset_offset[p][:-1])
            if np.abs(sums - 1.0).max() > 1e-9:
                bad = int(np.abs(sums - 1.0).argmax())
                raise ValueError(
                    f"player {p} infoset {self.game.infoset_keys[p][bad]!r} "
                    f"sums to {sums[bad]!r}")

    # ---- constructors ----------------------------------------------------

    @classmethod
    def uniform(cls, game: TreeGame) -> "StrategyProfile":
        comp = game.compiled()
        tables = [1.0 / comp.slot_count[p] if game.num_slots[p] else
                  np.zeros(0) for p in (0, 1)]
        return cls(game, tables, validate=False)

    @classmethod
    def from_mapping(cls, game: TreeGame,
                     mapping: Mapping[str, Mapping[str, Sequence[float]]],
                     ) -> "StrategyProfile":
        """Build from ``{"player_0": {infoset_key: [probs...]}, ...}``."""
        tables = []
        for p in (0, 1):
            per = mapping.get(f"player_{p}", {})
            t = np.empty(game.num_slots[p], dtype=np.float64)
            t.fill(np.nan)
            for key, probs in per.items():
                iid = game.infoset_key_to_id[p].get(key)
                if iid is None:
                    raise CoverageError(
                        f"unknown player-{p} information set {key!r}")
                off = game.infoset_offset[p][iid]
                n = len(game.infoset_labels[p][iid])
                if len(probs) != n:
                    raise CoverageError(
                        f"information set {key!r} expects {n} probabilities")
                t[off:off + n] = probs
            if np.isnan(t).any():
                slot = int(np.nonzero(np.isnan(t))[0][0])
                owner = int(game.compiled().slot_infoset[p][slot])
                raise CoverageError(
                    f"profile missing player-{p} information set "
                    f"{game.infoset_keys[p][owner]!r}")
            tables.append(t)
        return cls(game, tables)

    # ---- views and serialization ----------------------------------------

    def probs(self, player: int, infoset_key: str) -> np.ndarray:
        iid = self.game.infoset_key_to_id[player][infoset_key]
        off = self.game.infoset_offset[player][iid]
        n = len(self.game.infoset_labels[player][iid])
        return self.tables[player][off:off + n]

    def to_mapping(self) -> dict:
        out = {}
        for p in (0, 1):
            per = {}
            for iid, key in enumerate(self.game.infoset_keys[p]):
                off = self.game.infoset_offset[p][iid]
                n = len(self.game.infoset_labels[p][iid])
                per[key] = [float(x) for x in self.tables[p][off:off + n]]
            out[f"player_{p}"] = per
        return out

    def save(self, path) -> None:
        doc = {"game": self.game.name, "params": self.game.params}
        doc.update(self.to_mapping())
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, game: TreeGame, path) -> "StrategyProfile":
        with open(path) as fh:
            doc = json.load(fh)
        return cls.from_mapping(game, doc)


# ───────────────────────────── expected value ──────────────────────────────


def full_edge_weights(game: TreeGame, tables: Sequence[np.ndarray]
                      ) -> np.ndarray:
    """Per-edge transition weight under a profile: chance prob or sigma."""
    comp = game.compiled()
    w = comp.base_w.copy()
    for p in (0, 1):
        if comp.dec_e[p].size:
            w[comp.dec_e[p]] = tables[p][comp.dec_slot[p]]
    return w


def forward_reach(game: TreeGame, w: np.ndarray) -> np.ndarray:
    """Total reach probability per node given per-edge weights ``w``."""
    comp = game.compiled()
    reach = np.empty(game.num_nodes, dtype=np.float64)
    wpad = np.append(w, 1.0)
    reach[game.root] = 1.0
    for lvl in comp.levels_all[1:]:
        reach[lvl] = reach[game.parent[lvl]] * wpad[game.in_edge[lvl]]
    return reach


def expected_value(game: TreeGame, profile: StrategyProfile
                   ) -> tuple[float, float]:
    """u(σ) for both players by one weighted forward traversal."""
    if profile.game is not game:
        raise CoverageError("profile was built for a different game")
    w = full_edge_weights(game, profile.tables)
    reach = forward_reach(game, w)
    terms = game.terminal_nodes
    v0 = float(np.dot(reach[terms], game.util0[terms]))
    return (v0, -v0)

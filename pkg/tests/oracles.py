"""Independent reference computations the tests compare the package against.

Everything here is deliberately written the slow, obvious way — explicit
path recursion and exhaustive pure-strategy enumeration — and shares no
traversal code with the package's array sweeps.
"""

import itertools
import math

import numpy as np

from cfrbench.game_core import CHANCE, TERMINAL


def leaf_enumeration_value(game, tables):
    """u(σ) for player 0 by summing path-probability × payoff per leaf."""
    total = 0.0

    def walk(node, prob):
        nonlocal total
        kind = game.kind[node]
        if kind == TERMINAL:
            total += prob * float(game.util0[node])
            return
        children = game.children(node)
        start = game.child_start[node]
        if kind == CHANCE:
            for j, child in enumerate(children):
                walk(int(child), prob * float(game.edge_prob[start + j]))
            return
        p = int(game.actor[node])
        off = int(game.infoset_offset[p][game.infoset[node]])
        for j, child in enumerate(children):
            walk(int(child), prob * float(tables[p][off + j]))

    walk(int(game.root), 1.0)
    return total


def pure_tables(game, player):
    """Every pure strategy of ``player`` as a one-hot slot table."""
    counts = [len(game.infoset_labels[player][i])
              for i in range(game.num_infosets(player))]
    offsets = game.infoset_offset[player]
    for choice in itertools.product(*(range(c) for c in counts)):
        t = np.zeros(game.num_slots[player])
        for i, a in enumerate(choice):
            t[int(offsets[i]) + a] = 1.0
        yield t


def brute_force_best_response(game, profile, player):
    """max over all pure strategies of ``player`` against ``profile``'s
    other side, evaluated by leaf enumeration.  Only usable on games whose
    pure-strategy count is small."""
    n_pure = math.prod(len(game.infoset_labels[player][i])
                       for i in range(game.num_infosets(player)))
    assert n_pure <= 200_000, f"{n_pure} pure strategies is too many"
    best = -math.inf
    for t in pure_tables(game, player):
        tabs = list(profile.tables)
        tabs[player] = t
        v0 = leaf_enumeration_value(game, tabs)
        best = max(best, v0 if player == 0 else -v0)
    return best


def brute_force_exploitability(game, profile):
    """Both brute-force best responses averaged, the e(σ) definition."""
    return 0.5 * (brute_force_best_response(game, profile, 0)
                  + brute_force_best_response(game, profile, 1))


def random_profile(game, rng):
    """A valid random behavioral profile (Dirichlet per infoset block)."""
    tables = []
    for p in (0, 1):
        t = np.empty(game.num_slots[p])
        off = game.infoset_offset[p]
        for i in range(game.num_infosets(p)):
            lo, hi = int(off[i]), int(off[i + 1])
            t[lo:hi] = rng.dirichlet(np.ones(hi - lo))
        tables.append(t)
    return tables

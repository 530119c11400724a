"""Colonel Blotto, encoded as a one-shot extensive-form game.

Both players simultaneously split ``resources`` identical units across
``fields`` battlefields.  A battlefield is won by the strictly larger
allocation (ties favor nobody).  The payoff is the difference in
battlefields won.  The default 3 battlefields × 5 resources gives each
player C(7,2) = 21 pure strategies.

Sequential encoding: player 0 allocates, then player 1 allocates without
observing.  Each player has a single information set, keyed ``"alloc"``;
action labels are dot-joined allocations like ``"5.0.0"``.
"""

from __future__ import annotations

from itertools import combinations

from ..game_core import DECISION, TERMINAL, GameRules


def allocations(resources: int, fields: int) -> list[tuple[int, ...]]:
    """All ways to split ``resources`` units across ``fields``, lex order."""
    out = []
    for bars in combinations(range(resources + fields - 1), fields - 1):
        prev, alloc = -1, []
        for b in bars:
            alloc.append(b - prev - 1)
            prev = b
        alloc.append(resources + fields - 2 - prev)
        out.append(tuple(alloc))
    return out


class BlottoRules(GameRules):
    def __init__(self, fields: int = 3, resources: int = 5):
        if not 1 <= fields <= 4 or not 0 <= resources <= 10:
            raise ValueError(
                f"blotto supports 1..4 fields and 0..10 resources, "
                f"got {fields}/{resources}")
        self.name = "blotto"
        self.params = {"fields": fields, "resources": resources}
        self.allocs = allocations(resources, fields)
        self.labels = tuple(".".join(map(str, a)) for a in self.allocs)

    def root_state(self):
        return ("p0",)

    def expand(self, state):
        if state[0] == "p0":
            return (DECISION, 0, "alloc", self.labels,
                    [("p1", a) for a in self.allocs])
        if state[0] == "p1":
            a0 = state[1]
            return (DECISION, 1, "alloc", self.labels,
                    [("t", a0, a1) for a1 in self.allocs])
        _, a0, a1 = state
        u0 = float(sum((x > y) - (x < y) for x, y in zip(a0, a1)))
        return (TERMINAL, (u0, -u0))

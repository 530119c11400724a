"""Battleship on a 2×x grid with a single 1×2 ship per player.

Each player secretly places one 1×2 ship (value 2) on a two-row, x-column
grid — horizontally or vertically, fully on the board.  Player 0 places
first; player 1 places without observing.  Players then alternate shots
starting with player 0, at most three shots each, never repeating one of
their own previous shots.  Every shot and its hit/miss outcome is public;
only the placements stay hidden.  The game ends the moment a ship has both
cells hit (the shooter collects the ship's value: payoff +2/-2) or when
both players have spent all three shots (payoff 0, nothing sunk — the
payoff is opponent's sunk value minus own sunk value, and at most one ship
can ever be sunk).

Cells are named ``<row><col>``.  Placements are keyed ``"<cell>-<cell>"``
with cells sorted;  shooting information sets are keyed
``"<own placement>|<transcript>"`` where the transcript is the public
alternating shot record with tokens ``<cell>h`` / ``<cell>m``.
"""

from __future__ import annotations

from ..game_core import DECISION, TERMINAL, GameRules


class BattleshipRules(GameRules):
    MAX_SHOTS = 3
    SHIP_VALUE = 2.0

    def __init__(self, x: int):
        if not 2 <= x <= 3:
            raise ValueError(f"battleship supports 2..3 columns, got {x}")
        self.x = x
        self.name = f"battleship-{x}"
        self.params = {"x": x}
        self.cells = tuple(f"{r}{c}" for r in range(2) for c in range(x))
        self.placements = []
        for r in range(2):
            for c in range(x - 1):
                self.placements.append((f"{r}{c}", f"{r}{c + 1}"))
        for c in range(x):
            self.placements.append((f"0{c}", f"1{c}"))
        self.placement_label = tuple("-".join(sorted(p))
                                     for p in self.placements)

    def root_state(self):
        return ("place0",)

    def expand(self, state):
        tag = state[0]
        if tag == "place0":
            kids = [("place1", i) for i in range(len(self.placements))]
            return (DECISION, 0, "place", self.placement_label, kids)
        if tag == "place1":
            i0 = state[1]
            kids = [(i0, i1, (), (), "")
                    for i1 in range(len(self.placements))]
            return (DECISION, 1, "place", self.placement_label, kids)
        if tag == "t":
            return (TERMINAL, (state[1], -state[1]))

        i0, i1, shots0, shots1, tr = state
        shooter = 0 if len(shots0) == len(shots1) else 1
        mine = shots0 if shooter == 0 else shots1
        target = self.placements[i1 if shooter == 0 else i0]
        won = self.SHIP_VALUE if shooter == 0 else -self.SHIP_VALUE

        labels, kids = [], []
        for cell in self.cells:
            if cell in mine:
                continue
            labels.append(cell)
            hit = cell in target
            ntr = tr + cell + ("h" if hit else "m")
            nm = mine + (cell,)
            if hit and target[0] in nm and target[1] in nm:
                kids.append(("t", won))            # sunk: game over
            elif shooter == 1 and len(nm) == self.MAX_SHOTS:
                kids.append(("t", 0.0))            # all shots spent
            else:
                ns0 = nm if shooter == 0 else shots0
                ns1 = nm if shooter == 1 else shots1
                kids.append((i0, i1, ns0, ns1, ntr))
        own = self.placement_label[i0 if shooter == 0 else i1]
        return (DECISION, shooter, f"{own}|{tr}", tuple(labels), kids)

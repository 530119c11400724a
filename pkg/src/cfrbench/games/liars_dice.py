"""Liar's dice with one x-sided die per player.

Each player privately rolls one die.  Player 0 opens with a bid; a bid
``p.q`` claims "at least p dice (across both players) show the number q".
Bids are ordered count-major — ``(p, q) < (p', q')`` iff ``p < p'`` or
``p = p' ∧ q < q'`` — and every bid must exceed the previous one.  Instead
of raising, a player may call "liar", ending the game; after the maximal
bid ``2.x`` only "liar" remains (that forced node is still a real decision
node with a single action).  When "liar" is called the last bid is checked
against the actual dice: if it holds, the bidder wins +1 from the
challenger, otherwise the challenger wins +1.

The highest face is wild by default (``wild=True``): a die showing x counts
toward any face during the showdown count.  The flag never changes the tree
shape, only terminal payoffs.

Information sets are keyed ``"<die>|<bid,bid,...>"``.
"""

from __future__ import annotations

from ..game_core import CHANCE, DECISION, TERMINAL, GameRules


class LiarsDiceRules(GameRules):
    def __init__(self, x: int, wild: bool = True):
        if not 2 <= x <= 6:
            raise ValueError(f"liars_dice supports 2..6 faces, got {x}")
        self.x = x
        self.wild = wild
        self.name = f"liars_dice-{x}"
        self.params = {"x": x, "wild": wild}
        # bid index b -> (count, face), count-major
        self.n_bids = 2 * x
        self.bid_label = tuple(f"{1 + b // x}.{1 + b % x}"
                               for b in range(self.n_bids))

    def root_state(self):
        return ("roll0",)

    def expand(self, state):
        if state[0] == "t":
            return (TERMINAL, (state[1], -state[1]))
        if state[0] == "roll0":
            p = 1.0 / self.x
            return (CHANCE, (p,) * self.x,
                    [("roll1", d) for d in range(1, self.x + 1)])
        if state[0] == "roll1":
            p = 1.0 / self.x
            return (CHANCE, (p,) * self.x,
                    [(state[1], d, ()) for d in range(1, self.x + 1)])

        d0, d1, bids = state
        actor = len(bids) % 2
        last = bids[-1] if bids else -1
        labels = [self.bid_label[b] for b in range(last + 1, self.n_bids)]
        kids = [(d0, d1, bids + (b,)) for b in range(last + 1, self.n_bids)]
        if bids:
            labels.append("liar")
            kids.append(("t", self._challenge(d0, d1, last, actor)))
        die = d0 if actor == 0 else d1
        key = f"{die}|{','.join(self.bid_label[b] for b in bids)}"
        return (DECISION, actor, key, tuple(labels), kids)

    def _challenge(self, d0: int, d1: int, last_bid: int, challenger: int
                   ) -> float:
        count = 1 + last_bid // self.x
        face = 1 + last_bid % self.x
        shown = sum(1 for d in (d0, d1)
                    if d == face or (self.wild and d == self.x))
        bidder = 1 - challenger
        winner = bidder if shown >= count else challenger
        return 1.0 if winner == 0 else -1.0

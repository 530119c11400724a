"""Goofspiel with a fixed, descending point deck.

Both players hold bid cards 1..x.  Each round one prize is exposed — in our
setting the deck is ordered from highest to lowest, so round r (0-based)
offers prize x - r — and both players simultaneously commit one bid card.
The higher bid scores the prize; on a tie the prize is discarded.  After all
rounds the player with the higher point total wins (payoff +1/-1, or 0 on
equal totals).

Simultaneity is encoded sequentially: player 0 commits first, then player 1
commits without observing the pending bid.  The final round is forced (one
card each) and is resolved without decision nodes.

Two observation models share this tree shape:

* full information (``limited=False``): after each round both bids become
  public.  Information sets are keyed by the two *remaining-hand* sets plus
  the win/loss/tie result string, ``"<mine>|<theirs>|<results>"`` — what a
  player can deduce from public bids.
* limited information (``limited=True``): an umpire reveals only win, loss
  or tie each round.  Keys are ``"<my bid sequence>|<results>"``.

Results are written from the acting player's perspective (``W``/``L``/``T``).
"""

from __future__ import annotations

from ..game_core import DECISION, TERMINAL, GameRules


class GoofspielRules(GameRules):
    def __init__(self, x: int, limited: bool):
        if not 2 <= x <= 7:
            raise ValueError(f"goofspiel supports 2..7 cards, got {x}")
        self.x = x
        self.limited = limited
        self.name = f"goofspiel_li-{x}" if limited else f"goofspiel-{x}"
        self.params = {"x": x, "limited": limited}

    def root_state(self):
        full = frozenset(range(1, self.x + 1))
        # (hand0, hand1, seq0, seq1, results, score0, score1)
        return (full, full, (), (), "", 0, 0)

    # ---- information-set keys -------------------------------------------

    def _key(self, hand_own, hand_opp, seq_own, results: str) -> str:
        if self.limited:
            mine = "".join(map(str, seq_own))
            return f"{mine}|{results}"
        mine = "".join(map(str, sorted(hand_own)))
        theirs = "".join(map(str, sorted(hand_opp)))
        return f"{mine}|{theirs}|{results}"

    @staticmethod
    def _flip(results: str) -> str:
        return results.translate(str.maketrans("WL", "LW"))

    # ---- expansion -------------------------------------------------------

    def expand(self, state):
        if state[0] == "p1":
            return self._expand_p1(state)
        h0, h1, s0, s1, res, sc0, sc1 = state
        if len(h0) == 1:
            return self._resolve_last(state)
        labels = tuple(str(a) for a in sorted(h0))
        kids = [("p1", state, a) for a in sorted(h0)]
        return (DECISION, 0, self._key(h0, h1, s0, res), labels, kids)

    def _expand_p1(self, state):
        _, base, a = state
        h0, h1, s0, s1, res, sc0, sc1 = base
        labels = tuple(str(b) for b in sorted(h1))
        prize = self.x - len(s0)
        kids = []
        for b in sorted(h1):
            if a > b:
                r, d0, d1 = "W", prize, 0
            elif a < b:
                r, d0, d1 = "L", 0, prize
            else:
                r, d0, d1 = "T", 0, 0
            kids.append((h0 - {a}, h1 - {b}, s0 + (a,), s1 + (b,),
                         res + r, sc0 + d0, sc1 + d1))
        return (DECISION, 1, self._key(h1, h0, s1, self._flip(res)),
                labels, kids)

    def _resolve_last(self, state):
        h0, h1, s0, s1, res, sc0, sc1 = state
        (a,), (b,) = sorted(h0), sorted(h1)
        prize = self.x - len(s0)
        if a > b:
            sc0 += prize
        elif b > a:
            sc1 += prize
        u0 = 1.0 if sc0 > sc1 else (-1.0 if sc1 > sc0 else 0.0)
        return (TERMINAL, (u0, -u0))

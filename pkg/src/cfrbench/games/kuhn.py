"""Kuhn poker: three cards (J, Q, K), one ante, one betting round.

Each player antes 1 chip and receives one private card from {J, Q, K}
(dealt without replacement; the third card is unseen).  Player 0 may check
or bet 1 chip.  Facing a bet, a player may fold or call; after check-check
or bet-call the higher card wins the pot.  At most one chip is ever added
per player, so payoffs are ±1 (fold or checked showdown) or ±2 (called bet).

Action letters: ``c`` check, ``b`` bet, ``f`` fold, ``k`` call.  Information
sets are keyed ``"<card>|<history>"``, e.g. ``"Q|cb"`` is player 0 holding
the queen after check-bet.
"""

from __future__ import annotations

from ..game_core import CHANCE, DECISION, TERMINAL, GameRules

_CARDS = ("J", "Q", "K")
_RANK = {c: i for i, c in enumerate(_CARDS)}

_OPEN = ("c", "b")      # no outstanding bet
_FACING = ("f", "k")    # facing a bet


class KuhnRules(GameRules):
    name = "kuhn"
    params: dict = {}

    def root_state(self):
        return ("deal0",)

    def expand(self, state):
        tag = state[0]
        if tag == "deal0":
            # deal player 0's card
            return (CHANCE, (1 / 3, 1 / 3, 1 / 3),
                    [("deal1", c) for c in _CARDS])
        if tag == "deal1":
            # deal player 1's card from the remaining two
            c0 = state[1]
            rest = [c for c in _CARDS if c != c0]
            return (CHANCE, (0.5, 0.5), [(c0, c, "") for c in rest])

        c0, c1, hist = state
        if hist in ("", "c"):
            player = len(hist) % 2
            card = c0 if player == 0 else c1
            return (DECISION, player, f"{card}|{hist}", _OPEN,
                    [(c0, c1, hist + a) for a in _OPEN])
        if hist in ("b", "cb"):
            player = len(hist) % 2
            card = c0 if player == 0 else c1
            return (DECISION, player, f"{card}|{hist}", _FACING,
                    [(c0, c1, hist + a) for a in _FACING])

        # terminal histories: cc, bf, bk, cbf, cbk
        if hist.endswith("f"):
            folder = (len(hist) - 1) % 2
            u0 = -1.0 if folder == 0 else 1.0
            return (TERMINAL, (u0, -u0))
        pot = 2.0 if hist.endswith("k") else 1.0
        u0 = pot if _RANK[c0] > _RANK[c1] else -pot
        return (TERMINAL, (u0, -u0))

"""Leduc hold'em and its bigger cousin.

Leduc: six cards in two suits (Ja Jb Qa Qb Ka Kb).  Each player antes 1 and
gets one private card; one board card is revealed between the two betting
rounds.  Round 1 bets in units of 2 chips with at most two raises; round 2
in units of 4 with the same cap.  Player 0 opens both rounds.  Showdown: a
private card pairing the board wins; otherwise the higher rank wins; equal
ranks split.

Big Leduc: the same game with twenty-four cards across twelve ranks and up
to six raises per round (bet units unchanged).

Action letters: ``c`` check, ``r`` raise, ``f`` fold, ``k`` call.
Information sets are keyed ``"<card>:<board>:<round1>"`` during round 1
(board shown as ``-``) and ``"<card>:<board>:<round1>/<round2>"`` in round
2, so the full betting line is always visible to the acting player.

The per-round betting grammar is precompiled into a small automaton mapping
each in-round action string to the acting player, the legal action labels,
and per-child outcomes (next betting state, fold, or round completion with
the chips each side committed).  ``expand`` is then a dictionary lookup,
which keeps building the six-million-node big variant cheap.
"""

from __future__ import annotations

from ..game_core import CHANCE, DECISION, TERMINAL, GameRules

# outcome tags inside the betting automaton
_NEXT, _FOLD, _DONE = 0, 1, 2


def _round_automaton(cap: int, unit: int) -> dict:
    """Map each non-terminal in-round history to (labels, outcomes).

    An outcome is ``(_NEXT, next_seq)``, ``(_FOLD, paid0, paid1)`` or
    ``(_DONE, paid_each)``; ``paid*`` count chips committed this round.
    """
    out = {}

    def walk(seq: str, level: int, paid: tuple[int, int]) -> None:
        actor = len(seq) % 2
        to_call = level - paid[actor]
        raises = seq.count("r")
        labels, branches = [], []
        if to_call == 0:
            labels.append("c")
            if seq == "":
                branches.append((_NEXT, "c"))
            else:  # check behind: round over, nothing committed
                branches.append((_DONE, level))
        else:
            labels.append("f")
            branches.append((_FOLD, paid[0], paid[1]))
            labels.append("k")
            branches.append((_DONE, level))
        if raises < cap:
            labels.append("r")
            npaid = list(paid)
            npaid[actor] = level + unit
            branches.append((_NEXT, seq + "r"))
            walk(seq + "r", level + unit, tuple(npaid))
        out[seq] = (tuple(labels), tuple(branches))
        if to_call == 0 and seq == "":
            walk("c", level, paid)

    walk("", 0, (0, 0))
    return out


def _showdown(rank0: int, rank1: int, board_rank: int) -> float:
    """+1 if player 0 wins, -1 if player 1 wins, 0 on a split."""
    if rank0 == board_rank:
        return 1.0
    if rank1 == board_rank:
        return -1.0
    if rank0 != rank1:
        return 1.0 if rank0 > rank1 else -1.0
    return 0.0


class LeducRules(GameRules):
    """Two-round limit poker parameterized by rank count and raise cap."""

    def __init__(self, name: str, ranks: int, raise_cap: int,
                 units: tuple[int, int] = (2, 4)):
        self.name = name
        self.params = {"ranks": ranks, "raise_cap": raise_cap,
                       "units": list(units)}
        self.n_cards = 2 * ranks
        if ranks <= 12:
            rank_names = "JQK"[:ranks] if ranks <= 3 else \
                [str(i) for i in range(ranks)]
        else:
            raise ValueError("at most twelve ranks supported")
        self.card_name = [f"{rank_names[c // 2]}{'ab'[c % 2]}"
                          for c in range(self.n_cards)]
        self.aut = (_round_automaton(raise_cap, units[0]),
                    _round_automaton(raise_cap, units[1]))
        self.deal1_p = 1.0 / (self.n_cards - 1)
        self.board_p = 1.0 / (self.n_cards - 2)

    def root_state(self):
        return ("deal0",)

    def expand(self, state):
        tag = state[0]
        if tag == "bet":
            return self._expand_bet(state)
        if tag == "t":
            u0 = state[1]
            return (TERMINAL, (u0, -u0))
        if tag == "deal0":
            n = self.n_cards
            return (CHANCE, (1.0 / n,) * n,
                    [("deal1", c) for c in range(n)])
        if tag == "deal1":
            c0 = state[1]
            rest = [c for c in range(self.n_cards) if c != c0]
            return (CHANCE, (self.deal1_p,) * len(rest),
                    [("bet", c0, c1, -1, "", "", 1, 1) for c1 in rest])
        # tag == "board": reveal one of the unseen cards
        _, c0, c1, hist1, pot = state
        rest = [c for c in range(self.n_cards) if c != c0 and c != c1]
        return (CHANCE, (self.board_p,) * len(rest),
                [("bet", c0, c1, b, hist1, "", pot, pot) for b in rest])

    def _expand_bet(self, state):
        _, c0, c1, board, hist1, seq, pot0, pot1 = state
        rnd = 0 if board < 0 else 1
        labels, branches = self.aut[rnd][seq]
        actor = len(seq) % 2
        names = self.card_name
        if rnd == 0:
            key = f"{names[c0 if actor == 0 else c1]}:-:{seq}"
        else:
            key = (f"{names[c0 if actor == 0 else c1]}:{names[board]}:"
                   f"{hist1}/{seq}")

        children = []
        for label, br in zip(labels, branches):
            kind = br[0]
            if kind == _NEXT:
                children.append(("bet", c0, c1, board, hist1, br[1],
                                 pot0, pot1))
            elif kind == _FOLD:
                total0, total1 = pot0 + br[1], pot1 + br[2]
                u0 = -float(total0) if actor == 0 else float(total1)
                children.append(("t", u0))
            else:  # _DONE: round completed with both sides level
                total = pot0 + br[1]
                if rnd == 0:
                    children.append(("board", c0, c1, seq + label, total))
                else:
                    sign = _showdown(c0 // 2, c1 // 2, board // 2)
                    children.append(("t", sign * total))
        return (DECISION, actor, key, labels, children)

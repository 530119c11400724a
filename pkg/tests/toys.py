"""Hand-built miniature games shared across the test suite.

Each class is small enough to reason about on paper, which is what makes
them useful as oracles: expected values, best responses and regret updates
can all be computed by hand.
"""

from cfrbench.game_core import CHANCE, DECISION, TERMINAL, GameRules


class MatchingPennies(GameRules):
    """Sequential matching pennies: player 0 commits, player 1 picks
    without observing.  Player 0 wins +1 on a match."""

    name = "matching_pennies"
    params: dict = {}

    def root_state(self):
        return ()

    def expand(self, state):
        if len(state) == 0:
            return (DECISION, 0, "p0", ("H", "T"), [("H",), ("T",)])
        if len(state) == 1:
            return (DECISION, 1, "p1", ("H", "T"),
                    [state + ("H",), state + ("T",)])
        u0 = 1.0 if state[0] == state[1] else -1.0
        return (TERMINAL, (u0, -u0))


class SingleChoice(GameRules):
    """One player-0 decision over two terminals worth (+1, −1) / (−1, +1)."""

    name = "single_choice"
    params: dict = {}

    def root_state(self):
        return None

    def expand(self, state):
        if state is None:
            return (DECISION, 0, "only", ("a", "b"), ["a", "b"])
        u0 = 1.0 if state == "a" else -1.0
        return (TERMINAL, (u0, -u0))


class CoinPayout(GameRules):
    """Chance root, probabilities (0.5, 0.5), terminals worth 2 and 0 to
    player 0 — expected value 1 with no decisions anywhere."""

    name = "coin_payout"
    params: dict = {}

    def root_state(self):
        return "flip"

    def expand(self, state):
        if state == "flip":
            return (CHANCE, (0.5, 0.5), ["heads", "tails"])
        u0 = 2.0 if state == "heads" else 0.0
        return (TERMINAL, (u0, -u0))


class SingleTerminal(GameRules):
    """The degenerate game: the root is already terminal."""

    name = "single_terminal"
    params: dict = {}

    def root_state(self):
        return "end"

    def expand(self, state):
        return (TERMINAL, (0.0, 0.0))


#: Player-0 payoffs of :class:`BlindSignal`, indexed [world][p0][p1].
BLIND_SIGNAL_U0 = (
    ((1.0, -2.0, 0.0), (-1.0, 3.0, 1.0)),     # world A
    ((-2.0, 1.0, 2.0), (2.0, -1.0, -3.0)),    # world B
)
BLIND_SIGNAL_CHANCE = (0.6, 0.4)


class BlindSignal(GameRules):
    """Two information sets total: chance picks a hidden world, player 0
    picks x/y blind, player 1 picks l/m/r blind.  Asymmetric action counts
    and mixed-sign payoffs make it a good regret-update oracle bed."""

    name = "blind_signal"
    params: dict = {}

    def root_state(self):
        return ("chance",)

    def expand(self, state):
        if state[0] == "chance":
            return (CHANCE, BLIND_SIGNAL_CHANCE, [("p0", 0), ("p0", 1)])
        if state[0] == "p0":
            w = state[1]
            return (DECISION, 0, "choose", ("x", "y"),
                    [("p1", w, a) for a in (0, 1)])
        if state[0] == "p1":
            _, w, a0 = state
            return (DECISION, 1, "respond", ("l", "m", "r"),
                    [("t", w, a0, a1) for a1 in (0, 1, 2)])
        _, w, a0, a1 = state
        u0 = BLIND_SIGNAL_U0[w][a0][a1]
        return (TERMINAL, (u0, -u0))


class AffineScaled(GameRules):
    """Wrap another rules object, mapping player 0's payoffs through
    u ↦ scale·u + shift (zero-sum is preserved by negating for player 1)."""

    def __init__(self, inner: GameRules, scale: float, shift: float):
        self.inner = inner
        self.scale = scale
        self.shift = shift
        self.name = f"{inner.name}_scaled"
        self.params = dict(inner.params)

    def root_state(self):
        return self.inner.root_state()

    def expand(self, state):
        out = self.inner.expand(state)
        if out[0] == TERMINAL:
            u0 = self.scale * out[1][0] + self.shift
            return (TERMINAL, (u0, -u0))
        return out

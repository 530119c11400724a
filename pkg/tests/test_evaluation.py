"""Best response / exploitability against enumeration oracles, plus the
closed-form convergence ceilings and the OoM comparison metric."""

import math

import numpy as np
import pytest

from cfrbench.evaluation import (BoundInput, best_response, exploitability,
                                 oom, theorem_bound)
from cfrbench.game_core import (CoverageError, StrategyProfile, build_tree,
                                expected_value)
from cfrbench.games.kuhn import KuhnRules
from cfrbench.solver import SolverConfig, run

from oracles import (brute_force_best_response, brute_force_exploitability,
                     random_profile)
from toys import AffineScaled

ONE_EIGHTEENTH = 1.0 / 18.0

# Kuhn's one-parameter equilibrium family at bluff rate 1/3.  First slot of
# each vector is the passive action (check / fold-side), second the
# aggressive one (bet / call-side); histories read left to right.
_A = 1.0 / 3.0
KUHN_EQUILIBRIUM = {
    "player_0": {
        "J|": [1 - _A, _A],
        "Q|": [1.0, 0.0],
        "K|": [1 - 3 * _A, 3 * _A],
        "J|cb": [1.0, 0.0],
        "Q|cb": [1 - (_A + 1 / 3), _A + 1 / 3],
        "K|cb": [0.0, 1.0],
    },
    "player_1": {
        "J|c": [2 / 3, 1 / 3],
        "Q|c": [1.0, 0.0],
        "K|c": [0.0, 1.0],
        "J|b": [1.0, 0.0],
        "Q|b": [2 / 3, 1 / 3],
        "K|b": [0.0, 1.0],
    },
}


def kuhn_equilibrium_profile(kuhn):
    return StrategyProfile.from_mapping(kuhn, KUHN_EQUILIBRIUM)


# ---------------------------------------------------------------- best response

def test_matching_pennies_uniform_is_valueless(pennies):
    uni = StrategyProfile.uniform(pennies)
    for player in (0, 1):
        value, br = best_response(pennies, uni, player)
        assert value == pytest.approx(0.0, abs=1e-12)
        # both actions tie at 0; the responder must settle on index 0
        np.testing.assert_array_equal(br.tables[player], [1.0, 0.0])


def test_br_pair_value_matches_expected_value(kuhn):
    rng = np.random.default_rng(7)
    profile = StrategyProfile(kuhn, random_profile(kuhn, rng))
    for player in (0, 1):
        value, br = best_response(kuhn, profile, player)
        assert value == pytest.approx(expected_value(kuhn, br)[player],
                                      abs=1e-9)


def test_kuhn_equilibrium_is_unexploitable(kuhn):
    eq = kuhn_equilibrium_profile(kuhn)
    v0, _ = best_response(kuhn, eq, 0)
    v1, _ = best_response(kuhn, eq, 1)
    # neither player can beat the game value -1/18 (for player 0)
    assert v0 == pytest.approx(-ONE_EIGHTEENTH, abs=1e-9)
    assert v1 == pytest.approx(+ONE_EIGHTEENTH, abs=1e-9)
    report = exploitability(kuhn, eq)
    assert 0.0 <= report.exploitability <= 1e-9


def test_blotto_br_equals_pure_enumeration(blotto):
    uni = StrategyProfile.uniform(blotto)
    for player in (0, 1):
        value, _ = best_response(blotto, uni, player)
        oracle = brute_force_best_response(blotto, uni, player)
        assert value == pytest.approx(oracle, abs=1e-9)


def test_blotto_br_against_skewed_profile(blotto):
    rng = np.random.default_rng(23)
    profile = StrategyProfile(blotto, random_profile(blotto, rng))
    for player in (0, 1):
        value, _ = best_response(blotto, profile, player)
        oracle = brute_force_best_response(blotto, profile, player)
        assert value == pytest.approx(oracle, abs=1e-9)


def test_br_rejects_bad_player(kuhn):
    with pytest.raises(ValueError, match="player"):
        best_response(kuhn, StrategyProfile.uniform(kuhn), 2)


def test_br_rejects_foreign_profile(kuhn, blotto):
    with pytest.raises(CoverageError):
        best_response(kuhn, StrategyProfile.uniform(blotto), 0)


def test_dominance_over_unilateral_deviations(kuhn):
    """No mixed deviation may beat the best response (fuzzed)."""
    rng = np.random.default_rng(99)
    base = StrategyProfile(kuhn, random_profile(kuhn, rng))
    br_value = [best_response(kuhn, base, p)[0] for p in (0, 1)]
    for _ in range(100):
        alt = random_profile(kuhn, rng)
        for player in (0, 1):
            tables = [base.tables[0], base.tables[1]]
            tables[player] = alt[player]
            hybrid = StrategyProfile(kuhn, tables)
            assert (expected_value(kuhn, hybrid)[player]
                    <= br_value[player] + 1e-9)


# -------------------------------------------------------------- exploitability

def test_kuhn_uniform_exploitability_matches_brute_force(kuhn):
    uni = StrategyProfile.uniform(kuhn)
    report = exploitability(kuhn, uni)
    assert report.exploitability == pytest.approx(
        brute_force_exploitability(kuhn, uni), abs=1e-9)
    assert report.exploitability == pytest.approx(
        0.5 * (report.br_values[0] + report.br_values[1]), abs=0.0)


def test_exploitability_nonnegative(kuhn, goof3li, blotto):
    rng = np.random.default_rng(5)
    for game in (kuhn, goof3li, blotto):
        for _ in range(4):
            profile = StrategyProfile(game, random_profile(game, rng))
            assert exploitability(game, profile).exploitability >= -1e-9


def test_converged_symmetric_game_is_near_equilibrium(blotto):
    """A converged run on a symmetric game lands at its 0-value Nash."""
    result = run(blotto, SolverConfig(variant="pcfr_plus", schedule="hs30",
                                      iterations=1000,
                                      checkpoint_every=1000))
    report = exploitability(blotto, result.profile)
    assert report.exploitability <= 1e-6
    assert abs(report.br_values[0] + report.br_values[1]) <= 2e-6


def test_affine_utility_rescale_keeps_br_actions():
    """Positive affine rescaling of player 0's payoffs moves values but not
    the argmax actions: v' = a·v + b for player 0 and a·v − b for player 1
    at every node, and the shift is constant within an infoset."""
    scale, shift = 2.5, 0.75
    base = build_tree(KuhnRules())
    scaled = build_tree(AffineScaled(KuhnRules(), scale, shift))

    opp = StrategyProfile(base, random_profile(base, np.random.default_rng(11)))
    opp_scaled = StrategyProfile.from_mapping(scaled, opp.to_mapping())
    for player, flip in ((0, +1.0), (1, -1.0)):
        value, br = best_response(base, opp, player)
        value_s, br_s = best_response(scaled, opp_scaled, player)
        np.testing.assert_array_equal(br_s.tables[player], br.tables[player])
        assert value_s == pytest.approx(scale * value + flip * shift,
                                        abs=1e-12)


# ------------------------------------------------------------- theorem bounds

def test_bound_arithmetic_on_smallest_game():
    inputs = BoundInput(utility_range=4.0, infosets=12, max_actions=2,
                        gamma_max=30.0, iterations=1000)
    expected = (31.0 * 4.0 * 12.0
                * (8.0 / 3.0 * math.sqrt(2.0) + 2.0 / math.sqrt(1000.0))
                / math.sqrt(1000.0))
    assert theorem_bound(inputs, "hs_dcfr") == pytest.approx(expected,
                                                             rel=1e-15)


def test_bound_input_from_game(kuhn):
    assert BoundInput.for_game(kuhn, 30.0, 1000) == BoundInput(
        utility_range=4.0, infosets=12, max_actions=2, gamma_max=30.0,
        iterations=1000)


def test_bound_scales_as_inverse_root_t():
    lo = BoundInput(4.0, 12, 2, 30.0, 10**8)
    hi = BoundInput(4.0, 12, 2, 30.0, 4 * 10**8)
    for which in ("hs_dcfr", "hs_pcfr_plus"):
        ratio = theorem_bound(hi, which) / theorem_bound(lo, which)
        assert ratio == pytest.approx(0.5, abs=1e-3)


def test_bound_gamma_zero_drops_the_u_factor():
    flat = BoundInput(4.0, 12, 2, 0.0, 1000)
    hs = BoundInput(4.0, 12, 2, 30.0, 1000)
    for which in ("hs_dcfr", "hs_pcfr_plus"):
        assert 31.0 * theorem_bound(flat, which) == pytest.approx(
            theorem_bound(hs, which), rel=1e-15)


def test_predictive_bound_is_linear_in_k():
    inputs = BoundInput(4.0, 12, 2, 30.0, 1000)
    base = theorem_bound(inputs, "hs_pcfr_plus")
    assert base == pytest.approx(31.0 * 12.0 / math.sqrt(1000.0), rel=1e-15)
    assert theorem_bound(inputs, "hs_pcfr_plus", k=3.5) == pytest.approx(
        3.5 * base, rel=1e-15)


def test_unknown_bound_name_rejected():
    with pytest.raises(ValueError, match="hs_dcfr"):
        theorem_bound(BoundInput(4.0, 12, 2, 30.0, 1000), "dcfr")


# ------------------------------------------------------------------------ oom

def test_oom_decades():
    assert oom(1e-2, 1e-6) == pytest.approx(4.0, abs=1e-12)


def test_oom_identity():
    assert oom(3.7e-5, 3.7e-5) == 0.0


@pytest.mark.parametrize("pair", [(0.0, 1e-3), (1e-3, 0.0), (-1e-3, 1e-3)])
def test_oom_rejects_nonpositive(pair):
    with pytest.raises(ValueError):
        oom(*pair)

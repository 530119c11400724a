"""Regret-minimization solvers with scheduled discounting, and the
exact-exploitability benchmark harness built around them."""

from .game_core import (GameBuildError, GameStats, StrategyProfile, TreeGame,
                        build_tree, expected_value, tree_stats)
from .games import GameConfigError, load_game, make_game

__all__ = [
    "GameBuildError", "GameConfigError", "GameStats", "StrategyProfile",
    "TreeGame", "build_tree", "expected_value", "load_game", "make_game",
    "tree_stats",
]

__version__ = "0.1.0"

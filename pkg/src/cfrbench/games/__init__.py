"""Benchmark game registry.

``make_game(name, **params)`` returns the rules object for one of the
supported games; ``load_game`` additionally builds the tree.  Sized games
also accept compact string ids like ``"goofspiel-4"`` or ``"battleship-3"``
(the trailing integer is the game's ``x`` parameter), which is the spelling
the command-line tools use.
"""

from __future__ import annotations

from ..game_core import GameRules, TreeGame, build_tree
from .battleship import BattleshipRules
from .blotto import BlottoRules
from .goofspiel import GoofspielRules
from .kuhn import KuhnRules
from .leduc import LeducRules
from .liars_dice import LiarsDiceRules


class GameConfigError(ValueError):
    """Unknown game name or out-of-range game parameters."""


GAME_NAMES = ("kuhn", "leduc", "big_leduc", "goofspiel", "goofspiel_li",
              "liars_dice", "battleship", "blotto")

#: Default ``x`` used when a sized game is requested without parameters.
_DEFAULT_X = {"goofspiel": 4, "goofspiel_li": 4, "liars_dice": 4,
              "battleship": 2}


def make_game(name: str, **params) -> GameRules:
    """Instantiate rules for ``name``; raises GameConfigError if invalid."""
    base, inline_x = _split_id(name)
    if inline_x is not None:
        if "x" in params:
            raise GameConfigError(
                f"game id {name!r} already fixes x; drop the x parameter")
        params["x"] = inline_x
    try:
        if base == "kuhn":
            _no_params(base, params)
            return KuhnRules()
        if base == "leduc":
            _no_params(base, params)
            return LeducRules("leduc", ranks=3, raise_cap=2)
        if base == "big_leduc":
            _no_params(base, params)
            return LeducRules("big_leduc", ranks=12, raise_cap=6)
        if base == "goofspiel":
            return GoofspielRules(x=params.pop("x", _DEFAULT_X[base]),
                                  limited=False, **params)
        if base == "goofspiel_li":
            return GoofspielRules(x=params.pop("x", _DEFAULT_X[base]),
                                  limited=True, **params)
        if base == "liars_dice":
            return LiarsDiceRules(x=params.pop("x", _DEFAULT_X[base]),
                                  **params)
        if base == "battleship":
            return BattleshipRules(x=params.pop("x", _DEFAULT_X[base]),
                                   **params)
        if base == "blotto":
            return BlottoRules(**params)
    except (ValueError, TypeError) as exc:
        raise GameConfigError(f"{name}: {exc}") from exc
    raise GameConfigError(
        f"unknown game {name!r}; expected one of {', '.join(GAME_NAMES)}")


def load_game(name: str, **params) -> TreeGame:
    """``build_tree(make_game(...))`` in one call."""
    return build_tree(make_game(name, **params))


def _split_id(name: str) -> tuple[str, int | None]:
    if "-" in name:
        base, _, suffix = name.rpartition("-")
        if base in _DEFAULT_X and suffix.isdigit():
            return base, int(suffix)
    return name, None


def _no_params(base: str, params: dict) -> None:
    if params:
        raise GameConfigError(
            f"{base} takes no parameters, got {sorted(params)}")

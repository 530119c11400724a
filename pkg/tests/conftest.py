import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cfrbench import build_tree, load_game
from toys import BlindSignal, MatchingPennies


@pytest.fixture(scope="session")
def kuhn():
    return load_game("kuhn")


@pytest.fixture(scope="session")
def leduc():
    return load_game("leduc")


@pytest.fixture(scope="session")
def goof3li():
    return load_game("goofspiel_li", x=3)


@pytest.fixture(scope="session")
def blotto():
    return load_game("blotto")


@pytest.fixture(scope="session")
def pennies():
    return build_tree(MatchingPennies())


@pytest.fixture(scope="session")
def blind_signal():
    return build_tree(BlindSignal())

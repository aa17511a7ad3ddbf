import random

import pytest

from kernel.seq import Seq
from problems.sep import SepInstance
from problems.trees import RegularTree
from banach.completion import BanachName
from banach.pseudonorm import max_norm_two_generators, rational_norm


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def evens():
    return Seq(rule=lambda i: 2 * i, label="evens")


@pytest.fixture
def odds():
    return Seq(rule=lambda i: 2 * i + 1, label="odds")


@pytest.fixture
def evens_odds(evens, odds):
    """p = evens, q = odds; the parity sequence separates them."""
    parity = Seq(rule=lambda n: n % 2, label="parity")
    return SepInstance(evens, odds, planted=parity, label="evens/odds")


@pytest.fixture
def all_paths_tree():
    """The full binary tree as a one-state automaton."""
    return RegularTree(["s"], {("s", 0): "s", ("s", 1): "s"}, "s", label="full")


@pytest.fixture
def ones_tree():
    """Only the path 1̄ is infinite; every 0 enters a state that dies after one more step."""
    transitions = {("a", 0): "b", ("a", 1): "a", ("b", 0): None, ("b", 1): None}
    return RegularTree(["a", "b"], transitions, "a", label="ones")


@pytest.fixture
def max2_space():
    return BanachName(max_norm_two_generators())


@pytest.fixture
def plane_l1():
    """ℚ² with the ℓ₁ norm on generators (1, 0), (0, 1), (1, 1)."""
    return BanachName(rational_norm([[1, 0], [0, 1], [1, 1]], kind="l1"))

from fractions import Fraction

import pytest

from kernel.errors import FuelExhaustedError
from kernel.seq import Seq
from problems.base import Verdict, apply_reduction
from problems.registry import get_oracle
from problems.trees import RegularTree, leftmost_path_realizer, verify_path
from hyperspace.closed import (
    ClosedMinus,
    CompactName,
    FiniteCover,
    cantor_complement_tree,
    cantor_level,
    interval_complement,
    unit_interval_name,
)
from hyperspace.selection import SelInstance, path2_le_sel, sel_le_pathB, sel_point, sel_tree, verify_sel
from spaces.creal import CReal
from spaces.metric import UNIT_INTERVAL, Ball

THIRD = Fraction(1, 3)


@pytest.fixture
def middle_third():
    """A = [1/3, 2/3] inside I, with the midpoint planted."""
    return SelInstance(unit_interval_name(), interval_complement(THIRD, 2 * THIRD), planted=Fraction(1, 2), label="mid")


@pytest.fixture
def planted_ones_tree():
    transitions = {("a", 0): "b", ("a", 1): "a", ("b", 0): None, ("b", 1): None}
    return RegularTree(["a", "b"], transitions, "a", label="ones", planted=Seq.constant(1))


# Names of closed and compact sets

def test_interval_complement_balls_creep_to_the_endpoints():
    closed = interval_complement(THIRD, 2 * THIRD)
    assert closed.balls[0] == Ball(Fraction(0), THIRD - Fraction(1, 16))
    assert closed.balls[1] == Ball(Fraction(1), THIRD - Fraction(1, 16))
    assert closed.balls[4].radius == THIRD - Fraction(1, 2 ** 12)
    assert closed.excluded_by(Fraction(1, 10), 4) == 0
    assert closed.excluded_by(Fraction(1, 2), 20) is None


def test_cover_levels_skip_junk_covers():
    name = unit_interval_name(junk=True)
    assert name.level_size(3) == 9
    assert name.cover_at(3).mesh == Fraction(1, 8)


def test_rotated_covers_keep_their_centers():
    name = unit_interval_name(offsets=lambda n: 1)
    assert name.center(1, 0) == Fraction(1, 2)
    assert sorted(name.cover_at(2).centers()) == [Fraction(i, 4) for i in range(5)]


def test_cover_search_is_fueled():
    coarse = FiniteCover((Ball(Fraction(1, 2), Fraction(1)),))
    name = CompactName(UNIT_INTERVAL, Seq.constant(coarse), fuel=5)
    with pytest.raises(FuelExhaustedError):
        name.cover_at(2)


def test_cantor_level_neighbourhoods():
    cover = cantor_level(2)
    assert len(cover) == 8
    assert cover.candidates((1, 0, 1), Fraction(1, 4)) == [4, 5]
    assert cover.balls[4].center == (1, 0, 0)


def test_cantor_complement_of_a_tree(ones_tree):
    closed = cantor_complement_tree(ones_tree)
    assert closed.balls[2].is_empty
    assert closed.balls[3] == Ball((0, 0), Fraction(1, 2))


# Selection trees

def test_selection_tree_follows_the_planted_point(middle_third):
    tree = sel_tree(middle_third.compact, middle_third.closed, planted=middle_third.planted)
    assert tree.planted.prefix(4) == (0, 1, 2, 4)
    assert verify_path(tree, tree.planted, 8) is Verdict.ACCEPT


def test_selection_tree_prunes_paths_that_leave_the_set(middle_third):
    tree = sel_tree(middle_third.compact, middle_third.closed)
    assert tree.member((0, 1, 2))
    assert not tree.member((0,) * 8)


def test_sel_le_pathB_with_planted_path(middle_third):
    point = apply_reduction(sel_le_pathB(), get_oracle("pathB", "planted"))(middle_third)
    assert abs(point.approx(16) - Fraction(1, 2)) <= Fraction(1, 2 ** 16)
    assert verify_sel(middle_third, point, 12) is Verdict.ACCEPT


def test_selection_by_search_in_the_whole_interval():
    nothing_removed = ClosedMinus(UNIT_INTERVAL, Seq.constant(Ball(Fraction(0), Fraction(0))))
    point = sel_point(unit_interval_name(), nothing_removed, leftmost_path_realizer(lookahead=2))
    assert abs(point.approx(10)) <= Fraction(1, 2 ** 10)


def test_verify_sel_rejects_excluded_points(middle_third):
    assert verify_sel(middle_third, CReal.from_rational(Fraction(1, 10)), 8) is Verdict.REJECT
    assert verify_sel(middle_third, CReal.from_rational(Fraction(1, 2)), 8) is Verdict.ACCEPT


def test_planted_sel_realizer(middle_third):
    assert get_oracle("sel", "planted")(middle_third) == Fraction(1, 2)


# Path₂ ≤ Sel

def test_path2_le_sel_with_planted_point(planted_ones_tree):
    path = apply_reduction(path2_le_sel(), get_oracle("sel", "planted"))(planted_ones_tree)
    assert verify_path(planted_ones_tree, path, 32) is Verdict.ACCEPT


def test_path2_le_sel_excludes_points_off_the_tree(planted_ones_tree):
    inst = path2_le_sel().H(planted_ones_tree)
    assert verify_sel(inst, Seq.constant(1), 10) is Verdict.ACCEPT
    assert verify_sel(inst, Seq.constant(0), 10) is Verdict.REJECT

import random

import pytest

from cfrenorm.exact import ExactNumber, GOLDEN, LEFT, ONE, RIGHT, SidedPoint, ZERO, sided
from cfrenorm.oracle import (
    SearchBoundExceeded,
    first_return_time,
    nested_intervals,
    omega,
    slow_approx_bruteforce,
)
from cfrenorm.exact import gauss_step

E = ExactNumber.rational


class TestOmega:
    def test_two_fifths_example(self):
        # orbit of 9/10 under rotation by 2/5: 0.9, 0.3, 0.7, 0.1, 0.5 vs 1-x = 0.6
        assert omega(E(2, 5), sided(E(9, 10)), 5).letters == "ABABB"

    def test_boundary_point_right_side_reads_a(self):
        x = E(2, 5)
        assert omega(x, SidedPoint(ONE - x, RIGHT), 1).letters == "A"
        assert omega(x, SidedPoint(ONE - x, LEFT), 1).letters == "B"

    def test_golden_prefix_is_fibonacci_word(self):
        yg = sided((ONE + GOLDEN).inverse())
        assert omega(GOLDEN, yg, 8).letters == "ABAABABA"

    def test_requires_interior_x(self):
        with pytest.raises(ValueError):
            omega(ONE, sided(E(1, 2)), 3)


class TestFirstReturn:
    def test_dichotomy_of_return_times(self):
        # the first-return map on [1-x, 1] has the two return times a, a+1,
        # split at the point -(a+1)x mod 1
        rng = random.Random(3)
        for _ in range(40):
            q = rng.randrange(20, 10**5)
            x = E(rng.randrange(1, q // 3), q)  # keep a = floor(1/x) >= 3
            a = gauss_step(x)[0]
            split = (E(-(a + 1)) * x).frac()
            assert ONE - x < split or split == ZERO
            y_long = sided((ONE - x + split) / 2)
            assert first_return_time(x, y_long) == a + 1
            if split != ZERO:
                y_short = sided((split + ONE) / 2)
                assert first_return_time(x, y_short) == a


class TestNestedIntervals:
    def test_depth_zero_is_whole_circle(self):
        chain = nested_intervals(E(2, 5), sided(E(1, 3)), 0)
        assert len(chain) == 1
        iv = chain[0]
        assert (iv.left_index, iv.right_index) == (0, 0)
        assert iv.left_value == ZERO and iv.right_value == ONE

    def test_depth_one_endpoints(self):
        # the only partition point is 1-x = -x mod 1
        rng = random.Random(9)
        for _ in range(30):
            q = rng.randrange(10, 10**4)
            x = E(rng.randrange(1, q), q)
            y = sided(E(rng.randrange(0, 101), 101))
            iv = nested_intervals(x, y, 1)[1]
            assert {iv.left_index, iv.right_index} == {0, 1}

    def test_nesting_and_containment(self):
        rng = random.Random(10)
        for _ in range(20):
            q = rng.randrange(50, 10**5)
            x = E(rng.randrange(1, q), q)
            y = sided(E(rng.randrange(0, 293), 293))
            try:
                chain = nested_intervals(x, y, 8)
            except SearchBoundExceeded:
                continue
            for prev, cur in zip(chain, chain[1:]):
                assert cur.contains(y)
                assert prev.left_value <= cur.left_value
                assert cur.right_value <= prev.right_value

    def test_golden_indices(self):
        yg = sided((ONE + GOLDEN).inverse())
        chain = nested_intervals(GOLDEN, yg, 6)
        assert [(iv.left_index, iv.right_index) for iv in chain] == [
            (0, 0), (1, 0), (1, 2), (4, 2), (4, 7), (12, 7), (12, 20)]

    def test_rational_orbit_exhausts_search(self):
        with pytest.raises(SearchBoundExceeded):
            nested_intervals(E(2, 5), sided(ZERO), 10, search_bound=10**4)


class TestApproxBruteforce:
    def test_first_index_is_always_one(self):
        rng = random.Random(12)
        for _ in range(50):
            q = rng.randrange(10, 10**4)
            x = E(rng.randrange(1, q), q)
            y = sided(E(rng.randrange(0, 67), 67))
            assert slow_approx_bruteforce(x, y, 1) == [0, 1]

    def test_point_on_backward_orbit_freezes_one_side(self):
        # y = -2x mod 1, right side: once hit, the left endpoint never moves
        x = E(355, 1131)
        y = SidedPoint((E(-2) * x).frac(), RIGHT)
        chain = nested_intervals(x, y, 6)
        frozen = [iv for iv in chain if iv.left_index == 2]
        assert frozen and all(iv.left_index == 2 for iv in chain[chain.index(frozen[0]):])

import random

import pytest

from cfrenorm.exact import ExactNumber, GOLDEN, LEFT, ONE, RIGHT, SidedPoint, ZERO, sided
from cfrenorm.exact import regular_cf_digits
from cfrenorm.renorm import (
    GREEN,
    RED,
    OrbitTerminated,
    PG,
    PR,
    PartitionCell,
    branch_of,
    classify_fast,
    drive_slow,
    fast_orbit,
    slow_orbit,
    t_fast,
    t_slow,
)

E = ExactNumber.rational


def rand_pair(rng, qmax=10**4):
    q = rng.randrange(7, qmax)
    p = rng.randrange(1, q)
    d = rng.randrange(5, 999)
    return E(p, q), sided(E(rng.randrange(0, d), d))


class TestSlowMap:
    def test_green_example(self):
        s = t_slow(E(2, 5), sided(E(9, 10)))
        assert (s.edge, s.a_hat) == (GREEN, 2)
        assert s.next_x == E(1, 2) and s.next_y.value == E(1, 4)

    def test_red_example(self):
        s = t_slow(E(2, 5), sided(E(1, 5)))
        assert (s.edge, s.a_hat) == (RED, 1)
        assert s.next_x == E(2, 3) and s.next_y.value == E(1, 3)

    def test_boundary_sides_pick_branches(self):
        x = E(2, 5)
        split = ONE - x
        assert t_slow(x, SidedPoint(split, LEFT)).edge == RED
        assert t_slow(x, SidedPoint(split, RIGHT)).edge == GREEN

    def test_side_tags_flip_on_green_only(self):
        x = E(2, 5)
        green = t_slow(x, SidedPoint(ONE - x, RIGHT))
        assert green.next_y == SidedPoint(ONE, LEFT)
        red = t_slow(x, SidedPoint(ONE - x, LEFT))
        assert red.next_y == SidedPoint(ONE, LEFT)  # 1-x scales to the top point

    def test_terminal_state_signal(self):
        with pytest.raises(OrbitTerminated):
            t_slow(ZERO, sided(E(1, 3)))

    def test_next_y_stays_in_square(self):
        rng = random.Random(5)
        for _ in range(200):
            x, y = rand_pair(rng)
            s = t_slow(x, y)
            assert ZERO <= s.next_y.value <= ONE
            assert ZERO < s.next_x or s.next_x == ZERO


class TestClassification:
    def test_examples(self):
        x = E(2, 5)
        assert classify_fast(x, sided(E(9, 10))) == PG(0, 2)
        assert classify_fast(x, sided(E(1, 4))) == PG(1, 2)
        assert classify_fast(x, sided(E(1, 10))) == PR(2, 2)

    def test_pr_indices_are_first_two_partial_quotients(self):
        rng = random.Random(11)
        hit = 0
        for _ in range(300):
            x, y = rand_pair(rng)
            try:
                cell = classify_fast(x, y)
            except OrbitTerminated:
                continue
            if cell.kind == "PR":
                digits = regular_cf_digits(x, 2)
                assert (cell.n, cell.i) == (digits[0], digits[1])
                hit += 1
        assert hit > 20

    def test_reciprocal_x_has_no_red_room(self):
        # at x = 1/n the strip below y = 1 - nx is empty: everything is PG
        x = E(1, 3)
        assert classify_fast(x, sided(ZERO)) == PG(2, 3)
        assert classify_fast(x, SidedPoint(ONE, LEFT)) == PG(0, 3)

    def test_pg_boundary_sides(self):
        x = E(2, 5)
        edge_val = ONE - 1 * x  # between PG(0,2) and PG(1,2)
        assert classify_fast(x, SidedPoint(edge_val, LEFT)) == PG(1, 2)
        assert classify_fast(x, SidedPoint(edge_val, RIGHT)) == PG(0, 2)

    def test_cell_validation(self):
        with pytest.raises(ValueError):
            PartitionCell("PG", 3, 3)
        with pytest.raises(ValueError):
            PartitionCell("PR", 0, 2)
        with pytest.raises(ValueError):
            PartitionCell("XX", 1, 1)


class TestFastMap:
    def test_pg_example_and_slow_composition(self):
        x, y = E(2, 5), sided(E(1, 4))
        f = t_fast(x, y)
        assert f.cell == PG(1, 2)
        assert f.next_x == E(1, 2) and f.next_y.value == E(7, 8)
        s1 = t_slow(x, y)
        s2 = t_slow(s1.next_x, s1.next_y)
        assert (s2.next_x, s2.next_y) == (f.next_x, f.next_y)

    def test_pr_example_reaches_terminal_x(self):
        f = t_fast(E(2, 5), sided(E(1, 10)))
        assert f.cell == PR(2, 2)
        assert f.next_x == ZERO and f.next_y.value == E(1, 2)

    def test_green_region_fast_equals_slow(self):
        rng = random.Random(23)
        for _ in range(100):
            x, y = rand_pair(rng)
            if y >= SidedPoint(ONE - x, RIGHT):
                f = t_fast(x, y)
                s = t_slow(x, y)
                assert f.cell.i == 0
                assert (f.next_x, f.next_y) == (s.next_x, s.next_y)

    def test_composition_law_random(self):
        rng = random.Random(37)
        checked = 0
        for _ in range(300):
            x, y = rand_pair(rng)
            try:
                f = t_fast(x, y)
            except OrbitTerminated:
                continue
            m = f.cell.slow_steps
            cx, cy = x, y
            try:
                for _ in range(m):
                    s = t_slow(cx, cy)
                    cx, cy = s.next_x, s.next_y
            except OrbitTerminated:
                continue
            assert (cx, cy) == (f.next_x, f.next_y)
            checked += 1
        assert checked > 200


class TestPartitionDynamics:
    def test_pg_steps_down(self):
        # a point of PG(i, n) moves to PG(i-1, n-1) in one slow step, i >= 1
        for (i, n) in [(1, 2), (1, 3), (2, 3), (3, 7), (5, 6)]:
            x = (E(1, n) + E(1, n + 1)) / 2
            y_lo, y_hi = ONE - (i + 1) * x, ONE - i * x
            y = sided((y_lo + y_hi) / 2)
            assert classify_fast(x, y) == PG(i, n)
            s = t_slow(x, y)
            assert classify_fast(s.next_x, s.next_y) == PG(i - 1, n - 1)

    def test_pr_steps_down(self):
        for (i, n) in [(1, 2), (2, 2), (2, 3), (4, 5)]:
            lo, hi = E(i, i * n + 1), E(i + 1, (i + 1) * n + 1)
            x = (lo + 2 * hi) / 3
            y = sided((ONE - n * x) / 2)
            assert classify_fast(x, y) == PR(i, n)
            s = t_slow(x, y)
            assert classify_fast(s.next_x, s.next_y) == PR(i, n - 1)


class TestOrbits:
    def test_empty_orbit(self):
        assert slow_orbit(E(2, 5), sided(E(1, 3)), 0) == []

    def test_golden_fast_orbit_stays_green(self):
        yg = sided((ONE + GOLDEN).inverse())
        orbit = fast_orbit(GOLDEN, yg, 5)
        assert [st.cell for st in orbit] == [PG(0, 1)] * 5

    def test_rational_backward_orbit_truncates(self):
        steps = slow_orbit(E(2, 5), sided(ZERO), 5)
        assert [s.edge for s in steps] == [RED, RED]
        assert [s.next_x for s in steps] == [E(2, 3), ZERO]

    def test_red_unit_run_bounded_by_first_quotient(self):
        # consecutive unit-time red steps from x are at most a_1(x) many
        rng = random.Random(41)
        for _ in range(100):
            q = rng.randrange(10, 5000)
            x = E(rng.randrange(1, q), q)
            run, bound = 0, None
            for s in slow_orbit(x, sided(E(1, 173)), 60):
                if s.edge == RED and s.a_hat == 1:
                    if run == 0:
                        bound = regular_cf_digits(x, 1)[0]
                    run += 1
                    assert run <= bound
                else:
                    run = 0
                x = s.next_x

    def test_green_projection_is_regular_expansion(self):
        rng = random.Random(55)
        for _ in range(50):
            q = rng.randrange(10, 10**6)
            x = E(rng.randrange(1, q), q)
            digits = [s.a_hat for s in drive_slow(x, None, 30, lambda xx, yy: GREEN)]
            assert digits == regular_cf_digits(x, 30)

    def test_branch_of_requires_interior(self):
        with pytest.raises(OrbitTerminated):
            branch_of(ONE, sided(E(1, 2)))

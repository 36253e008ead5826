"""The slow and fast renormalization maps on the unit square.

The slow map acts on a pair (x, y): x is a rotation amount, y a circle point.
Depending on which side of the line y = 1 - x the point sits, the map passes
to the first-return system on [1-x, 1] (the *green* branch, which reverses
orientation and applies the Gauss map to x) or on [0, 1-x] (the *red* branch,
orientation preserving, x -> T(1-x)).  The fast map accelerates the slow map
through every run of red steps with unit return time.

Both maps come with Markov partition classifiers: PG(i, n) cells lead to a
green step after i unit-time red steps, PR(i, n) cells lead to a red step
with return time i+1 after n-1 unit-time red steps.

Rational rotation amounts eventually reach x = 0; that is reported as a
terminal state, not an error, so orbit functions return partial data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .exact import (
    LEFT,
    RIGHT,
    ExactNumber,
    ONE,
    SidedPoint,
    ZERO,
    gauss_step,
)

GREEN = "green"
RED = "red"


class OrbitTerminated(Exception):
    """The rotation amount reached the fixed segment x = 0 (rational input)."""


@dataclass(frozen=True)
class SlowStep:
    """One application of the slow map: branch colour, return time, next state."""

    edge: str
    a_hat: int
    next_x: ExactNumber
    next_y: SidedPoint


@dataclass(frozen=True)
class PartitionCell:
    """Cell of the fast-map Markov partition.

    PG(i, n): 1/(n+1) <= x <= 1/n and 1-(i+1)x <= y <= 1-ix, 0 <= i <= n-1;
    PG(0, n) is the green triangle slice G_n.  PR(i, n): i/(in+1) <= x <=
    (i+1)/((i+1)n+1) and 0 <= y <= 1-nx, i >= 1; PR(i, 1) is the red slice R_i.
    """

    kind: str  # "PG" | "PR"
    i: int
    n: int

    def __post_init__(self):
        if self.kind == "PG":
            if not (self.n >= 1 and 0 <= self.i <= self.n - 1):
                raise ValueError(f"invalid PG cell ({self.i}, {self.n})")
        elif self.kind == "PR":
            if not (self.n >= 1 and self.i >= 1):
                raise ValueError(f"invalid PR cell ({self.i}, {self.n})")
        else:
            raise ValueError(f"unknown cell kind {self.kind!r}")

    @property
    def slow_steps(self) -> int:
        """Number of slow steps one fast step performs from this cell."""
        return self.i + 1 if self.kind == "PG" else self.n

    def __str__(self):
        return f"{self.kind}({self.i},{self.n})"


def PG(i: int, n: int) -> PartitionCell:
    return PartitionCell("PG", i, n)


def PR(i: int, n: int) -> PartitionCell:
    return PartitionCell("PR", i, n)


def _require_interior(x: ExactNumber) -> None:
    if x <= 0 or x >= 1:
        raise OrbitTerminated(f"rotation amount {x} outside (0, 1)")


def branch_of(x: ExactNumber, y: SidedPoint) -> str:
    """Which first-return interval contains y: green for [1-x, 1], red for [0, 1-x]."""
    _require_interior(x)
    return GREEN if y >= SidedPoint(ONE - x, RIGHT) else RED


def green_data(x: ExactNumber) -> tuple[int, ExactNumber]:
    """(return time, next rotation amount) for the green branch."""
    return gauss_step(x)


def red_data(x: ExactNumber) -> tuple[int, ExactNumber]:
    """(return time, next rotation amount) for the red branch."""
    return gauss_step(ONE - x)


def t_slow(x: ExactNumber, y: SidedPoint, edge: Optional[str] = None) -> SlowStep:
    """One slow-map step.

    The green branch sends (x, y) to (T(x), (1-y)/x) and reverses orientation,
    swapping side tags; the red branch sends it to (T(1-x), y/(1-x)) keeping
    tags.  `edge` overrides the membership test (used by decision strategies
    that ignore y).
    """
    _require_interior(x)
    if edge is None:
        edge = branch_of(x, y)
    if edge == GREEN:
        a_hat, nx = green_data(x)
        v = (ONE - y.value) / x
        ny = SidedPoint(v, LEFT if y.side == RIGHT else RIGHT)
    elif edge == RED:
        a_hat, nx = red_data(x)
        ny = SidedPoint(y.value / (ONE - x), y.side)
    else:
        raise ValueError(f"unknown edge {edge!r}")
    return SlowStep(edge, a_hat, nx, ny)


def slow_orbit(x: ExactNumber, y: SidedPoint, k: int) -> list[SlowStep]:
    """First k slow steps; shorter if the orbit reaches a terminal state."""
    steps = []
    for _ in range(k):
        try:
            step = t_slow(x, y)
        except OrbitTerminated:
            break
        steps.append(step)
        x, y = step.next_x, step.next_y
    return steps


def classify_fast(x: ExactNumber, y: SidedPoint) -> PartitionCell:
    """The unique fast-partition cell containing (x, y), under sided conventions.

    For PR cells the indices are read off the first two regular partial
    quotients of x rather than located by interval search, which also settles
    membership at shared cell boundaries (left closed).
    """
    n, tx = gauss_step(x)
    one_minus_nx = ONE - n * x
    # y in [1-nx, 1] -> PG; y in [0, 1-nx] -> PR (degenerate when 1-nx = 0)
    if one_minus_nx == ZERO or y >= SidedPoint(one_minus_nx, RIGHT):
        t = (ONE - y.value) / x
        i = t.floor()
        if t == i and y.side == RIGHT:
            i -= 1
        if not 0 <= i <= n - 1:
            raise AssertionError(f"PG index {i} out of range for n={n}")
        return PG(i, n)
    if tx.is_zero:
        raise OrbitTerminated(f"x = {x} has no second partial quotient")
    i = tx.inverse().floor()
    return PR(i, n)


@dataclass(frozen=True)
class FastStep:
    cell: PartitionCell
    next_x: ExactNumber
    next_y: SidedPoint


def t_fast(x: ExactNumber, y: SidedPoint) -> FastStep:
    """One fast-map step, equal to slow steps composed through the cell.

    On PG(i, n): (1/x - n, (1-y)/x - i), orientation reversed.
    On PR(i, n): ((x(ni+1) - i)/(1-nx), y/(1-nx)), orientation preserved.
    """
    cell = classify_fast(x, y)
    i, n = cell.i, cell.n
    if cell.kind == "PG":
        nx = x.inverse() - n
        v = (ONE - y.value) / x - i
        ny = SidedPoint(v, LEFT if y.side == RIGHT else RIGHT)
    else:
        den = ONE - n * x
        nx = (x * (n * i + 1) - i) / den
        ny = SidedPoint(y.value / den, y.side)
    return FastStep(cell, nx, ny)


def fast_orbit(x: ExactNumber, y: SidedPoint, k: int) -> list[FastStep]:
    """First k fast steps; shorter if the orbit reaches a terminal state."""
    steps = []
    for _ in range(k):
        try:
            step = t_fast(x, y)
        except OrbitTerminated:
            break
        steps.append(step)
        x, y = step.next_x, step.next_y
    return steps


@dataclass(frozen=True)
class DrivenStep:
    """Record of one slow step under an external or y-driven decision rule."""

    x: ExactNumber
    y: Optional[SidedPoint]
    edge: str
    a_hat: int
    next_x: ExactNumber
    next_y: Optional[SidedPoint]


def drive_slow(
    x: ExactNumber,
    y: Optional[SidedPoint],
    k: Optional[int],
    decide: Optional[Callable[[ExactNumber, Optional[SidedPoint]], str]] = None,
) -> Iterator[DrivenStep]:
    """Yield up to k slow steps (unbounded if k is None), branch by `decide` or by y.

    With decide=None the branch comes from the position of y (which is then
    required).  When y is supplied it is transported along either way, so
    y-dependent observers stay available; strategies that ignore y may pass
    y=None.  Stops early at terminal states.
    """
    if decide is None and y is None:
        raise ValueError("either a decision rule or a y coordinate is required")
    remaining = -1 if k is None else k
    while remaining != 0:
        if remaining > 0:
            remaining -= 1
        try:
            _require_interior(x)
            edge = decide(x, y) if decide is not None else branch_of(x, y)
            if y is not None:
                step = t_slow(x, y, edge=edge)
                nx, ny = step.next_x, step.next_y
                a_hat = step.a_hat
            else:
                a_hat, nx = green_data(x) if edge == GREEN else red_data(x)
                ny = None
        except OrbitTerminated:
            return
        yield DrivenStep(x, y, edge, a_hat, nx, ny)
        x, y = nx, ny

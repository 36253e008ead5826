"""Semi-regular continued fractions driven by the slow renormalization map.

Each slow step contributes a return time (the raw digit stream) and a branch
colour.  Green steps advance the expansion like the regular algorithm; a red
step inserts a mediant (unit return time) or skips a convergent (return time
at least two), which is the singularization/insertion calculus on digit
strings.  The finalized stream of a prefix is the valid semi-regular
expansion it denotes: a red step contributes its return time as a digit with
a minus sign on the bar before it and raises the previous digit by one; a red
first step flips the whole expansion to the 1 - 1/(...) form, recorded in the
`one_minus` flag.

Convergents are maintained two ways that are proven against each other in the
tests: as the running product of the inverse-branch matrices

    green: [[0, 1], [1, a]]        red: [[1, a-1], [1, a]]

whose columns are consecutive convergent pairs, and positionally as the
convergent list of the finalized stream (greens append, unit reds insert the
mediant before the last entry, other reds replace the last entry by the
mediant and append).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .exact import ExactNumber, ONE, SidedPoint, ZERO
from .oracle import NestedInterval
from .renorm import GREEN, RED, DrivenStep, drive_slow
from .words import endpoint_length_series, endpoint_positions


# -- decision strategies -------------------------------------------------------


class Strategy:
    """A deterministic rule mapping the current state to a branch colour."""

    needs_y = False

    def decide(self, x: ExactNumber, y: Optional[SidedPoint]) -> str:
        raise NotImplementedError

    def name(self) -> str:
        return type(self).__name__.lower()


class Regular(Strategy):
    """Always follow the green edge: the regular expansion."""

    def decide(self, x, y):
        return GREEN


class Backward(Strategy):
    """Always follow the red edge: all numerators -1, digits >= 2."""

    def decide(self, x, y):
        return RED


class Alpha(Strategy):
    """Green edge iff x <= alpha (ties green); Alpha(1) = Regular, Alpha(0) = Backward."""

    def __init__(self, alpha):
        self.alpha = ExactNumber._coerce(alpha)
        if self.alpha < 0 or self.alpha > 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    def decide(self, x, y):
        return GREEN if x <= self.alpha else RED

    def name(self):
        return f"alpha({self.alpha})"


class NearestInteger(Alpha):
    """Induce on the shorter interval: green iff x <= 1/2.  No digit is ever 1."""

    def __init__(self):
        super().__init__(ExactNumber.rational(1, 2))

    def name(self):
        return "nearest-integer"


class CounterAlpha(Strategy):
    """Red edge iff x <= alpha (ties red): digits stay bounded, growth dies."""

    def __init__(self, alpha):
        self.alpha = ExactNumber._coerce(alpha)
        if self.alpha < 0 or self.alpha > 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    def decide(self, x, y):
        return RED if x <= self.alpha else GREEN

    def name(self):
        return f"counter-alpha({self.alpha})"


class Lehner(Strategy):
    """Induce on the longer interval: green iff x >= 1/2 (rational ties green).

    Always inserts when possible, never singularizes; digits are 1 or 2."""

    HALF = ExactNumber.rational(1, 2)

    def decide(self, x, y):
        return GREEN if x >= self.HALF else RED

    def name(self):
        return "lehner"


class FromY(Strategy):
    """Decisions read off the slow orbit of (x, y)."""

    needs_y = True

    def __init__(self, y: SidedPoint):
        self.y = y

    def decide(self, x, y):  # pragma: no cover - expand uses the y-driven path
        raise RuntimeError("FromY strategies are driven by the transported y")

    def name(self):
        return f"from-y({self.y})"


class FromStream(Strategy):
    """An explicit finite list of branch decisions."""

    def __init__(self, decisions: Sequence[str]):
        bad = [d for d in decisions if d not in (GREEN, RED)]
        if bad:
            raise ValueError(f"decisions must be green/red, got {bad[:3]}")
        self.decisions = tuple(decisions)
        self._pos = 0

    def decide(self, x, y):
        if self._pos >= len(self.decisions):
            raise IndexError("decision stream exhausted")
        d = self.decisions[self._pos]
        self._pos += 1
        return d

    def rewind(self):
        self._pos = 0

    def name(self):
        return f"from-stream[{len(self.decisions)}]"


# -- semi-regular continued fractions -------------------------------------------


@dataclass(frozen=True)
class SemiRegularCF:
    """Digit/sign prefix [1/d_1, e_1/d_2, ...] with numerators e in {-1, +1}.

    signs[i] is the numerator on the bar between digits[i] and digits[i+1].
    Validity requires d + following sign >= 1, so a unit digit is never
    followed by a minus bar.  With `one_minus` the stream expands 1 - x
    instead: value = 1 - 1/(d_1 + e_1/(d_2 + ...)).  The full semi-regular
    condition (infinitely often d + e >= 2) is undecidable on prefixes and is
    only monitored, see trailing_unit_run.
    """

    digits: tuple[int, ...]
    signs: tuple[int, ...]
    one_minus: bool = False

    def __post_init__(self):
        if len(self.signs) != max(0, len(self.digits) - 1):
            raise ValueError("need exactly one sign between consecutive digits")
        if any(d < 1 for d in self.digits):
            raise ValueError("digits must be positive integers")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        for i, s in enumerate(self.signs):
            if self.digits[i] + s < 1:
                raise ValueError(
                    f"digit {self.digits[i]} at position {i + 1} followed by sign {s}"
                )

    def __len__(self):
        return len(self.digits)

    def value(self, tail: ExactNumber = ZERO) -> ExactNumber:
        """Exact value of the prefix, with `tail` added to the last digit."""
        if tail < 0 or tail > 1:
            raise ValueError("tail must lie in [0, 1]")
        if not self.digits:
            return (ONE - tail) if self.one_minus else tail
        t = tail + self.digits[-1]
        for i in range(len(self.digits) - 2, -1, -1):
            t = self.digits[i] + ExactNumber.rational(self.signs[i]) / t
        v = t.inverse()
        return ONE - v if self.one_minus else v

    def convergent_table(self) -> "ConvergentTable":
        return ConvergentTable.from_stream(self.digits, self.signs)

    def strict_count(self) -> int:
        """Positions (with a following sign) where digit + sign >= 2."""
        return sum(1 for i, s in enumerate(self.signs) if self.digits[i] + s >= 2)

    def trailing_unit_run(self) -> int:
        """Length of the trailing run with digit + following sign = 1.

        A full expansion must not end in an infinite such run; on a prefix we
        can only report how long the current one is."""
        run = 0
        for i in range(len(self.signs) - 1, -1, -1):
            if self.digits[i] + self.signs[i] == 1:
                run += 1
            else:
                break
        return run

    def to_json(self) -> str:
        return json.dumps(
            {"digits": list(self.digits), "signs": list(self.signs), "one_minus": self.one_minus}
        )

    @staticmethod
    def from_json(text: str) -> "SemiRegularCF":
        obj = json.loads(text)
        return SemiRegularCF(tuple(obj["digits"]), tuple(obj["signs"]), obj.get("one_minus", False))


class ConvergentTable:
    """Convergent pairs p_j/q_j with the seed pairs p_-1/q_-1 = 1/0, p_0/q_0 = 0/1."""

    def __init__(self, ps: Optional[list[int]] = None, qs: Optional[list[int]] = None):
        self.ps = ps if ps is not None else [1, 0]
        self.qs = qs if qs is not None else [0, 1]
        if len(self.ps) != len(self.qs) or len(self.ps) < 2:
            raise ValueError("tables carry aligned p and q lists including both seeds")

    @staticmethod
    def from_stream(digits: Sequence[int], signs: Sequence[int]) -> "ConvergentTable":
        """Run the recurrence p_j = d_j p_{j-1} + e_{j-1} p_{j-2} (e_0 = +1)."""
        t = ConvergentTable()
        for j, d in enumerate(digits):
            e = 1 if j == 0 else signs[j - 1]
            t.ps.append(d * t.ps[-1] + e * t.ps[-2])
            t.qs.append(d * t.qs[-1] + e * t.qs[-2])
        return t

    def __len__(self):
        return len(self.ps) - 2

    def pair(self, j: int) -> tuple[int, int]:
        """(p_j, q_j) for j >= -1."""
        return self.ps[j + 1], self.qs[j + 1]

    def rows(self) -> list[tuple[int, int]]:
        return list(zip(self.ps[2:], self.qs[2:]))

    def fractions(self) -> list[ExactNumber]:
        return [ExactNumber.rational(p, q) for p, q in self.rows()]

    def __eq__(self, other):
        return isinstance(other, ConvergentTable) and self.ps == other.ps and self.qs == other.qs

    def copy(self) -> "ConvergentTable":
        return ConvergentTable(list(self.ps), list(self.qs))


# -- expansion driver ------------------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    edge: str
    a_hat: int


def inverse_branch_matrix(edge: str, a_hat: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The convergent-side matrix of one slow step."""
    if edge == GREEN:
        return ((0, 1), (1, a_hat))
    if edge == RED:
        return ((1, a_hat - 1), (1, a_hat))
    raise ValueError(f"unknown edge {edge!r}")


def finalize_stream(steps: Sequence[StepRecord]) -> SemiRegularCF:
    """The valid semi-regular stream a step prefix denotes.

    Digits are the return times, bumped by one when the following step is red
    (that step's mediant lands on this digit's convergent); the bar before a
    digit is minus iff its step is red; a red first step produces the
    1 - 1/(...) form."""
    if not steps:
        return SemiRegularCF((), ())
    digits = [s.a_hat for s in steps]
    for j in range(len(steps) - 1):
        if steps[j + 1].edge == RED:
            digits[j] += 1
    signs = tuple(1 if steps[j + 1].edge == GREEN else -1 for j in range(len(steps) - 1))
    return SemiRegularCF(tuple(digits), signs, one_minus=steps[0].edge == RED)


@dataclass
class Expansion:
    """Everything one expansion run produces.

    matrices[n] is the inverse-branch product after n steps; its columns are
    the current consecutive convergent pair.  `table` is the positional
    convergent list of the finalized stream; `new_pairs[n]` are the convergent
    pairs first appearing at step n+1 in chronological order.
    """

    x: ExactNumber
    steps: tuple[StepRecord, ...]
    terminal: bool
    cf: SemiRegularCF
    table: ConvergentTable
    matrices: list[tuple[tuple[int, int], tuple[int, int]]]
    new_pairs: list[list[tuple[int, int]]]
    fast_closing: list[bool] = field(default_factory=list)

    @property
    def return_times(self) -> list[int]:
        """The raw digit stream: the return time of every slow step."""
        return [s.a_hat for s in self.steps]

    @property
    def edge_signs(self) -> list[int]:
        """Sign stream by successor colour: +1 before a green step's digit."""
        return [1 if s.edge == GREEN else -1 for s in self.steps[1:]]

    @property
    def decisions(self) -> list[str]:
        return [s.edge for s in self.steps]

    def max_denominators(self) -> list[int]:
        """Max column denominator after each step: the newest convergent scale."""
        return [max(m[1]) for m in self.matrices[1:]]


def expand(x: ExactNumber, strategy: Strategy, k: int) -> Expansion:
    """Run k slow steps under `strategy` and collect the expansion.

    Rational x may terminate early; the result is then flagged and partial.
    """
    if k < 1:
        raise ValueError("depth must be at least 1")
    if isinstance(strategy, FromStream):
        strategy.rewind()
        k = min(k, len(strategy.decisions))
    y = strategy.y if isinstance(strategy, FromY) else None
    decide = None if isinstance(strategy, FromY) else strategy.decide

    steps: list[StepRecord] = []
    mat = ((1, 0), (0, 1))
    matrices = [mat]
    table = ConvergentTable()
    new_pairs: list[list[tuple[int, int]]] = []
    fast_closing: list[bool] = []

    count = 0
    for st in drive_slow(x, y, k, decide):
        steps.append(StepRecord(st.edge, st.a_hat))
        (pl, pr), (ql, qr) = mat
        a = st.a_hat
        if st.edge == GREEN:
            new = (pl + a * pr, ql + a * qr)
            mat = ((pr, new[0]), (qr, new[1]))
            table.ps.append(new[0])
            table.qs.append(new[1])
            new_pairs.append([new])
            fast_closing.append(True)
        elif a == 1:
            med = (pl + pr, ql + qr)
            mat = ((med[0], pr), (med[1], qr))
            table.ps.insert(len(table.ps) - 1, med[0])
            table.qs.insert(len(table.qs) - 1, med[1])
            new_pairs.append([med])
            fast_closing.append(False)
        else:
            med = (pl + pr, ql + qr)
            new = (a * med[0] - pl, a * med[1] - ql)
            mat = ((med[0], new[0]), (med[1], new[1]))
            table.ps[-1], table.qs[-1] = med
            table.ps.append(new[0])
            table.qs.append(new[1])
            new_pairs.append([med, new])
            fast_closing.append(True)
        matrices.append(mat)
        count += 1

    return Expansion(
        x=x,
        steps=tuple(steps),
        terminal=count < k,
        cf=finalize_stream(steps),
        table=table,
        matrices=matrices,
        new_pairs=new_pairs,
        fast_closing=fast_closing,
    )


def mobius_accumulate(
    x: ExactNumber, y: SidedPoint, k: int
) -> tuple[list[tuple[tuple[int, int], tuple[int, int]]], ConvergentTable]:
    """Inverse-branch matrix products M_0..M_k along the orbit of (x, y).

    Columns of M_n are consecutive convergent pairs; a unit-time red step
    replaces the first column by the mediant.  Truncates on terminal orbits.
    """
    exp = expand(x, FromY(y), k)
    return exp.matrices, exp.table


# -- rewrites ---------------------------------------------------------------------


def singularize(cf: SemiRegularCF, n: int) -> SemiRegularCF:
    """Remove the unit digit at position n+1 (1-based), n >= 1.

    [..., e_{n-1}/d_n, e_n/1, 1/d_{n+2}, ...] becomes
    [..., e_{n-1}/(d_n + e_n), -e_n/(d_{n+2} + 1), ...]; the value is
    unchanged and the convergent list loses exactly entry n."""
    L = len(cf.digits)
    if not 1 <= n <= L - 2:
        raise ValueError(f"position n+1 = {n + 1} needs digits before and after it")
    if cf.digits[n] != 1:
        raise ValueError(f"digit at position {n + 1} is {cf.digits[n]}, not 1")
    if cf.signs[n] != 1:
        raise ValueError("the bar after the removed unit digit must carry +1")
    e = cf.signs[n - 1]
    digits = cf.digits[: n - 1] + (cf.digits[n - 1] + e, cf.digits[n + 1] + 1) + cf.digits[n + 2 :]
    signs = cf.signs[: n - 1] + (-e,) + cf.signs[n + 1 :]
    return SemiRegularCF(digits, signs, cf.one_minus)


def insert(cf: SemiRegularCF, n: int) -> SemiRegularCF:
    """Insert a unit digit after position n (1-based), n >= 1.

    Requires d_{n+1} >= 2 with a +1 bar before it:
    [..., e_{n-1}/d_n, 1/d_{n+1}, ...] becomes
    [..., e_{n-1}/(d_n + 1), -1/1, 1/(d_{n+1} - 1), ...]; the value is
    unchanged and the convergent list gains the mediant at entry n."""
    L = len(cf.digits)
    if not 1 <= n <= L - 1:
        raise ValueError(f"positions n = {n} and n+1 = {n + 1} must both exist")
    if cf.digits[n] < 2:
        raise ValueError(f"digit at position {n + 1} is {cf.digits[n]}, need >= 2")
    if cf.signs[n - 1] != 1:
        raise ValueError("the bar before the split digit must carry +1")
    digits = cf.digits[: n - 1] + (cf.digits[n - 1] + 1, 1, cf.digits[n] - 1) + cf.digits[n + 1 :]
    signs = cf.signs[: n - 1] + (-1, 1) + cf.signs[n :]
    return SemiRegularCF(digits, signs, cf.one_minus)


# -- localizing y -----------------------------------------------------------------


def y_for_strategy(x: ExactNumber, strategy: Strategy, k: int) -> NestedInterval:
    """The depth-k interval of y values whose orbits follow `strategy` on x.

    Endpoints are -left*x and -right*x mod 1 for the endpoint-word lengths;
    the interval shrinks to the unique y inducing the strategy's decisions.
    Truncated at terminal states (the returned depth may be smaller)."""
    if isinstance(strategy, FromStream):
        strategy.rewind()
        k = min(k, len(strategy.decisions))
    y = strategy.y if isinstance(strategy, FromY) else None
    decide = None if isinstance(strategy, FromY) else strategy.decide
    series = endpoint_length_series(x, y, k, "slow", decide)
    last = series[-1]
    lv, rv = endpoint_positions(x, last)
    return NestedInterval(last.left, last.right, last.k, lv, rv)

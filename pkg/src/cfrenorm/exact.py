"""Exact arithmetic for rationals and real quadratic irrationals.

Every state value in the renormalization engine is an :class:`ExactNumber`,
either p/q or (a + b*sqrt(d))/c in a canonical form, so that comparisons
against partition boundaries are decided with integer arithmetic alone.
Floating point never enters a dynamical decision.

Circle points carry a left/right tag (:class:`SidedPoint`) so that orbits of
partition endpoints stay classifiable: the two intervals [0, 1-x] and
[1-x, 1] are disjoint once endpoints are split into their two sided versions.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

SQUAREFREE_BOUND = 10**6

LEFT = "left"
RIGHT = "right"
_SIDE_RANK = {LEFT: 0, RIGHT: 1}


class RadicandError(ValueError):
    """Raised when a radicand cannot be brought to canonical squarefree form."""


def _squarefree_split(d: int, bound: int = SQUAREFREE_BOUND) -> tuple[int, int]:
    """Return (s, d') with d = s**2 * d' and d' squarefree.

    Trial division up to `bound`; a residual cofactor >= bound**2 could hide a
    square factor and is rejected.
    """
    if d <= 0:
        raise RadicandError(f"radicand must be positive, got {d}")
    s, rest = 1, d
    sqfree = 1
    f = 2
    while f <= bound and f * f <= rest:
        if rest % f == 0:
            e = 0
            while rest % f == 0:
                rest //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                sqfree *= f
        f += 1 if f == 2 else 2
    if rest >= bound * bound:
        raise RadicandError(
            f"cannot certify squarefree part of {d} by trial division up to {bound}"
        )
    sqfree *= rest
    return s, sqfree


class ExactNumber:
    """A rational p/q or quadratic irrational (a + b*sqrt(d))/c.

    Canonical form: c > 0; for rationals b = 0, d = 1, gcd(a, c) = 1; for
    quadratics b != 0, d > 1 squarefree, gcd(a, b, c) = 1.  Canonical form is
    unique per value, so equality is structural.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = 1):
        if c == 0:
            raise ZeroDivisionError("denominator is zero")
        if c < 0:
            a, b, c = -a, -b, -c
        if b != 0 and d != 1:
            s, sq = _squarefree_split(d)
            b *= s
            d = sq
        if d == 1 and b != 0:
            a, b = a + b, 0
        if b == 0:
            d = 1
            g = math.gcd(a, c)
        else:
            g = math.gcd(math.gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("ExactNumber is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(p: int, q: int = 1) -> "ExactNumber":
        return ExactNumber(p, 0, q, 1)

    @staticmethod
    def quadratic(a: int, b: int, c: int, d: int) -> "ExactNumber":
        return ExactNumber(a, b, c, d)

    @staticmethod
    def from_fraction(fr: Fraction) -> "ExactNumber":
        return ExactNumber(fr.numerator, 0, fr.denominator, 1)

    # -- predicates ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.a, self.c)

    def approx_float(self) -> float:
        """Float approximation, for reporting only."""
        if self.is_rational:
            return self.a / self.c
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    # -- field arithmetic ----------------------------------------------

    def _merge_d(self, other: "ExactNumber") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        if self.d != other.d:
            raise ValueError(f"incompatible radicands sqrt({self.d}) and sqrt({other.d})")
        return self.d

    @staticmethod
    def _coerce(value) -> "ExactNumber":
        if isinstance(value, ExactNumber):
            return value
        if isinstance(value, int):
            return ExactNumber(value)
        if isinstance(value, Fraction):
            return ExactNumber.from_fraction(value)
        raise TypeError(f"cannot coerce {value!r} to ExactNumber")

    def __add__(self, other):
        o = self._coerce(other)
        d = self._merge_d(o)
        return ExactNumber(
            self.a * o.c + o.a * self.c,
            self.b * o.c + o.b * self.c,
            self.c * o.c,
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return ExactNumber(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._merge_d(o)
        return ExactNumber(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactNumber":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        if self.b == 0:
            return ExactNumber(self.c, 0, self.a, 1)
        norm = self.a * self.a - self.b * self.b * self.d
        # norm != 0: sqrt(d) is irrational in canonical form
        return ExactNumber(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    # -- exact order ----------------------------------------------------

    def sign(self) -> int:
        """Sign of the value, decided with integer arithmetic."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:  # impossible for squarefree d > 1, kept for safety
            return 0
        big_is_a = lhs > rhs
        return (1 if big_is_a else -1) if a > 0 else (-1 if big_is_a else 1)

    def _cmp(self, other) -> int:
        return (self - self._coerce(other)).sign()

    def __eq__(self, other):
        if isinstance(other, (ExactNumber, int, Fraction)):
            o = self._coerce(other)
            return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def floor(self) -> int:
        if self.b == 0:
            return self.a // self.c
        # a + b*sqrt(d) lies in [a + s, a + s + 1) for s = isqrt(b^2 d) when b > 0
        t = self.b * self.b * self.d
        s = math.isqrt(t)
        num = self.a + (s if self.b > 0 else -(s + 1))
        n = num // self.c
        while self._cmp(n + 1) >= 0:
            n += 1
        while self._cmp(n) < 0:
            n -= 1
        return n

    def frac(self) -> "ExactNumber":
        """Fractional part, value - floor(value)."""
        return self - self.floor()

    # -- text form -------------------------------------------------------

    def __str__(self) -> str:
        if self.is_rational:
            return f"{self.a}/{self.c}"
        op = "+" if self.b >= 0 else "-"
        return f"({self.a}{op}{abs(self.b)}*sqrt({self.d}))/{self.c}"

    def __repr__(self) -> str:
        return f"ExactNumber({self})"


_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")
_QUADRATIC_RE = re.compile(
    r"^\s*\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(-?\d+)\s*$"
)


def parse_exact(text: str) -> ExactNumber:
    """Parse 'p/q' or '(a+b*sqrt(d))/c'; inverse of str()."""
    m = _RATIONAL_RE.match(text)
    if m:
        p = int(m.group(1))
        q = int(m.group(2)) if m.group(2) else 1
        return ExactNumber.rational(p, q)
    m = _QUADRATIC_RE.match(text)
    if m:
        a, sgn, b, d, c = m.groups()
        b = int(b) if sgn == "+" else -int(b)
        return ExactNumber.quadratic(int(a), b, int(c), int(d))
    raise ValueError(f"cannot parse exact number from {text!r}")


ZERO = ExactNumber(0)
ONE = ExactNumber(1)
GOLDEN = ExactNumber.quadratic(-1, 1, 2, 5)  # (sqrt(5)-1)/2 = [1,1,1,...]


def sqrt_fixed_point(a: int) -> ExactNumber:
    """The number with purely periodic expansion [a, a, a, ...]: (sqrt(a^2+4)-a)/2."""
    if a < 1:
        raise ValueError("period digit must be a positive integer")
    return ExactNumber.quadratic(-a, 1, 2, a * a + 4)


class SidedPoint:
    """A circle point with a left/right tag, ordered (v, left) < (v, right).

    Values live in [0, 1] with the circle identifications (0, left) == (1, left)
    and (1, right) == (0, right); the stored representative is the one that makes
    the order on [0^+, 1^-] a plain lexicographic order.  Points that are never
    multiples of the rotation amount may carry the neutral default 'right'.
    """

    __slots__ = ("value", "side")

    def __init__(self, value: ExactNumber, side: str = RIGHT):
        if side not in _SIDE_RANK:
            raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
        if value < 0 or value > 1:
            raise ValueError(f"sided point value {value} outside [0, 1]")
        if value == ZERO and side == LEFT:
            value = ONE
        elif value == ONE and side == RIGHT:
            value = ZERO
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "side", side)

    def __setattr__(self, name, val):
        raise AttributeError("SidedPoint is immutable")

    def _key(self):
        return (self.value, _SIDE_RANK[self.side])

    def __eq__(self, other):
        if not isinstance(other, SidedPoint):
            return NotImplemented
        return self.value == other.value and self.side == other.side

    def __hash__(self):
        return hash((self.value, self.side))

    def __lt__(self, other):
        c = self.value._cmp(other.value)
        return c < 0 or (c == 0 and _SIDE_RANK[self.side] < _SIDE_RANK[other.side])

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def rotate(self, x: ExactNumber) -> "SidedPoint":
        """Rotate by x on the circle; the side tag travels with the point."""
        v = self.value + x
        n = v.floor()
        if v == n:  # landed on an integer: keep within [0,1] by side
            v = ONE if self.side == LEFT else ZERO
        else:
            v = v - n
        return SidedPoint(v, self.side)

    def __str__(self):
        return f"{self.value}@{self.side}"

    def __repr__(self):
        return f"SidedPoint({self})"


def sided(value: ExactNumber | int | Fraction, side: str = RIGHT) -> SidedPoint:
    return SidedPoint(ExactNumber._coerce(value), side)


def in_closed_arc(p: SidedPoint, lo: ExactNumber, hi: ExactNumber) -> bool:
    """Membership of p in [lo^+, hi^-], the sided reading of [lo, hi].

    `hi` equal to 0 is read as the top of the circle (i.e. 1).
    """
    hi_pt = SidedPoint(ONE if hi == ZERO else hi, LEFT)
    return SidedPoint(lo, RIGHT) <= p <= hi_pt


# -- the division algorithm on exact numbers ---------------------------------


def gauss_step(x: ExactNumber) -> tuple[int, ExactNumber]:
    """One step of the shift on regular continued-fraction digits.

    Returns (floor(1/x), 1/x - floor(1/x)); requires 0 < x < 1.
    """
    if x <= 0 or x >= 1:
        raise ValueError(f"gauss_step requires 0 < x < 1, got {x}")
    inv = x.inverse()
    digit = inv.floor()
    return digit, inv - digit


def regular_cf_digits(x: ExactNumber, k: int) -> list[int]:
    """First min(k, expansion length) regular partial quotients of x in (0, 1).

    Rational x terminate; the normal form produced has last digit >= 2
    whenever the expansion has more than one digit.
    """
    if x <= 0 or x >= 1:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    digits = []
    cur = x
    for _ in range(k):
        d, cur = gauss_step(cur)
        digits.append(d)
        if cur.is_zero:
            break
    return digits


def evaluate_cf(digits: list[int]) -> ExactNumber:
    """Exact value of a finite regular continued fraction [a1, a2, ...]."""
    if not digits:
        raise ValueError("empty digit list")
    num, den = 0, 1
    for a in reversed(digits):
        if a < 1:
            raise ValueError(f"partial quotients must be positive, got {a}")
        num, den = den, a * den + num
    return ExactNumber.rational(num, den)


def _normalize_tail(digits: list[int]) -> list[int]:
    # fix the normal form of a terminating expansion: [..., d, 1] -> [..., d+1]
    if len(digits) > 1 and digits[-1] == 1:
        digits = digits[:-2] + [digits[-2] + 1]
    return digits


def complement_digits(digits: list[int]) -> list[int]:
    """Regular digits of 1 - x from the regular digits of x.

    [1, a2, a3, ...] -> [a2+1, a3, ...] and [a1, ...] -> [1, a1-1, a2, ...]
    for a1 >= 2; the result is renormalized so a terminating expansion keeps
    its last digit >= 2.
    """
    if not digits:
        raise ValueError("empty digit list")
    if any(a < 1 for a in digits):
        raise ValueError("partial quotients must be positive")
    if digits[0] == 1:
        if len(digits) == 1:
            raise ValueError("[1] denotes 1, whose complement 0 has no expansion")
        out = [digits[1] + 1] + list(digits[2:])
    else:
        out = [1, digits[0] - 1] + list(digits[1:])
    return _normalize_tail(out)

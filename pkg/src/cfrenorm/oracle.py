"""Brute-force ground truth by direct circle rotation.

Everything here works by rotating exact points and linear search, on purpose:
it shares no code with the renormalization machinery it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ExactNumber, ONE, SidedPoint, ZERO, in_closed_arc
from .words import Word

SEARCH_BOUND = 10**6


class SearchBoundExceeded(RuntimeError):
    """Linear search hit its step budget before finding the next refinement."""


def omega(x: ExactNumber, y: SidedPoint, length: int) -> Word:
    """Orbit coding of y under rotation by x: letter j is A iff y + j*x mod 1
    lies in [1-x, 1] under the sided convention, else B."""
    if x <= 0 or x >= 1:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    lo = ONE - x
    letters = []
    p = y
    for _ in range(length):
        letters.append("A" if in_closed_arc(p, lo, ONE) else "B")
        p = p.rotate(x)
    return Word("".join(letters))


def first_return_time(x: ExactNumber, y: SidedPoint, bound: int = SEARCH_BOUND) -> int:
    """Steps for a point of [1-x, 1] to re-enter [1-x, 1] under rotation by x."""
    lo = ONE - x
    if not in_closed_arc(y, lo, ONE):
        raise ValueError(f"{y} is not in [1-x, 1]")
    p = y.rotate(x)
    for n in range(1, bound + 1):
        if in_closed_arc(p, lo, ONE):
            return n
        p = p.rotate(x)
    raise SearchBoundExceeded(f"no return within {bound} steps")


@dataclass(frozen=True)
class NestedInterval:
    """Depth-k localization interval around y.

    The endpoints are -left_index*x mod 1 and -right_index*x mod 1; a right
    endpoint at the origin is the top of the circle.
    """

    left_index: int
    right_index: int
    k: int
    left_value: ExactNumber
    right_value: ExactNumber

    def contains(self, p: SidedPoint) -> bool:
        return in_closed_arc(p, self.left_value, self.right_value if self.right_value != ONE else ZERO)


def _interval(x: ExactNumber, li: int, ri: int, k: int) -> NestedInterval:
    lv = (ExactNumber.rational(-li) * x).frac()
    rv = (ExactNumber.rational(-ri) * x).frac()
    if rv.is_zero:
        rv = ONE
    return NestedInterval(li, ri, k, lv, rv)


def nested_intervals(
    x: ExactNumber, y: SidedPoint, k: int, search_bound: int = SEARCH_BOUND
) -> list[NestedInterval]:
    """Nested localization intervals around y, depths 0..k, by exhaustive search.

    At each refinement the next endpoint index is the least m > 0 such that
    y + m*x mod 1 comes strictly closer to the origin (on either side) than
    the images of both current endpoints.  Raises SearchBoundExceeded when the
    scan budget runs out (certain for rational x once all multiples are used).
    """
    if x <= 0 or x >= 1:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    out = [_interval(x, 0, 0, 0)]
    # u_a = y + a*x tracks the offset of y above the left endpoint,
    # u_b = y + b*x the offset below the right one; both carry y's side tag.
    a = b = 0
    u_a = u_b = y
    m = 0
    u = y
    for depth in range(1, k + 1):
        found = False
        while m < search_bound:
            m += 1
            u = u.rotate(x)
            if u < u_a:
                a, u_a = m, u
                found = True
                break
            if u > u_b:
                b, u_b = m, u
                found = True
                break
        if not found:
            raise SearchBoundExceeded(
                f"no refinement of depth {depth} within {search_bound} rotation steps"
            )
        out.append(_interval(x, a, b, depth))
    return out


def slow_approx_bruteforce(
    x: ExactNumber, y: SidedPoint, k: int, search_bound: int = SEARCH_BOUND
) -> list[int]:
    """The approximating sequence n_0..n_k of y by exhaustive search.

    n_j is the new endpoint index introduced at depth j (n_0 = 0)."""
    chain = nested_intervals(x, y, k, search_bound)
    return [max(iv.left_index, iv.right_index) for iv in chain]

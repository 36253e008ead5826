"""Substitution coding of rotation orbits.

Words over {A, B} code an orbit by which of the two exchange intervals each
point visits (A for [1-x, 1], B for [0, 1-x]).  Each renormalization step
contributes a substitution; green steps contribute A -> A B^a, B -> A B^(a-1),
red steps the letter-swapped complement form A -> B A^a, B -> B A^(a-1).
Composing the per-step substitutions chronologically (earliest outermost)
maps the coding of the renormalized pair onto the coding of the original
pair, which is the property the brute-force oracle checks.

The pair of endpoint words tracks the orbits of the two endpoints of the
nested interval around y; their lengths are the indices m for which -m*x mod 1
is an interval endpoint, i.e. the approximating sequence of y.  Lengths grow
exponentially, so a length-only tracker backed by the 2x2 matrix cocycle is
provided alongside the word-level one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .exact import ExactNumber, LEFT, ONE, SidedPoint
from .renorm import (
    GREEN,
    RED,
    DrivenStep,
    OrbitTerminated,
    PartitionCell,
    PG,
    PR,
    branch_of,
    drive_slow,
)

MAX_WORD_LETTERS = 10**6


@dataclass(frozen=True)
class Word:
    """Finite word over the alphabet {A, B}."""

    letters: str = ""

    def __post_init__(self):
        if self.letters.strip("AB"):
            raise ValueError("letters must be over {A, B}")

    def __len__(self):
        return len(self.letters)

    @property
    def count_a(self) -> int:
        return self.letters.count("A")

    @property
    def count_b(self) -> int:
        return len(self.letters) - self.count_a

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def prefix(self, n: int) -> "Word":
        return Word(self.letters[:n])

    def __str__(self):
        return self.letters


EMPTY = Word("")
A = Word("A")
B = Word("B")


@dataclass(frozen=True)
class SubMatrix:
    """Letter-count matrix of a substitution.

    Columns are the count vectors (#A, #B) of the images of A and B, so the
    matrix of a composition is the product of the matrices in the same order.
    """

    aa: int  # A-count of image of A
    ab: int  # A-count of image of B
    ba: int  # B-count of image of A
    bb: int  # B-count of image of B

    @staticmethod
    def identity() -> "SubMatrix":
        return SubMatrix(1, 0, 0, 1)

    def __matmul__(self, o: "SubMatrix") -> "SubMatrix":
        return SubMatrix(
            self.aa * o.aa + self.ab * o.ba,
            self.aa * o.ab + self.ab * o.bb,
            self.ba * o.aa + self.bb * o.ba,
            self.ba * o.ab + self.bb * o.bb,
        )

    @property
    def det(self) -> int:
        return self.aa * self.bb - self.ab * self.ba

    @property
    def trace(self) -> int:
        return self.aa + self.bb

    @property
    def len_a(self) -> int:
        """Length of the image of A."""
        return self.aa + self.ba

    @property
    def len_b(self) -> int:
        """Length of the image of B."""
        return self.ab + self.bb

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.aa, self.ab), (self.ba, self.bb))

    def eigenvalues(self) -> tuple[ExactNumber, ExactNumber]:
        """Exact roots of the characteristic polynomial, larger first."""
        tr, det = self.trace, self.det
        disc = tr * tr - 4 * det
        if disc < 0:
            raise ValueError("complex eigenvalues")
        plus = ExactNumber.quadratic(tr, 1, 2, disc) if disc else ExactNumber.rational(tr, 2)
        minus = ExactNumber.quadratic(tr, -1, 2, disc) if disc else plus
        return plus, minus


@dataclass(frozen=True)
class Substitution:
    """Monoid homomorphism on words over {A, B}."""

    image_a: Word
    image_b: Word

    @staticmethod
    def identity() -> "Substitution":
        return Substitution(A, B)

    def apply(self, word: Word) -> Word:
        table = {ord("A"): self.image_a.letters, ord("B"): self.image_b.letters}
        return Word(word.letters.translate(table))

    def __call__(self, word: Word) -> Word:
        return self.apply(word)

    def compose(self, inner: "Substitution") -> "Substitution":
        """self after inner: (self.compose(inner))(w) = self(inner(w))."""
        return Substitution(self.apply(inner.image_a), self.apply(inner.image_b))

    @property
    def matrix(self) -> SubMatrix:
        return SubMatrix(
            self.image_a.count_a,
            self.image_b.count_a,
            self.image_a.count_b,
            self.image_b.count_b,
        )


# -- per-step substitutions --------------------------------------------------


def slow_step_substitution(edge: str, a_hat: int) -> Substitution:
    if a_hat < 1:
        raise ValueError("return time must be positive")
    if edge == GREEN:
        return Substitution(Word("A" + "B" * a_hat), Word("A" + "B" * (a_hat - 1)))
    if edge == RED:
        return Substitution(Word("B" + "A" * a_hat), Word("B" + "A" * (a_hat - 1)))
    raise ValueError(f"unknown edge {edge!r}")


def slow_step_matrix(edge: str, a_hat: int) -> SubMatrix:
    if edge == GREEN:
        return SubMatrix(1, 1, a_hat, a_hat - 1)
    if edge == RED:
        return SubMatrix(a_hat, a_hat - 1, 1, 1)
    raise ValueError(f"unknown edge {edge!r}")


def sigma_slow(x: ExactNumber, y: SidedPoint) -> Substitution:
    """The slow-step substitution of the pair (x, y)."""
    edge = branch_of(x, y)
    a_hat = (x.inverse() if edge == GREEN else (ONE - x).inverse()).floor()
    return slow_step_substitution(edge, a_hat)


def fast_cell_substitution(cell: PartitionCell) -> Substitution:
    """Fast-step substitution of a cell: its slow constituents composed in
    the order the orbit performs them (unit-time red steps first)."""
    red1 = slow_step_substitution(RED, 1)
    if cell.kind == "PG":
        last = slow_step_substitution(GREEN, cell.n - cell.i)
        runs = cell.i
    else:
        last = slow_step_substitution(RED, cell.i + 1)
        runs = cell.n - 1
    sub = Substitution.identity()
    for _ in range(runs):
        sub = sub.compose(red1)
    return sub.compose(last)


def sigma_fast(x: ExactNumber, y: SidedPoint) -> tuple[Substitution, PartitionCell]:
    """The fast-step substitution of (x, y) and the cell that produced it."""
    from .renorm import classify_fast

    cell = classify_fast(x, y)
    return fast_cell_substitution(cell), cell


def fast_cell_matrix(cell: PartitionCell) -> SubMatrix:
    """Closed form of the fast-step letter-count matrix, per cell.

    PG(i, n): [[i+1, 1], [(n-i)(i+1)-i, n-i-1]];  PR(i, n): [[ni+1, i], [n, 1]].
    These equal the per-step matrices multiplied with the final step first;
    the chronological product is the similar matrix with the factors reversed
    (same trace, determinant and eigenvalues).
    """
    i, n = cell.i, cell.n
    if cell.kind == "PG":
        return SubMatrix(i + 1, 1, (n - i) * (i + 1) - i, n - i - 1)
    return SubMatrix(n * i + 1, i, n, 1)


def fast_cell_matrix_chronological(cell: PartitionCell) -> SubMatrix:
    """Letter-count matrix of fast_cell_substitution (constituents in orbit order)."""
    i, n = cell.i, cell.n
    if cell.kind == "PG":
        return SubMatrix(1, 1, n, n - 1)
    return SubMatrix(i + 1, i, (n - 1) * (i + 1) + 1, (n - 1) * i + 1)


def mobius_cell_matrix(cell: PartitionCell) -> SubMatrix:
    """Per-cell product of the inverse-branch matrices acting on convergents.

    PG(i, n): [[0, 1], [1, n]];  PR(i, n): [[1, i], [n, ni+1]].
    """
    i, n = cell.i, cell.n
    if cell.kind == "PG":
        return SubMatrix(0, 1, 1, n)
    return SubMatrix(1, i, n, n * i + 1)


def cell_eigenvalues(cell: PartitionCell) -> tuple[ExactNumber, ExactNumber]:
    """Eigenvalues of the fast-step matrix, from its characteristic polynomial.

    PG(i, n): (n +- sqrt(n^2+4))/2;  PR(i, n): (ni+2 +- sqrt((ni+2)^2-4))/2.
    The convergent-side matrices of mobius_cell_matrix have the same trace and
    determinant, hence the same eigenvalues.
    """
    return fast_cell_matrix(cell).eigenvalues()


# -- the cocycle --------------------------------------------------------------


def _slow_stream(x, y, k, decide) -> Iterator[DrivenStep]:
    return drive_slow(x, y, k, decide)


@dataclass(frozen=True)
class FastGroup:
    """One fast step, as a run of unit-time red slow steps plus a closing step."""

    cell: PartitionCell
    steps: tuple[DrivenStep, ...]


def fast_groups(stream: Iterator[DrivenStep]) -> Iterator[FastGroup]:
    """Group a slow step stream into fast steps.

    A fast step closes at a green edge (cell PG(j, j + a)) or at a red edge
    with return time a >= 2 (cell PR(a - 1, j + 1)), where j counts the
    preceding unit-time red steps.  A trailing incomplete run is dropped.
    """
    run: list[DrivenStep] = []
    for step in stream:
        run.append(step)
        if step.edge == GREEN:
            j = len(run) - 1
            yield FastGroup(PG(j, j + step.a_hat), tuple(run))
            run = []
        elif step.a_hat >= 2:
            j = len(run) - 1
            yield FastGroup(PR(step.a_hat - 1, j + 1), tuple(run))
            run = []
    # unit-time red steps left in `run` belong to an unfinished fast step


def compose_cocycle(
    x: ExactNumber,
    y: Optional[SidedPoint],
    k: int,
    speed: str = "slow",
    decide: Optional[Callable] = None,
    max_letters: int = MAX_WORD_LETTERS,
) -> Substitution:
    """The composed substitution after k slow or fast steps.

    Step substitutions compose chronologically (earliest applied outermost),
    so the result maps codings of the depth-k renormalized pair to codings of
    (x, y).  Images are materialized; beyond `max_letters` use cocycle_matrix.
    """
    sub = Substitution.identity()
    if speed == "slow":
        for step in _slow_stream(x, y, k, decide):
            sub = sub.compose(slow_step_substitution(step.edge, step.a_hat))
            if len(sub.image_a) + len(sub.image_b) > max_letters:
                raise ValueError("composed images exceed max_letters; use cocycle_matrix")
    elif speed == "fast":
        count = 0
        for group in fast_groups(_slow_stream(x, y, None, decide)):
            sub = sub.compose(fast_cell_substitution(group.cell))
            count += 1
            if count == k:
                break
            if len(sub.image_a) + len(sub.image_b) > max_letters:
                raise ValueError("composed images exceed max_letters; use cocycle_matrix")
    else:
        raise ValueError("speed must be 'slow' or 'fast'")
    return sub


def cocycle_matrix(
    x: ExactNumber,
    y: Optional[SidedPoint],
    k: int,
    speed: str = "slow",
    decide: Optional[Callable] = None,
) -> SubMatrix:
    """Letter-count matrix of compose_cocycle, without materializing words."""
    m = SubMatrix.identity()
    if speed == "slow":
        for step in _slow_stream(x, y, k, decide):
            m = m @ slow_step_matrix(step.edge, step.a_hat)
    elif speed == "fast":
        count = 0
        for group in fast_groups(_slow_stream(x, y, None, decide)):
            m = m @ fast_cell_matrix_chronological(group.cell)
            count += 1
            if count == k:
                break
    else:
        raise ValueError("speed must be 'slow' or 'fast'")
    return m


# -- endpoint words ------------------------------------------------------------


@dataclass(frozen=True)
class EndpointWords:
    """Words coding the orbits of the endpoints of the nested interval at depth k.

    Exactly one of the two words changes per slow step.  The orientation sign
    flips at green (fast: PG) steps and is carried here rather than recomputed.
    """

    left: Word
    right: Word
    sign: int = 1
    k: int = 0


@dataclass(frozen=True)
class EndpointLengths:
    left: int
    right: int
    sign: int = 1
    k: int = 0


def slow_rho_step(state: EndpointWords, composed: Substitution, edge: str) -> EndpointWords:
    """Advance the endpoint words through one slow step.

    `composed` is the cocycle BEFORE the step (identity at k = 0)."""
    left, right, sign = state.left, state.right, state.sign
    if sign == 1:
        if edge == GREEN:
            left = composed.apply(A) + left
        else:
            right = composed.apply(B) + right
    else:
        if edge == GREEN:
            right = composed.apply(A) + right
        else:
            left = composed.apply(B) + left
    return EndpointWords(left, right, -sign if edge == GREEN else sign, state.k + 1)


def slow_rho_length_step(state: EndpointLengths, lens: tuple[int, int], edge: str) -> EndpointLengths:
    len_a, len_b = lens
    left, right, sign = state.left, state.right, state.sign
    if sign == 1:
        if edge == GREEN:
            left += len_a
        else:
            right += len_b
    else:
        if edge == GREEN:
            right += len_a
        else:
            left += len_b
    return EndpointLengths(left, right, -sign if edge == GREEN else sign, state.k + 1)


def fast_rho_step(state: EndpointWords, composed: Substitution, cell: PartitionCell) -> EndpointWords:
    """Advance the endpoint words through one fast step (composed = cocycle before it)."""
    left, right, sign = state.left, state.right, state.sign
    i, n = cell.i, cell.n
    img_a, img_b = composed.image_a, composed.image_b

    def times_b(m: int) -> Word:
        return Word(img_b.letters * m)

    if cell.kind == "PR":
        gained = times_b(n)
        if sign == 1:
            right = gained + right
        else:
            left = gained + left
        new_sign = sign
    else:
        if sign == 1:
            left = times_b(i) + img_a + left
            right = times_b(i) + right
        else:
            left = times_b(i) + left
            right = times_b(i) + img_a + right
        new_sign = -sign
    return EndpointWords(left, right, new_sign, state.k + 1)


def fast_rho_length_step(state: EndpointLengths, lens: tuple[int, int], cell: PartitionCell) -> EndpointLengths:
    len_a, len_b = lens
    left, right, sign = state.left, state.right, state.sign
    i, n = cell.i, cell.n
    if cell.kind == "PR":
        if sign == 1:
            right += n * len_b
        else:
            left += n * len_b
        new_sign = sign
    else:
        if sign == 1:
            left += i * len_b + len_a
            right += i * len_b
        else:
            left += i * len_b
            right += i * len_b + len_a
        new_sign = -sign
    return EndpointLengths(left, right, new_sign, state.k + 1)


def endpoint_length_series(
    x: ExactNumber,
    y: Optional[SidedPoint],
    k: int,
    speed: str = "slow",
    decide: Optional[Callable] = None,
) -> list[EndpointLengths]:
    """Endpoint-word lengths at depths 0..k (shorter on terminal orbits)."""
    out = [EndpointLengths(0, 0, 1, 0)]
    m = SubMatrix.identity()
    if speed == "slow":
        for step in _slow_stream(x, y, k, decide):
            out.append(slow_rho_length_step(out[-1], (m.len_a, m.len_b), step.edge))
            m = m @ slow_step_matrix(step.edge, step.a_hat)
    elif speed == "fast":
        for group in fast_groups(_slow_stream(x, y, None, decide)):
            out.append(fast_rho_length_step(out[-1], (m.len_a, m.len_b), group.cell))
            if len(out) == k + 1:
                break
            m = m @ fast_cell_matrix_chronological(group.cell)
    else:
        raise ValueError("speed must be 'slow' or 'fast'")
    return out


def endpoint_word_series(
    x: ExactNumber,
    y: Optional[SidedPoint],
    k: int,
    speed: str = "slow",
    decide: Optional[Callable] = None,
    max_letters: int = MAX_WORD_LETTERS,
) -> list[EndpointWords]:
    """Word-level endpoint tracker; intended for small depths."""
    out = [EndpointWords(EMPTY, EMPTY, 1, 0)]
    sub = Substitution.identity()
    if speed == "slow":
        for step in _slow_stream(x, y, k, decide):
            out.append(slow_rho_step(out[-1], sub, step.edge))
            sub = sub.compose(slow_step_substitution(step.edge, step.a_hat))
            if len(sub.image_a) + len(sub.image_b) > max_letters:
                raise ValueError("words exceed max_letters; use endpoint_length_series")
    elif speed == "fast":
        for group in fast_groups(_slow_stream(x, y, None, decide)):
            out.append(fast_rho_step(out[-1], sub, group.cell))
            if len(out) == k + 1:
                break
            sub = sub.compose(fast_cell_substitution(group.cell))
            if len(sub.image_a) + len(sub.image_b) > max_letters:
                raise ValueError("words exceed max_letters; use endpoint_length_series")
    else:
        raise ValueError("speed must be 'slow' or 'fast'")
    return out


def approx_sequence(
    x: ExactNumber,
    y: Optional[SidedPoint],
    k: int,
    speed: str = "slow",
    decide: Optional[Callable] = None,
) -> list[int]:
    """The approximating sequence N(j) = max endpoint-word length, j = 0..k.

    Nondecreasing; the entries are the indices m such that -m*x mod 1 becomes
    a new interval endpoint around y.  Truncated if the orbit terminates.
    """
    return [max(s.left, s.right) for s in endpoint_length_series(x, y, k, speed, decide)]


def endpoint_positions(x: ExactNumber, state: EndpointLengths) -> tuple[ExactNumber, ExactNumber]:
    """Exact circle positions (-left*x mod 1, -right*x mod 1) of the endpoints.

    A right endpoint at position 0 is reported as 1 (top of the circle)."""
    lv = (-(state.left) * x).frac()
    rv = (-(state.right) * x).frac()
    if rv.is_zero:
        rv = ONE
    return lv, rv


# -- substitution-built coding --------------------------------------------------


def coding_prefix(
    x: ExactNumber,
    y: Optional[SidedPoint],
    length: int,
    decide: Optional[Callable] = None,
) -> Word:
    """Prefix of the orbit coding built from substitutions alone.

    Collects slow-step substitutions until their composition expands a single
    letter past `length`, then applies them backwards with truncation.  On
    terminal (rational) orbits the remaining system is rotation by zero, whose
    coding is a constant letter determined by the transported y."""
    if length <= 0:
        return EMPTY
    stream = _slow_stream(x, y, None, decide)
    subs: list[Substitution] = []
    m = SubMatrix.identity()
    last_y = y
    seed = None
    while True:
        min_len = min(m.len_a, m.len_b)
        step = next(stream, None)
        if step is None:  # terminal state reached
            if last_y is None:
                raise ValueError("terminal orbit and no y coordinate to seed the coding")
            seed = "A" if last_y == SidedPoint(ONE, LEFT) else "B"
            break
        if min_len >= length:
            # first letter of the depth-k coding is the colour of the next edge
            seed = "A" if step.edge == GREEN else "B"
            break
        subs.append(slow_step_substitution(step.edge, step.a_hat))
        m = m @ slow_step_matrix(step.edge, step.a_hat)
        last_y = step.next_y

    min_len = max(1, min(m.len_a, m.len_b))
    copies = 1 if min_len >= length else (length // min_len + 1)
    w = Word(seed * copies)
    for sub in reversed(subs):
        w = sub.apply(w).prefix(length)
    return w.prefix(length)

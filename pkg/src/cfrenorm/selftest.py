"""Built-in verification battery: quick independent cross-checks.

A scaled-down version of the acceptance suite, runnable from the CLI.  Each
check pits one piece of machinery against an independent route to the same
answer (brute-force rotation, hand algebra, or a second implementation path).
"""

from __future__ import annotations

import random
import sys

from .exact import ExactNumber, GOLDEN, ONE, SidedPoint, sided
from .cfexp import Alpha, Backward, FromY, Regular, expand, insert, singularize, SemiRegularCF
from .growth import growth_series
from .oracle import omega, slow_approx_bruteforce
from .renorm import GREEN, PG, PR, fast_orbit
from .words import approx_sequence, cell_eigenvalues, coding_prefix, fast_cell_matrix


def _check(name: str, ok: bool, verbose: bool) -> bool:
    if verbose:
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=sys.stderr)
    return ok


def run(verbose: bool = False, seed: int = 7) -> bool:
    rng = random.Random(seed)
    ok = True

    # substitution coding vs direct rotation on random rational pairs
    agree = True
    for _ in range(5):
        q = rng.randrange(100, 10_000)
        x = ExactNumber.rational(rng.randrange(1, q), q)
        y = sided(ExactNumber.rational(rng.randrange(0, 97), 97))
        if x <= 0 or x >= 1:
            continue
        agree &= coding_prefix(x, y, 200).letters == omega(x, y, 200).letters
    ok &= _check("coding vs rotation oracle (5 random pairs, length 200)", agree, verbose)

    # golden fixed pair stays on the green edge
    yg = SidedPoint((ONE + GOLDEN).inverse())
    orbit = fast_orbit(GOLDEN, yg, 50)
    ok &= _check(
        "golden pair: 50 fast steps, all PG(0,1)",
        len(orbit) == 50 and all(s.cell == PG(0, 1) for s in orbit),
        verbose,
    )

    # approximating sequence vs exhaustive search
    seq = approx_sequence(GOLDEN, yg, 12, "slow")
    brute = slow_approx_bruteforce(GOLDEN, yg, 12)
    ok &= _check("approximating sequence vs exhaustive search (golden)", seq == brute, verbose)

    # rewrite calculus on a concrete value
    cf = SemiRegularCF((2, 1, 3), (1, 1))
    s = singularize(cf, 1)
    i_back = insert(SemiRegularCF((2, 2), (1,)), 1)
    ok &= _check(
        "singularize [1/2,1/1,1/3] -> [1/3,-1/4], value 4/11",
        s.digits == (3, 4) and s.signs == (-1,) and s.value() == ExactNumber.rational(4, 11)
        and cf.value() == ExactNumber.rational(4, 11),
        verbose,
    )
    ok &= _check(
        "insert [1/2,1/2] -> [1/3,-1/1,1/1], value 2/5",
        i_back.digits == (3, 1, 1) and i_back.value() == ExactNumber.rational(2, 5),
        verbose,
    )

    # cell matrices: hand values and eigenvalue identity
    m = fast_cell_matrix(PG(1, 2))
    lam_plus, lam_minus = cell_eigenvalues(PR(1, 1))
    ok &= _check(
        "fast cell matrices: PG(1,2) closed form and PR(1,1) eigenvalues",
        m.rows() == ((2, 1), (1, 0)) and m.det == -1
        and lam_plus * lam_minus == ExactNumber(1) and lam_plus + lam_minus == ExactNumber(3),
        verbose,
    )

    # strategy equivalence on a shared x
    x = ExactNumber.rational(355, 1131)
    e1 = expand(x, Alpha(ExactNumber(0)), 12)
    e2 = expand(x, Backward(), 12)
    ok &= _check(
        "Alpha(0) and Backward produce identical streams",
        e1.decisions == e2.decisions and e1.return_times == e2.return_times,
        verbose,
    )

    # regular growth magnitudes are the regular convergent denominators
    series = growth_series(ExactNumber.rational(1, 1 << 64) * 12157665459056928801, 40,
                           source="q_slow", strategy=Regular())
    fib_x = GOLDEN
    fib = growth_series(fib_x, 15, source="q_slow", strategy=Regular())
    ok &= _check(
        "regular strategy: golden denominators are Fibonacci numbers",
        fib.magnitudes[:6] == [1, 2, 3, 5, 8, 13],
        verbose,
    )
    ok &= _check("growth series magnitudes positive and nondecreasing",
                 all(b >= a for a, b in zip(series.magnitudes, series.magnitudes[1:])), verbose)

    return bool(ok)

"""Command-line surface.

Subcommands: expand | code | approx | partition | levy | selftest.
Machine-readable output (json/csv) goes to stdout or --out; progress and
diagnostics go to stderr, never mixed into the same stream.  A fixed
configuration and seed produce byte-identical output on every run.

Exit codes: 0 success, 2 bad input, 3 terminal truncation (partial output
was still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from .exact import (
    GOLDEN,
    LEFT,
    RIGHT,
    ExactNumber,
    ONE,
    RadicandError,
    SidedPoint,
    parse_exact,
)
from .cfexp import (
    Alpha,
    Backward,
    CounterAlpha,
    FromY,
    Lehner,
    NearestInteger,
    Regular,
    Strategy,
    expand,
)
from .growth import SOURCES, monte_carlo_levy
from .oracle import omega, slow_approx_bruteforce, SearchBoundExceeded
from .renorm import classify_fast, t_slow, OrbitTerminated
from .words import approx_sequence, coding_prefix

SCHEMA = "cfrenorm/1"


def parse_x(text: str) -> ExactNumber:
    """Rotation amounts: 'p/q', '(a+b*sqrt(d))/c', 'golden', or 'cf:...' digits.

    'cf:2,2,1' is a finite digit list; 'cf:1,(2,3)' marks a periodic suffix.
    """
    text = text.strip()
    if text == "golden":
        return GOLDEN
    if text.startswith("cf:"):
        x = _parse_cf_spec(text[3:])
    else:
        x = parse_exact(text)
    if x <= 0 or x >= 1:
        raise ValueError(f"x must lie strictly between 0 and 1, got {x}")
    return x


def _parse_cf_spec(body: str) -> ExactNumber:
    body = body.strip()
    period: list[int] = []
    if "(" in body:
        head, _, rest = body.partition("(")
        tail, _, trailer = rest.partition(")")
        if trailer.strip():
            raise ValueError(f"trailing text after periodic part: {trailer!r}")
        pre = [int(t) for t in head.strip().strip(",").split(",") if t.strip()] if head.strip(", ") else []
        period = [int(t) for t in tail.split(",") if t.strip()]
        if not period:
            raise ValueError("empty periodic part")
    else:
        pre = [int(t) for t in body.split(",") if t.strip()]
        if not pre:
            raise ValueError("empty digit list")
    if any(d < 1 for d in pre + period):
        raise ValueError("partial quotients must be positive")
    if period:
        p00, p01, p10, p11 = 1, 0, 0, 1
        for d in period:
            # right-multiply by [[0,1],[1,d]]
            p00, p01 = p01, p00 + d * p01
            p10, p11 = p11, p10 + d * p11
        disc = (p11 - p00) ** 2 + 4 * p10 * p01
        tail = ExactNumber.quadratic(p00 - p11, 1, 2 * p10, disc)
    else:
        tail = ExactNumber(0)
    t = tail
    for d in reversed(pre):
        t = (ExactNumber(d) + t).inverse()
    return t


def parse_y(text: str, x: Optional[ExactNumber] = None) -> SidedPoint:
    """y values: any x-form, 'yg' (the all-green fixed parameter 1/(1+x)),
    with an optional '@left' / '@right' side suffix."""
    text = text.strip()
    side = RIGHT
    if "@" in text:
        text, _, side_txt = text.partition("@")
        side_txt = side_txt.strip()
        if side_txt not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {side_txt!r}")
        side = side_txt
        text = text.strip()
    if text == "yg":
        if x is None:
            raise ValueError("'yg' requires an x value")
        value = (ONE + x).inverse()
    elif text == "golden":
        value = GOLDEN
    elif text.startswith("cf:"):
        value = _parse_cf_spec(text[3:])
    else:
        value = parse_exact(text)
    return SidedPoint(value, side)


def build_strategy(args) -> Strategy:
    name = args.strategy
    if name == "regular":
        return Regular()
    if name == "backward":
        return Backward()
    if name == "alpha":
        if args.alpha is None:
            raise ValueError("--strategy alpha requires --alpha")
        return Alpha(parse_exact(args.alpha))
    if name == "counter-alpha":
        if args.alpha is None:
            raise ValueError("--strategy counter-alpha requires --alpha")
        return CounterAlpha(parse_exact(args.alpha))
    if name == "nearest-integer":
        return NearestInteger()
    if name == "lehner":
        return Lehner()
    if name == "from-y":
        if args.y is None:
            raise ValueError("--strategy from-y requires --y")
        return FromY(parse_y(args.y, parse_x(args.x)))
    raise ValueError(f"unknown strategy {name!r}")


def _emit(args, payload: dict, text_lines: list[str], csv_rows=None, csv_header=None) -> None:
    if args.format == "json":
        out = json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"
    elif args.format == "csv":
        if csv_rows is None:
            raise ValueError("this subcommand has no csv form")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(csv_header)
        w.writerows(csv_rows)
        out = buf.getvalue()
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _add_common(sub, depth_default=20):
    sub.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub.add_argument("--out", default=None, help="write output to this file instead of stdout")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--depth", type=int, default=depth_default)


def cmd_expand(args) -> int:
    x = parse_x(args.x)
    if args.y is not None and args.strategy == "from-y":
        strategy = FromY(parse_y(args.y, x))
    elif args.y is not None and args.strategy is None:
        strategy = FromY(parse_y(args.y, x))
    else:
        args.strategy = args.strategy or "regular"
        strategy = build_strategy(args)
    exp = expand(x, strategy, args.depth)
    payload = {
        "x": str(x),
        "strategy": strategy.name(),
        "depth": args.depth,
        "terminal": exp.terminal,
        "decisions": exp.decisions,
        "return_times": exp.return_times,
        "digits": list(exp.cf.digits),
        "signs": list(exp.cf.signs),
        "one_minus": exp.cf.one_minus,
        "convergents": [f"{p}/{q}" for p, q in exp.table.rows()],
    }
    lines = [
        f"x = {x}   strategy = {strategy.name()}   depth = {args.depth}",
        "decisions:    " + " ".join(exp.decisions),
        "return times: " + " ".join(map(str, exp.return_times)),
        f"digits:       {list(exp.cf.digits)}",
        f"signs:        {list(exp.cf.signs)}" + ("   (expansion of 1-x form)" if exp.cf.one_minus else ""),
        "convergents:  " + "  ".join(f"{p}/{q}" for p, q in exp.table.rows()),
    ]
    if exp.terminal:
        lines.append("orbit terminated before the requested depth (rational x)")
    _emit(args, payload, lines)
    return 3 if exp.terminal else 0


def cmd_code(args) -> int:
    x = parse_x(args.x)
    y = parse_y(args.y, x)
    length = args.depth
    built = coding_prefix(x, y, length).letters
    direct = omega(x, y, length).letters
    if args.inject_mismatch and built:
        flip = {"A": "B", "B": "A"}[built[len(built) // 2]]
        built = built[: len(built) // 2] + flip + built[len(built) // 2 + 1 :]
    first_diff = next((i for i, (u, v) in enumerate(zip(built, direct)) if u != v), None)
    verdict = "MATCH" if built == direct else f"MISMATCH@{first_diff}"
    payload = {
        "x": str(x),
        "y": str(y),
        "length": length,
        "substitution_coding": built,
        "rotation_coding": direct,
        "verdict": verdict,
    }
    lines = [
        f"x = {x}   y = {y}   length = {length}",
        f"substitutions: {built}",
        f"rotation:      {direct}",
        f"verdict: {verdict}",
    ]
    _emit(args, payload, lines)
    return 0 if verdict == "MATCH" else 1


def cmd_approx(args) -> int:
    x = parse_x(args.x)
    status = 0
    if args.y is not None:
        y = parse_y(args.y, x)
        decide = None
    else:
        args.strategy = args.strategy or "regular"
        strategy = build_strategy(args)
        y, decide = None, strategy.decide
    speeds = ("slow", "fast") if args.speed == "both" else (args.speed,)
    payload = {"x": str(x), "depth": args.depth}
    lines = [f"x = {x}   depth = {args.depth}"]
    rows = []
    for speed in speeds:
        seq = approx_sequence(x, y, args.depth, speed, decide)
        payload[speed] = seq
        lines.append(f"{speed:>5}: {seq}")
        rows += [(speed, k, n) for k, n in enumerate(seq)]
        if len(seq) <= args.depth:
            status = 3
    if args.oracle:
        if y is None:
            raise ValueError("--oracle needs --y (it checks a concrete orbit)")
        try:
            brute = slow_approx_bruteforce(x, y, len(payload.get("slow", [0])) - 1)
            agree = brute == payload.get("slow")
            payload["oracle"] = brute
            payload["oracle_verdict"] = "MATCH" if agree else "MISMATCH"
            lines.append(f"oracle: {brute}")
            lines.append(f"oracle verdict: {payload['oracle_verdict']}")
            if not agree:
                status = 1
        except SearchBoundExceeded as e:
            payload["oracle_verdict"] = f"UNDECIDED ({e})"
            lines.append(payload["oracle_verdict"])
    _emit(args, payload, lines, rows, ("speed", "k", "n"))
    return status


def cmd_partition(args) -> int:
    x = parse_x(args.x)
    y = parse_y(args.y, x)
    trace = []
    status = 0
    try:
        for _ in range(max(1, args.depth)):
            cell = classify_fast(x, y)
            trace.append({"x": str(x), "y": str(y), "cell": str(cell)})
            if len(trace) >= args.depth and args.depth > 0:
                break
            step = t_slow(x, y)
            x, y = step.next_x, step.next_y
    except OrbitTerminated:
        status = 3
    payload = {"trace": trace, "terminal": status == 3}
    lines = [f"{t['cell']}   at x = {t['x']}, y = {t['y']}" for t in trace]
    if status == 3:
        lines.append("orbit terminated")
    rows = [(i, t["cell"], t["x"], t["y"]) for i, t in enumerate(trace)]
    _emit(args, payload, lines, rows, ("step", "cell", "x", "y"))
    return status


def cmd_levy(args) -> int:
    strategy = build_strategy(args) if args.strategy else Regular()
    summary = monte_carlo_levy(
        trials=args.trials,
        depth=args.depth,
        strategy=strategy,
        seed=args.seed,
        source=args.source,
        sampler=args.sampler,
    )
    payload = {
        "mean": round(summary.mean, 10),
        "stderr": round(summary.stderr, 10),
        "values": [round(v, 10) for v in summary.values],
        "config": summary.config(),
    }
    lines = [
        f"mean  = {summary.mean:.5g}",
        f"sterr = {summary.stderr:.3g}",
        f"config: {json.dumps(summary.config(), sort_keys=True)}",
    ]
    rows = [(i, summary.depth, summary.source, f"{v:.10g}") for i, v in enumerate(summary.values)]
    _emit(args, payload, lines, rows, ("trial", "depth", "source", "value"))
    return 0


def cmd_selftest(args) -> int:
    from . import selftest

    ok = selftest.run(verbose=True)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfrenorm",
        description="Exact renormalization of circle rotations and the continued fractions it generates.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("expand", help="run a semi-regular expansion of x")
    p.add_argument("--x", required=True)
    p.add_argument("--strategy", default=None,
                   choices=("regular", "backward", "alpha", "counter-alpha",
                            "nearest-integer", "lehner", "from-y"))
    p.add_argument("--alpha", default=None)
    p.add_argument("--y", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_expand)

    p = subs.add_parser("code", help="compare substitution coding against direct rotation")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--inject-mismatch", action="store_true", help="flip one letter (harness self-test)")
    _add_common(p, depth_default=100)
    p.set_defaults(func=cmd_code)

    p = subs.add_parser("approx", help="approximating sequences (endpoint-word lengths)")
    p.add_argument("--x", required=True)
    p.add_argument("--y", default=None)
    p.add_argument("--strategy", default=None,
                   choices=("regular", "backward", "alpha", "counter-alpha",
                            "nearest-integer", "lehner"))
    p.add_argument("--alpha", default=None)
    p.add_argument("--speed", choices=("slow", "fast", "both"), default="both")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute-force rotation")
    _add_common(p)
    p.set_defaults(func=cmd_approx)

    p = subs.add_parser("partition", help="classify (x, y) or trace its cells under slow steps")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    _add_common(p, depth_default=1)
    p.set_defaults(func=cmd_partition)

    p = subs.add_parser("levy", help="Monte Carlo growth-rate estimate")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--strategy", default=None,
                   choices=("regular", "backward", "alpha", "counter-alpha",
                            "nearest-integer", "lehner"))
    p.add_argument("--alpha", default=None)
    p.add_argument("--source", choices=SOURCES, default="q_fast")
    p.add_argument("--sampler", choices=("dyadic", "digit-stream"), default="dyadic")
    p.add_argument("--x", default=None, help=argparse.SUPPRESS)
    _add_common(p, depth_default=5000)
    p.set_defaults(func=cmd_levy)

    p = subs.add_parser("selftest", help="run the built-in verification battery")
    _add_common(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RadicandError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

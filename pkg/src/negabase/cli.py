"""``negabase`` command line: expand, certify, classify, scan."""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import realnum
from .confluent import InconclusiveError, detect_confluent
from .expand import Source, expand
from .numsys import NumerationSystem, parse_base, real_json
from .optimality import (BudgetExceeded, ConfluentBaseError, certify_optimality,
                         counterexample_interval, optimal_candidate,
                         verify_no_optimal_in_interval)
from .realnum import PrecisionExhausted, Real, compare, Ordering, make_real
from .transforms import (DomainError, branch_map, classify_regime, discontinuity_set,
                         greedy_branch_map)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REFUTED = 3
EXIT_BUDGET = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _fmt(v: Real | Fraction | float) -> str:
    return repr(float(v))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    target = os.path.abspath(out)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".negabase-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _system(args) -> NumerationSystem:
    try:
        return parse_base(args.base)
    except realnum.RealParseError as exc:
        raise CliError(f"cannot parse base {args.base!r}: {exc}") from exc


def _x(args) -> Real:
    if args.x is None:
        raise CliError("--x is required")
    try:
        return make_real(args.x)
    except realnum.RealParseError as exc:
        raise CliError(f"cannot parse x {args.x!r}: {exc}") from exc


def _default_depth(system: NumerationSystem) -> int:
    return 20 if system.negative else 25


def _case_of(system: NumerationSystem) -> str | None:
    if system.is_integer_base or not system.is_canonical:
        return None
    try:
        return counterexample_interval(system).case_label.value
    except ConfluentBaseError:
        return "Confluent"
    except InconclusiveError:
        return None


# --------------------------------------------------------------------------
# subcommands


def cmd_expand(args) -> int:
    system = _system(args)
    x = _x(args)
    depth = args.depth or _default_depth(system)
    source = Source.GREEDY if args.greedy else Source.OPTIMAL
    exp = expand(system, x, depth, source)
    fmt = args.format or "text"
    encl = [realnum.enclose(v, Fraction(1, 1 << 53)) for v in exp.orbit]
    if fmt == "text":
        lines = [str(exp)]
        lines.append(f"hit_E: {'none' if exp.hit_E is None else exp.hit_E}")
        if exp.period is not None:
            lines.append(f"digit_string: {exp.as_digit_string()}")
        for k, (lo, hi) in enumerate(encl):
            lines.append(f"T^{k}: [{_fmt(lo)}, {_fmt(hi)}]")
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        text = _json({
            "base": args.base,
            "x": str(x),
            "source": source.value,
            "digits": str(exp),
            "digit_string": str(exp.as_digit_string()),
            "hit_E": exp.hit_E,
            "orbit": [{"k": k, "lo": float(lo), "hi": float(hi)} for k, (lo, hi) in enumerate(encl)],
        })
    else:
        rows = ["k,lo,hi"] + [f"{k},{_fmt(lo)},{_fmt(hi)}" for k, (lo, hi) in enumerate(encl)]
        text = "\n".join(rows) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    system = _system(args)
    x = _x(args)
    depth = args.depth or _default_depth(system)
    if args.greedy:
        exp = expand(system, x, depth, Source.GREEDY)
        variants = [exp.digits]
        unique = True
    else:
        cand = optimal_candidate(system, x, depth)
        variants = cand.variants
        unique = cand.unique
    verdicts = [certify_optimality(system, x, v, depth) for v in variants]
    best = next((v for v in verdicts if not v.refuted), verdicts[0])
    record = {"x": str(x), "base": args.base, "case": _case_of(system)}
    record.update(best.to_json())
    record["unique_candidate"] = unique
    if not unique:
        record["note"] = "candidate non-unique along orbit"
        record["variants"] = [{"candidate_prefix": v.to_json()["candidate_prefix"], "status": v.status.value,
                               "refuted_at": v.refuted_at} for v in verdicts]
    fmt = args.format or "json"
    if fmt == "text":
        text = f"{best}\n"
    elif fmt == "csv":
        rows = ["n,cand_lo,cand_hi,min_lo,min_hi"]
        for e in record["errors"]:
            rows.append(f"{e['n']},{e['cand_lo']!r},{e['cand_hi']!r},{e['min_lo']!r},{e['min_hi']!r}")
        text = "\n".join(rows) + "\n"
    else:
        text = _json(record)
    _emit(text, args.out)
    return EXIT_REFUTED if best.refuted else EXIT_OK


def classify_record(system: NumerationSystem, base_text: str) -> dict:
    rec: dict = {"base": base_text, "system": system.to_json(), "regime": None,
                 "confluent_params": None, "E": [], "branch_map": None,
                 "counterexample_interval": None}
    if system.negative:
        if not system.is_integer_base:
            rec["regime"] = classify_regime(system.beta).tag.value
        if system.is_canonical:
            rec["E"] = [real_json(d) for d in discontinuity_set(system)]
            rec["branch_map"] = branch_map(system).to_json()
    elif not system.is_integer_base:
        try:
            params = detect_confluent(system.beta)
        except InconclusiveError:
            params = None
            rec["confluent_params"] = "inconclusive"
        else:
            rec["confluent_params"] = None if params is None else params.to_json()
    if system.is_canonical and not system.is_integer_base:
        try:
            rec["counterexample_interval"] = counterexample_interval(system).to_json()
        except (ConfluentBaseError, InconclusiveError):
            pass
    return rec


def cmd_classify(args) -> int:
    system = _system(args)
    rec = classify_record(system, args.base)
    fmt = args.format or "json"
    if fmt == "text":
        ci = rec["counterexample_interval"]
        lines = [
            f"base: {args.base}",
            f"alphabet: {','.join(map(str, system.alphabet))}",
            f"J: [{rec['system']['l']['exact']}, {rec['system']['r']['exact']}]",
            f"regime: {rec['regime']}",
            f"confluent: {rec['confluent_params']}",
            f"E: {[e['exact'] for e in rec['E']]}",
            f"counterexample_interval: {None if ci is None else (ci['case'], ci['lo']['exact'], ci['hi']['exact'])}",
        ]
        text = "\n".join(lines) + "\n"
    elif fmt == "csv":
        raise CliError("classify supports json and text output")
    else:
        text = _json(rec)
    _emit(text, args.out)
    return EXIT_OK


def plot_rows(system: NumerationSystem, grid: int) -> list[str]:
    """Graph samples ``x,To_x,branch_digit`` with both one-sided values at each cut."""
    if grid < 2:
        raise CliError("--grid must be at least 2")
    if system.negative:
        bm = branch_map(system)
        lo, hi = system.l, system.r
        xs = [lo + (hi - lo) * Fraction(j, grid - 1) for j in range(grid)]
    else:
        bm = greedy_branch_map(system)
        xs = [Real.rational(Fraction(j, grid)) for j in range(grid)]
    points: list[tuple[Real, int, Real, int]] = []  # (x, order, value, digit)
    for x in xs:
        d, y = bm.apply(x)
        points.append((x, 1, y, d))
    for i, c in enumerate(bm.cuts):
        left = bm.branches[i].digit
        points.append((c, 0, bm.slope * c - left, left))
        if not any(compare(p[0], c) is Ordering.EQ and p[1] == 1 for p in points):
            d, y = bm.apply(c)
            points.append((c, 1, y, d))

    def key(p):
        return (float(p[0]), p[1])

    points.sort(key=key)
    rows = ["x,To_x,branch_digit"]
    rows += [f"{_fmt(x)},{_fmt(y)},{d}" for x, _, y, d in points]
    return rows


def cmd_scan(args) -> int:
    system = _system(args)
    if args.grid is not None:
        _emit("\n".join(plot_rows(system, args.grid)) + "\n", args.out)
        return EXIT_OK
    try:
        ci = counterexample_interval(system)
    except ConfluentBaseError as exc:
        raise CliError(f"no counterexample interval: {exc}") from exc
    depth = args.depth or max(ci.refute_depth, _default_depth(system))
    rep = verify_no_optimal_in_interval(system, ci, args.samples, depth, args.seed)
    rec = {"base": args.base, "seed": args.seed}
    rec.update(rep.to_json())
    fmt = args.format or "json"
    if fmt == "text":
        text = (f"case {rec['case']}: {rep.refuted}/{rep.samples} refuted, "
                f"depths {rec['refute_depth_histogram']}\n")
        for x, msg in rep.failures:
            text += f"FAIL x={x}: {msg}\n"
    elif fmt == "csv":
        rows = ["index,x,status,refuted_at,failures"]
        for i, res in enumerate(rep.results):
            rows.append(f"{i},{_fmt(res.x)},{res.verdict.status.value},{res.verdict.refuted_at or ''},"
                        f"{len(res.failures)}")
        text = "\n".join(rows) + "\n"
    else:
        text = _json(rec)
    _emit(text, args.out)
    return EXIT_OK if rep.ok else EXIT_REFUTED


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="negabase",
                                     description="Optimal representations in real bases.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", required=True,
                        help='base expression; leading minus for negative bases, e.g. "-(1+sqrt(5))/2"')
    common.add_argument("--x", help="number to expand or certify")
    common.add_argument("--depth", type=int, help="number of digits / certification depth")
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--precision-bits", type=int,
                        default=int(os.environ.get("NEGABASE_PRECISION_BITS", realnum.precision_bits())))
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--out", help="output path (written atomically)")
    common.add_argument("--greedy", action="store_true", help="use the greedy map (positive bases)")
    common.add_argument("--grid", type=int, help="scan: emit N-point graph samples as CSV instead")
    for name, func, help_ in [
        ("expand", cmd_expand, "digits and orbit of x"),
        ("certify", cmd_certify, "certify or refute optimality of the candidate for x"),
        ("classify", cmd_classify, "regime, confluence, cut points and counterexample interval"),
        ("scan", cmd_scan, "refute sampled points of the counterexample interval"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
    return parser


_VALUED = ("--base", "--x", "--depth", "--samples", "--seed", "--precision-bits",
           "--format", "--out", "--grid")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-(1+sqrt(5))/2" as an option; bind it to its flag explicitly
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUED:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and nxt not in _VALUED:
                out.append(f"{tok}={nxt}")
            else:
                out += [tok, nxt]
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        if args.depth is not None and args.depth < 1:
            raise CliError("--depth must be at least 1")
        if args.samples < 1:
            raise CliError("--samples must be at least 1")
        realnum.set_precision_bits(args.precision_bits)
        return args.func(args)
    except CliError as exc:
        print(f"negabase: {exc}", file=sys.stderr)
        return exc.code
    except (BudgetExceeded, PrecisionExhausted) as exc:
        print(f"negabase: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, realnum.RealParseError, ValueError) as exc:
        print(f"negabase: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

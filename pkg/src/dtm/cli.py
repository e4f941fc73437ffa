"""Command-line front door.

Exit codes: 0 on success, 1 when a check reports a mathematical violation
or finding (strict one-sided points, an open-question counterexample),
2 on usage or input errors.  All numbers print as exact rationals 'p/q';
`--decimal` adds a clearly marked approximate rendering.  Set DTM_LOG to
a level name (debug, info, ...) for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from .checks import (
    IncreasingIntSeq,
    check_centered_bound,
    check_extrema_variation_identity,
    check_key_inequality,
    check_lemma_bounds,
    check_local_max_touch,
    check_one_sided_relation,
    check_question_b,
    check_tanaka,
    contribution_bound_audit,
    lemma_sum,
)
from .search import MODES, SearchConfig, run_search
from .sequence import (
    DomainError,
    ParseError,
    Sequence,
    format_rational,
    parse_rational,
    parse_sequence,
    total_variation,
)
from .transforms import (
    noncentered_transform_naive,
    transform_of_kind,
    transform_to_csv,
    total_variation_of_transform,
)

log = logging.getLogger("dtm")

_TRANSFORM_KINDS = ("centered", "noncentered", "noncentered-naive", "left", "right")
_CHECKS = (
    "tanaka",
    "centered-bound",
    "question-b",
    "touch",
    "one-sided",
    "extrema-identity",
    "audit",
    "key-inequality",
)
_OBJECTIVE_ALIASES = {
    "tanaka": "tanaka_ratio",
    "centered-l1": "centered_l1_ratio",
    "question-b": "question_b_ratio",
    "lemma-sum": "lemma_sum",
}


class UsageError(Exception):
    pass


def _add_sequence_args(sub) -> None:
    sub.add_argument("--input", help="path to a serialized sequence (JSON or text form)")
    sub.add_argument("--seq-values", help="inline comma-separated values, e.g. 1,0,3/2")
    sub.add_argument("--seq-offset", type=int, default=0, help="index of the first inline value")


def _add_output_args(sub) -> None:
    sub.add_argument("--output", help="write to this path instead of stdout")
    sub.add_argument(
        "--decimal",
        action="store_true",
        help="append approximate decimal renderings (marked approximate)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtm",
        description="Exact maximal transforms, variation checks, and extremal search.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_tr = subs.add_parser("transform", help="tabulate a maximal transform as CSV")
    _add_sequence_args(p_tr)
    p_tr.add_argument("--kind", choices=_TRANSFORM_KINDS, required=True)
    p_tr.add_argument("--pad", type=int, default=0, help="extra tail columns each side")
    _add_output_args(p_tr)

    p_var = subs.add_parser("var", help="total variation of a sequence or transform")
    _add_sequence_args(p_var)
    p_var.add_argument(
        "--kind",
        choices=("sequence",) + _TRANSFORM_KINDS,
        default="sequence",
    )
    _add_output_args(p_var)

    p_ver = subs.add_parser("verify", help="run one exact check, emit a JSON report")
    _add_sequence_args(p_ver)
    p_ver.add_argument("--check", choices=_CHECKS, required=True)
    p_ver.add_argument("--kind", choices=("centered", "noncentered", "left", "right"))
    p_ver.add_argument("--n", type=int)
    p_ver.add_argument("--m", type=int)
    _add_output_args(p_ver)

    p_se = subs.add_parser("search", help="exhaustive or stochastic extremal search")
    p_se.add_argument("--mode", choices=MODES, required=True)
    p_se.add_argument(
        "--objective", choices=sorted(_OBJECTIVE_ALIASES), required=True
    )
    p_se.add_argument("--len", dest="len_max", type=int, default=6)
    p_se.add_argument("--vmax", type=int, default=4)
    p_se.add_argument("--seed", type=int, default=0)
    p_se.add_argument("--budget", type=int, default=0)
    p_se.add_argument("--shard", default="0/1", help="shard spec i/N")
    p_se.add_argument("--parallel", type=int, default=1)
    _add_output_args(p_se)

    p_ls = subs.add_parser("lemma-sum", help="evaluate the gap sum and its bounds")
    p_ls.add_argument("--n", type=int, required=True)
    p_ls.add_argument("--seq", required=True, help="strictly increasing integers a1,a2,...")
    _add_output_args(p_ls)

    return parser


def _load_sequence(args) -> Sequence:
    if args.input is not None and args.seq_values is not None:
        raise UsageError("give either --input or --seq-values, not both")
    if args.input is not None:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
        return parse_sequence(text)
    if args.seq_values is not None:
        vals = [parse_rational(tok) for tok in args.seq_values.split(",")]
        return Sequence(args.seq_offset, tuple(vals))
    raise UsageError("a sequence is required: --input PATH or --seq-values ...")


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _decimal(x: Fraction) -> str:
    return f"{float(x):.12g}"


def cmd_transform(args) -> int:
    f = _load_sequence(args)
    if args.kind == "noncentered-naive":
        t = noncentered_transform_naive(f)
    else:
        t = transform_of_kind(f, args.kind)
    csv_text = transform_to_csv(t, pad=args.pad)
    if args.decimal:
        lines = csv_text.splitlines()
        out = [lines[0], lines[1] + ",value_approx"]
        for row in lines[2:]:
            parts = row.split(",")
            out.append(row + "," + _decimal(Fraction(int(parts[1]), int(parts[2]))))
        csv_text = "\n".join(out) + "\n"
    _emit(csv_text, args)
    return 0


def cmd_var(args) -> int:
    f = _load_sequence(args)
    if args.kind == "sequence":
        value = total_variation(f)
    elif args.kind == "noncentered-naive":
        value = total_variation_of_transform(noncentered_transform_naive(f))
    else:
        value = total_variation_of_transform(transform_of_kind(f, args.kind))
    text = format_rational(value)
    if args.decimal:
        text += f" (approx {_decimal(value)})"
    _emit(text + "\n", args)
    return 0


def _run_check(args):
    if args.check == "key-inequality":
        if args.n is None or args.m is None:
            raise UsageError("--check key-inequality needs --n and --m")
        return check_key_inequality(args.n, args.m)
    f = _load_sequence(args)
    if args.check == "tanaka":
        return check_tanaka(f)
    if args.check == "centered-bound":
        return check_centered_bound(f)
    if args.check == "question-b":
        return check_question_b(f)
    if args.check == "touch":
        if args.kind is None:
            raise UsageError("--check touch needs --kind")
        return check_local_max_touch(f, args.kind)
    if args.check == "one-sided":
        return check_one_sided_relation(f)
    if args.check == "extrema-identity":
        if args.kind is None:
            raise UsageError("--check extrema-identity needs --kind")
        return check_extrema_variation_identity(f, args.kind)
    if args.check == "audit":
        return contribution_bound_audit(f)
    raise UsageError(f"unknown check {args.check!r}")


def cmd_verify(args) -> int:
    report = _run_check(args)
    payload = report.to_json_dict()
    if args.decimal and report.ratio is not None:
        payload["ratio_approx"] = _decimal(report.ratio)
    _emit(json.dumps(payload, separators=(",", ":")) + "\n", args)
    if report.outcome == "violated":
        print(f"FINDING: check {report.check_name} violated", file=sys.stderr)
        return 1
    if args.check == "one-sided" and report.witness["strict_count"] > 0:
        print(
            f"FINDING: strict one-sided inequality at "
            f"{report.witness['strict_count']} point(s)",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_search(args) -> int:
    try:
        idx_str, _, count_str = args.shard.partition("/")
        shard_index, shard_count = int(idx_str), int(count_str)
    except ValueError as exc:
        raise UsageError(f"bad --shard spec {args.shard!r}") from exc
    config = SearchConfig(
        mode=args.mode,
        objective=_OBJECTIVE_ALIASES[args.objective],
        support_len_max=args.len_max,
        value_max=args.vmax,
        seed=args.seed,
        budget=args.budget,
        shard_index=shard_index,
        shard_count=shard_count,
    )
    report = run_search(config, parallel=args.parallel)
    _emit(report.to_json() + "\n", args)
    if report.violations:
        print(
            f"FINDING: {len(report.violations)} violation report(s); "
            "each re-verifies standalone",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_lemma_sum(args) -> int:
    try:
        terms = tuple(int(tok) for tok in args.seq.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --seq: {exc}") from exc
    seq = IncreasingIntSeq(terms)
    value = lemma_sum(args.n, seq)
    report = check_lemma_bounds(args.n, seq)
    lines = [f"sum = {format_rational(value)}"]
    if args.decimal:
        lines[0] += f" (approx {_decimal(value)})"
    lines.append(f"bound 4/3: {'holds' if value <= Fraction(4, 3) else 'VIOLATED'}")
    gap = seq.min_gap
    if gap is not None and gap >= 2:
        verdict = "holds" if value <= Fraction(388, 315) else "VIOLATED"
        lines.append(f"bound 388/315 (gaps >= 2): {verdict}")
    else:
        lines.append("bound 388/315 (gaps >= 2): not applicable")
    _emit("\n".join(lines) + "\n", args)
    return 1 if report.outcome == "violated" else 0


def main(argv=None) -> int:
    level = os.environ.get("DTM_LOG", "").upper()
    if level:
        logging.basicConfig(level=getattr(logging, level, logging.INFO))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return 2 if exc.code not in (0,) else 0
    handlers = {
        "transform": cmd_transform,
        "var": cmd_var,
        "verify": cmd_verify,
        "search": cmd_search,
        "lemma-sum": cmd_lemma_sum,
    }
    try:
        return handlers[args.command](args)
    except (UsageError, ParseError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()

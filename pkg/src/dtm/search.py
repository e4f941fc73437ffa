"""Exhaustive and stochastic search for extremal variation ratios.

The search space is quotiented by the symmetries under which every
objective is invariant: translation, reflection, and positive scaling.
A canonical representative starts at offset 0, has coprime integer
values, and is lexicographically no larger than its reflection.  Shards
partition the enumeration disjointly by index, so merged shard results
are independent of the shard count; ties between equally good argmaxes
always resolve to the lexicographically smallest canonical sequence.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations, product

from .checks import (
    CENTERED_L1_BOUND,
    IncreasingIntSeq,
    VerificationReport,
    check_centered_bound,
    check_lemma_bounds,
    check_question_b,
    check_tanaka,
    lemma_sum,
)
from .sequence import DomainError, Sequence, format_rational

__all__ = [
    "MODES",
    "OBJECTIVES",
    "SearchConfig",
    "SearchReport",
    "canonicalize",
    "enumerate_canonical",
    "exhaustive_search",
    "stochastic_search",
    "run_search",
    "merge_reports",
]

MODES = ("exhaustive", "stochastic")
OBJECTIVES = ("tanaka_ratio", "centered_l1_ratio", "question_b_ratio", "lemma_sum")


@dataclass(frozen=True)
class SearchConfig:
    mode: str
    objective: str
    support_len_max: int = 6
    value_max: int = 4
    seed: int = 0
    budget: int = 0
    shard_index: int = 0
    shard_count: int = 1
    # desk-scale bounds for the lemma-sum space
    lemma_len_max: int = 5
    lemma_coord_bound: int = 10
    lemma_anchor_bound: int = 12

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.objective not in OBJECTIVES:
            raise DomainError(f"unknown objective {self.objective!r}")
        if self.support_len_max < 1 or self.value_max < 1:
            raise DomainError("support_len_max and value_max must be >= 1")
        if not 0 <= self.shard_index < self.shard_count:
            raise DomainError(
                f"bad shard spec {self.shard_index}/{self.shard_count}"
            )


@dataclass
class SearchReport:
    objective: str
    best_value: Fraction | None
    argmax: Sequence | IncreasingIntSeq | None
    argmax_anchor: int | None  # anchor n, lemma_sum objective only
    count_examined: int
    violations: list[VerificationReport]
    config: SearchConfig

    def to_json_dict(self) -> dict:
        if isinstance(self.argmax, Sequence):
            arg = {
                "offset": self.argmax.offset,
                "values": [format_rational(v) for v in self.argmax.values],
            }
        elif isinstance(self.argmax, IncreasingIntSeq):
            arg = {"n": self.argmax_anchor, "terms": list(self.argmax.terms)}
        else:
            arg = None
        return {
            "objective": self.objective,
            "best_value": (
                format_rational(self.best_value) if self.best_value is not None else None
            ),
            "argmax": arg,
            "count_examined": self.count_examined,
            "violations": [v.to_json_dict() for v in self.violations],
            "config": asdict(self.config),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def canonicalize(f: Sequence) -> Sequence:
    """Canonical orbit representative under translation/reflection/scaling."""
    if f.is_zero:
        raise DomainError("cannot canonicalize the zero sequence")
    if any(v < 0 for v in f.values):
        raise DomainError("canonicalize requires a nonnegative sequence")
    if any(v.denominator != 1 for v in f.values):
        raise DomainError("canonicalize requires integer values")
    vals = [int(v) for v in f.values]
    g = math.gcd(*vals)
    vals = [v // g for v in vals]
    rev = list(reversed(vals))
    if rev < vals:
        vals = rev
    return Sequence(0, tuple(Fraction(v) for v in vals))


def _is_canonical_tuple(vals: tuple[int, ...]) -> bool:
    return math.gcd(*vals) == 1 and list(vals) <= list(reversed(vals))


def enumerate_canonical(support_len_max: int, value_max: int):
    """Yield every canonical sequence with width <= L and values <= V once,
    in a fixed deterministic order (by width, then lexicographically)."""
    if support_len_max < 1 or value_max < 1:
        raise DomainError("bounds must be >= 1")
    for width in range(1, support_len_max + 1):
        for vals in product(range(value_max + 1), repeat=width):
            if vals[0] == 0 or vals[-1] == 0:
                continue
            if not _is_canonical_tuple(vals):
                continue
            yield Sequence(0, tuple(Fraction(v) for v in vals))


def _evaluate(objective: str, f: Sequence) -> tuple[Fraction, VerificationReport | None]:
    """Objective value plus a violation report when a bound breaks.

    For the theorem-backed objectives a violation should never occur; for
    the open-question objective a ratio above 1 is a finding and is
    reported the same way.
    """
    if objective == "tanaka_ratio":
        rep = check_tanaka(f)
        bad = rep.outcome == "violated"
    elif objective == "centered_l1_ratio":
        rep = check_centered_bound(f)
        bad = rep.outcome == "violated" or rep.ratio > CENTERED_L1_BOUND
    elif objective == "question_b_ratio":
        rep = check_question_b(f)
        bad = rep.outcome == "violated"
    else:
        raise DomainError(f"objective {objective!r} does not take sequences")
    return rep.ratio, (rep if bad else None)


def _better(value: Fraction, arg, best_value, best_arg) -> bool:
    if best_value is None or value > best_value:
        return True
    if value == best_value:
        return _arg_key(arg) < _arg_key(best_arg)
    return False


def _arg_key(arg):
    if isinstance(arg, Sequence):
        return (0, tuple(arg.values), 0)
    anchor, seq = arg
    return (1, tuple(seq.terms), anchor)


def _finalize(config, objective, best_value, best_arg, count, violations):
    violations.sort(key=lambda r: (r.input_digest, r.check_name))
    if isinstance(best_arg, tuple):
        anchor, seq = best_arg
        return SearchReport(objective, best_value, seq, anchor, count, violations, config)
    return SearchReport(objective, best_value, best_arg, None, count, violations, config)


def _iter_lemma_space(config: SearchConfig):
    bound = config.lemma_coord_bound
    coords = range(-bound, bound + 1)
    for n in range(-config.lemma_anchor_bound, config.lemma_anchor_bound + 1):
        for length in range(2, config.lemma_len_max + 1):
            for terms in combinations(coords, length):
                yield n, IncreasingIntSeq(terms)


def exhaustive_search(config: SearchConfig, extra_stride: int = 1, extra_phase: int = 0) -> SearchReport:
    """Scan the configured space on this config's shard of the enumeration.

    `extra_stride`/`extra_phase` subdivide the shard further for in-process
    parallelism; results merge associatively so the partition never shows.
    """
    if config.mode != "exhaustive":
        raise DomainError("config.mode must be 'exhaustive'")
    best_value = None
    best_arg = None
    count = 0
    violations: list[VerificationReport] = []

    if config.objective == "lemma_sum":
        candidates = _iter_lemma_space(config)
    else:
        candidates = enumerate_canonical(config.support_len_max, config.value_max)

    for index, cand in enumerate(candidates):
        if index % config.shard_count != config.shard_index:
            continue
        if (index // config.shard_count) % extra_stride != extra_phase:
            continue
        count += 1
        if config.objective == "lemma_sum":
            n, seq = cand
            value = lemma_sum(n, seq)
            rep = check_lemma_bounds(n, seq)
            if rep.outcome == "violated":
                violations.append(rep)
            arg = (n, seq)
        else:
            value, violation = _evaluate(config.objective, cand)
            if violation is not None:
                violations.append(violation)
            arg = cand
        if _better(value, arg, best_value, best_arg):
            best_value, best_arg = value, arg
    return _finalize(config, config.objective, best_value, best_arg, count, violations)


def merge_reports(a: SearchReport, b: SearchReport) -> SearchReport:
    """Associative, commutative max-reduction of shard reports."""
    if a.objective != b.objective:
        raise DomainError("cannot merge reports with different objectives")
    best_value, best_arg = a.best_value, _packed_arg(a)
    if b.best_value is not None and _better(b.best_value, _packed_arg(b), best_value, best_arg):
        best_value, best_arg = b.best_value, _packed_arg(b)
    violations = a.violations + b.violations
    return _finalize(
        a.config,
        a.objective,
        best_value,
        best_arg,
        a.count_examined + b.count_examined,
        violations,
    )


def _packed_arg(r: SearchReport):
    if r.argmax is None:
        return None
    if isinstance(r.argmax, IncreasingIntSeq):
        return (r.argmax_anchor, r.argmax)
    return r.argmax


def _neighbors(vals: tuple[int, ...], len_max: int, value_max: int):
    """Deterministic neighborhood: coordinate +-1, end growth/shrink, doubling."""
    out = []
    w = len(vals)
    for i in range(w):
        for delta in (1, -1):
            v = vals[i] + delta
            if 0 <= v <= value_max:
                out.append(vals[:i] + (v,) + vals[i + 1:])
        doubled = vals[i] * 2
        if vals[i] > 0 and doubled <= value_max:
            out.append(vals[:i] + (doubled,) + vals[i + 1:])
    if w < len_max:
        out.append((1,) + vals)
        out.append(vals + (1,))
    if w > 1:
        out.append(vals[1:])
        out.append(vals[:-1])
    cleaned = []
    for cand in out:
        lo = 0
        while lo < len(cand) and cand[lo] == 0:
            lo += 1
        hi = len(cand)
        while hi > lo and cand[hi - 1] == 0:
            hi -= 1
        cand = cand[lo:hi]
        if cand:
            cleaned.append(cand)
    return cleaned


def _canonical_tuple(vals: tuple[int, ...]) -> tuple[int, ...]:
    g = math.gcd(*vals)
    vals = tuple(v // g for v in vals)
    rev = tuple(reversed(vals))
    return min(vals, rev)


def stochastic_search(config: SearchConfig) -> SearchReport:
    """Seeded hill climbing with restarts over canonical integer sequences.

    Fully reproducible: the master seed derives one child seed per restart,
    the neighbor order is fixed, and the climb takes the first strictly
    improving neighbor.  Already-evaluated candidates are cached so the
    budget counts distinct objective evaluations.
    """
    if config.mode != "stochastic":
        raise DomainError("config.mode must be 'stochastic'")
    if config.objective == "lemma_sum":
        raise DomainError("stochastic mode searches sequence objectives only")
    master = random.Random(config.seed)
    best_value = None
    best_arg = None
    violations: list[VerificationReport] = []
    seen: dict[tuple[int, ...], Fraction] = {}

    def evaluate(vals: tuple[int, ...]) -> Fraction | None:
        nonlocal best_value, best_arg
        if vals in seen:
            return seen[vals]
        if len(seen) >= config.budget:
            return None
        f = Sequence(0, tuple(Fraction(v) for v in vals))
        value, violation = _evaluate(config.objective, f)
        seen[vals] = value
        if violation is not None:
            violations.append(violation)
        if _better(value, f, best_value, best_arg):
            best_value, best_arg = value, f
        return value

    while len(seen) < config.budget:
        rng = random.Random(master.getrandbits(64))
        width = rng.randint(1, config.support_len_max)
        vals = [rng.randint(0, config.value_max) for _ in range(width)]
        vals[0] = max(vals[0], 1)
        vals[-1] = max(vals[-1], 1)
        current = _canonical_tuple(tuple(vals))
        current_value = evaluate(current)
        if current_value is None:
            break
        while True:
            moved = False
            for cand in _neighbors(current, config.support_len_max, config.value_max):
                cand = _canonical_tuple(cand)
                if cand == current:
                    continue
                value = evaluate(cand)
                if value is None:
                    moved = False
                    break
                if value > current_value:
                    current, current_value = cand, value
                    moved = True
                    break
            if not moved:
                break
    return _finalize(
        config, config.objective, best_value, best_arg, len(seen), violations
    )


def _parallel_worker(args) -> SearchReport:
    config, stride, phase = args
    return exhaustive_search(config, extra_stride=stride, extra_phase=phase)


def run_search(config: SearchConfig, parallel: int = 1) -> SearchReport:
    """Run a search, optionally fanning an exhaustive scan over processes."""
    if config.mode == "stochastic":
        return stochastic_search(config)
    if parallel <= 1:
        return exhaustive_search(config)
    jobs = [(config, parallel, phase) for phase in range(parallel)]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        parts = list(pool.map(_parallel_worker, jobs))
    report = parts[0]
    for part in parts[1:]:
        report = merge_reports(report, part)
    return report

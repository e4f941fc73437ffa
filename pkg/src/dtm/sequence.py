"""Finitely supported sequences over exact rationals.

Every numeric value in this package is a `fractions.Fraction`; nothing in
the core ever rounds.  A sequence is a function Z -> Q that vanishes
outside a finite interval [a, b], stored densely as (offset, values) with
the first and last stored values nonzero ("support-tight").  The zero
sequence is the empty store.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "ExactRational",
    "ParseError",
    "DomainError",
    "Sequence",
    "make_sequence",
    "parse_rational",
    "format_rational",
    "parse_sequence",
    "serialize_sequence",
    "sequence_to_text",
    "abs_of",
    "lp_norm",
    "derivative",
    "total_variation",
    "wkp_norm",
]

# Arbitrary-precision signed rational, kept in lowest terms by construction.
ExactRational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class ParseError(ValueError):
    """Input text is malformed or violates a normalization rule."""


class DomainError(ValueError):
    """An argument lies outside the operation's domain."""


def parse_rational(token: str) -> Fraction:
    """Parse 'p/q' or 'p' (integers, q > 0) into a Fraction in lowest terms."""
    token = token.strip()
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"malformed rational {token!r}")
    return Fraction(token)


def format_rational(x: Fraction) -> str:
    """Render in lowest terms as 'p/q', omitting '/q' when q = 1."""
    return str(x)


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"sequence values must be rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Sequence:
    """Finitely supported map Z -> Q: value_at(offset + i) = values[i]."""

    offset: int = 0
    values: tuple[Fraction, ...] = ()

    def __post_init__(self):
        vals = tuple(_coerce(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if vals:
            if vals[0] == 0 or vals[-1] == 0:
                raise ValueError("sequence store is not support-tight")
        else:
            object.__setattr__(self, "offset", 0)

    @property
    def is_zero(self) -> bool:
        return not self.values

    @property
    def support(self) -> tuple[int, int] | None:
        """Interval [a, b] outside which the sequence vanishes, or None."""
        if not self.values:
            return None
        return (self.offset, self.offset + len(self.values) - 1)

    @property
    def width(self) -> int:
        return len(self.values)

    def value_at(self, n: int) -> Fraction:
        i = n - self.offset
        if 0 <= i < len(self.values):
            return self.values[i]
        return Fraction(0)

    def items(self):
        """Yield (index, value) over the stored window."""
        for i, v in enumerate(self.values):
            yield self.offset + i, v

    def translate(self, k: int) -> "Sequence":
        if not self.values:
            return self
        return Sequence(self.offset + k, self.values)

    def reflect(self) -> "Sequence":
        """The sequence n -> f(-n)."""
        if not self.values:
            return self
        a, b = self.support
        return Sequence(-b, tuple(reversed(self.values)))

    def scale(self, c) -> "Sequence":
        c = Fraction(c)
        if c == 0 or not self.values:
            return Sequence()
        return Sequence(self.offset, tuple(v * c for v in self.values))


def make_sequence(offset: int, values, auto_trim: bool = False) -> Sequence:
    """Build a Sequence, optionally trimming zero padding at both ends."""
    vals = [_coerce(v) for v in values]
    if auto_trim:
        lo = 0
        while lo < len(vals) and vals[lo] == 0:
            lo += 1
        hi = len(vals)
        while hi > lo and vals[hi - 1] == 0:
            hi -= 1
        return Sequence(offset + lo, tuple(vals[lo:hi]))
    return Sequence(offset, tuple(vals))


def serialize_sequence(f: Sequence) -> str:
    """Canonical JSON form: {"offset": a, "values": ["p/q" | "p", ...]}."""
    return json.dumps(
        {"offset": f.offset, "values": [format_rational(v) for v in f.values]},
        separators=(",", ":"),
    )


def sequence_to_text(f: Sequence) -> str:
    """Plain-text form: one '<index> <rational>' line per nonzero entry."""
    return "\n".join(f"{n} {format_rational(v)}" for n, v in f.items() if v != 0)


def _parse_json_form(text: str, auto_trim: bool) -> Sequence:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON sequence: {exc}") from exc
    if not isinstance(obj, dict) or set(obj) != {"offset", "values"}:
        raise ParseError("JSON sequence must have exactly the keys 'offset' and 'values'")
    offset = obj["offset"]
    if not isinstance(offset, int) or isinstance(offset, bool):
        raise ParseError(f"offset must be an integer, got {offset!r}")
    raw = obj["values"]
    if not isinstance(raw, list):
        raise ParseError("'values' must be a list")
    vals = []
    for i, tok in enumerate(raw):
        if isinstance(tok, int) and not isinstance(tok, bool):
            tok = str(tok)
        if not isinstance(tok, str):
            raise ParseError(f"value at position {i} must be a string or integer")
        try:
            vals.append(parse_rational(tok))
        except ParseError as exc:
            raise ParseError(f"value at position {i}: {exc}") from exc
    try:
        return make_sequence(offset, vals, auto_trim=auto_trim)
    except ValueError as exc:
        raise ParseError(f"support not tight: {exc}") from exc


def _parse_text_form(text: str, auto_trim: bool) -> Sequence:
    entries: list[tuple[int, Fraction]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<index> <rational>'")
        idx_tok, val_tok = parts
        try:
            idx = int(idx_tok)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer index {idx_tok!r}") from exc
        try:
            val = parse_rational(val_tok)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if entries:
            prev = entries[-1][0]
            if idx == prev:
                raise ParseError(f"line {lineno}: duplicate index {idx}")
            if idx < prev:
                raise ParseError(f"line {lineno}: indices must be strictly increasing")
        entries.append((idx, val))
    if not entries:
        return Sequence()
    a = entries[0][0]
    b = entries[-1][0]
    vals = [Fraction(0)] * (b - a + 1)
    for idx, val in entries:
        vals[idx - a] = val
    try:
        return make_sequence(a, vals, auto_trim=auto_trim)
    except ValueError as exc:
        raise ParseError(f"support not tight: {exc}") from exc


def parse_sequence(text: str, auto_trim: bool = False) -> Sequence:
    """Parse either accepted serialized form (JSON object or index/value lines)."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if stripped.startswith("{"):
        return _parse_json_form(stripped, auto_trim)
    return _parse_text_form(text, auto_trim)


def abs_of(f: Sequence) -> Sequence:
    """Pointwise absolute value; support is unchanged."""
    if f.is_zero:
        return f
    return Sequence(f.offset, tuple(abs(v) for v in f.values))


def lp_norm(f: Sequence, p) -> Fraction:
    """Exact norm data for integer p >= 1 or p = math.inf.

    For p = 1 the sum of absolute values, for p = inf the maximum; for any
    other integer p the exact p-th power sum (callers compare p-th powers,
    keeping everything rational).
    """
    if p == math.inf:
        return max((abs(v) for v in f.values), default=Fraction(0))
    if not isinstance(p, int) or isinstance(p, bool) or p < 1:
        raise DomainError(f"p must be a positive integer or infinity, got {p!r}")
    if p == 1:
        return sum((abs(v) for v in f.values), Fraction(0))
    return sum((abs(v) ** p for v in f.values), Fraction(0))


def _forward_diff(f: Sequence) -> Sequence:
    if f.is_zero:
        return f
    a, b = f.support
    # f'(n) = f(n+1) - f(n); the result can only live on [a-1, b].
    vals = [f.value_at(n + 1) - f.value_at(n) for n in range(a - 1, b + 1)]
    return make_sequence(a - 1, vals, auto_trim=True)


def derivative(f: Sequence, k: int) -> Sequence:
    """k-fold forward difference; k = 0 returns f itself."""
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"derivative order must be a nonnegative integer, got {k!r}")
    out = f
    for _ in range(k):
        out = _forward_diff(out)
    return out


def total_variation(f: Sequence) -> Fraction:
    """Sum over all of Z of |f(n+1) - f(n)|, computed exactly."""
    if f.is_zero:
        return Fraction(0)
    jumps = abs(f.values[0]) + abs(f.values[-1])
    for u, v in zip(f.values, f.values[1:]):
        jumps += abs(v - u)
    return jumps


def wkp_norm(f: Sequence, k: int, p) -> Fraction:
    """Sum of lp_norm over the derivatives of order 0..k (power-sum
    convention applies for finite p other than 1)."""
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    total = Fraction(0)
    g = f
    for j in range(k + 1):
        if j > 0:
            g = _forward_diff(g)
        total += lp_norm(g, p)
    return total

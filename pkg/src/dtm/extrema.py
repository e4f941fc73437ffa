"""Alternating chains of local extrema of tabulated functions.

A local maximum is an index n with g(n-1) <= g(n) and g(n) > g(n+1); a
local minimum satisfies g(n-1) >= g(n) and g(n) < g(n+1).  The asymmetry
makes a plateau contribute exactly its right edge.

The chain records direction changes: the right edge of every summit
plateau as a maximum and of every valley plateau as a minimum, which is
what the telescoping variation identities pair up.  A plateau inside a
monotone run also has a right edge satisfying one of the literal
definitions (the flat step counts as "<=" or ">="), but it reverses no
direction and is not part of the chain; `literal_local_maxima` scans for
every index satisfying the maximum definition when the superset matters.

Extrema are reported inside the support window only; the values just
outside come from the zero tail (sequences) or the monotone tail law
(transforms), under which no direction change can occur off-window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .sequence import Sequence
from .transforms import ConsistencyError, MaximalTransform, transform_value_at

__all__ = ["ExtremaChain", "extrema_chain", "literal_local_maxima"]


@dataclass(frozen=True)
class ExtremaChain:
    maxima: tuple[int, ...]
    minima: tuple[int, ...]

    def __post_init__(self):
        merged = self.all_extrema()
        for (n1, k1), (n2, k2) in zip(merged, merged[1:]):
            if n1 >= n2 or k1 == k2:
                raise ValueError("extrema do not interleave strictly")

    def all_extrema(self) -> list[tuple[int, str]]:
        """All extrema in index order as (index, 'max' | 'min') pairs."""
        return sorted(
            [(n, "max") for n in self.maxima] + [(n, "min") for n in self.minima]
        )

    @property
    def is_empty(self) -> bool:
        return not self.maxima and not self.minima

    @property
    def first_is_maximum(self) -> bool | None:
        ext = self.all_extrema()
        return ext[0][1] == "max" if ext else None

    @property
    def last_is_maximum(self) -> bool | None:
        ext = self.all_extrema()
        return ext[-1][1] == "max" if ext else None


def _window_and_margins(g) -> tuple[int, int, list[Fraction], Fraction, Fraction]:
    if isinstance(g, Sequence):
        if g.is_zero:
            return 0, -1, [], Fraction(0), Fraction(0)
        a, b = g.support
        return a, b, list(g.values), Fraction(0), Fraction(0)
    if isinstance(g, MaximalTransform):
        if g.window is None:
            return 0, -1, [], Fraction(0), Fraction(0)
        a, b = g.window
        vals = list(g.values)
        left2 = transform_value_at(g, a - 2)
        left1 = transform_value_at(g, a - 1)
        right1 = transform_value_at(g, b + 1)
        right2 = transform_value_at(g, b + 2)
        if not (left2 <= left1 <= vals[0] and vals[-1] >= right1 >= right2):
            raise ConsistencyError(
                f"tail law violated on the window margin of {g.kind} transform"
            )
        return a, b, vals, left1, right1
    raise TypeError(f"cannot scan extrema of {type(g).__name__}")


def extrema_chain(g: Sequence | MaximalTransform) -> ExtremaChain:
    """The strictly alternating chain of direction-change extrema."""
    a, b, vals, left, right = _window_and_margins(g)
    extended = [left] + vals + [right]
    maxima: list[int] = []
    minima: list[int] = []
    direction = 0  # sign of the last strict move
    for i in range(len(extended) - 1):
        cur, nxt = extended[i], extended[i + 1]
        if nxt > cur:
            if direction < 0:
                minima.append(a + i - 1)
            direction = 1
        elif nxt < cur:
            if direction > 0:
                maxima.append(a + i - 1)
            direction = -1
    return ExtremaChain(tuple(maxima), tuple(minima))


def literal_local_maxima(g: Sequence | MaximalTransform) -> list[int]:
    """Every window index satisfying the local-maximum definition verbatim,
    including right edges of plateaus inside descending runs."""
    a, b, vals, left, right = _window_and_margins(g)
    out = []
    for n in range(a, b + 1):
        prev = vals[n - a - 1] if n > a else left
        cur = vals[n - a]
        nxt = vals[n - a + 1] if n < b else right
        if prev <= cur and cur > nxt:
            out.append(n)
    return out

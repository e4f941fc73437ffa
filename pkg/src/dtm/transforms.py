"""Discrete maximal transforms of finitely supported sequences, exactly.

Four operators are tabulated on the support window of |f|: the symmetric
"centered" kind (best average over windows [n-r, n+r]), the "noncentered"
kind (best average over any window containing n), and the half-weighted
one-sided kinds "left"/"right" (the anchor value enters with weight 1/2
and the denominator is the half-integer r + 1/2).

Clipping lemma.  For finitely supported input every supremum here is
attained inside a finite range: once a window already covers the whole
support on one side, extending it further on that side adds only zero
terms to the numerator while strictly growing the denominator, so no
larger window improves the average.  Hence the centered radius is capped
at max(n - a, b - n), window ends are clipped to [min(n, a), max(n, b)],
and one-sided reach stops at the support edge.

Internally |f| is rescaled by the lcm of its value denominators so that
every comparison is an integer cross-multiplication; the scale divides
back out at the end (all four operators are positively homogeneous).
Outside the window a transform is monotone toward a zero limit on each
side (the tail law), which makes total variation over all of Z a finite
computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .sequence import DomainError, Sequence

__all__ = [
    "KINDS",
    "ConsistencyError",
    "MaximalTransform",
    "centered_average",
    "window_average",
    "one_sided_value",
    "centered_transform",
    "noncentered_transform_naive",
    "noncentered_transform_fast",
    "one_sided_transform",
    "transform_of_kind",
    "transform_value_at",
    "total_variation_of_transform",
    "transform_to_csv",
    "parse_transform_csv",
]

KINDS = ("centered", "noncentered", "left", "right")


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a transform bug."""


@dataclass(frozen=True)
class MaximalTransform:
    """Tabulated values of one maximal operator applied to |base|.

    `values[i]` is the transform at window index `window[0] + i`; for the
    centered kind `optimal_radius[i]` is the smallest radius attaining it.
    `window` is None only for the zero-sequence sentinel (all values 0).
    """

    kind: str
    base: Sequence
    window: tuple[int, int] | None
    values: tuple[Fraction, ...]
    optimal_radius: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown transform kind {self.kind!r}")

    @property
    def is_zero(self) -> bool:
        return self.window is None

    def value_in_window(self, n: int) -> Fraction:
        a, b = self.window
        if not a <= n <= b:
            raise IndexError(f"{n} outside window [{a}, {b}]")
        return self.values[n - a]

    @property
    def tail_law(self) -> str:
        if self.window is None:
            return "identically zero"
        a, b = self.window
        return (
            f"nondecreasing on (-inf,{a}], nonincreasing on [{b},+inf), "
            "limit 0 at both ends"
        )


class _Profile:
    """Integer rescaling of |f|: g = scale * |f| on [a, b], with prefix sums."""

    __slots__ = ("a", "b", "scale", "g", "prefix")

    def __init__(self, f: Sequence):
        self.a, self.b = f.support
        self.scale = math.lcm(*(v.denominator for v in f.values))
        self.g = [abs(v.numerator) * (self.scale // v.denominator) for v in f.values]
        pre = [0]
        for x in self.g:
            pre.append(pre[-1] + x)
        self.prefix = pre

    def mass(self, lo: int, hi: int) -> int:
        lo = max(lo, self.a)
        hi = min(hi, self.b)
        if lo > hi:
            return 0
        return self.prefix[hi - self.a + 1] - self.prefix[lo - self.a]

    def upto(self, j: int) -> int:
        """Mass on (-inf, j]; defined for j >= a - 1."""
        return self.prefix[min(j, self.b) - self.a + 1] if j >= self.a else 0

    def point(self, n: int) -> int:
        if self.a <= n <= self.b:
            return self.g[n - self.a]
        return 0


def _profile(f: Sequence) -> _Profile | None:
    return None if f.is_zero else _Profile(f)


def _sentinel(kind: str, f: Sequence) -> MaximalTransform:
    return MaximalTransform(kind, f, None, ())


def centered_average(f: Sequence, n: int, r: int) -> Fraction:
    """Average of |f| over [n-r, n+r], exactly."""
    if r < 0:
        raise DomainError("radius must be nonnegative")
    prof = _profile(f)
    if prof is None:
        return Fraction(0)
    return Fraction(prof.mass(n - r, n + r), (2 * r + 1) * prof.scale)


def window_average(f: Sequence, n: int, r: int, s: int) -> Fraction:
    """Average of |f| over [n-r, n+s], exactly."""
    if r < 0 or s < 0:
        raise DomainError("window extents must be nonnegative")
    prof = _profile(f)
    if prof is None:
        return Fraction(0)
    return Fraction(prof.mass(n - r, n + s), (r + s + 1) * prof.scale)


def _one_sided_best(prof: _Profile, n: int, side: str) -> tuple[int, int]:
    """Best (numerator, denominator) pair for the half-weighted average at n,
    in doubled units: value = num / (den * scale)."""
    gn = prof.point(n)
    best_num, best_den = gn, 1  # reach 0
    if side == "right":
        reach = max(0, prof.b - n)
        for s in range(1, reach + 1):
            num = gn + 2 * prof.mass(n + 1, n + s)
            den = 2 * s + 1
            if num * best_den > best_num * den:
                best_num, best_den = num, den
    elif side == "left":
        reach = max(0, n - prof.a)
        for r in range(1, reach + 1):
            num = gn + 2 * prof.mass(n - r, n - 1)
            den = 2 * r + 1
            if num * best_den > best_num * den:
                best_num, best_den = num, den
    else:
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    return best_num, best_den


def one_sided_value(f: Sequence, n: int, side: str) -> Fraction:
    """Half-weighted one-sided maximal value at n, by direct scan.

    The supremum over reach is attained because the search may stop once
    the window covers the support on that side (clipping lemma).
    """
    prof = _profile(f)
    if prof is None:
        if side not in ("left", "right"):
            raise DomainError(f"side must be 'left' or 'right', got {side!r}")
        return Fraction(0)
    num, den = _one_sided_best(prof, n, side)
    return Fraction(num, den * prof.scale)


def centered_transform(f: Sequence) -> MaximalTransform:
    """Tabulate the centered operator with the smallest optimal radius per point."""
    prof = _profile(f)
    if prof is None:
        return _sentinel("centered", f)
    a, b = prof.a, prof.b
    values: list[Fraction] = []
    radii: list[int] = []
    for n in range(a, b + 1):
        best_num, best_den, best_r = prof.point(n), 1, 0
        for r in range(1, max(n - a, b - n) + 1):
            num = prof.mass(n - r, n + r)
            den = 2 * r + 1
            # strict improvement only: keeps the smallest maximizing radius
            if num * best_den > best_num * den:
                best_num, best_den, best_r = num, den, r
        values.append(Fraction(best_num, best_den * prof.scale))
        radii.append(best_r)
    return MaximalTransform("centered", f, (a, b), tuple(values), tuple(radii))


def noncentered_transform_naive(f: Sequence) -> MaximalTransform:
    """Tabulate the noncentered operator by trying every clipped window.

    This is the correctness oracle for the fast path; it stays deliberately
    literal.
    """
    prof = _profile(f)
    if prof is None:
        return _sentinel("noncentered", f)
    a, b = prof.a, prof.b
    pre = prof.prefix
    values = []
    for n in range(a, b + 1):
        best_num, best_den = 0, 1
        for l in range(a, n + 1):
            left = pre[l - a]
            for m in range(n, b + 1):
                num = pre[m - a + 1] - left
                den = m - l + 1
                if num * best_den > best_num * den:
                    best_num, best_den = num, den
        values.append(Fraction(best_num, best_den * prof.scale))
    return MaximalTransform("noncentered", f, (a, b), tuple(values))


def _cross(o, u, v) -> int:
    return (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0])


def _lower_hull_append(hull: list, p: tuple) -> None:
    # strictly convex chain: pop while the middle point is on or above
    while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
        hull.pop()
    hull.append(p)


def _row_peak(p, rh: list, h2: int):
    """Best right-hull vertex for anchor p by binary search.

    rh is stored right-to-left (rh[-1] is the geometric leftmost vertex).
    Advancing rightward along the hull improves the slope from p exactly
    while the next hull edge is steeper than the current chord; that
    predicate flips once, so the first peak is binary-searchable.
    """
    lo, hi = 0, h2 - 1
    while lo < hi:
        mid = (lo + hi) // 2
        qm = rh[h2 - 1 - mid]
        qn = rh[h2 - 2 - mid]
        if (qn[1] - qm[1]) * (qm[0] - p[0]) > (qm[1] - p[1]) * (qn[0] - qm[0]):
            lo = mid + 1
        else:
            hi = mid
    return rh[h2 - 1 - lo]


def noncentered_transform_fast(f: Sequence) -> MaximalTransform:
    """Tabulate the noncentered operator via prefix-sum hulls.

    With S(j) the mass of |f| on (-inf, j], the value at n is the maximum
    slope between a point (j, S(j)), j <= n-1, and a point (m, S(m)),
    m >= n.  The left points' lower hull grows as n advances; the right
    points' upper hull shrinks from the left, which is handled by replaying
    an insertion log built in a backward pass.  The outer climb over left
    hull vertices is valid because the per-vertex best slope has no strict
    interior dip along the hull; slope comparisons are integer
    cross-multiplications throughout.
    """
    prof = _profile(f)
    if prof is None:
        return _sentinel("noncentered", f)
    a, b = prof.a, prof.b
    pre = prof.prefix
    scale = prof.scale

    def pt(j: int) -> tuple[int, int]:
        return (j, pre[j - (a - 1)])

    # Backward pass: build the full right upper hull, logging pops per insertion.
    rh: list[tuple[int, int]] = []
    pop_log: dict[int, list[tuple[int, int]]] = {}
    for m in range(b, a - 1, -1):
        p = pt(m)
        popped = []
        while len(rh) >= 2 and _cross(p, rh[-1], rh[-2]) >= 0:
            popped.append(rh.pop())
        pop_log[m] = popped
        rh.append(p)

    lh: list[tuple[int, int]] = [pt(a - 1)]
    values = []
    for n in range(a, b + 1):
        h1, h2 = len(lh), len(rh)
        i = h1 - 1
        q = _row_peak(lh[i], rh, h2)
        best_dy, best_dx = q[1] - lh[i][1], q[0] - lh[i][0]
        while i > 0:
            q = _row_peak(lh[i - 1], rh, h2)
            dy, dx = q[1] - lh[i - 1][1], q[0] - lh[i - 1][0]
            if dy * best_dx >= best_dy * dx:
                best_dy, best_dx = dy, dx
                i -= 1
            else:
                break
        values.append(Fraction(best_dy, best_dx * scale))
        # shrink the right set: undo the insertion of point n
        rh.pop()
        rh.extend(reversed(pop_log[n]))
        # grow the left set: j = n becomes admissible for n + 1
        _lower_hull_append(lh, pt(n))
    return MaximalTransform("noncentered", f, (a, b), tuple(values))


def _right_sweep(prof: _Profile) -> list[Fraction]:
    """One-sided right transform on the window by a single backward sweep.

    In doubled coordinates the value at n is the maximum slope from the
    anchor (2n - 1, S(n) + S(n-1)) to a suffix point (2m, 2 S(m)), m >= n.
    The suffix upper hull gains one point per step; the tangent pointer is
    resumed from the previous step and corrected by a local climb (slopes
    from the anchor are unimodal along a strict hull).
    """
    a, b = prof.a, prof.b
    upto = prof.upto
    out: list[Fraction | None] = [None] * (b - a + 1)
    hull: list[tuple[int, int]] = []  # hull[0] is the rightmost point m = b
    idx = 0
    for n in range(b, a - 1, -1):
        p = (2 * n, 2 * upto(n))
        while len(hull) >= 2 and _cross(p, hull[-1], hull[-2]) >= 0:
            hull.pop()
        hull.append(p)
        ax, ay = 2 * n - 1, upto(n) + upto(n - 1)
        top = len(hull) - 1
        if idx > top:
            idx = top

        def slope_pair(k: int) -> tuple[int, int]:
            vx, vy = hull[k]
            return (vy - ay, vx - ax)

        dy, dx = slope_pair(idx)
        while idx + 1 <= top:
            ndy, ndx = slope_pair(idx + 1)
            if ndy * dx > dy * ndx:
                idx += 1
                dy, dx = ndy, ndx
            else:
                break
        while idx - 1 >= 0:
            ndy, ndx = slope_pair(idx - 1)
            if ndy * dx > dy * ndx:
                idx -= 1
                dy, dx = ndy, ndx
            else:
                break
        out[n - a] = Fraction(dy, dx * prof.scale)
    return out  # type: ignore[return-value]


def one_sided_transform(f: Sequence, side: str) -> MaximalTransform:
    """Tabulate a one-sided operator in a single amortized hull sweep."""
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    if f.is_zero:
        return _sentinel(side, f)
    if side == "right":
        values = _right_sweep(_Profile(f))
        a, b = f.support
        return MaximalTransform("right", f, (a, b), tuple(values))
    mirrored = _right_sweep(_Profile(f.reflect()))
    a, b = f.support
    return MaximalTransform("left", f, (a, b), tuple(reversed(mirrored)))


def transform_of_kind(f: Sequence, kind: str) -> MaximalTransform:
    """Dispatch helper; 'noncentered' uses the fast path."""
    if kind == "centered":
        return centered_transform(f)
    if kind == "noncentered":
        return noncentered_transform_fast(f)
    if kind in ("left", "right"):
        return one_sided_transform(f, kind)
    raise DomainError(f"unknown transform kind {kind!r}")


def _value_outside(prof: _Profile, kind: str, n: int) -> Fraction:
    a, b = prof.a, prof.b
    if kind == "centered":
        # the window must reach the support at all, so r starts at the gap
        lo = a - n if n < a else n - b
        hi = max(abs(n - a), abs(n - b))
        best_num, best_den = 0, 1
        for r in range(lo, hi + 1):
            num = prof.mass(n - r, n + r)
            den = 2 * r + 1
            if num * best_den > best_num * den:
                best_num, best_den = num, den
        return Fraction(best_num, best_den * prof.scale)
    if kind == "noncentered":
        best_num, best_den = 0, 1
        if n < a:
            for m in range(a, b + 1):
                num = prof.upto(m)
                den = m - n + 1
                if num * best_den > best_num * den:
                    best_num, best_den = num, den
        else:
            total = prof.upto(b)
            for j in range(a - 1, b):
                num = total - prof.upto(j)
                den = n - j
                if num * best_den > best_num * den:
                    best_num, best_den = num, den
        return Fraction(best_num, best_den * prof.scale)
    num, den = _one_sided_best(prof, n, kind)
    return Fraction(num, den * prof.scale)


def transform_value_at(t: MaximalTransform, n: int) -> Fraction:
    """Transform value at any integer, window or tail alike."""
    if t.window is None:
        return Fraction(0)
    a, b = t.window
    if a <= n <= b:
        return t.values[n - a]
    return _value_outside(_Profile(t.base), t.kind, n)


def _check_margins(t: MaximalTransform) -> None:
    a, b = t.window
    va2, va1 = transform_value_at(t, a - 2), transform_value_at(t, a - 1)
    vb1, vb2 = transform_value_at(t, b + 1), transform_value_at(t, b + 2)
    if not (va2 <= va1 <= t.values[0] and t.values[-1] >= vb1 >= vb2):
        raise ConsistencyError(
            f"tail law violated at the window margin of {t.kind} transform"
        )


def total_variation_of_transform(t: MaximalTransform) -> Fraction:
    """Total variation over all of Z.

    The tails are monotone with zero limits, so they telescope to the two
    window edge values; the margins are re-verified before summing.
    """
    if t.window is None:
        return Fraction(0)
    _check_margins(t)
    var = t.values[0] + t.values[-1]
    for u, v in zip(t.values, t.values[1:]):
        var += abs(v - u)
    return var


def _smallest_radius_at(prof: _Profile, n: int) -> int:
    a, b = prof.a, prof.b
    lo = 0 if a <= n <= b else (a - n if n < a else n - b)
    hi = max(abs(n - a), abs(n - b))
    best_num, best_den, best_r = prof.mass(n - lo, n + lo), 2 * lo + 1, lo
    for r in range(lo + 1, hi + 1):
        num = prof.mass(n - r, n + r)
        den = 2 * r + 1
        if num * best_den > best_num * den:
            best_num, best_den, best_r = num, den, r
    return best_r


def transform_to_csv(t: MaximalTransform, pad: int = 0) -> str:
    """CSV export: window rows (optionally padded by `pad` on each side).

    The leading comment line records the kind, the support, and the tail
    law under which values outside the window are determined.
    """
    if pad < 0:
        raise DomainError("pad must be nonnegative")
    with_radius = t.kind == "centered"
    cols = "n,value_num,value_den" + (",optimal_radius" if with_radius else "")
    if t.window is None:
        header = f"# kind={t.kind} support=empty tail={t.tail_law}"
        return header + "\n" + cols + "\n"
    a, b = t.window
    header = f"# kind={t.kind} support=[{a},{b}] tail={t.tail_law}"
    lines = [header, cols]
    prof = _Profile(t.base) if (pad > 0 or with_radius) else None
    for n in range(a - pad, b + pad + 1):
        v = transform_value_at(t, n)
        row = f"{n},{v.numerator},{v.denominator}"
        if with_radius:
            if a <= n <= b:
                row += f",{t.optimal_radius[n - a]}"
            else:
                row += f",{_smallest_radius_at(prof, n)}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def parse_transform_csv(text: str) -> tuple[dict, list[tuple[int, Fraction, int | None]]]:
    """Parse the CSV export back into (metadata, rows); used for round-trips."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing transform CSV header line")
    meta: dict = {}
    for tok in lines[0][1:].strip().split(" ", 2):
        key, _, val = tok.partition("=")
        meta[key] = val
    cols = lines[1].split(",")
    rows = []
    for ln in lines[2:]:
        parts = ln.split(",")
        n = int(parts[0])
        value = Fraction(int(parts[1]), int(parts[2]))
        radius = int(parts[3]) if len(cols) == 4 else None
        rows.append((n, value, radius))
    return meta, rows

"""Exact computation of the gap function delta(S) = sup_t min_i ||s_i t||.

The supremum of the piecewise-linear function f_S(t) = min_i ||s_i t|| over a
set S of distinct positive integer speeds is attained at a rational time of
the form a / (s_i + s_j) for a pair of distinct speeds.  Enumerating that
finite candidate set gives the exact maximum together with a witness; an
independent grid scan brackets the same value and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .arith import SpeedSet, torus_norm

__all__ = [
    "GapCertificate",
    "LonelyReport",
    "LrcSweepReport",
    "gap_value_at",
    "exact_gap",
    "gap_grid_oracle",
    "lonely_time",
    "verify_lrc",
    "check_kappa_bounds",
    "separation_floor",
]


@dataclass(frozen=True)
class GapCertificate:
    """The exact maximum of f_S together with a maximizing time.

    ``witness_pair`` is ``(i, j, a)`` -- indices into the sorted speeds plus
    the numerator -- with ``witness_time == a / (speeds[i] + speeds[j])``.
    For a single-speed set the maximum 1/2 is taken analytically at
    ``1 / (2 s)`` and ``witness_pair`` is None.
    """

    speeds: SpeedSet
    delta: Fraction
    witness_time: Fraction
    witness_pair: Optional[tuple[int, int, int]]
    per_speed_norms: tuple[Fraction, ...]


def gap_value_at(speeds: SpeedSet | Iterable[int], t) -> Fraction:
    """f_S(t): the minimum over the speeds of the torus norm of s*t."""
    s = SpeedSet.of(speeds)
    t = Fraction(t)
    return min(torus_norm(v * t) for v in s)


def exact_gap(speeds: SpeedSet | Iterable[int]) -> GapCertificate:
    """Exact global maximum of f_S over one period, with certificate.

    Every candidate a/(s_i + s_j) with i < j and 1 <= a <= s_i + s_j - 1 is
    evaluated (the two remaining endpoints of the candidate range give
    f_S = 0 and can never win).  Ties are broken toward the smallest
    witness time so output is deterministic.
    """
    sset = SpeedSet.of(speeds)
    members = sset.speeds
    k = len(members)
    if k == 1:
        s = members[0]
        t = Fraction(1, 2 * s)
        return GapCertificate(sset, Fraction(1, 2), t, None, (Fraction(1, 2),))

    # All comparisons run on integers: f_S(a/den) = num/den with
    # num = min over s of min(s*a mod den, den - s*a mod den).
    best_num, best_den = -1, 1
    best_t: Optional[Fraction] = None
    best_pair: Optional[tuple[int, int, int]] = None
    for i in range(k):
        si = members[i]
        for j in range(i + 1, k):
            den = si + members[j]
            for a in range(1, den):
                num = den
                limit = best_num * den
                for s in members:
                    r = s * a % den
                    if den - r < r:
                        r = den - r
                    if r < num:
                        num = r
                        if num * best_den < limit:
                            break  # strictly below the incumbent; skip
                else:
                    scaled = num * best_den
                    if scaled > limit:
                        best_num, best_den = num, den
                        best_t = Fraction(a, den)
                        best_pair = (i, j, a)
                    elif scaled == limit:
                        t = Fraction(a, den)
                        if t < best_t:
                            best_num, best_den = num, den
                            best_t = t
                            best_pair = (i, j, a)

    delta = Fraction(best_num, best_den)
    norms = tuple(torus_norm(s * best_t) for s in members)
    assert delta == min(norms)
    return GapCertificate(sset, delta, best_t, best_pair, norms)


def gap_grid_oracle(speeds: SpeedSet | Iterable[int], resolution: int | None = None) -> Fraction:
    """Maximum of f_S over the uniform grid {m/N : 0 <= m < N}.

    Independent of the candidate enumeration above.  Since f_S is piecewise
    linear with slopes bounded by the largest speed, the grid value brackets
    the true gap:  oracle <= delta(S) <= oracle + s_max/(2N).  The default
    resolution N = 64 * s_max * k makes the bracket width 1/(128 k).
    """
    sset = SpeedSet.of(speeds)
    members = sset.speeds
    s_max = members[-1]
    n = 64 * s_max * len(members) if resolution is None else int(resolution)
    if n < 2 * s_max:
        raise ValueError(f"resolution {n} below 2 * max speed = {2 * s_max}")
    if s_max * (n - 1) < 2 ** 62:  # products stay exact in int64
        grid = np.arange(n, dtype=np.int64)
        low: np.ndarray | None = None
        for s in members:
            r = (s * grid) % n
            np.minimum(r, n - r, out=r)
            low = r if low is None else np.minimum(low, r)
        best = int(low.max())
    else:
        best = _grid_max_bigint(members, n)
    return Fraction(best, n)


def _grid_max_bigint(members: tuple[int, ...], n: int) -> int:
    """Arbitrary-precision fallback for the grid scan."""
    best = 0
    for m in range(n):
        value = n
        for s in members:
            r = s * m % n
            if n - r < r:
                r = n - r
            if r < value:
                value = r
        if value > best:
            best = value
    return best


@dataclass(frozen=True)
class LonelyReport:
    """Loneliest moment for one runner against the rest of the field.

    ``min_separation`` is the exact maximum over time of the smallest track
    distance from the focus runner to any other; ``lonely`` states whether
    that reaches 1/n for n runners.  ``separation_floor`` is the guaranteed
    per-instance floor 1/(2(n-1)).
    """

    all_speeds: tuple[int, ...]
    focus_index: int
    loneliest_time: Fraction
    min_separation: Fraction
    lonely: bool
    separation_floor: Fraction


def lonely_time(speeds: Sequence[int], focus: int) -> LonelyReport:
    """Exact loneliest time for ``speeds[focus]`` among n >= 2 runners.

    Works on the difference set {|s_j - s_focus|}: the focus runner is at
    distance ||(s_j - s_focus) t|| from runner j, so its best separation is
    the gap of the differences.
    """
    runners = tuple(int(s) for s in speeds)
    n = len(runners)
    if n < 2:
        raise ValueError("need at least two runners")
    if len(set(runners)) != n:
        raise ValueError("runner speeds must be distinct")
    if any(s < 0 for s in runners):
        raise ValueError("runner speeds must be >= 0")
    if not 0 <= focus < n:
        raise ValueError(f"focus index {focus} out of range")
    diffs = SpeedSet(abs(s - runners[focus]) for i, s in enumerate(runners) if i != focus)
    cert = exact_gap(diffs)
    return LonelyReport(
        all_speeds=runners,
        focus_index=focus,
        loneliest_time=cert.witness_time,
        min_separation=cert.delta,
        lonely=cert.delta >= Fraction(1, n),
        separation_floor=Fraction(1, 2 * (n - 1)),
    )


@dataclass(frozen=True)
class LrcSweepReport:
    """Result of exhaustively checking delta >= 1/(k+1) over a speed range."""

    k: int
    max_speed: int
    bound: Fraction
    checked: int
    tight: tuple[tuple[int, ...], ...]
    counterexamples: tuple[tuple[int, ...], ...]

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def _classify_chunk(args: tuple[list[tuple[int, ...]], Fraction]):
    candidates, bound = args
    tight: list[tuple[int, ...]] = []
    bad: list[tuple[int, ...]] = []
    for c in candidates:
        delta = exact_gap(SpeedSet(c)).delta
        if delta == bound:
            tight.append(c)
        elif delta < bound:
            bad.append(c)
    return tight, bad


def verify_lrc(k: int, max_speed: int, jobs: int = 1) -> LrcSweepReport:
    """Check delta(S) >= 1/(k+1) for every k-subset of {1..max_speed}.

    Only sets with gcd 1 are enumerated: delta is invariant under scaling
    all speeds by a constant, so the others are redundant.  A counterexample
    is collected, not raised -- it would refute the conjecture.
    """
    if not 1 <= k <= 6:
        raise ValueError("k must be between 1 and 6 (desk scale)")
    if max_speed < k:
        raise ValueError("max_speed must be at least k")
    bound = Fraction(1, k + 1)
    candidates = [c for c in combinations(range(1, max_speed + 1), k) if gcd(*c) == 1]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [candidates[x::jobs] for x in range(jobs)]
        tight: list[tuple[int, ...]] = []
        bad: list[tuple[int, ...]] = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part_tight, part_bad in pool.map(_classify_chunk, [(c, bound) for c in chunks]):
                tight.extend(part_tight)
                bad.extend(part_bad)
    else:
        tight, bad = _classify_chunk((candidates, bound))
    # Canonical ordering regardless of how the work was split.
    tight.sort()
    bad.sort()
    return LrcSweepReport(k, max_speed, bound, len(candidates), tuple(tight), tuple(bad))


def check_kappa_bounds(speeds: SpeedSet | Iterable[int]) -> tuple[Fraction, Fraction, bool]:
    """The sandwich (1/(2k), 1/(k+1)) for a k-speed set.

    Only the lower bound constrains each instance; the upper bound is an
    infimum statement over all k-sets, witnessed by {1, ..., k}.  Returns
    (lower, upper, lower <= delta(S)).
    """
    sset = SpeedSet.of(speeds)
    k = len(sset)
    lower = Fraction(1, 2 * k)
    upper = Fraction(1, k + 1)
    return lower, upper, exact_gap(sset).delta >= lower


def separation_floor(speeds: Sequence[int], focus: int) -> Fraction:
    """Guaranteed separation 1/(2(n-1)) for the focus runner among n.

    Verifies the floor against the exact loneliest separation; a violation
    would contradict the measure-covering bound, so it raises.
    """
    report = lonely_time(speeds, focus)
    if report.min_separation < report.separation_floor:
        raise ArithmeticError(
            f"separation {report.min_separation} fell below the floor "
            f"{report.separation_floor}; this should be impossible"
        )
    return report.separation_floor

"""View obstruction by scaled cubes centered at the half-integer lattice.

For a ray r(t) = (a_1 t, ..., a_k t) through the positive orthant, the
smallest cube scale that the ray cannot avoid is 1 - 2*delta over the set of
coordinate values: the ray point is within alpha/2 of a cube center in every
coordinate exactly when min_i ||a_i t|| >= (1 - alpha)/2.  Everything here is
exact except :func:`ray_cube_first_hit`, a floating tracer used for figure
rendering and sanity checks only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Optional, Sequence

from .arith import SpeedSet
from .gap import exact_gap

__all__ = [
    "Direction",
    "ObstructionWitness",
    "KPrimeScanReport",
    "min_scale_for_direction",
    "obstruction_witness",
    "kprime_scan",
    "ray_cube_first_hit",
]


class Direction:
    """A rational ray direction, normalized to a coprime tuple of positive
    integers."""

    __slots__ = ("coords",)

    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]):
        items = tuple(int(c) for c in coords)
        if not items:
            raise ValueError("direction must have at least one coordinate")
        if any(c < 1 for c in items):
            raise ValueError("direction coordinates must be positive integers")
        g = gcd(*items)
        object.__setattr__(self, "coords", tuple(c // g for c in items))

    @classmethod
    def of(cls, value: "Direction | Iterable[int]") -> "Direction":
        return value if isinstance(value, cls) else cls(value)

    def __setattr__(self, name, value):
        raise AttributeError("Direction is immutable")

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __eq__(self, other):
        if isinstance(other, Direction):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"Direction({self.coords!r})"

    def speed_set(self) -> SpeedSet:
        """Distinct coordinate values; repeats collapse since f_S depends
        only on the set of values."""
        return SpeedSet(set(self.coords))


@dataclass(frozen=True)
class ObstructionWitness:
    """A time at which the ray sits inside one alpha-scaled cube: for every
    coordinate, |direction[i] * hit_time - cube_center[i]| <= alpha/2."""

    direction: Direction
    alpha: Fraction
    hit_time: Fraction
    cube_center: tuple[Fraction, ...]


def min_scale_for_direction(direction: Direction | Iterable[int]) -> Fraction:
    """Infimum of cube scales obstructing the ray; equals 1 - 2*delta."""
    d = Direction.of(direction)
    return 1 - 2 * exact_gap(d.speed_set()).delta


def _nearest_center(y: Fraction) -> Fraction:
    """Half-integer center m + 1/2 (m >= 0) nearest to y > 0, preferring the
    smaller center on ties."""
    z = y - Fraction(1, 2)
    floor = z.numerator // z.denominator
    m = floor if z - floor <= Fraction(1, 2) else floor + 1
    return m + Fraction(1, 2)


def obstruction_witness(
    direction: Direction | Iterable[int], alpha
) -> Optional[ObstructionWitness]:
    """Cube actually hit at scale alpha, or None below the minimal scale.

    The hit time is the exact-gap witness of the collapsed coordinate set:
    there the smallest torus norm equals delta, so each coordinate is within
    (1 - 2*delta)/2 <= alpha/2 of its nearest half-integer.  Cubes are
    closed, so grazing the boundary counts.
    """
    d = Direction.of(direction)
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    cert = exact_gap(d.speed_set())
    if alpha < 1 - 2 * cert.delta:
        return None
    t = cert.witness_time
    centers = []
    for c in d.coords:
        center = _nearest_center(c * t)
        if abs(c * t - center) * 2 > alpha:
            raise ArithmeticError("witness time failed the cube containment check")
        centers.append(center)
    return ObstructionWitness(d, alpha, t, tuple(centers))


@dataclass(frozen=True)
class KPrimeScanReport:
    """Supremum of the per-direction minimal scale over a coordinate box."""

    k: int
    max_coord: int
    observed_sup: Fraction
    extremal: Direction
    matches_conjecture: bool
    cap: Fraction


def _scan_block(args: tuple[int, int, int]) -> tuple[Fraction, tuple[int, ...]]:
    first, k, max_coord = args
    best: Fraction | None = None
    best_coords: tuple[int, ...] | None = None
    cache: dict[frozenset[int], Fraction] = {}
    for rest in product(range(1, max_coord + 1), repeat=k - 1):
        coords = (first,) + rest
        if gcd(*coords) != 1:
            continue
        key = frozenset(coords)
        scale = cache.get(key)
        if scale is None:
            scale = 1 - 2 * exact_gap(SpeedSet(key)).delta
            cache[key] = scale
        if best is None or scale > best:
            best = scale
            best_coords = coords
    return best, best_coords


def kprime_scan(k: int, max_coord: int, jobs: int = 1) -> KPrimeScanReport:
    """Supremum of minimal obstruction scales over all directions with
    coordinates up to ``max_coord``.

    The observed supremum can never exceed (k-1)/k; the report states
    whether it equals the conjectured value (k-1)/(k+1), attained by the
    direction (1, 2, ..., k).  Ties break to the lexicographically smallest
    direction.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if max_coord < k:
        raise ValueError("max_coord must be at least k")
    blocks = [(first, k, max_coord) for first in range(1, max_coord + 1)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_block, blocks))
    else:
        results = [_scan_block(b) for b in blocks]
    best, best_coords = None, None
    for scale, coords in results:  # block order = lexicographic order
        if scale is None:
            continue
        if best is None or scale > best:
            best, best_coords = scale, coords
    cap = Fraction(k - 1, k)
    if best > cap:
        raise ArithmeticError(f"observed supremum {best} exceeds the cap {cap}")
    return KPrimeScanReport(
        k=k,
        max_coord=max_coord,
        observed_sup=best,
        extremal=Direction(best_coords),
        matches_conjecture=best == Fraction(k - 1, k + 1),
        cap=cap,
    )


def ray_cube_first_hit(
    direction: Sequence[float],
    alpha: float,
    horizon: float,
    tol: float = 1e-9,
) -> Optional[tuple[float, tuple[int, ...]]]:
    """Floating cell-by-cell tracer: first cube the ray enters, or None.

    Walks the unit-cell grid up to ray parameter ``horizon`` and slab-tests
    the centered alpha-cube of each visited cell.  Approximate (documented
    tolerance ``tol``); never used in certificates.  Returns (hit parameter,
    cell index tuple).
    """
    r = [float(c) for c in direction]
    if not r or any(c <= 0 for c in r):
        raise ValueError("direction components must be positive")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    k = len(r)
    cell = [0] * k
    next_cross = [1.0 / c for c in r]
    t = 0.0
    half = alpha / 2.0
    while t <= horizon:
        enter = max((cell[i] + 0.5 - half) / r[i] for i in range(k))
        exit_ = min((cell[i] + 0.5 + half) / r[i] for i in range(k))
        if enter <= exit_ + tol and enter <= horizon + tol:
            return enter, tuple(cell)
        axis = min(range(k), key=lambda i: next_cross[i])
        t = next_cross[axis]
        cell[axis] += 1
        next_cross[axis] = (cell[axis] + 1) / r[axis]
    return None

"""Finite-field certification of gap lower bounds and invisible-runner
subset extraction.

Working modulo a prime p that divides no speed, a multiplier x whose residue
set x*S avoids the band +/-{1..m} (and 0) certifies delta(S) >= (m+1)/p.  A
counting argument over the k x (p-1) residue matrix guarantees multipliers
whose column meets a small band in at most d places, which is what lets d
runners be dropped while boosting the certified gap of the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from .arith import SpeedSet, is_prime, next_prime_not_dividing
from .gap import exact_gap

__all__ = [
    "FieldWitness",
    "SubsetCertificate",
    "Conj34Witness",
    "PrimeBudgetExhausted",
    "band_avoidance_search",
    "residue_matrix_scan",
    "invisible_subset",
    "conj34_witness",
]


class PrimeBudgetExhausted(RuntimeError):
    """The subset search ran out of admissible primes below its budget.

    This signals the budget was too small for the instance, never a
    refutation: larger primes always certify eventually.
    """


@dataclass(frozen=True)
class FieldWitness:
    """Certificate (p, x, m): every residue x*s mod p avoids 0 and the band
    +/-{1..m}, hence delta over those speeds is at least (m+1)/p."""

    prime: int
    multiplier: int
    band: int
    residues: tuple[int, ...]

    @property
    def bound(self) -> Fraction:
        return Fraction(self.band + 1, self.prime)


def _require_admissible(p: int, speeds: SpeedSet) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for s in speeds:
        if s % p == 0:
            raise ValueError(f"prime {p} divides speed {s}")


def _band_residues(p: int, m: int) -> frozenset[int]:
    return frozenset(range(1, m + 1)) | frozenset(p - r for r in range(1, m + 1))


def band_avoidance_search(
    speeds: SpeedSet | Iterable[int], p: int, m: int
) -> Optional[FieldWitness]:
    """First multiplier x in 1..p-1 whose residues x*S mod p avoid the band.

    Returns None when no multiplier works for this (p, m); a returned
    witness entitles the caller to conclude delta(S) >= (m+1)/p.
    """
    sset = SpeedSet.of(speeds)
    _require_admissible(p, sset)
    if m < 0 or 2 * m >= p:
        raise ValueError(f"band radius {m} must satisfy 0 <= m < {p}/2")
    band = _band_residues(p, m)
    for x in range(1, p):
        residues = tuple(x * s % p for s in sset)
        if all(r != 0 and r not in band for r in residues):
            return FieldWitness(p, x, m, residues)
    return None


def residue_matrix_scan(
    speeds: SpeedSet | Iterable[int], p: int, band: Iterable[int], d: int
) -> Optional[int]:
    """Smallest x in 1..p-1 whose residue column meets ``band`` at most d times.

    The column for x in the k x (p-1) matrix (j * s_i mod p) is the residue
    set x*S.  Existence is guaranteed whenever |band| <= p(d+1)/(k+eps) for
    some eps > 0 with p > k/eps + 1; outside that regime None is possible.
    """
    sset = SpeedSet.of(speeds)
    _require_admissible(p, sset)
    bset = frozenset(band)
    for r in bset:
        if not isinstance(r, int) or not 1 <= r <= p - 1:
            raise ValueError(f"band residue {r!r} outside 1..{p - 1}")
    if not 0 <= d <= len(sset):
        raise ValueError(f"d must be between 0 and {len(sset)}")
    for x in range(1, p):
        hits = sum(1 for s in sset if x * s % p in bset)
        if hits <= d:
            return x
    return None


@dataclass(frozen=True)
class SubsetCertificate:
    """A kept subset of size >= k-d whose exact gap reaches (d+1)/(2k).

    ``witness`` is the field witness that produced the subset; its weaker
    bound (m+1)/p is what the prime-side argument certifies, while ``bound``
    itself is re-validated against the exact gap of the kept speeds.
    """

    original: SpeedSet
    kept: SpeedSet
    removed: tuple[int, ...]
    d: int
    bound: Fraction
    kept_delta: Fraction
    witness: FieldWitness


def invisible_subset(
    speeds: SpeedSet | Iterable[int], d: int, prime_budget: int = 100_000
) -> SubsetCertificate:
    """Drop up to d speeds so the remaining gap reaches (d+1)/(2k).

    Runs the shrinking schedule eps_n = k/2^n: for each step take the
    smallest admissible prime p > k/eps_n + 1, band radius
    m = floor(p(d+1) / (2(k+eps_n))), find a multiplier whose column has at
    most d band hits, and keep the speeds that avoided the band.  The first
    kept set whose exact gap reaches the target is returned.  Raises
    :class:`PrimeBudgetExhausted` when the next prime would exceed the
    budget.
    """
    sset = SpeedSet.of(speeds)
    k = len(sset)
    if not 0 <= d < k:
        raise ValueError(f"d must satisfy 0 <= d < {k}")
    if prime_budget < 2:
        raise PrimeBudgetExhausted(f"prime budget {prime_budget} admits no prime")
    target = Fraction(d + 1, 2 * k)
    step = 1
    while True:
        eps = Fraction(k, 2 ** step)
        # Threshold k/eps + 1 = 2^step + 1, exceeded strictly.
        p = next_prime_not_dividing(2 ** step + 2, sset)
        if p > prime_budget:
            raise PrimeBudgetExhausted(
                f"no certifying prime <= {prime_budget} for {sset} with d={d}"
            )
        # m = floor(p(d+1) / (2(k+eps))) with eps = k/2^step, in integers.
        m = (p * (d + 1) * 2 ** step) // (2 * k * (2 ** step + 1))
        assert Fraction(m + 1, p) >= Fraction(d + 1, 1) / (2 * (k + eps))
        band = _band_residues(p, m)
        x = residue_matrix_scan(sset, p, band, d)
        assert x is not None, "counting bound guarantees a multiplier here"
        kept = [s for s in sset if x * s % p not in band]
        assert len(kept) >= k - d
        kept_set = SpeedSet(kept)
        cert = exact_gap(kept_set)
        if cert.delta >= target:
            witness = FieldWitness(p, x, m, tuple(x * s % p for s in kept_set))
            removed = tuple(s for s in sset if s not in kept_set)
            return SubsetCertificate(sset, kept_set, removed, d, target, cert.delta, witness)
        step += 1


class Conj34Witness(NamedTuple):
    """Modulus, multiplier, and band radius certifying the residue form of
    the conjecture for one speed set."""

    n: int
    x: int
    m: int


def conj34_witness(speeds: SpeedSet | Iterable[int]) -> Optional[Conj34Witness]:
    """Residue witness (n, x, m) with x*S mod n avoiding +/-{0..m}.

    Takes n = s_i + s_j and x = a from the exact-gap witness pair; with
    m = ceil(n/(k+1)) - 1 the residues avoid the band exactly because
    delta(S) >= 1/(k+1).  Returns None when delta(S) < 1/(k+1), which would
    refute the conjecture.  The modulus n need not be prime; the check is
    plain modular arithmetic.
    """
    sset = SpeedSet.of(speeds)
    k = len(sset)
    if k < 2:
        raise ValueError("need at least two speeds")
    cert = exact_gap(sset)
    if cert.delta < Fraction(1, k + 1):
        return None
    i, j, a = cert.witness_pair
    n = sset[i] + sset[j]
    m = -(-n // (k + 1)) - 1
    for s in sset:
        r = a * s % n
        if r <= m or r >= n - m:
            raise ArithmeticError(
                f"residue {r} of speed {s} entered the band +/-{{0..{m}}} mod {n}"
            )
    return Conj34Witness(n, a % n, m)

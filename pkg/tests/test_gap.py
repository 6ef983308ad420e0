"""Tests for the exact gap engine and its sweeps."""

import random
from fractions import Fraction

import pytest

from lonelyrunner.arith import SpeedSet, torus_norm
from lonelyrunner.gap import (
    check_kappa_bounds,
    exact_gap,
    gap_grid_oracle,
    gap_value_at,
    lonely_time,
    separation_floor,
    verify_lrc,
)


def brute_gap(speeds) -> Fraction:
    """Independent oracle: evaluate f_S with plain Fractions at every
    candidate a/(s_i+s_j) over the full closed range 0..s_i+s_j."""
    speeds = tuple(speeds)
    best = Fraction(0)
    for i in range(len(speeds)):
        for j in range(i + 1, len(speeds)):
            den = speeds[i] + speeds[j]
            for a in range(0, den + 1):
                t = Fraction(a, den)
                value = min(torus_norm(s * t) for s in speeds)
                if value > best:
                    best = value
    return best


def breakpoint_gap(speeds) -> Fraction:
    """Airtight oracle: f_S is piecewise linear, so its maximum over [0,1]
    sits at a breakpoint -- a kink of one branch (t = m/(2s)) or a crossing
    of two branches (t = a/(s_i+s_j) or a/|s_i-s_j|).  Evaluating f at every
    such point, including the difference-form candidates the production
    enumeration never touches, gives the true supremum unconditionally."""
    speeds = tuple(speeds)
    times = {Fraction(0), Fraction(1)}
    for s in speeds:
        for m in range(2 * s + 1):
            times.add(Fraction(m, 2 * s))
    for i in range(len(speeds)):
        for j in range(i + 1, len(speeds)):
            for den in (speeds[i] + speeds[j], abs(speeds[i] - speeds[j])):
                for a in range(den + 1):
                    times.add(Fraction(a, den))
    return max(min(torus_norm(s * t) for s in speeds) for t in times)


def random_speed_set(rng, max_k=4, max_speed=20) -> SpeedSet:
    k = rng.randint(1, max_k)
    return SpeedSet(rng.sample(range(1, max_speed + 1), k))


class TestExactGap:
    @pytest.mark.parametrize(
        "speeds,delta,witness",
        [
            ((1, 2), Fraction(1, 3), Fraction(1, 3)),
            ((1, 2, 3, 4, 5), Fraction(1, 6), Fraction(1, 6)),
            ((7,), Fraction(1, 2), Fraction(1, 14)),
            ((2, 3), Fraction(2, 5), Fraction(1, 5)),
            ((1, 3), Fraction(1, 2), Fraction(1, 2)),
        ],
    )
    def test_frozen_examples(self, speeds, delta, witness):
        cert = exact_gap(speeds)
        assert cert.delta == delta
        assert cert.witness_time == witness

    def test_dirichlet_family(self):
        for n in range(1, 11):
            cert = exact_gap(range(1, n + 1))
            assert cert.delta == Fraction(1, n + 1)
            assert cert.witness_time == Fraction(1, n + 1)

    def test_matches_brute_oracle(self):
        rng = random.Random(500)
        for _ in range(150):
            s = random_speed_set(rng)
            if len(s) == 1:
                assert exact_gap(s).delta == Fraction(1, 2)
            else:
                assert exact_gap(s).delta == brute_gap(s)

    def test_matches_breakpoint_oracle(self):
        # The sum-form candidate set misses no maximum: the full breakpoint
        # enumeration (kinks and both crossing forms) agrees exactly.
        rng = random.Random(509)
        for _ in range(80):
            s = random_speed_set(rng, max_k=4, max_speed=15)
            assert exact_gap(s).delta == breakpoint_gap(s)

    def test_certificate_self_consistency(self):
        rng = random.Random(501)
        for _ in range(200):
            s = random_speed_set(rng)
            cert = exact_gap(s)
            norms = tuple(torus_norm(v * cert.witness_time) for v in s)
            assert norms == cert.per_speed_norms
            assert cert.delta == min(norms)
            assert Fraction(1, 2 * len(s)) <= cert.delta <= Fraction(1, 2)
            if cert.witness_pair is not None:
                i, j, a = cert.witness_pair
                den = s[i] + s[j]
                assert i < j and 1 <= a <= den
                assert cert.witness_time == Fraction(a, den)
            else:
                assert len(s) == 1

    def test_tie_breaks_to_smallest_time(self):
        # f_{1,2} attains 1/3 at both 1/3 and 2/3; the smaller time wins.
        assert exact_gap((1, 2)).witness_time == Fraction(1, 3)
        assert exact_gap((1, 2, 3)).witness_time == Fraction(1, 4)

    def test_scale_invariance(self):
        rng = random.Random(502)
        for _ in range(200):
            s = random_speed_set(rng, max_k=3, max_speed=12)
            c = rng.randint(1, 10)
            scaled = SpeedSet(c * v for v in s)
            assert exact_gap(scaled).delta == exact_gap(s).delta

    def test_subset_monotonicity(self):
        rng = random.Random(503)
        for _ in range(200):
            s = random_speed_set(rng, max_k=4, max_speed=15)
            sub = SpeedSet(rng.sample(s.speeds, rng.randint(1, len(s))))
            assert exact_gap(sub).delta >= exact_gap(s).delta

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            exact_gap(())

    def test_gap_value_at(self):
        assert gap_value_at((1, 2), Fraction(1, 3)) == Fraction(1, 3)
        assert gap_value_at((1, 2, 3), 0) == 0


class TestGridOracle:
    def test_examples(self):
        value = gap_grid_oracle((1, 2), 300)
        assert Fraction(1, 3) - Fraction(1, 300) <= value <= Fraction(1, 3)
        assert gap_grid_oracle((5,), 100) == Fraction(1, 2)
        value = gap_grid_oracle((2, 3), 600)
        assert Fraction(2, 5) - Fraction(1, 400) <= value <= Fraction(2, 5)

    def test_bracketing_random(self):
        rng = random.Random(504)
        for _ in range(60):
            s = random_speed_set(rng, max_k=4, max_speed=20)
            n = rng.randint(2 * s.max, 6 * s.max)
            oracle = gap_grid_oracle(s, n)
            delta = exact_gap(s).delta
            assert oracle <= delta <= oracle + Fraction(s.max, 2 * n)

    def test_rejects_low_resolution(self):
        with pytest.raises(ValueError):
            gap_grid_oracle((1, 7), 13)

    def test_default_resolution_bracket(self):
        rng = random.Random(505)
        for _ in range(40):
            s = random_speed_set(rng, max_k=4, max_speed=25)
            oracle = gap_grid_oracle(s)
            delta = exact_gap(s).delta
            width = Fraction(1, 128 * len(s))
            assert oracle <= delta <= oracle + width

    def test_bigint_fallback_matches_numpy_path(self):
        from lonelyrunner.gap import _grid_max_bigint

        rng = random.Random(508)
        for _ in range(20):
            s = random_speed_set(rng, max_k=3, max_speed=15)
            n = rng.randint(2 * s.max, 5 * s.max)
            assert gap_grid_oracle(s, n) == Fraction(_grid_max_bigint(s.speeds, n), n)


class TestLonely:
    def test_examples(self):
        r = lonely_time((0, 1, 2, 3), 0)
        assert r.loneliest_time == Fraction(1, 4)
        assert r.min_separation == Fraction(1, 4)
        assert r.lonely  # exactly 1/4 with n=4 runners
        r = lonely_time((1, 2), 0)
        assert r.loneliest_time == Fraction(1, 2)
        assert r.min_separation == Fraction(1, 2)
        r = lonely_time((1, 2, 3, 4), 0)
        assert r.loneliest_time == Fraction(1, 4)
        assert r.min_separation == Fraction(1, 4)

    def test_min_separation_recomputes(self):
        rng = random.Random(506)
        for _ in range(100):
            n = rng.randint(2, 5)
            speeds = rng.sample(range(0, 25), n)
            focus = rng.randrange(n)
            r = lonely_time(speeds, focus)
            sep = min(
                torus_norm((s - speeds[focus]) * r.loneliest_time)
                for i, s in enumerate(speeds)
                if i != focus
            )
            assert sep == r.min_separation
            assert r.min_separation >= r.separation_floor

    def test_translation_invariance(self):
        rng = random.Random(507)
        for _ in range(100):
            n = rng.randint(2, 5)
            speeds = rng.sample(range(0, 20), n)
            focus = rng.randrange(n)
            shift = rng.randint(1, 30)
            base = lonely_time(speeds, focus)
            moved = lonely_time([s + shift for s in speeds], focus)
            assert base.min_separation == moved.min_separation
            assert base.loneliest_time == moved.loneliest_time

    def test_validation(self):
        with pytest.raises(ValueError):
            lonely_time((1,), 0)
        with pytest.raises(ValueError):
            lonely_time((1, 1), 0)
        with pytest.raises(ValueError):
            lonely_time((1, 2), 5)
        with pytest.raises(ValueError):
            lonely_time((-1, 2), 0)


class TestVerifyLrc:
    def test_three_runner_sweep(self):
        report = verify_lrc(2, 50)
        assert report.holds
        assert report.counterexamples == ()
        assert (1, 2) in report.tight
        assert report.bound == Fraction(1, 3)

    def test_k1_trivial(self):
        report = verify_lrc(1, 5)
        assert report.holds
        assert report.checked == 1  # gcd filter keeps only {1}
        assert report.tight == ((1,),)

    def test_small_k3(self):
        report = verify_lrc(3, 10)
        assert report.holds
        assert (1, 2, 3) in report.tight

    def test_parallel_matches_serial(self):
        serial = verify_lrc(2, 12)
        parallel = verify_lrc(2, 12, jobs=2)
        assert serial == parallel

    def test_validation(self):
        with pytest.raises(ValueError):
            verify_lrc(0, 5)
        with pytest.raises(ValueError):
            verify_lrc(7, 10)
        with pytest.raises(ValueError):
            verify_lrc(3, 2)


class TestBounds:
    def test_kappa_examples(self):
        assert check_kappa_bounds((1, 2, 3)) == (Fraction(1, 6), Fraction(1, 4), True)
        assert check_kappa_bounds((4,)) == (Fraction(1, 2), Fraction(1, 2), True)
        assert check_kappa_bounds((3, 5)) == (Fraction(1, 4), Fraction(1, 3), True)

    def test_separation_floor_examples(self):
        assert separation_floor((0, 1, 2), 0) == Fraction(1, 4)
        assert separation_floor((0, 7), 0) == Fraction(1, 2)
        assert separation_floor((1, 2, 3, 4), 0) == Fraction(1, 6)

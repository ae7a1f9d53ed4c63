import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cf_statlab.cfe import neg_mod_inverse
from cf_statlab.ensembles import EnsembleSpec
from cf_statlab.orbit import (
    HERMITE_ALPHA1,
    OrbitSpec,
    alpha1_exact,
    alpha1_profile,
    dual_orbit_identity,
    ensemble_mass,
    excursion_fraction,
    haar_mass_oracle,
    lagrange_gauss_alpha1,
    retained_fractions,
)


def reduced_pairs(draw, max_q=10**4):
    q = draw(st.integers(min_value=2, max_value=max_q))
    p = draw(st.integers(min_value=1, max_value=q - 1))
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if q < 2:
        p, q = 1, 2
    return p, q


pairs = st.composite(reduced_pairs)


class TestSpec:
    def test_horizon_default(self):
        assert OrbitSpec(1, 7).horizon() == pytest.approx(2 * math.log(7))
        assert OrbitSpec(1, 7, T=3.5).horizon() == 3.5

    def test_validation(self):
        with pytest.raises(ValueError):
            OrbitSpec(0, 7)
        with pytest.raises(ValueError):
            OrbitSpec(7, 7)
        with pytest.raises(ValueError):
            OrbitSpec(2, 8)
        with pytest.raises(ValueError):
            OrbitSpec(1, 7, T=0.0)


class TestAlpha1:
    @given(pairs())
    @settings(max_examples=150, deadline=None)
    def test_unit_alpha_at_both_window_ends(self, pq):
        p, q = pq
        assert alpha1_exact(p, q, 0.0) == pytest.approx(1.0, abs=1e-12)
        assert alpha1_exact(p, q, 2 * math.log(q)) == pytest.approx(1.0, abs=1e-12)

    @given(pairs(), st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=300, deadline=None)
    def test_matches_lagrange_gauss(self, pq, u):
        p, q = pq
        t = u * 2 * math.log(q)
        a = alpha1_exact(p, q, t)
        b = lagrange_gauss_alpha1(p, q, t)
        assert a == pytest.approx(b, rel=1e-9)

    @given(pairs(), st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=300, deadline=None)
    def test_hermite_lower_bound(self, pq, u):
        p, q = pq
        t = u * 2 * math.log(q)
        assert alpha1_exact(p, q, t) >= HERMITE_ALPHA1 - 1e-12

    @given(
        pairs(),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_log_alpha_is_half_lipschitz(self, pq, u1, u2):
        p, q = pq
        T = 2 * math.log(q)
        t1, t2 = u1 * T, u2 * T
        a1 = math.log(alpha1_exact(p, q, t1))
        a2 = math.log(alpha1_exact(p, q, t2))
        assert abs(a1 - a2) <= 0.5 * abs(t1 - t2) + 1e-9

    @given(pairs())
    @settings(max_examples=100, deadline=None)
    def test_divergence_beyond_window(self, pq):
        # past the window the orbit climbs the cusp: alpha1 >= e^{t/2}/q
        p, q = pq
        t = 4 * math.log(q)
        assert alpha1_exact(p, q, t) >= math.exp(t / 2) / q * (1 - 1e-12)


class TestProfile:
    def test_segments_tile_window(self):
        spec = OrbitSpec(4, 7)
        prof = alpha1_profile(spec)
        assert prof.segments[0].t0 == 0.0
        assert prof.segments[-1].t1 == pytest.approx(spec.horizon())
        for s1, s2 in zip(prof.segments, prof.segments[1:]):
            assert s1.t1 == pytest.approx(s2.t0)
        assert len(prof.breakpoints) == len(prof.segments) - 1

    def test_samples_match_pointwise_alpha(self):
        spec = OrbitSpec(13, 101)
        prof = alpha1_profile(spec, n_samples=64)
        assert len(prof.samples) == 65
        for t, a in prof.samples:
            assert a == pytest.approx(alpha1_exact(13, 101, t), rel=1e-12)

    def test_profile_alpha1_lookup(self):
        spec = OrbitSpec(4, 7)
        prof = alpha1_profile(spec)
        assert prof.alpha1(0.0) == pytest.approx(1.0)
        with pytest.raises(ValueError):
            prof.alpha1(-0.1)

    @given(pairs())
    @settings(max_examples=100, deadline=None)
    def test_candidate_indices_increase(self, pq):
        # the active shortest vector only ever moves to later candidates
        p, q = pq
        prof = alpha1_profile(OrbitSpec(p, q), n_samples=16)
        idx = [s.index for s in prof.segments]
        assert idx == sorted(idx)


class TestExcursions:
    def test_below_hermite_threshold_everything_is_above(self):
        out = excursion_fraction(OrbitSpec(1, 2), M=0.5)
        assert out.fraction_above == pytest.approx(1.0)
        assert out.intervals[0][0] <= 0.0 or out.intervals[0][0] == 0.0

    def test_huge_threshold_nothing_is_above(self):
        out = excursion_fraction(OrbitSpec(4, 7), M=100.0)
        assert out.fraction_above == 0.0
        assert out.intervals == ()

    def test_validation_gap_small(self):
        out = excursion_fraction(OrbitSpec(13, 101), M=1.5, grid=1e-4)
        assert out.validation_gap < 1e-3

    @given(pairs(), st.floats(min_value=1.0, max_value=8.0))
    @settings(max_examples=100, deadline=None)
    def test_intervals_consistent(self, pq, M):
        p, q = pq
        out = excursion_fraction(OrbitSpec(p, q), M=M, validate=False)
        T = out.T
        total = 0.0
        prev_hi = -1.0
        for lo, hi in out.intervals:
            assert 0.0 <= lo < hi <= T + 1e-12
            assert lo > prev_hi  # disjoint and ordered
            prev_hi = hi
            total += hi - lo
        assert out.fraction_above == pytest.approx(total / T, abs=1e-12)
        assert 0.0 <= out.fraction_above <= 1.0

    @given(pairs(max_q=2000), st.floats(min_value=1.05, max_value=6.0))
    @settings(max_examples=60, deadline=None)
    def test_matches_dense_sampling(self, pq, M):
        p, q = pq
        out = excursion_fraction(OrbitSpec(p, q), M=M, grid=2e-4)
        assert out.validation_gap < 5e-3

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            excursion_fraction(OrbitSpec(1, 7), M=0.0)
        with pytest.raises(ValueError):
            excursion_fraction(OrbitSpec(1, 7), M=2.0, grid=-1.0)


class TestDuality:
    def test_exact_identity_single(self):
        for M in (1.5, 2.0, 5.0):
            (res,) = dual_orbit_identity(2, 7, [M])
            assert res.residual <= 2e-3
            assert res.lhs == pytest.approx(res.rhs, abs=2e-3)

    @given(pairs())
    @settings(max_examples=100, deadline=None)
    def test_residual_within_grid_tolerance(self, pq):
        p, q = pq
        for res in dual_orbit_identity(p, q, [2.0, 5.0], grid=1e-3):
            assert res.residual <= 2e-3

    def test_self_dual_when_p_squared_is_minus_one(self):
        # 2^2 = -1 mod 5: the dual orbit is the orbit itself
        assert neg_mod_inverse(2, 5) == 2
        (res,) = dual_orbit_identity(2, 5, [2.0])
        assert res.residual == 0.0


class TestMass:
    def test_frozen_all_ensemble_value(self):
        out = ensemble_mass(EnsembleSpec("all", 101), M=5.0)
        assert out.n_orbits == 100
        assert out.retained_mass == pytest.approx(0.993018443544933, abs=1e-12)

    def test_monotone_in_M(self):
        spec = EnsembleSpec("all", 101)
        masses = [ensemble_mass(spec, M).retained_mass for M in (1.5, 2.0, 5.0, 10.0)]
        assert masses == sorted(masses)

    def test_chunked_fractions_concatenate(self):
        q = 1009
        residues = list(range(1, 60))
        whole = retained_fractions(q, residues, 5.0)
        split = retained_fractions(q, residues[:17], 5.0) + retained_fractions(
            q, residues[17:], 5.0
        )
        assert whole == split

    def test_mass_between_zero_and_one(self):
        rng = random.Random(5)
        for _ in range(10):
            q = rng.randrange(10, 2000)
            spec = EnsembleSpec("all", q)
            out = ensemble_mass(spec, M=rng.uniform(1.0, 8.0))
            assert 0.0 <= out.retained_mass <= 1.0

    def test_haar_oracle_tracks_siegel(self):
        # small, fast configuration; the Siegel formula 1 - 3/(pi M^2)
        # is the target the Monte Carlo reference should approach
        got = haar_mass_oracle(5.0, n_points=60, horizon=4000.0, bits=4096, seed=9)
        assert got == pytest.approx(1 - 3 / (math.pi * 25), abs=0.02)

    def test_haar_oracle_deterministic(self):
        a = haar_mass_oracle(3.0, n_points=10, horizon=2000.0, bits=2048, seed=3)
        b = haar_mass_oracle(3.0, n_points=10, horizon=2000.0, bits=2048, seed=3)
        assert a == b

    def test_haar_oracle_rejects_short_denominators(self):
        with pytest.raises(ValueError):
            haar_mass_oracle(5.0, n_points=10, horizon=10**4, bits=64)

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cf_statlab.cfe import continuant_pair
from cf_statlab.gauss_kuzmin import (
    RationalInterval,
    cylinder_interval,
    gauss_measure,
    levy_constant,
    single_digit_density,
    target_density,
)

windows = st.lists(st.integers(min_value=1, max_value=30), min_size=1, max_size=5).map(tuple)


class TestIntervals:
    def test_basic_cylinders(self):
        assert cylinder_interval((1,)) == RationalInterval(Fraction(1, 2), Fraction(1, 1))
        assert cylinder_interval((2,)) == RationalInterval(Fraction(1, 3), Fraction(1, 2))
        # two-digit cylinder: x starting 1,2 lies between [1,2]=2/3 and [1,3]=3/4
        assert cylinder_interval((1, 2)) == RationalInterval(Fraction(2, 3), Fraction(3, 4))

    def test_interval_validation(self):
        with pytest.raises(ValueError):
            RationalInterval(Fraction(1, 2), Fraction(1, 2))
        with pytest.raises(ValueError):
            RationalInterval(Fraction(-1, 2), Fraction(1, 2))

    def test_window_validation(self):
        with pytest.raises(ValueError):
            cylinder_interval(())
        with pytest.raises(ValueError):
            cylinder_interval((1, 0))

    @given(windows)
    @settings(max_examples=300)
    def test_endpoints_are_farey_neighbors(self, w):
        iv = cylinder_interval(w)
        p, q = iv.lo.numerator, iv.lo.denominator
        p2, q2 = iv.hi.numerator, iv.hi.denominator
        assert abs(p * q2 - p2 * q) == 1

    @given(windows)
    @settings(max_examples=300)
    def test_measure_in_unit_range(self, w):
        d = target_density(w)
        assert 0 < d < 1

    def test_full_interval_measure(self):
        assert gauss_measure(RationalInterval(Fraction(0), Fraction(1))) == pytest.approx(
            1.0, abs=1e-15
        )


class TestDensities:
    def test_digit_one_closed_form(self):
        assert single_digit_density(1) == pytest.approx(2 - math.log2(3), abs=1e-15)

    @pytest.mark.parametrize("a", [1, 2, 3, 10, 1000, 10**6])
    def test_single_digit_matches_cylinder(self, a):
        assert single_digit_density(a) == pytest.approx(target_density((a,)), abs=1e-12)

    def test_single_digit_matches_cylinder_sweep(self):
        worst = max(
            abs(single_digit_density(a) - target_density((a,))) for a in range(1, 2001)
        )
        assert worst < 1e-12

    def test_normalization_partial_sums(self):
        # telescoping: sum_{a<=A} log2(1 + 1/(a(a+2))) = log2(2(A+1)/(A+2))
        for A in (10, 100, 1000):
            partial = math.fsum(single_digit_density(a) for a in range(1, A + 1))
            exact = math.log2(2 * (A + 1) / (A + 2))
            assert partial == pytest.approx(exact, abs=1e-9)
            assert partial < 1
        assert math.fsum(single_digit_density(a) for a in range(1, 100001)) > 0.99998

    @pytest.mark.parametrize("w", [(1,), (2,), (1, 2), (3, 1), (2, 2, 2)])
    def test_additivity_partial_sums(self, w):
        # children tile the parent cylinder: partial sums increase to the
        # parent density and never overshoot
        total = target_density(w)
        partial = 0.0
        prev = 0.0
        for A in (1, 10, 100, 10**4):
            partial = math.fsum(target_density(w + (a,)) for a in range(1, A + 1))
            assert prev <= partial <= total * (1 + 1e-12)
            prev = partial
        assert total - partial < 2e-4 * total

    @given(windows, st.integers(min_value=1, max_value=40))
    @settings(max_examples=100)
    def test_additivity_exact_remainder(self, w, A):
        # children a = 1..A chain away from the bumped endpoint [w'] toward
        # the value [w] itself ([w,1] = [w'] by the two-expansion law), so
        # the uncovered corner is exactly the interval between [w] and the
        # boundary [w, A+1]; everything is exact rational data
        children = math.fsum(target_density(w + (a,)) for a in range(1, A + 1))
        v_w = Fraction(*continuant_pair(w))
        v_edge = Fraction(*continuant_pair(w + (A + 1,)))
        corner = gauss_measure(RationalInterval(min(v_w, v_edge), max(v_w, v_edge)))
        assert children + corner == pytest.approx(target_density(w), abs=1e-12)

    def test_levy_constant(self):
        assert levy_constant() == pytest.approx(12 * math.log(2) / math.pi**2, abs=1e-15)
        assert levy_constant() == pytest.approx(0.8427659, abs=1e-7)

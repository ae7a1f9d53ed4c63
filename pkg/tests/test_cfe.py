import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cf_statlab.cfe import (
    INT63_MAX,
    ContinuantOverflowError,
    ReducedFraction,
    canonicalize,
    cf_len,
    continuant_pair,
    convergents,
    digits_from_str,
    digits_to_str,
    evaluate,
    expand,
    expand_pair,
    is_canonical,
    mirror,
    neg_mod_inverse,
    reduce,
)


def random_fraction(draw, max_den=10**9):
    den = draw(st.integers(min_value=2, max_value=max_den))
    num = draw(st.integers(min_value=1, max_value=den - 1))
    g = math.gcd(num, den)
    num, den = num // g, den // g
    if den == 1:
        num, den = 1, 2
    return ReducedFraction(num, den)


fractions = st.composite(random_fraction)


class TestReducedFraction:
    def test_accepts_reduced(self):
        f = ReducedFraction(4, 7)
        assert (f.num, f.den) == (4, 7)
        assert str(f) == "4/7"

    @pytest.mark.parametrize("num,den", [(4, 8), (2, 4), (10, 15)])
    def test_rejects_unreduced(self, num, den):
        with pytest.raises(ValueError, match="lowest terms"):
            ReducedFraction(num, den)

    @pytest.mark.parametrize("num,den", [(0, 5), (5, 5), (7, 5), (-1, 5)])
    def test_rejects_out_of_range(self, num, den):
        with pytest.raises(ValueError):
            ReducedFraction(num, den)

    def test_rejects_huge_denominator(self):
        with pytest.raises(ContinuantOverflowError):
            ReducedFraction(1, INT63_MAX + 2)

    def test_reduce(self):
        assert reduce(4, 8) == ReducedFraction(1, 2)
        assert reduce(21, 35) == ReducedFraction(3, 5)
        with pytest.raises(ValueError):
            reduce(3, 0)


class TestExpand:
    @pytest.mark.parametrize(
        "num,den,digits",
        [
            (3, 7, (2, 3)),
            (4, 7, (1, 1, 3)),
            (1, 2, (2,)),
            (5, 6, (1, 5)),
            (1, 1000, (1000,)),
            (2, 5, (2, 2)),
        ],
    )
    def test_examples(self, num, den, digits):
        assert expand(ReducedFraction(num, den)) == digits

    @given(fractions())
    @settings(max_examples=300)
    def test_round_trip(self, f):
        assert evaluate(expand(f)) == f

    @given(fractions())
    @settings(max_examples=300)
    def test_canonical_no_trailing_one(self, f):
        digits = expand(f)
        assert digits[-1] >= 2
        assert is_canonical(digits)

    @given(fractions())
    @settings(max_examples=300)
    def test_first_digit_vs_half(self, f):
        # a1 >= 2 exactly when f <= 1/2
        digits = expand(f)
        assert (digits[0] >= 2) == (Fraction(f.num, f.den) <= Fraction(1, 2))

    @given(fractions())
    @settings(max_examples=200)
    def test_two_expansion_law(self, f):
        digits = list(expand(f))
        alternate = digits[:-1] + [digits[-1] - 1, 1]
        if alternate[-2] == 0:  # last digit was 1; cannot happen canonically
            pytest.fail("canonical expansion ended in 1")
        assert evaluate(alternate) == f

    def test_cf_len(self):
        assert cf_len(ReducedFraction(4, 7)) == 3
        assert cf_len(ReducedFraction(1, 2)) == 1


class TestContinuants:
    def test_continuant_pair_basics(self):
        assert continuant_pair([2, 3]) == (3, 7)
        assert continuant_pair([1]) == (1, 1)
        assert continuant_pair([1, 1, 3]) == (4, 7)

    def test_continuant_rejects_bad_digits(self):
        with pytest.raises(ValueError):
            continuant_pair([])
        with pytest.raises(ValueError):
            continuant_pair([2, 0, 3])

    def test_continuant_overflow(self):
        with pytest.raises(ContinuantOverflowError):
            continuant_pair([9] * 25)

    def test_evaluate_rejects_unit(self):
        with pytest.raises(ValueError):
            evaluate([1])

    @given(fractions(max_den=10**6))
    @settings(max_examples=300)
    def test_determinant_identity(self, f):
        pairs = ((1, 0), (0, 1)) + convergents(f)
        for (p1, q1), (p2, q2) in zip(pairs, pairs[1:]):
            assert abs(p2 * q1 - p1 * q2) == 1

    @given(fractions(max_den=10**6))
    @settings(max_examples=200)
    def test_convergents_end_at_fraction(self, f):
        pairs = convergents(f)
        assert len(pairs) == cf_len(f)
        assert pairs[-1] == (f.num, f.den)
        # denominators strictly increase after the first entry
        dens = [q for _, q in pairs]
        assert all(a <= b for a, b in zip(dens, dens[1:]))


class TestMirror:
    @given(fractions(max_den=10**4))
    @settings(max_examples=300)
    def test_mirror_law(self, f):
        digits = expand(f)
        if digits == (2,):  # 1/2 is its own mirror
            assert mirror(f) == f
            return
        if digits[0] == 1:
            expected = (digits[1] + 1,) + digits[2:]
        else:
            expected = (1, digits[0] - 1) + digits[1:]
        assert expand(mirror(f)) == canonicalize(expected)

    def test_mirror_exhaustive_small(self):
        for den in range(2, 300):
            for num in range(1, den):
                if math.gcd(num, den) != 1:
                    continue
                f = ReducedFraction(num, den)
                m = mirror(f)
                assert m.num == den - num
                assert mirror(m) == f


class TestReversal:
    def test_reversal_sign_exhaustive(self):
        # reversed digits give p*/q with p * p* = (-1)^(n+1) mod q,
        # n the canonical length; verified for every q <= 100
        for den in range(3, 101):
            for num in range(1, den):
                if math.gcd(num, den) != 1:
                    continue
                digits = expand_pair(num, den)
                rev = tuple(reversed(digits))
                if rev[-1] == 1:
                    rev = canonicalize(rev)
                g = evaluate(rev)
                assert g.den == den
                sign = 1 if (len(digits) + 1) % 2 == 0 else -1
                assert (num * g.num - sign) % den == 0

    @given(fractions(max_den=10**6))
    @settings(max_examples=200)
    def test_reversal_law_random(self, f):
        digits = expand(f)
        rev = tuple(reversed(digits))
        if rev[-1] == 1:
            rev = canonicalize(rev)
        g = evaluate(rev)
        assert g.den == f.den
        assert (f.num * g.num) % f.den in (1 % f.den, f.den - 1)

    def test_neg_mod_inverse(self):
        assert (3 * neg_mod_inverse(3, 7) + 1) % 7 == 0
        assert neg_mod_inverse(1, 2) == 1
        with pytest.raises(ValueError):
            neg_mod_inverse(2, 4)


class TestCanonicalize:
    def test_merges_trailing_one(self):
        assert canonicalize([1, 1, 2, 1]) == (1, 1, 3)
        assert canonicalize([2, 3]) == (2, 3)
        assert canonicalize([1, 1]) == (2,)

    def test_rejects_unit_string(self):
        with pytest.raises(ValueError):
            canonicalize([1])
        with pytest.raises(ValueError):
            canonicalize([])

    @given(fractions(max_den=10**6))
    @settings(max_examples=200)
    def test_canonicalize_preserves_value(self, f):
        digits = list(expand(f))
        alternate = digits[:-1] + [digits[-1] - 1, 1]
        assert canonicalize(alternate) == tuple(digits)


class TestDigitStrings:
    @given(st.lists(st.integers(min_value=1, max_value=10**6), min_size=1, max_size=20))
    def test_round_trip(self, digits):
        assert digits_from_str(digits_to_str(digits)) == tuple(digits)

    @pytest.mark.parametrize("text", ["", "1,,2", "a,b", "1,0,2", "-3", "1.5"])
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            digits_from_str(text)

import math

import pytest
from hypothesis import given, strategies as st

from fracdecomp.special import (
    GammaPoleError,
    gamma,
    gamma_ratio_sequence,
    reciprocal_gamma_product,
)

from conftest import GAMMA_NEG_HALF, SQRT_PI


class TestGamma:
    def test_integer_factorials(self):
        assert gamma(4.0) == pytest.approx(6.0, rel=1e-12)
        assert gamma(1.0) == pytest.approx(1.0, rel=1e-12)
        assert gamma(10.0) == pytest.approx(math.factorial(9), rel=1e-12)

    def test_half(self):
        assert gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-13)

    def test_negative_half_via_reflection(self):
        assert gamma(-0.5) == pytest.approx(GAMMA_NEG_HALF, rel=1e-12)
        assert gamma(-0.5) == pytest.approx(-2.0 * SQRT_PI, rel=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -17.0])
    def test_poles_raise(self, x):
        with pytest.raises(GammaPoleError):
            gamma(x)

    def test_twelve_digits_against_stdlib(self):
        # math.gamma is the independent reference implementation
        x = -29.9871
        while x <= 30.0:
            if not (x <= 0 and abs(x - round(x)) < 1e-3):
                assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-12), x
            x += 0.0913

    @given(st.floats(min_value=0.5001, max_value=29.0))
    def test_recurrence(self, x):
        assert abs(gamma(x + 1.0) - x * gamma(x)) / gamma(x + 1.0) < 1e-12

    @given(st.floats(min_value=-10.0, max_value=10.0))
    def test_reflection_identity(self, x):
        if abs(x - round(x)) < 1e-3:
            return  # too close to a pole for the identity to be well-scaled
        assert gamma(x) * gamma(1.0 - x) * math.sin(math.pi * x) / math.pi == \
            pytest.approx(1.0, rel=1e-10)


class TestReciprocalGammaProduct:
    def test_half(self):
        assert reciprocal_gamma_product(0.5) == pytest.approx(1.0 / math.pi, rel=1e-13)

    @pytest.mark.parametrize("alpha", [1.0, 2.0, 3.0, 7.0])
    def test_integer_orders_give_exact_zero(self, alpha):
        assert reciprocal_gamma_product(alpha) == 0.0

    def test_quarter(self):
        assert reciprocal_gamma_product(0.25) == \
            pytest.approx(math.sin(math.pi / 4.0) / math.pi, rel=1e-13)
        assert reciprocal_gamma_product(0.25) == pytest.approx(0.2250790790, abs=1e-10)

    @given(st.floats(min_value=0.05, max_value=8.0))
    def test_inverse_of_gamma_pair(self, alpha):
        if abs(alpha - round(alpha)) < 1e-3:
            return
        assert reciprocal_gamma_product(alpha) * gamma(alpha) * gamma(1.0 - alpha) == \
            pytest.approx(1.0, rel=1e-10)


class TestGammaRatioSequence:
    def test_from_half(self):
        seq = gamma_ratio_sequence(0.5, 3)
        assert seq == pytest.approx([SQRT_PI, 0.5 * SQRT_PI, 0.75 * SQRT_PI], rel=1e-13)

    def test_factorials(self):
        assert gamma_ratio_sequence(1.0, 4) == pytest.approx([1.0, 1.0, 2.0, 6.0],
                                                             rel=1e-12)

    def test_negative_start(self):
        seq = gamma_ratio_sequence(-0.5, 2)
        assert seq == pytest.approx([-2.0 * SQRT_PI, SQRT_PI], rel=1e-12)

    def test_pole_raises(self):
        with pytest.raises(GammaPoleError):
            gamma_ratio_sequence(-2.0, 1)
        with pytest.raises(GammaPoleError):
            gamma_ratio_sequence(-5.0, 3)

    def test_non_integer_start_never_crosses_a_pole(self):
        seq = gamma_ratio_sequence(-2.5, 4)  # -2.5, -1.5, -0.5, 0.5
        assert len(seq) == 4
        assert seq[-1] == pytest.approx(SQRT_PI, rel=1e-12)

    @pytest.mark.parametrize("start,count", [(0.3, 12), (-3.7, 9), (1.5, 20)])
    def test_agrees_with_direct_calls(self, start, count):
        seq = gamma_ratio_sequence(start, count)
        for k, v in enumerate(seq):
            assert v == pytest.approx(gamma(start + k), rel=1e-10)


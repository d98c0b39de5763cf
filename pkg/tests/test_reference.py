import math

import numpy as np
import pytest

from fracdecomp.quadrature import composite_simpson, integrate_adaptive
from fracdecomp.reference import (
    FunctionSpec,
    Interval,
    exact_exp_integral,
    exact_fractional_integral,
    exact_power_integral,
    exact_sin_integral,
    rl_integral_oracle,
    rl_right_integral_oracle,
)
from conftest import (
    EXP_HALF_AT_1,
    POWER3_HALF_AT_1,
    POWER10_HALF_AT_1,
    RIGHT_T3_HALF,
    SIN_HALF_AT_1,
)


class TestQuadrature:
    def test_simpson_exact_for_cubics(self):
        val = composite_simpson(lambda x: x**3 - 2 * x, 0.0, 2.0, 16)
        assert val == pytest.approx(4.0 - 4.0, abs=1e-14)

    def test_adaptive_smooth(self):
        val = integrate_adaptive(np.exp, 0.0, 1.0)
        assert val == pytest.approx(math.e - 1.0, rel=1e-11)

    def test_empty_range(self):
        assert integrate_adaptive(np.exp, 1.0, 1.0) == 0.0


class TestInterval:
    def test_validation(self):
        with pytest.raises(ValueError):
            Interval(1.0, 1.0)
        assert Interval(0.0, 2.0).length == 2.0


class TestFunctionSpec:
    def test_power_derivatives(self):
        x = FunctionSpec.power(3.0)
        assert float(x(2.0)) == 8.0
        assert float(x.derivative(1)(2.0)) == 12.0
        assert float(x.derivative(2)(2.0)) == 12.0
        assert float(x.derivative(3)(2.0)) == 6.0
        assert float(x.derivative(4)(2.0)) == 0.0

    def test_sin_derivatives(self):
        x = FunctionSpec.sin()
        assert float(x.derivative(1)(0.3)) == pytest.approx(math.cos(0.3), rel=1e-14)
        assert float(x.derivative(4)(0.3)) == pytest.approx(math.sin(0.3), rel=1e-14)

    def test_custom_finite_differences(self):
        dom = Interval(0.0, 1.0)
        x = FunctionSpec.custom(lambda t: np.exp(2.0 * t), dom, max_order=2)
        assert float(x.derivative(1)(0.5)) == pytest.approx(2.0 * math.e, rel=1e-7)
        assert float(x.derivative(2)(0.5)) == pytest.approx(4.0 * math.e, rel=1e-4)
        with pytest.raises(ValueError):
            x.derivative(3)

    def test_derivative_max_closed_forms(self):
        assert FunctionSpec.power(3.0).derivative_max(3, 0.0, 1.0) == 6.0
        assert FunctionSpec.exp().derivative_max(5, 0.0, 1.0) == pytest.approx(math.e)
        # |cos| on [0, 1] has no interior peak; max at t = 0
        assert FunctionSpec.sin().derivative_max(1, 0.0, 1.0) == pytest.approx(1.0)
        # |sin| on [0, pi] peaks at pi/2
        assert FunctionSpec.sin().derivative_max(0, 0.0, math.pi) == pytest.approx(1.0)
        assert FunctionSpec.constant(5.0).derivative_max(1, 0.0, 1.0) == 0.0


class TestClosedForms:
    def test_power_rule_values(self):
        assert exact_power_integral(3.0, 0.5, 1.0) == \
            pytest.approx(POWER3_HALF_AT_1, rel=1e-13)
        assert exact_power_integral(0.0, 1.0, 1.0) == pytest.approx(1.0, rel=1e-13)
        assert exact_power_integral(10.0, 0.5, 1.0) == \
            pytest.approx(POWER10_HALF_AT_1, rel=1e-13)

    def test_exp_series(self):
        assert exact_exp_integral(0.5, 0.0) == 0.0
        assert exact_exp_integral(1.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-12)
        assert exact_exp_integral(0.5, 1.0) == pytest.approx(EXP_HALF_AT_1, rel=1e-12)

    def test_sin_series(self):
        assert exact_sin_integral(0.5, 0.0) == 0.0
        assert exact_sin_integral(1.0, math.pi) == pytest.approx(2.0, rel=1e-12)
        assert exact_sin_integral(0.5, 1.0) == pytest.approx(SIN_HALF_AT_1, rel=1e-12)


class TestLeftOracle:
    def test_power_cross_check(self):
        x = FunctionSpec.power(3.0)
        assert rl_integral_oracle(x, 0.5, 0.0, 1.0) == \
            pytest.approx(POWER3_HALF_AT_1, abs=1e-8)

    def test_zero_function(self):
        z = FunctionSpec.constant(0.0)
        assert rl_integral_oracle(z, 0.7, 0.0, 1.0) == 0.0

    def test_exp_cross_check(self):
        assert rl_integral_oracle(FunctionSpec.exp(), 0.5, 0.0, 1.0) == \
            pytest.approx(EXP_HALF_AT_1, abs=1e-8)

    def test_at_left_endpoint(self):
        assert rl_integral_oracle(FunctionSpec.exp(), 0.5, 0.0, 0.0) == 0.0

    @pytest.mark.parametrize("gamma_exp", [1.0, 2.0, 3.0, 10.0])
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    @pytest.mark.parametrize("t", [0.25, 0.5, 1.0])
    def test_power_rule_sweep(self, gamma_exp, alpha, t):
        closed = exact_power_integral(gamma_exp, alpha, t)
        oracle = rl_integral_oracle(FunctionSpec.power(gamma_exp), alpha, 0.0, t)
        assert abs(oracle - closed) / closed < 1e-7

    def test_linearity(self):
        f = FunctionSpec.power(2.0)
        g = FunctionSpec.sin()
        combined = lambda t: 2.0 * f(t) + 3.0 * g(t)  # noqa: E731
        lhs = rl_integral_oracle(combined, 0.7, 0.0, 1.0)
        rhs = (2.0 * rl_integral_oracle(f, 0.7, 0.0, 1.0)
               + 3.0 * rl_integral_oracle(g, 0.7, 0.0, 1.0))
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_semigroup(self):
        # I^0.5 I^0.5 x = I^1 x for x = t^3: outer integral on a grid of
        # inner-oracle values, compared with the ordinary integral t^4/4
        grid = np.linspace(0.0, 1.0, 513)
        inner = np.array([
            rl_integral_oracle(FunctionSpec.power(3.0), 0.5, 0.0, float(t),
                               rel_tol=1e-9) if t > 0 else 0.0
            for t in grid
        ])
        nested = rl_integral_oracle(lambda tau: np.interp(tau, grid, inner),
                                    0.5, 0.0, 1.0, rel_tol=1e-9)
        assert nested == pytest.approx(0.25, abs=1e-4)

    def test_cauchy_two_fold(self):
        # alpha = 2 equals twice-iterated integration; iterate trapezoids
        grid = np.linspace(0.0, 1.0, 4097)
        once = np.concatenate([
            [0.0], np.cumsum((np.sin(grid[1:]) + np.sin(grid[:-1])) / 2.0
                             * np.diff(grid))
        ])
        twice = np.concatenate([
            [0.0], np.cumsum((once[1:] + once[:-1]) / 2.0 * np.diff(grid))
        ])
        oracle = rl_integral_oracle(FunctionSpec.sin(), 2.0, 0.0, 1.0, rel_tol=1e-8)
        assert oracle == pytest.approx(twice[-1], abs=1e-6)
        assert oracle == pytest.approx(1.0 - math.sin(1.0), abs=1e-6)


class TestRightOracle:
    def test_constant_order_one(self):
        one = FunctionSpec.constant(1.0)
        assert rl_right_integral_oracle(one, 1.0, 0.0, 1.0) == \
            pytest.approx(1.0, rel=1e-10)

    def test_zero(self):
        z = FunctionSpec.constant(0.0)
        assert rl_right_integral_oracle(z, 0.5, 0.0, 1.0) == 0.0

    def test_power_value(self):
        # int_0^1 tau^(-0.5) tau^3 dtau / Gamma(0.5) = 1/(3.5 sqrt(pi))
        x = FunctionSpec.power(3.0)
        assert rl_right_integral_oracle(x, 0.5, 0.0, 1.0) == \
            pytest.approx(RIGHT_T3_HALF, abs=1e-9)

    def test_at_right_endpoint(self):
        assert rl_right_integral_oracle(FunctionSpec.exp(), 0.5, 1.0, 1.0) == 0.0


class TestExactDispatch:
    def test_builtins_match_oracle(self):
        for x in (FunctionSpec.power(3.0), FunctionSpec.exp(), FunctionSpec.sin()):
            exact = exact_fractional_integral(x, 0.5, 0.0, 0.8)
            oracle = rl_integral_oracle(x, 0.5, 0.0, 0.8)
            assert exact == pytest.approx(oracle, abs=1e-8)

    def test_custom_goes_through_oracle(self):
        dom = Interval(0.0, 1.0)
        x = FunctionSpec.custom(lambda t: np.exp(t), dom)
        assert exact_fractional_integral(x, 0.5, 0.0, 1.0) == \
            pytest.approx(EXP_HALF_AT_1, abs=1e-8)

    def test_nonzero_left_endpoint_uses_oracle(self):
        x = FunctionSpec.power(1.0)
        # I^1 of t from 1: int_1^t tau dtau = (t^2 - 1)/2
        assert exact_fractional_integral(x, 1.0, 1.0, 2.0) == \
            pytest.approx(1.5, rel=1e-9)

    def test_scaled_gamma_argument(self):
        # scale factors flow through the closed forms
        x = FunctionSpec.power(3.0, scale=2.0)
        assert exact_fractional_integral(x, 0.5, 0.0, 1.0) == \
            pytest.approx(2.0 * POWER3_HALF_AT_1, rel=1e-12)

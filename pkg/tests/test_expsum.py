"""Exponential-sum/residue identity: classics, oracle agreement, branches."""

import math

import pytest

from su2dh.expsum import (
    GammaRangeError,
    RationalPoleFunction,
    exp_sum_extrapolated,
    exp_sum_partial,
    exp_sum_residue,
)
from su2dh.series import add, bose_kernel, exp_linear, monomial, mul, reciprocal, scale

TWO_PI = 2.0 * math.pi


class TestPoleFunction:
    def test_evaluation(self):
        f = RationalPoleFunction({1: 2.0, 3: -1.0j})
        assert f(2.0) == pytest.approx(1.0 - 0.125j)
        assert f(-2.0) == pytest.approx(-1.0 + 0.125j)

    def test_order_floor(self):
        with pytest.raises(ValueError):
            RationalPoleFunction({0: 1.0})
        with pytest.raises(ValueError):
            RationalPoleFunction({})


class TestResidueSide:
    def test_alternating_inverse_squares(self):
        # sum over m != 0 of (-1)^m / m^2 = -pi^2/6
        value = exp_sum_residue(RationalPoleFunction({2: 1.0}), math.pi)
        assert value.real == pytest.approx(-math.pi**2 / 6.0, abs=1e-12)
        assert abs(value.imag) <= 1e-12
        assert value.real == pytest.approx(-1.6449341, abs=5e-8)

    def test_sawtooth(self):
        f = RationalPoleFunction({1: 1.0})
        for gamma in (0.3, math.pi / 2, math.pi, 2.0, 5.9):
            value = exp_sum_residue(f, gamma)
            assert value == pytest.approx(1j * (math.pi - gamma), abs=1e-12)

    def test_sawtooth_negative_range(self):
        f = RationalPoleFunction({1: 1.0})
        for gamma in (-0.3, -math.pi / 2, -3.5, -5.9):
            value = exp_sum_residue(f, gamma)
            assert value == pytest.approx(-1j * (math.pi + gamma), abs=1e-12)

    def test_real_even_data_gives_real_output(self):
        f = RationalPoleFunction({2: 0.7, 4: -0.2})
        value = exp_sum_residue(f, math.pi)
        assert abs(value.imag) <= 1e-13

    def test_gamma_range_rejected(self):
        f = RationalPoleFunction({1: 1.0})
        for gamma in (0.0, TWO_PI, -TWO_PI, 7.0, -7.0):
            with pytest.raises(GammaRangeError, match="gamma outside lemma range"):
                exp_sum_residue(f, gamma)

    def test_reflection_conjugates_real_data(self, rng):
        # for real coefficients, m <-> -m gives value(-gamma) = conj(value(gamma))
        for _ in range(20):
            ks = rng.sample([1, 2, 3, 4, 5], k=rng.randint(1, 3))
            f = RationalPoleFunction({k: rng.uniform(-1, 1) for k in ks})
            gamma = rng.uniform(0.1, TWO_PI - 0.1)
            forward = exp_sum_residue(f, gamma)
            backward = exp_sum_residue(f, -gamma)
            assert backward == pytest.approx(forward.conjugate(), abs=1e-12)

    def test_linearity_in_f(self, rng):
        for _ in range(10):
            gamma = rng.uniform(0.2, TWO_PI - 0.2)
            a6 = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            base = RationalPoleFunction({2: 0.3, 3: -0.4j})
            extended = RationalPoleFunction({2: 0.3, 3: -0.4j, 6: a6})
            only_tail = RationalPoleFunction({6: a6})
            lhs = exp_sum_residue(extended, gamma)
            rhs = exp_sum_residue(base, gamma) + exp_sum_residue(only_tail, gamma)
            assert lhs == pytest.approx(rhs, abs=1e-13)

    def test_negative_branch_kernel_equivalence(self):
        # 1/(1 - e^{-2 pi i z}) equals e^{2 pi i z}/(e^{2 pi i z} - 1)
        high = 9
        direct = reciprocal(
            add(monomial(1.0, 0), scale(-1.0, exp_linear(-2j * math.pi, high + 2)))
        )
        via_bose = mul(exp_linear(2j * math.pi, high + 1), bose_kernel(high + 1))
        for e in range(-1, min(direct.high_exp, via_bose.high_exp) + 1):
            assert abs(direct.coefficient(e) - via_bose.coefficient(e)) <= 1e-13


class TestPartialSums:
    def test_two_term_cancellation(self):
        # M = 1, f = 1/z, gamma = pi: e^{i pi} - e^{-i pi} = 0
        value = exp_sum_partial(RationalPoleFunction({1: 1.0}), math.pi, 1)
        assert abs(value) <= 1e-15

    def test_alternating_inverse_squares_undamped(self):
        value = exp_sum_partial(RationalPoleFunction({2: 1.0}), math.pi, 100_000)
        assert value.real == pytest.approx(-math.pi**2 / 6.0, abs=1e-5)

    def test_damped_sawtooth(self):
        value = exp_sum_partial(
            RationalPoleFunction({1: 1.0}), math.pi / 2, 100_000, damping_r=0.9999
        )
        assert value == pytest.approx(1j * math.pi / 2, abs=1e-3)

    def test_validation(self):
        f = RationalPoleFunction({1: 1.0})
        with pytest.raises(ValueError):
            exp_sum_partial(f, 1.0, 0)
        with pytest.raises(ValueError):
            exp_sum_partial(f, 1.0, 10, damping_r=1.5)


class TestOracleAgreement:
    def test_extrapolated_oracle_matches_residue(self, rng):
        worst = 0.0
        for _ in range(60):
            ks = rng.sample([1, 2, 3, 4, 5], k=rng.randint(1, 3))
            coeffs = {k: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for k in ks}
            f = RationalPoleFunction(coeffs)
            sign = rng.choice([1.0, -1.0])
            gamma = sign * rng.uniform(0.1, TWO_PI - 0.1)
            residue_value = exp_sum_residue(f, gamma)
            oracle_value = exp_sum_extrapolated(f, gamma, M=100_000, damping_r=0.9999)
            rel = abs(residue_value - oracle_value) / (1.0 + abs(residue_value))
            worst = max(worst, rel)
        assert worst <= 1e-6

"""Series engine: constructors, ring laws, reciprocal, residue extraction."""

import math
import random

import pytest

from su2dh.series import (
    SeriesError,
    TruncSeries,
    add,
    bose_kernel,
    exp_linear,
    from_coefficients,
    monomial,
    mul,
    one,
    reciprocal,
    residue,
    scale,
    shift,
    sin_linear,
)

TWO_PI_I = 2j * math.pi


def random_series(rng: random.Random, low: int, high: int, unit_leading: bool = False):
    coeffs = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(high - low + 1)]
    if unit_leading:
        while abs(coeffs[0]) < 0.1:
            coeffs[0] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return TruncSeries(low, tuple(coeffs))


def max_coeff_diff(s1: TruncSeries, s2: TruncSeries, low: int, high: int) -> float:
    return max(abs(s1.coefficient(e) - s2.coefficient(e)) for e in range(low, high + 1))


class TestConstructors:
    def test_exp_of_zero_is_one(self):
        s = exp_linear(0.0, 6)
        assert s == one()

    def test_exp_coefficients(self):
        a = 1j * math.pi
        s = exp_linear(a, 8)
        assert s.coefficient(0) == 1.0
        assert s.coefficient(1) == a
        for k in range(8 + 1):
            expected = a**k / math.factorial(k)
            assert abs(s.coefficient(k) - expected) < 1e-15 * abs(expected) + 1e-300

    def test_exp_times_exp_inverse_is_one(self):
        a = 0.7 + 1.3j
        product = mul(exp_linear(a, 10), exp_linear(-a, 10))
        for e in range(0, 11):
            target = 1.0 if e == 0 else 0.0
            assert abs(product.coefficient(e) - target) <= 1e-14

    def test_sin_of_zero_is_zero(self):
        assert sin_linear(0.0, 5).is_zero

    def test_sin_coefficients(self):
        s = sin_linear(math.pi, 7)
        assert abs(s.coefficient(1) - math.pi) < 1e-15
        assert abs(s.coefficient(3) + math.pi**3 / 6) < 1e-14
        assert abs(s.coefficient(5) - math.pi**5 / 120) < 1e-13

    def test_sin_is_odd(self):
        s = sin_linear(2.2 - 0.4j, 9)
        for e in range(0, 10, 2):
            assert s.coefficient(e) == 0

    def test_window_preconditions(self):
        with pytest.raises(SeriesError):
            exp_linear(1.0, -1)
        with pytest.raises(SeriesError):
            sin_linear(1.0, 0)
        with pytest.raises(SeriesError):
            bose_kernel(-2)


class TestBoseKernel:
    def test_pole_coefficient(self):
        # reciprocal of the leading coefficient 2*pi*i, i.e. B_0 = 1
        s = bose_kernel(6)
        expected = 1.0 / TWO_PI_I
        assert abs(s.coefficient(-1) - expected) < 1e-15
        assert abs(s.coefficient(-1) - complex(0.0, -0.15915494309189535)) < 1e-12

    def test_constant_coefficient(self):
        # B_1 = -1/2
        assert abs(bose_kernel(6).coefficient(0) - (-0.5)) < 1e-14

    def test_defining_identity(self):
        high = 10
        em1 = add(exp_linear(TWO_PI_I, high + 2), monomial(-1.0, 0))
        product = mul(em1, bose_kernel(high))
        for e in range(product.low_exp, product.high_exp + 1):
            target = 1.0 if e == 0 else 0.0
            assert abs(product.coefficient(e) - target) <= 1e-13

    def test_matches_bernoulli_recurrence(self):
        # independent oracle: B_0..B_9 from sum_{j<=m} C(m+1, j) B_j = 0
        bernoulli = [1.0]
        for m in range(1, 10):
            acc = sum(math.comb(m + 1, j) * bernoulli[j] for j in range(m))
            bernoulli.append(-acc / (m + 1))
        kernel = bose_kernel(8)
        for n in range(0, 10):
            expected = bernoulli[n] * TWO_PI_I ** (n - 1) / math.factorial(n)
            assert abs(kernel.coefficient(n - 1) - expected) <= 1e-12 * (1 + abs(expected))


class TestArithmetic:
    def test_one_is_multiplicative_identity(self, rng):
        s = random_series(rng, -3, 5)
        assert mul(one(), s) == s
        assert mul(s, one()) == s

    def test_monomial_product(self):
        product = mul(monomial(1.0, -2), monomial(1.0, 3))
        assert product.low_exp == 1 and product.high_exp == 1
        assert product.coefficient(1) == 1.0

    def test_commutativity(self, rng):
        for _ in range(20):
            s1 = random_series(rng, -2, 6)
            s2 = random_series(rng, -1, 5)
            p1, p2 = mul(s1, s2), mul(s2, s1)
            assert p1.low_exp == p2.low_exp and p1.high_exp == p2.high_exp
            assert max_coeff_diff(p1, p2, p1.low_exp, p1.high_exp) <= 1e-15

    def test_ring_laws(self, rng):
        low, high = -2, 8
        for _ in range(20):
            s1 = random_series(rng, low, high)
            s2 = random_series(rng, low, high)
            s3 = random_series(rng, low, high)
            a1 = add(add(s1, s2), s3)
            a2 = add(s1, add(s2, s3))
            assert max_coeff_diff(a1, a2, low, high) <= 1e-13
            m1 = mul(mul(s1, s2), s3)
            m2 = mul(s1, mul(s2, s3))
            assert max_coeff_diff(m1, m2, m1.low_exp, m1.high_exp) <= 1e-13
            d1 = mul(s1, add(s2, s3))
            d2 = add(mul(s1, s2), mul(s1, s3))
            assert max_coeff_diff(d1, d2, d1.low_exp, d1.high_exp) <= 1e-13

    def test_zero_is_absorbing(self, rng):
        s = random_series(rng, -4, 4)
        assert mul(TruncSeries.zero(), s).is_zero
        assert mul(s, TruncSeries.zero()).is_zero
        assert add(TruncSeries.zero(), s) == s

    def test_scale_and_shift(self, rng):
        s = random_series(rng, -1, 4)
        doubled = scale(2.0, s)
        assert max_coeff_diff(doubled, add(s, s), -1, 4) <= 1e-15
        moved = shift(s, 3)
        assert moved.low_exp == 2 and moved.coefficient(2) == s.coefficient(-1)

    def test_truncation_is_tracked_not_wrapped(self):
        # the unknown tail of a truncated factor must lower the product window
        s1 = TruncSeries(0, (1.0, 1.0))  # 1 + z + O(z^2)
        s2 = TruncSeries(0, (1.0, 1.0, 1.0, 1.0))  # 1 + .. + O(z^4)
        product = mul(s1, s2)
        assert product.high_exp == 1
        with pytest.raises(SeriesError):
            product.coefficient(2)


class TestReciprocal:
    def test_constant(self):
        r = reciprocal(monomial(2.0, 0))
        assert r.coefficient(0) == 0.5

    def test_geometric_series(self):
        r = reciprocal(from_coefficients({0: 1.0, 1: 1.0}), high=6)
        for e in range(0, 7):
            assert abs(r.coefficient(e) - (-1.0) ** e) <= 1e-14

    def test_monomial_inverse_is_exact(self):
        r = reciprocal(monomial(4.0, -3))
        assert r.exact and r.coefficient(3) == 0.25

    def test_product_with_reciprocal_is_one(self, rng):
        # unit-disc coefficients with |leading| >= 0.1: the roundoff in the
        # recurrence scales with the size of the reciprocal's coefficients,
        # so the bound is the backward-stable one
        for _ in range(100):
            s = random_series(rng, 0, rng.randint(3, 8), unit_leading=True)
            r = reciprocal(s)
            product = mul(s, r)
            tolerance = 1e-13 * max(1.0, max(abs(c) for c in r.coeffs))
            for e in range(product.low_exp, product.high_exp + 1):
                target = 1.0 if e == 0 else 0.0
                assert abs(product.coefficient(e) - target) <= tolerance

    def test_product_with_reciprocal_is_one_conditioned(self, rng):
        # away from ill-conditioned inputs the identity holds to 1e-13 flat
        for _ in range(100):
            high = rng.randint(3, 8)
            lead = complex(rng.uniform(0.5, 1.0) * rng.choice([-1, 1]), rng.uniform(-0.5, 0.5))
            tail = [complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)) for _ in range(high)]
            s = TruncSeries(0, tuple([lead] + tail))
            product = mul(s, reciprocal(s))
            for e in range(product.low_exp, product.high_exp + 1):
                target = 1.0 if e == 0 else 0.0
                assert abs(product.coefficient(e) - target) <= 1e-13

    def test_valuation_shift(self, rng):
        s = shift(random_series(rng, 0, 5, unit_leading=True), 2)
        r = reciprocal(s)
        assert r.low_exp == -2

    def test_zero_rejected(self):
        with pytest.raises(SeriesError, match="non-invertible"):
            reciprocal(TruncSeries.zero())
        with pytest.raises(SeriesError, match="non-invertible"):
            reciprocal(TruncSeries(0, (0.0, 0.0)))


class TestResidue:
    def test_simple_pole(self):
        assert residue(monomial(1.0, -1)) == 1.0

    def test_kernel_example(self):
        # z e^{i pi z} sin(pi t z) / ((e^{2 pi i z} - 1) z^2)  at t = 1/2
        # equals sin(pi t z)/(2 i z sin(pi z)), residue t/(2i) = -i t/2
        t = 0.5
        high = 8
        product = shift(
            mul(
                mul(exp_linear(1j * math.pi, high), sin_linear(math.pi * t, high)),
                bose_kernel(high),
            ),
            -1,
        )
        assert abs(residue(product) - (-0.25j)) <= 1e-13
        # same kernel against a z^{-2} pole of weight 1/pi^2 gives -i/(4 pi^2)
        weighted = shift(
            mul(
                mul(exp_linear(1j * math.pi, high), sin_linear(math.pi * t, high)),
                mul(bose_kernel(high), monomial(1.0 / math.pi**2, -2)),
            ),
            1,
        )
        expected = -0.25j / math.pi**2
        assert abs(residue(weighted) - expected) <= 1e-13
        assert abs(expected - complex(0.0, -0.025330295910584444)) < 1e-12

    def test_no_pole_means_zero(self):
        s = TruncSeries(-1, (0.0, 1.0, 2.0))
        assert residue(s) == 0.0
        assert residue(TruncSeries.zero()) == 0.0
        assert residue(monomial(5.0, 3)) == 0.0  # exact, known zero at -1

    def test_window_must_reach_the_pole(self):
        truncated_above = mul(TruncSeries(-4, (1.0, 1.0)), TruncSeries(0, (1.0,)))
        assert truncated_above.high_exp < -1
        with pytest.raises(SeriesError, match="window excludes residue exponent"):
            residue(truncated_above)

    def test_linearity(self, rng):
        for _ in range(20):
            s1 = random_series(rng, -3, 4)
            s2 = random_series(rng, -3, 4)
            a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            b = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            combined = residue(add(scale(a, s1), scale(b, s2)))
            assert abs(combined - (a * residue(s1) + b * residue(s2))) <= 1e-15


class TestParity:
    def test_half_phase_bose_product_is_even(self):
        # e^{pi i z} * z/(e^{2 pi i z} - 1) = z/(2 i sin(pi z)), an even function
        high = 12
        product = mul(exp_linear(1j * math.pi, high), shift(bose_kernel(high), 1))
        for e in range(1, product.high_exp + 1, 2):
            assert abs(product.coefficient(e)) <= 1e-13

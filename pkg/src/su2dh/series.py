"""Truncated Laurent series arithmetic over complex coefficients.

Every number this package produces is ultimately a coefficient of z^{-1} in
a short Laurent expansion around z = 0, so the substrate is a small, eager,
exactly-windowed series type rather than anything lazy or symbolic.

A :class:`TruncSeries` stores coefficients for the exponent range
``low_exp .. high_exp``.  A series is either *exact* (it is precisely the
stored Laurent polynomial, zero outside the window) or *truncated*
(coefficients above ``high_exp`` are unknown, i.e. there is an implicit
O(z^{high_exp + 1}) tail).  Window bookkeeping in the arithmetic is
conservative: an operation only reports coefficients it can prove correct,
so truncation is always explicit and never wraps around silently.

Coefficients are complex doubles.  Windows in this problem class stay below
~40 terms, where double precision keeps 12+ significant digits through the
products that occur here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping


class SeriesError(ValueError):
    """Raised for invalid series operations (bad windows, non-invertible input)."""


@dataclass(frozen=True)
class TruncSeries:
    """Laurent series tracked on the exponent window ``low_exp .. high_exp``.

    ``coeffs[i]`` is the coefficient of ``z**(low_exp + i)``.  The canonical
    zero series has an empty coefficient tuple and is exact.
    """

    low_exp: int
    coeffs: tuple[complex, ...]
    exact: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def high_exp(self) -> int:
        return self.low_exp + len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        """True for the canonical zero series (empty window)."""
        return not self.coeffs

    def coefficient(self, exponent: int) -> complex:
        """Coefficient of ``z**exponent``.

        Exponents below the window are known to be zero.  Exponents above it
        are zero for an exact series and an error for a truncated one.
        """
        if self.is_zero or exponent < self.low_exp:
            return 0j
        if exponent > self.high_exp:
            if self.exact:
                return 0j
            raise SeriesError(
                f"coefficient of z^{exponent} lies beyond the truncation window "
                f"(high_exp = {self.high_exp})"
            )
        return self.coeffs[exponent - self.low_exp]

    @staticmethod
    def zero() -> "TruncSeries":
        return TruncSeries(0, (), exact=True)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.is_zero:
            return "TruncSeries(0)"
        kind = "exact" if self.exact else "trunc"
        return f"TruncSeries(z^{self.low_exp}..z^{self.high_exp}, {kind})"


def from_coefficients(coeffs: Mapping[int, complex], exact: bool = True) -> TruncSeries:
    """Series from a sparse ``{exponent: coefficient}`` map (a Laurent polynomial)."""
    if not coeffs:
        return TruncSeries.zero()
    low = min(coeffs)
    high = max(coeffs)
    values = [complex(coeffs.get(e, 0.0)) for e in range(low, high + 1)]
    return TruncSeries(low, tuple(values), exact=exact)


def monomial(coefficient: complex, exponent: int) -> TruncSeries:
    if coefficient == 0:
        return TruncSeries.zero()
    return TruncSeries(exponent, (complex(coefficient),), exact=True)


def one() -> TruncSeries:
    return monomial(1.0, 0)


def exp_linear(a: complex, high: int) -> TruncSeries:
    """Series of ``exp(a*z)`` truncated at ``z**high``.

    The window must include exponent 0.  For ``a == 0`` the result is the
    exact constant series 1.
    """
    if high < 0:
        raise SeriesError("exp_linear window must include exponent 0")
    if a == 0:
        return one()
    coeffs = [1.0 + 0j]
    for k in range(1, high + 1):
        coeffs.append(coeffs[-1] * a / k)
    return TruncSeries(0, tuple(coeffs), exact=False)


def sin_linear(b: complex, high: int) -> TruncSeries:
    """Series of ``sin(b*z)`` truncated at ``z**high`` (odd exponents only).

    The window must include exponent 1.  For ``b == 0`` the result is the
    canonical zero series.
    """
    if high < 1:
        raise SeriesError("sin_linear window must include exponent 1")
    if b == 0:
        return TruncSeries.zero()
    coeffs = [0j] * high  # exponents 1 .. high
    term = complex(b)
    k = 0
    while 2 * k + 1 <= high:
        coeffs[2 * k] = term
        term *= -b * b / ((2 * k + 2) * (2 * k + 3))
        k += 1
    return TruncSeries(1, tuple(coeffs), exact=False)


def bose_kernel(high: int) -> TruncSeries:
    """Series of ``1/(exp(2*pi*i*z) - 1)`` truncated at ``z**high``.

    Computed as the series reciprocal of ``exp(2*pi*i*z) - 1`` (valuation 1),
    so the coefficients are the Bernoulli-number expansion
    ``sum_n B_n (2*pi*i)^{n-1} z^{n-1} / n!`` without any hardcoded table.
    The window must include the simple pole exponent -1.
    """
    if high < -1:
        raise SeriesError("bose_kernel window must include exponent -1")
    em1 = add(exp_linear(2j * math.pi, high + 2), monomial(-1.0, 0))
    return reciprocal(em1)


def add(s1: TruncSeries, s2: TruncSeries) -> TruncSeries:
    """Sum, tracked on the window where both operands are known."""
    if s1.is_zero:
        return s2
    if s2.is_zero:
        return s1
    low = min(s1.low_exp, s2.low_exp)
    if s1.exact and s2.exact:
        high = max(s1.high_exp, s2.high_exp)
        exact = True
    elif s1.exact:
        high = s2.high_exp
        exact = False
    elif s2.exact:
        high = s1.high_exp
        exact = False
    else:
        high = min(s1.high_exp, s2.high_exp)
        exact = False
    values = [s1.coefficient(e) + s2.coefficient(e) for e in range(low, high + 1)]
    return TruncSeries(low, tuple(values), exact=exact)


def scale(c: complex, s: TruncSeries) -> TruncSeries:
    if s.is_zero or c == 0:
        return TruncSeries.zero()
    return TruncSeries(s.low_exp, tuple(c * v for v in s.coeffs), exact=s.exact)


def shift(s: TruncSeries, exponent: int) -> TruncSeries:
    """Multiply by the exact monomial ``z**exponent`` (window moves rigidly)."""
    if s.is_zero:
        return s
    return TruncSeries(s.low_exp + exponent, s.coeffs, exact=s.exact)


def mul(s1: TruncSeries, s2: TruncSeries) -> TruncSeries:
    """Product, tracked on the largest window provably free of truncation error.

    The unknown tail of a truncated factor starts at ``high_exp + 1``; paired
    with the lowest tracked exponent of the other factor it first pollutes the
    exponent ``high_exp + 1 + other.low_exp``, so everything below that is
    exact convolution.
    """
    if s1.is_zero or s2.is_zero:
        return TruncSeries.zero()
    low = s1.low_exp + s2.low_exp
    if s1.exact and s2.exact:
        high = s1.high_exp + s2.high_exp
        exact = True
    elif s1.exact:
        high = s2.high_exp + s1.low_exp
        exact = False
    elif s2.exact:
        high = s1.high_exp + s2.low_exp
        exact = False
    else:
        high = min(s1.high_exp + s2.low_exp, s2.high_exp + s1.low_exp)
        exact = False
    values = [0j] * (high - low + 1)
    for i, a in enumerate(s1.coeffs):
        if a == 0:
            continue
        base = s1.low_exp + i + s2.low_exp
        for j, b in enumerate(s2.coeffs):
            e = base + j
            if low <= e <= high:
                values[e - low] += a * b
    return TruncSeries(low, tuple(values), exact=exact)


def reciprocal(s: TruncSeries, high: int | None = None) -> TruncSeries:
    """Multiplicative inverse by the standard coefficient recurrence.

    For a series with valuation ``v`` (lowest nonzero exponent) the result
    starts at ``-v``.  For truncated input the result window is the largest
    one the recurrence supports, ``high_exp - 2*v``; ``high`` may not be
    supplied.  For exact input the recurrence can run to any order, so
    ``high`` selects the truncation (defaulting to the same formula), except
    that the reciprocal of a monomial is again exact.
    """
    if s.is_zero:
        raise SeriesError("non-invertible series")
    v_index = next((i for i, c in enumerate(s.coeffs) if c != 0), None)
    if v_index is None:
        raise SeriesError("non-invertible series")
    v = s.low_exp + v_index
    lead = s.coeffs[v_index]
    nonzero = sum(1 for c in s.coeffs if c != 0)
    if s.exact and nonzero == 1:
        return monomial(1.0 / lead, -v)
    if not s.exact and high is not None:
        raise SeriesError("explicit reciprocal order is only meaningful for exact input")
    if high is None:
        high = s.high_exp - 2 * v
    n_terms = high + v + 1
    if n_terms < 1:
        raise SeriesError("requested reciprocal window is empty")
    inv_lead = 1.0 / lead
    out = [0j] * n_terms
    out[0] = inv_lead
    for m in range(1, n_terms):
        acc = 0j
        for j in range(1, m + 1):
            sj = s.coefficient(v + j)
            if sj != 0:
                acc += sj * out[m - j]
        out[m] = -inv_lead * acc
    return TruncSeries(-v, tuple(out), exact=False)


def residue(s: TruncSeries) -> complex:
    """Coefficient of ``z**-1``.

    For an exact series this is always determined (possibly zero).  For a
    truncated series the tracked window must contain the exponent -1.
    """
    if s.is_zero:
        return 0j
    if s.exact:
        return s.coefficient(-1)
    if not (s.low_exp <= -1 <= s.high_exp):
        raise SeriesError("window excludes residue exponent")
    return s.coeffs[-1 - s.low_exp]

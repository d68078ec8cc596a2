"""Exponential sums over nonzero integers evaluated as residues.

For a rational function f with its only pole at zero, f(z) = sum_k a_k z^{-k}
with k >= 1 (so f -> 0 at infinity), the classical identity converts the
Abel-summed two-sided series into a single residue at the origin:

    0 < gamma < 2*pi:
        sum_{m != 0} e^{i*m*gamma} f(m)
            = -2*pi*i * Res_0[ f(z) e^{i*gamma*z} / (e^{2*pi*i*z} - 1) ]

    -2*pi < gamma < 0:
        sum_{m != 0} e^{i*m*gamma} f(m)
            = -2*pi*i * Res_0[ f(z) e^{i*gamma*z} / (1 - e^{-2*pi*i*z}) ]

The intervals are strictly open: at gamma in {-2*pi, 0, 2*pi} the series
changes regime (for k = 1 it diverges), so no analytic continuation across
the endpoints is attempted.

This module is both a standalone utility and the backbone consistency check
for the density evaluator: the density formulas are exactly two instances of
this identity with gamma = pi*(t + mu) and gamma = pi*(mu - t).

A direct summation oracle is included.  For k = 1 the series is only
conditionally convergent, so the oracle supports Abel damping r^{|m|}, and
`exp_sum_extrapolated` removes the damping bias by Richardson extrapolation
in 1 - r.  The extrapolation ladder increases the damping (r moving away
from 1) so that the truncation error at M terms stays negligible for every
node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .extrapolation import extrapolate_to_zero
from .series import (
    add,
    bose_kernel,
    exp_linear,
    from_coefficients,
    monomial,
    mul,
    reciprocal,
    residue,
    scale,
)

_TWO_PI = 2.0 * math.pi
_GUARD_TERMS = 4


class GammaRangeError(ValueError):
    """Raised for gamma outside the open intervals (-2*pi, 0) and (0, 2*pi)."""


@dataclass(frozen=True)
class RationalPoleFunction:
    """f(z) = sum_k a_k z^{-k} with every k >= 1; the input class of the identity."""

    coeffs: Mapping[int, complex]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("pole coefficients must be nonempty")
        cleaned: dict[int, complex] = {}
        for k, a in self.coeffs.items():
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                raise ValueError(f"pole order must be an integer >= 1, got {k!r}")
            cleaned[k] = complex(a)
        object.__setattr__(self, "coeffs", dict(sorted(cleaned.items())))

    @property
    def max_order(self) -> int:
        return max(self.coeffs)

    def __call__(self, m):
        """Evaluate at a scalar or numpy array of nonzero reals."""
        m = np.asarray(m, dtype=float)
        out = np.zeros(m.shape, dtype=complex)
        inv = 1.0 / m
        power = np.ones_like(m)
        for k in range(1, self.max_order + 1):
            power = power * inv
            a = self.coeffs.get(k)
            if a is not None:
                out = out + a * power
        if out.shape == ():
            return complex(out)
        return out


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not (-_TWO_PI < gamma < _TWO_PI) or gamma == 0.0 or math.isnan(gamma):
        raise GammaRangeError(
            f"gamma outside lemma range: {gamma!r} is not in (-2*pi, 0) or (0, 2*pi)"
        )
    return gamma


def exp_sum_residue(f: RationalPoleFunction, gamma: float) -> complex:
    """Value of sum_{m != 0} e^{i*m*gamma} f(m) via a single residue at 0."""
    gamma = _check_gamma(gamma)
    high = f.max_order + _GUARD_TERMS
    pole_part = from_coefficients({-k: a for k, a in f.coeffs.items()})
    phase = exp_linear(1j * gamma, high)
    if gamma > 0:
        kernel = bose_kernel(high)
    else:
        # 1/(1 - e^{-2*pi*i*z}), the kernel for the reflected range
        denom = add(monomial(1.0, 0), scale(-1.0, exp_linear(-2j * math.pi, high + 2)))
        kernel = reciprocal(denom)
    product = mul(mul(phase, kernel), pole_part)
    return -2j * math.pi * residue(product)


def exp_sum_partial(
    f: RationalPoleFunction, gamma: float, M: int, damping_r: float = 1.0
) -> complex:
    """Damped partial sum  sum_{0 < |m| <= M} e^{i*m*gamma} f(m) r^{|m|}."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if not (0.0 < damping_r <= 1.0):
        raise ValueError("damping_r must lie in (0, 1]")
    m = np.arange(1, M + 1, dtype=float)
    inv = 1.0 / m
    f_pos = np.zeros(M, dtype=complex)
    f_neg = np.zeros(M, dtype=complex)
    power = np.ones(M)
    for k in range(1, f.max_order + 1):
        power = power * inv
        a = f.coeffs.get(k)
        if a is not None:
            f_pos += a * power
            f_neg += a * ((-1.0) ** k) * power
    phase = np.exp(1j * gamma * m)
    terms = phase * f_pos + np.conj(phase) * f_neg
    if damping_r != 1.0:
        terms = terms * np.exp(m * math.log(damping_r))
    return complex(np.sum(terms))


def exp_sum_extrapolated(
    f: RationalPoleFunction,
    gamma: float,
    M: int = 100_000,
    damping_r: float = 0.9999,
    levels: int = 2,
) -> complex:
    """Abel value of the sum: damped partial sums extrapolated to r -> 1.

    Nodes are r_j with 1 - r_j = (1 - damping_r) * 2**j for j = 0..levels, so
    the least-damped node is the given ``damping_r`` and the truncation error
    of every node is controlled by it.
    """
    if levels < 0:
        raise ValueError("levels must be >= 0")
    if not (0.0 < damping_r < 1.0):
        raise ValueError("damping_r must lie in (0, 1) for extrapolation")
    samples = []
    for j in range(levels + 1):
        h = (1.0 - damping_r) * 2.0**j
        if h >= 1.0:
            raise ValueError("extrapolation ladder leaves (0, 1); decrease levels")
        samples.append((h, exp_sum_partial(f, gamma, M, 1.0 - h)))
    value, _ = extrapolate_to_zero(samples)
    return value

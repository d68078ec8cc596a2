"""Independent density evaluation through Fourier localization.

The Fourier coefficient of the density against the irreducible character
chi_n (highest weight n*rho, dim V_n = n + 1) localizes on the fixed-point
components:

    <density, chi_n> = (n+1) * sum_F [ sum_k c_k (n+1)^{-k} ] * e^{pi*i*(n+1)*mu_F}

where the sum runs over the *full* fixed-point family: each stored
non-central component together with its Weyl-reflected partner, central
components once.  The density is then reconstructed as the character series

    density(exp(t*rho)) = (2*pi/sqrt(2)) * sum_n <density, chi_n> * chi_n(exp(t*rho)),

with chi_n(exp(t*rho)) = sin(pi*(n+1)*t)/sin(pi*t) from the Weyl character
formula (characters are real, so no conjugation is needed).  Both dim V_n and
chi_n are computed from these formulas, never tabulated.

For minimal-codimension data (coefficients starting at z^{-2}) the series is
only conditionally convergent, so summation methods are provided: plain
partial sums, Abel damping r^n with Richardson extrapolation in 1 - r
(the default; Abel summation recovers the pointwise value at smooth points),
and Cesaro (C,1) means.

`coefficient_quadrature` closes the loop in the other direction: it recovers
the coefficient of a given density function by Weyl integration over the
alcove,

    <density, chi_n> = Vol G * integral_0^1 density(t) * chi_n(t) * 2*sin^2(pi*t) dt,

with the character and weight folded together analytically as
2*sin(pi*(n+1)*t)*sin(pi*t), which cancels the only endpoint singularities
occurring in this problem class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .extrapolation import extrapolate_to_zero
from .model import QHSpace, VOL_G, expand_components, require_interior_alcove

_SQRT2 = math.sqrt(2.0)
_RECONSTRUCTION_FACTOR = 2.0 * math.pi / _SQRT2

_KINDS = ("partial", "abel", "cesaro")


class SummationError(ArithmeticError):
    """Raised when a summation configuration fails its convergence check."""


class QuadratureError(ArithmeticError):
    """Raised when adaptive quadrature refinements fail to settle."""


@dataclass(frozen=True)
class SummationMethod:
    """How to sum the character series.

    ``abel_r`` is either a single damping radius (the extrapolation ladder is
    then 1 - r, 2(1 - r), ... with ``richardson_levels`` doublings) or an
    explicit sequence of radii used directly as extrapolation nodes.
    """

    kind: str = "abel"
    terms: int = 10_000
    abel_r: float | tuple[float, ...] = 0.999
    richardson_levels: int = 2

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"summation kind must be one of {_KINDS}, got {self.kind!r}")
        if not isinstance(self.terms, int) or isinstance(self.terms, bool) or self.terms < 1:
            raise ValueError("terms must be an integer >= 1")
        if self.richardson_levels < 0:
            raise ValueError("richardson_levels must be >= 0")
        radii = self.abel_r if isinstance(self.abel_r, (tuple, list)) else (self.abel_r,)
        object.__setattr__(
            self,
            "abel_r",
            self.abel_r if isinstance(self.abel_r, float) else tuple(float(r) for r in radii),
        )
        for r in radii:
            if not (0.0 < float(r) < 1.0):
                raise ValueError(f"abel_r values must lie in (0, 1), got {r!r}")

    def abel_nodes(self) -> list[float]:
        if isinstance(self.abel_r, tuple):
            return list(self.abel_r)
        nodes = []
        for j in range(self.richardson_levels + 1):
            h = (1.0 - self.abel_r) * 2.0**j
            if h >= 1.0:
                raise ValueError("extrapolation ladder leaves (0, 1); decrease levels")
            nodes.append(1.0 - h)
        return nodes


def _localization_terms(space: QHSpace, weights: np.ndarray) -> np.ndarray:
    """Coefficients <density, chi_n> for n + 1 = weights (a float array)."""
    total = np.zeros(weights.shape, dtype=complex)
    for comp in expand_components(space):
        inv = 1.0 / weights
        power = np.ones_like(weights)
        poly = np.zeros(weights.shape, dtype=complex)
        max_k = max(comp.euler_integral)
        for k in range(1, max_k + 1):
            power = power * inv
            a = comp.euler_integral.get(k)
            if a is not None:
                poly = poly + a * power
        total += weights * poly * np.exp(1j * math.pi * float(comp.mu) * weights)
    return total


def fourier_coefficient(space: QHSpace, n: int) -> complex:
    """Localization value of <density, chi_n> for one n >= 0."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError("n must be an integer >= 0")
    value = _localization_terms(space, np.array([float(n + 1)]))
    return complex(value[0])


def reconstruct_density(
    space: QHSpace,
    t: float,
    method: SummationMethod = SummationMethod(),
    convergence_tol: float | None = None,
) -> float:
    """Sum the character series for the density at exp(t*rho), 0 < t < 1.

    With ``convergence_tol`` set, Abel extrapolation raises
    :class:`SummationError` when the last two Richardson levels disagree by
    more than ten times the target tolerance.
    """
    t = require_interior_alcove(t)
    n_terms = method.terms
    weights = np.arange(1, n_terms + 1, dtype=float)  # n + 1
    coefficients = _localization_terms(space, weights)
    characters = np.sin(math.pi * t * weights) / math.sin(math.pi * t)
    base_terms = coefficients * characters

    if method.kind == "partial":
        value = _RECONSTRUCTION_FACTOR * complex(np.sum(base_terms))
    elif method.kind == "cesaro":
        damping = 1.0 - np.arange(n_terms, dtype=float) / n_terms
        value = _RECONSTRUCTION_FACTOR * complex(np.sum(base_terms * damping))
    else:
        samples = []
        n_index = np.arange(n_terms, dtype=float)
        for r in method.abel_nodes():
            damping = np.exp(n_index * math.log(r))
            partial = _RECONSTRUCTION_FACTOR * complex(np.sum(base_terms * damping))
            samples.append((1.0 - r, partial))
        if len(samples) == 1:
            value = samples[0][1]
        else:
            value, last_change = extrapolate_to_zero(samples)
            if convergence_tol is not None and last_change > 10.0 * convergence_tol:
                raise SummationError(
                    f"Abel/Richardson levels disagree by {last_change:.3e}, "
                    f"more than 10x the target tolerance {convergence_tol:.3e}"
                )
    return value.real


@dataclass(frozen=True)
class QuadratureRule:
    """Adaptive composite Gauss-Legendre configuration."""

    points: int = 64
    rule: str = "gauss-legendre"
    rel_tol: float = 1e-11
    abs_tol: float = 1e-12
    max_refinements: int = 12
    endpoint_clip: float = 1e-9

    def __post_init__(self) -> None:
        if self.rule != "gauss-legendre":
            raise ValueError(f"unsupported quadrature rule {self.rule!r}")
        if self.points < 2:
            raise ValueError("quadrature needs at least 2 points per panel")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    panels: int


@lru_cache(maxsize=8)
def _gauss_nodes(points: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(points)
    return nodes, weights


def _composite_gauss(
    integrand: Callable[[float], float], a: float, b: float, panels: int, points: int
) -> float:
    nodes, weights = _gauss_nodes(points)
    width = (b - a) / panels
    total = 0.0
    for p in range(panels):
        left = a + p * width
        mid = left + 0.5 * width
        half = 0.5 * width
        total += half * math.fsum(
            w * integrand(mid + half * x) for x, w in zip(nodes, weights)
        )
    return total


def coefficient_quadrature(
    density_values: Callable[[float], float],
    n: int,
    quad: QuadratureRule = QuadratureRule(),
) -> QuadratureResult:
    """Coefficient <density, chi_n> of a density function by Weyl integration.

    The density callable only needs to be finite on the open alcove; the
    integration interval is clipped to [clip, 1 - clip] and the character
    weight 2*sin(pi*(n+1)*t)*sin(pi*t) suppresses the endpoints, so densities
    blowing up like 1/sin(pi*t) integrate cleanly.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError("n must be an integer >= 0")

    weight = math.pi * (n + 1)

    def integrand(t: float) -> float:
        return VOL_G * density_values(t) * 2.0 * math.sin(weight * t) * math.sin(math.pi * t)

    a = quad.endpoint_clip
    b = 1.0 - quad.endpoint_clip
    previous: float | None = None
    panels = 1
    for _ in range(quad.max_refinements + 1):
        current = _composite_gauss(integrand, a, b, panels, quad.points)
        if previous is not None:
            disagreement = abs(current - previous)
            if disagreement <= max(quad.abs_tol, quad.rel_tol * abs(current)):
                return QuadratureResult(
                    value=current, error_estimate=disagreement, panels=panels
                )
        previous = current
        panels *= 2
    raise QuadratureError(
        f"quadrature did not converge after {quad.max_refinements} refinements; "
        f"last refinement changed the value by {abs(current - previous):.3e}"
    )

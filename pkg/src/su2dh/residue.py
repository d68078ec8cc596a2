"""Density and reduced-space volumes by residue evaluation.

For a fixed-point component F with alcove value mu and Euler-integral
coefficients c_k, the contribution to the density of the pushforward of the
Liouville measure, evaluated at exp(t*rho) with t in the open alcove, is

    t < mu:  -(4*pi^2*i/sqrt(2)) * (1/sin(pi*t)) *
             Res_0[ z * e^{pi*i*z*mu} * sin(pi*t*z) / (e^{2*pi*i*z} - 1)
                    * sum_k c_k z^{-k} ]

    t > mu:  +(4*pi^2*i/sqrt(2)) * (1/sin(pi*t)) *
             Res_0[ z * e^{pi*i*z*(mu+1)} * sin(pi*(1-t)*z) / (e^{2*pi*i*z} - 1)
                    * sum_k c_k z^{-k} ]

with an extra factor 1/2 for central components (mu exactly 0 or 1).  The
derivation from the localization Fourier series, including why the
1/sin(pi*t) prefactor is forced by the closed-form checks, is written out in
docs/derivation.md.

At the central elements the t -> 0+ and t -> 1- limits of the two branches
give, per component,

    at +e:  -(4*pi^2*i/sqrt(2)) * Res_0[ z^2 e^{pi*i*z*mu} / (e^{2*pi*i*z}-1)
                                          * sum_k c_k z^{-k} ]
    at -e:  +(4*pi^2*i/sqrt(2)) * Res_0[ z^2 e^{pi*i*z*(mu+1)} / (e^{2*pi*i*z}-1)
                                          * sum_k c_k z^{-k} ]

again halved for central components.  These are meaningful only when the
central element is a regular value of the moment map, which the caller must
assert; the code cannot verify it.

Volumes of reduced spaces follow from the density and the generic stabilizer
order k:

    Vol = k * (2*sin(pi*t)/sqrt(2)) * density       for interior t,
    Vol = k * (2*pi/sqrt(2))        * density       at the central elements.

All formulas are evaluated in complex arithmetic; the i-factors cancel only
after residue extraction, so results are checked to be real (within a
relative tolerance) and the imaginary residual is reported as a diagnostic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import (
    AlcoveRangeError,
    DensityResult,
    FixedComponent,
    QHSpace,
    require_interior_alcove,
)
from .series import bose_kernel, exp_linear, from_coefficients, mul, residue, shift, sin_linear

_SQRT2 = math.sqrt(2.0)
_PREFACTOR = 4.0 * math.pi**2 * 1j / _SQRT2
_GUARD_TERMS = 4  # window headroom above the deepest pole


class WallError(ArithmeticError):
    """Raised when evaluating exactly on a wall t = mu with policy 'error'."""


class NonRealDensityError(ArithmeticError):
    """Raised when the computed density has an imaginary residual above tolerance."""


class WallPolicy(enum.Enum):
    ERROR = "error"
    LEFT_LIMIT = "left_limit"
    RIGHT_LIMIT = "right_limit"


class CentralElement(enum.Enum):
    IDENTITY = "e"
    MINUS_IDENTITY = "-e"


@dataclass(frozen=True)
class EvalOptions:
    imag_tolerance: float = 1e-9
    wall_policy: WallPolicy = WallPolicy.ERROR

    def __post_init__(self) -> None:
        if not self.imag_tolerance > 0:
            raise ValueError("imag_tolerance must be positive")


DEFAULT_OPTIONS = EvalOptions()


def _coefficient_series(component: FixedComponent):
    return from_coefficients({-k: c for k, c in component.euler_integral.items()})


def _branch_value(component: FixedComponent, t: float, branch: str) -> complex:
    """One branch of the residue formula, regardless of where t sits.

    ``branch`` is 'below' for the t < mu expression and 'above' for t > mu.
    Exposing the branch explicitly lets wall policies and limit tests pick a
    side; `component_density` selects it from the sign of t - mu.
    """
    mu = float(component.mu)
    high = component.max_power + _GUARD_TERMS
    if branch == "below":
        phase = exp_linear(1j * math.pi * mu, high)
        oscillation = sin_linear(math.pi * t, high)
        sign = -1.0
    elif branch == "above":
        phase = exp_linear(1j * math.pi * (mu + 1.0), high)
        oscillation = sin_linear(math.pi * (1.0 - t), high)
        sign = 1.0
    else:  # pragma: no cover - internal misuse
        raise ValueError(f"unknown branch {branch!r}")
    kernel = mul(bose_kernel(high), _coefficient_series(component))
    product = shift(mul(mul(phase, oscillation), kernel), 1)
    half = 0.5 if component.central else 1.0
    return sign * _PREFACTOR * half * residue(product) / math.sin(math.pi * t)


def _central_value(component: FixedComponent, which: CentralElement) -> complex:
    mu = float(component.mu)
    high = component.max_power + _GUARD_TERMS
    if which is CentralElement.IDENTITY:
        phase = exp_linear(1j * math.pi * mu, high)
        sign = -1.0
    else:
        phase = exp_linear(1j * math.pi * (mu + 1.0), high)
        sign = 1.0
    kernel = mul(bose_kernel(high), _coefficient_series(component))
    product = shift(mul(phase, kernel), 2)
    half = 0.5 if component.central else 1.0
    return sign * _PREFACTOR * half * residue(product)


def _take_real(value: complex, options: EvalOptions, context: str) -> tuple[float, float]:
    residual = abs(value.imag)
    if residual > options.imag_tolerance * (1.0 + abs(value.real)):
        raise NonRealDensityError(
            f"non-real density (check input data): {context} produced imaginary "
            f"residual {residual:.3e}"
        )
    return value.real, residual


def _select_branch(component: FixedComponent, t: float, options: EvalOptions) -> str:
    mu = float(component.mu)
    if 0.0 < mu < 1.0 and t == mu:
        if options.wall_policy is WallPolicy.ERROR:
            raise WallError(
                f"evaluation on a wall: t = mu = {t} for component "
                f"{component.label!r} (set a one-sided wall policy to take a limit)"
            )
        return "below" if options.wall_policy is WallPolicy.LEFT_LIMIT else "above"
    return "below" if t < mu else "above"


def component_density(
    component: FixedComponent, t: float, options: EvalOptions = DEFAULT_OPTIONS
) -> float:
    """Contribution of one component to the density at exp(t*rho), 0 < t < 1."""
    t = require_interior_alcove(t)
    branch = _select_branch(component, t, options)
    value = _branch_value(component, t, branch)
    real, _ = _take_real(value, options, f"component {component.label!r} at t={t}")
    return real


def density(space: QHSpace, t: float, options: EvalOptions = DEFAULT_OPTIONS) -> DensityResult:
    """Density at exp(t*rho): sum of the per-component contributions."""
    t = require_interior_alcove(t)
    per_component: dict[str, float] = {}
    max_residual = 0.0
    for comp in space.components:
        branch = _select_branch(comp, t, options)
        value = _branch_value(comp, t, branch)
        real, residual = _take_real(value, options, f"component {comp.label!r} at t={t}")
        per_component[comp.label] = real
        max_residual = max(max_residual, residual)
    return DensityResult(
        t=t,
        total=math.fsum(per_component.values()),
        per_component=per_component,
        max_imag_residual=max_residual,
    )


def component_central_density(
    component: FixedComponent,
    which: CentralElement,
    options: EvalOptions = DEFAULT_OPTIONS,
) -> float:
    """One component's contribution to the density at a central element.

    Valid only when the central element is a regular value of the moment
    map; this hypothesis cannot be checked from localization data.
    """
    value = _central_value(component, which)
    real, _ = _take_real(
        value, options, f"component {component.label!r} at {which.value}"
    )
    return real


def central_density(
    space: QHSpace, which: CentralElement, options: EvalOptions = DEFAULT_OPTIONS
) -> float:
    """Density at the central element +e or -e (caller asserts regularity)."""
    return math.fsum(
        component_central_density(comp, which, options) for comp in space.components
    )


def reduced_volume(
    space: QHSpace,
    at: float | CentralElement,
    options: EvalOptions = DEFAULT_OPTIONS,
) -> float:
    """Symplectic volume of the reduced space at exp(t*rho) or at +-e."""
    k = space.stabilizer_order
    if isinstance(at, CentralElement):
        return k * (2.0 * math.pi / _SQRT2) * central_density(space, at, options)
    t = require_interior_alcove(at)
    return k * (2.0 * math.sin(math.pi * t) / _SQRT2) * density(space, t, options).total


@dataclass(frozen=True)
class ScanPoint:
    """One grid point of a density scan; exactly one of result/error is set."""

    t: float
    result: DensityResult | None
    volume: float | None
    error: str | None = None


def scan(
    space: QHSpace,
    t_grid: Iterable[float] | Sequence[float],
    options: EvalOptions = DEFAULT_OPTIONS,
    fail_fast: bool = False,
) -> list[ScanPoint]:
    """Evaluate density and volume over a grid, collecting per-point errors.

    With ``fail_fast`` false (the default) wall hits and numeric failures are
    recorded in the returned rows instead of aborting the scan; grid order is
    preserved.
    """
    points: list[ScanPoint] = []
    for t in t_grid:
        try:
            result = density(space, t, options)
            volume = (
                space.stabilizer_order
                * (2.0 * math.sin(math.pi * result.t) / _SQRT2)
                * result.total
            )
            points.append(ScanPoint(t=result.t, result=result, volume=volume))
        except (WallError, NonRealDensityError, AlcoveRangeError) as exc:
            if fail_fast:
                raise
            points.append(ScanPoint(t=float(t), result=None, volume=None, error=str(exc)))
    return points

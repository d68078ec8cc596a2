"""Domain model for quasi-Hamiltonian SU(2) fixed-point data.

Conventions are pinned by the inner product with (alpha, alpha) = 2 for the
positive root alpha = 2*rho, which fixes Vol T = sqrt(2),
Vol G = sqrt(2)/(2*pi), (rho, rho) = 1/2, and identifies the alcove of
conjugacy classes with t in [0, 1] via t <-> exp(t*rho).  These constants are
part of the contract and are not configurable.

A space is described entirely by localization data: for each connected
component F of the fixed-point set of the Cartan circle that maps into the
alcove, the value mu_F with moment-map image exp(mu_F * rho), and the Laurent
coefficients c_k of the integral over F of exp(omega_F) divided by the
equivariant Euler class of its normal bundle evaluated at 2*pi*i*z*rho:

    integral_F exp(omega_F) / Eul(nu_F, 2*pi*i*z*rho) = sum_k c_k z^{-k}.

Regularity of the moment map forces the normal bundle to have rank >= 4, so
every power satisfies k >= 2; the model enforces the exponent condition but
cannot verify the underlying geometric assumption.

mu_F is held as an exact rational.  Whether a component is *central*
(mu in {0, 1}, i.e. the moment map sends it to +-identity) decides a discrete
factor 1/2 in every downstream formula, so it must never depend on a floating
tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Union


class SpaceFormatError(ValueError):
    """Raised when a space document violates the schema."""


class AlcoveRangeError(ValueError):
    """Raised when an evaluation point leaves the open alcove (0, 1)."""


@dataclass(frozen=True)
class Normalization:
    """Normalization constants induced by (alpha, alpha) = 2.  Fixed."""

    vol_t: float = math.sqrt(2.0)
    vol_g: float = math.sqrt(2.0) / (2.0 * math.pi)
    rho_norm_sq: float = 0.5


NORMALIZATION = Normalization()

VOL_T = NORMALIZATION.vol_t
VOL_G = NORMALIZATION.vol_g


def require_interior_alcove(t: float) -> float:
    t = float(t)
    if not (0.0 < t < 1.0) or math.isnan(t):
        raise AlcoveRangeError(f"t out of open alcove: t = {t!r} is not in (0, 1)")
    return t


def _as_fraction(value: Union[int, str, Fraction]) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SpaceFormatError(f"cannot parse exact rational from {value!r}") from exc


@dataclass(frozen=True)
class FixedComponent:
    """One fixed-point component inside the alcove.

    ``euler_integral`` maps the power k >= 2 to the coefficient c_k of
    z^{-k}.  Coefficients are supplied signed: the orientation of the Euler
    class is the caller's responsibility and is never guessed here.
    """

    label: str
    mu: Fraction
    euler_integral: Mapping[int, complex]

    def __post_init__(self) -> None:
        if not isinstance(self.label, str) or not self.label:
            raise SpaceFormatError("component label must be a nonempty string")
        object.__setattr__(self, "mu", _as_fraction(self.mu))
        if not (0 <= self.mu <= 1):
            raise SpaceFormatError(
                f"mu out of alcove range: component {self.label!r} has mu = {self.mu}"
            )
        if not self.euler_integral:
            raise SpaceFormatError(
                f"component {self.label!r}: Euler integral coefficients must be nonempty"
            )
        cleaned: dict[int, complex] = {}
        for k, c in self.euler_integral.items():
            if not isinstance(k, int) or isinstance(k, bool) or k < 2:
                raise SpaceFormatError(
                    f"component {self.label!r}: Euler integral must vanish to order >= 2 "
                    f"(got power {k!r})"
                )
            cleaned[k] = complex(c)
        object.__setattr__(self, "euler_integral", dict(sorted(cleaned.items())))

    @property
    def central(self) -> bool:
        """True when the moment map sends this component to +-identity."""
        return self.mu == 0 or self.mu == 1

    @property
    def max_power(self) -> int:
        return max(self.euler_integral)


@dataclass(frozen=True)
class ComponentData:
    """Raw (mu, coefficients) data; mu may be negative for reflected partners."""

    label: str
    mu: Fraction
    euler_integral: Mapping[int, complex]


def conjugate_component(component: FixedComponent | ComponentData) -> ComponentData:
    """Weyl-reflected partner data: mu -> -mu and c_k -> (-1)^k c_k.

    The sign flip is the coefficient map of evaluating the Euler integral at
    -z; reflecting twice returns the original data exactly.  Central
    components are their own partners up to the sign of mu, and consumers
    must count them once.
    """
    flipped = {k: ((-1) ** k) * c for k, c in component.euler_integral.items()}
    return ComponentData(component.label, -component.mu, flipped)


@dataclass(frozen=True)
class QHSpace:
    """Named collection of fixed-point components plus stabilizer data.

    ``stabilizer_order`` is the cardinality of a generic stabilizer of the
    reduced-space action; it is global geometric data supplied by the user,
    not derivable from the fixed-point coefficients.
    """

    name: str
    components: tuple[FixedComponent, ...]
    stabilizer_order: int

    def __post_init__(self) -> None:
        # component order is not semantic; keep it canonical (sorted by label)
        object.__setattr__(
            self, "components", tuple(sorted(self.components, key=lambda c: c.label))
        )
        if not self.name or not isinstance(self.name, str):
            raise SpaceFormatError("space name must be a nonempty string")
        if not self.components:
            raise SpaceFormatError("space must have at least one component")
        labels = [c.label for c in self.components]
        if len(set(labels)) != len(labels):
            raise SpaceFormatError("component labels must be unique")
        order = self.stabilizer_order
        if not isinstance(order, int) or isinstance(order, bool) or order < 1:
            raise SpaceFormatError("stabilizer_order must be an integer >= 1")

    def component(self, label: str) -> FixedComponent:
        for c in self.components:
            if c.label == label:
                return c
        raise KeyError(label)


def expand_components(space: QHSpace) -> list[ComponentData]:
    """Full fixed-point family: stored components plus reflected partners.

    Non-central components contribute the pair {F, F^w}; central ones are
    self-paired and appear once.
    """
    expanded: list[ComponentData] = []
    for comp in space.components:
        expanded.append(ComponentData(comp.label, comp.mu, dict(comp.euler_integral)))
        if not comp.central:
            expanded.append(conjugate_component(comp))
    return expanded


@dataclass(frozen=True)
class DensityResult:
    """Density at one alcove point with per-component breakdown.

    ``max_imag_residual`` is the largest imaginary part discarded when taking
    real parts, kept for diagnostics; totals are sums of the per-component
    values up to rounding.
    """

    t: float
    total: float
    per_component: Mapping[str, float] = field(default_factory=dict)
    max_imag_residual: float = 0.0


# ---------------------------------------------------------------------------
# space files
# ---------------------------------------------------------------------------


def _check_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpaceFormatError(f"malformed space file: {path}: expected a number")
    return float(value)


def _fraction_to_text(value: Fraction) -> str:
    """Exact decimal when the denominator allows it, else 'p/q'."""
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    twos = fives = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{num}/{den}"
    digits = max(twos, fives)
    scaled = num * 10**digits // den
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else f"{sign}{text}"


def load_space(document: Union[str, bytes, Mapping[str, Any]]) -> QHSpace:
    """Parse and validate a space document (JSON text or parsed mapping).

    Error messages carry the path of the offending field.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpaceFormatError(f"malformed space file: not valid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise SpaceFormatError("malformed space file: top level must be an object")

    allowed = {"name", "stabilizer_order", "components"}
    extra = set(document) - allowed
    if extra:
        raise SpaceFormatError(
            f"malformed space file: unknown field {sorted(extra)[0]!r}"
        )
    for key in allowed:
        if key not in document:
            raise SpaceFormatError(f"malformed space file: missing field {key!r}")

    name = document["name"]
    if not isinstance(name, str) or not name:
        raise SpaceFormatError("malformed space file: name: must be a nonempty string")
    order = document["stabilizer_order"]
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise SpaceFormatError(
            "malformed space file: stabilizer_order: must be an integer >= 1"
        )
    raw_components = document["components"]
    if not isinstance(raw_components, list) or not raw_components:
        raise SpaceFormatError(
            "malformed space file: components: must be a nonempty array"
        )

    components: list[FixedComponent] = []
    seen_labels: set[str] = set()
    for i, entry in enumerate(raw_components):
        path = f"components[{i}]"
        if not isinstance(entry, Mapping):
            raise SpaceFormatError(f"malformed space file: {path}: must be an object")
        entry_allowed = {"label", "mu", "coefficients"}
        entry_extra = set(entry) - entry_allowed
        if entry_extra:
            raise SpaceFormatError(
                f"malformed space file: {path}.{sorted(entry_extra)[0]}: unknown field"
            )
        for key in entry_allowed:
            if key not in entry:
                raise SpaceFormatError(
                    f"malformed space file: {path}: missing field {key!r}"
                )
        label = entry["label"]
        if not isinstance(label, str) or not label:
            raise SpaceFormatError(
                f"malformed space file: {path}.label: must be a nonempty string"
            )
        if label in seen_labels:
            raise SpaceFormatError(
                f"malformed space file: {path}.label: duplicate label {label!r}"
            )
        seen_labels.add(label)
        mu_raw = entry["mu"]
        if not isinstance(mu_raw, str):
            raise SpaceFormatError(
                f"malformed space file: {path}.mu: must be a string holding an exact "
                f"decimal or rational"
            )
        try:
            mu = Fraction(mu_raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpaceFormatError(
                f"malformed space file: {path}.mu: cannot parse {mu_raw!r}"
            ) from exc
        if not (0 <= mu <= 1):
            raise SpaceFormatError(
                f"malformed space file: {path}.mu: mu out of alcove range"
            )
        raw_coeffs = entry["coefficients"]
        if not isinstance(raw_coeffs, list) or not raw_coeffs:
            raise SpaceFormatError(
                f"malformed space file: {path}.coefficients: must be a nonempty array"
            )
        coeffs: dict[int, complex] = {}
        for j, item in enumerate(raw_coeffs):
            cpath = f"{path}.coefficients[{j}]"
            if not isinstance(item, Mapping):
                raise SpaceFormatError(
                    f"malformed space file: {cpath}: must be an object"
                )
            item_allowed = {"power", "re", "im"}
            item_extra = set(item) - item_allowed
            if item_extra:
                raise SpaceFormatError(
                    f"malformed space file: {cpath}.{sorted(item_extra)[0]}: unknown field"
                )
            for key in item_allowed:
                if key not in item:
                    raise SpaceFormatError(
                        f"malformed space file: {cpath}: missing field {key!r}"
                    )
            power = item["power"]
            if isinstance(power, bool) or not isinstance(power, int) or power < 2:
                raise SpaceFormatError(
                    f"malformed space file: {cpath}.power: Euler integral must vanish "
                    f"to order >= 2"
                )
            if power in coeffs:
                raise SpaceFormatError(
                    f"malformed space file: {cpath}.power: duplicate power {power}"
                )
            re = _check_number(item["re"], f"{cpath}.re")
            im = _check_number(item["im"], f"{cpath}.im")
            coeffs[power] = complex(re, im)
        components.append(FixedComponent(label, mu, coeffs))

    return QHSpace(name, tuple(components), order)


def save_space(space: QHSpace) -> str:
    """Canonical serialization: components sorted by label, powers ascending."""
    doc = {
        "name": space.name,
        "stabilizer_order": space.stabilizer_order,
        "components": [
            {
                "label": comp.label,
                "mu": _fraction_to_text(comp.mu),
                "coefficients": [
                    {"power": k, "re": c.real, "im": c.imag}
                    for k, c in sorted(comp.euler_integral.items())
                ],
            }
            for comp in space.components  # already canonically ordered
        ],
    }
    return json.dumps(doc, indent=2) + "\n"

"""Duistermaat-Heckman densities for quasi-Hamiltonian SU(2)-spaces.

Computes the density of the pushforward of the Liouville measure under a
group-valued moment map, and the symplectic volumes of the reduced spaces,
from fixed-point localization data.  Two independent evaluation paths are
provided (residues of truncated Laurent series, and accelerated summation of
the localization Fourier series), plus a standalone exponential-sum/residue
identity checker.
"""

from .expsum import (
    GammaRangeError,
    RationalPoleFunction,
    exp_sum_extrapolated,
    exp_sum_partial,
    exp_sum_residue,
)
from .fourier import (
    QuadratureError,
    QuadratureResult,
    QuadratureRule,
    SummationError,
    SummationMethod,
    coefficient_quadrature,
    fourier_coefficient,
    reconstruct_density,
)
from .model import (
    NORMALIZATION,
    VOL_G,
    VOL_T,
    AlcoveRangeError,
    ComponentData,
    DensityResult,
    FixedComponent,
    Normalization,
    QHSpace,
    SpaceFormatError,
    conjugate_component,
    expand_components,
    load_space,
    save_space,
)
from .residue import (
    CentralElement,
    EvalOptions,
    NonRealDensityError,
    ScanPoint,
    WallError,
    WallPolicy,
    central_density,
    component_central_density,
    component_density,
    density,
    reduced_volume,
    scan,
)
from .series import SeriesError, TruncSeries
from .spaces import (
    builtin_space,
    make_product_space,
    make_s4,
    product_closed_form,
    witten_volume_n1,
)

__version__ = "0.1.0"

__all__ = [
    "AlcoveRangeError",
    "CentralElement",
    "ComponentData",
    "DensityResult",
    "EvalOptions",
    "FixedComponent",
    "GammaRangeError",
    "NonRealDensityError",
    "NORMALIZATION",
    "Normalization",
    "QHSpace",
    "QuadratureError",
    "QuadratureResult",
    "QuadratureRule",
    "RationalPoleFunction",
    "ScanPoint",
    "SeriesError",
    "SpaceFormatError",
    "SummationError",
    "SummationMethod",
    "TruncSeries",
    "VOL_G",
    "VOL_T",
    "WallError",
    "WallPolicy",
    "builtin_space",
    "central_density",
    "coefficient_quadrature",
    "component_central_density",
    "component_density",
    "conjugate_component",
    "density",
    "exp_sum_extrapolated",
    "exp_sum_partial",
    "exp_sum_residue",
    "expand_components",
    "fourier_coefficient",
    "load_space",
    "make_product_space",
    "make_s4",
    "product_closed_form",
    "reconstruct_density",
    "reduced_volume",
    "save_space",
    "scan",
    "witten_volume_n1",
]

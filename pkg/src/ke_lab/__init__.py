"""Kinetic-energy density functionals on real-space grids.

Explicit functionals (von Weizsaecker, Thomas-Fermi), the orbital kinetic
energy, a discrete free-electron-gas construction of the Thomas-Fermi form,
generalized amplitude/coordinate scaling with exact discrete scaling laws,
and a small constrained-search minimizer for validation.  Hartree atomic
units throughout.
"""

from .backends import ACTIVE as BACKEND
from .backends import using_numba
from .constants import CTF
from .densities import (
    BOUNDARY_DECAY,
    GAUSSIAN,
    HYDROGENIC_1S,
    UNIFORM_BOX,
    DensityField,
    DensityModel,
    analytic_t_tf,
    analytic_t_vw,
    default_grid,
    sample_density,
)
from .electron_gas import (
    BoxGas,
    ConvergenceRow,
    GasScalingReport,
    continuum_convergence,
    fermi_wavevector,
    fill_fermi_sphere,
    kinetic_discrete,
    scaled_gas_identity,
    t_g_continuum,
    tf_local_gas,
    tf_scaled_corrected,
)
from .errors import (
    DomainTooSmallError,
    EmptyDensityError,
    KineticLabError,
    NonPositiveDensityError,
    NonPositiveTargetError,
    NonPositiveValueError,
    OrthogonalityViolationError,
    WrongBoundaryError,
)
from .functionals import (
    EnergyResult,
    OrbitalSet,
    single_orbital_set,
    t_s_orbital,
    t_tf,
    t_vw,
    vw_from_orbital_identity,
)
from .grid import (
    OPEN,
    PERIODIC,
    Grid,
    ScalarField,
    VectorField,
    gradient,
    integrate,
    laplacian,
    quadrature_weights,
)
from .scaling import (
    PROBE_LADDER,
    ScalingParams,
    default_probe,
    homogeneity_exponents,
    scale_density,
    scale_orbitals,
)
from .search import (
    SearchConfig,
    SearchResult,
    minimize_ts,
    objective_gradient_check,
    relative_deviation,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BOUNDARY_DECAY",
    "BoxGas",
    "CTF",
    "ConvergenceRow",
    "DensityField",
    "DensityModel",
    "DomainTooSmallError",
    "EmptyDensityError",
    "EnergyResult",
    "GAUSSIAN",
    "GasScalingReport",
    "Grid",
    "HYDROGENIC_1S",
    "KineticLabError",
    "NonPositiveDensityError",
    "NonPositiveTargetError",
    "NonPositiveValueError",
    "OPEN",
    "OrbitalSet",
    "OrthogonalityViolationError",
    "PERIODIC",
    "PROBE_LADDER",
    "ScalarField",
    "ScalingParams",
    "SearchConfig",
    "SearchResult",
    "UNIFORM_BOX",
    "VectorField",
    "WrongBoundaryError",
    "analytic_t_tf",
    "analytic_t_vw",
    "continuum_convergence",
    "default_grid",
    "default_probe",
    "fermi_wavevector",
    "fill_fermi_sphere",
    "gradient",
    "homogeneity_exponents",
    "integrate",
    "kinetic_discrete",
    "laplacian",
    "minimize_ts",
    "objective_gradient_check",
    "quadrature_weights",
    "relative_deviation",
    "sample_density",
    "scale_density",
    "scale_orbitals",
    "scaled_gas_identity",
    "single_orbital_set",
    "t_g_continuum",
    "t_s_orbital",
    "t_tf",
    "t_vw",
    "tf_local_gas",
    "tf_scaled_corrected",
    "using_numba",
    "vw_from_orbital_identity",
    "__version__",
]

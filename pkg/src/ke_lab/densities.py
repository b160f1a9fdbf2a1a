"""Closed-form model densities and their analytic kinetic energies.

Three families, all normalized so the density integrates to the electron
count over the natural domain:

* ``gaussian``: n(r) = N_e (g/pi)^(d/2) exp(-g r^2), width parameter g
* ``hydrogenic_1s``: n(r) = N_e (Z^3/pi) exp(-2 Z r) in 3-d, width parameter Z
* ``uniform_box``: n = N_e / a^d on a periodic box of edge a

The gaussian and hydrogenic families live on open grids and must decay below
1e-12 of their peak before the boundary; uniform boxes require periodic
grids.  The hydrogenic default grid is shifted half a spacing so no sample
sits on the nuclear cusp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CTF
from .errors import DomainTooSmallError, WrongBoundaryError
from .grid import OPEN, PERIODIC, Grid, ScalarField, integrate

GAUSSIAN = "gaussian"
HYDROGENIC_1S = "hydrogenic_1s"
UNIFORM_BOX = "uniform_box"
FAMILIES = (GAUSSIAN, HYDROGENIC_1S, UNIFORM_BOX)

# Decaying families must fall below this fraction of their peak at the edge.
BOUNDARY_DECAY = 1e-12


@dataclass(frozen=True)
class DensityModel:
    """A density family with electron count and width parameter.

    ``width_param`` is the gaussian exponent g, the hydrogenic charge Z, or
    the box edge a, depending on the family.
    """

    family: str
    electrons: float
    width_param: float

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not (np.isfinite(self.electrons) and self.electrons > 0.0):
            raise ValueError(f"electrons must be positive, got {self.electrons}")
        if not (np.isfinite(self.width_param) and self.width_param > 0.0):
            raise ValueError(f"width_param must be positive, got {self.width_param}")


@dataclass(frozen=True)
class DensityField:
    """Nonnegative density samples plus the electron count they integrate to.

    ``electrons`` always agrees with the quadrature integral of ``field`` (to
    1e-10 relative); constructors that know the count analytically still
    record the quadrature value's consistency.  An identically zero density
    is allowed (electrons 0) so functionals can state their zero limits.
    """

    field: ScalarField
    electrons: float

    def __post_init__(self) -> None:
        if self.values.size and self.values.min() < 0.0:
            raise ValueError(
                f"density values must be nonnegative, min is {self.values.min()}"
            )
        if not (np.isfinite(self.electrons) and self.electrons >= 0.0):
            raise ValueError(f"electrons must be nonnegative, got {self.electrons}")
        quad = integrate(self.field)
        if abs(quad - self.electrons) > 1e-10 * max(self.electrons, 1e-300):
            raise ValueError(
                f"electrons {self.electrons} disagrees with quadrature {quad}"
            )

    @classmethod
    def from_field(cls, field: ScalarField) -> "DensityField":
        return cls(field, integrate(field))

    @property
    def grid(self) -> Grid:
        return self.field.grid

    @property
    def values(self) -> np.ndarray:
        return self.field.values


def default_grid(model: DensityModel, points_per_axis: int = 64, dim: int = 3) -> Grid:
    """Natural grid for a family: wide enough for the decay precondition.

    Gaussian spans [-8/sqrt(g), 8/sqrt(g)] per axis, hydrogenic spans
    [-16/Z, 16/Z] with no sample on the nucleus (even counts already
    straddle it; odd counts get a half-spacing shift), uniform boxes are
    periodic with edge a.
    """
    n = points_per_axis
    if model.family == GAUSSIAN:
        half = 8.0 / math.sqrt(model.width_param)
        spacing = 2.0 * half / (n - 1)
        return Grid(dim, n, spacing, OPEN, (-half,) * dim)
    if model.family == HYDROGENIC_1S:
        half = 16.0 / model.width_param
        spacing = 2.0 * half / (n - 1)
        shift = 0.5 * spacing if n % 2 else 0.0
        return Grid(dim, n, spacing, OPEN, (-half + shift,) * dim)
    spacing = model.width_param / n
    return Grid(dim, n, spacing, PERIODIC, (0.0,) * dim)


def _radial_profile(model: DensityModel, r: np.ndarray | float, dim: int):
    """Density at distance r from the center, with d-dimensional norm."""
    ne = model.electrons
    w = model.width_param
    if model.family == GAUSSIAN:
        return ne * (w / math.pi) ** (dim / 2.0) * np.exp(-w * np.square(r))
    if model.family == HYDROGENIC_1S:
        if dim == 3:
            prefactor = ne * w**3 / math.pi
        else:
            prefactor = ne * w
        return prefactor * np.exp(-2.0 * w * np.abs(r))
    return ne / w**dim


def _nearest_edge_distance(grid: Grid) -> float:
    """Distance from the coordinate origin to the closest domain face."""
    n = grid.points_per_axis
    span = (n if grid.is_periodic else n - 1) * grid.spacing
    dist = math.inf
    for lo in grid.origin:
        hi = lo + span
        dist = min(dist, -lo, hi)
    return dist


def sample_density(model: DensityModel, grid: Grid) -> DensityField:
    """Evaluate a model density pointwise on a grid.

    Raises
    ------
    WrongBoundaryError
        Uniform boxes on open grids (and decaying families are meant for
        open domains but are permitted on periodic ones).
    DomainTooSmallError
        Decaying family whose analytic value at the nearest domain face
        exceeds ``BOUNDARY_DECAY`` times its peak.
    """
    if model.family == UNIFORM_BOX:
        if not grid.is_periodic:
            raise WrongBoundaryError(
                "uniform_box requires a periodic grid, got open boundaries"
            )
        value = model.electrons / model.width_param**grid.dim
        field = ScalarField(grid, np.full(grid.shape, value))
        return DensityField.from_field(field)

    edge = _nearest_edge_distance(grid)
    peak = float(_radial_profile(model, 0.0, grid.dim))
    if edge <= 0.0 or float(_radial_profile(model, edge, grid.dim)) >= BOUNDARY_DECAY * peak:
        raise DomainTooSmallError(
            f"{model.family} density has not decayed below {BOUNDARY_DECAY:g} of its "
            f"peak at the domain edge (distance {edge:g})"
        )
    r = np.sqrt(grid.squared_radius())
    field = ScalarField(grid, _radial_profile(model, r, grid.dim))
    return DensityField.from_field(field)


def analytic_t_vw(model: DensityModel) -> float:
    """Closed-form von Weizsaecker kinetic energy of a 3-d model density.

    Gaussian: 3 g N_e / 4.  Hydrogenic 1s: N_e Z^2 / 2.  Uniform box: 0.
    """
    if model.family == GAUSSIAN:
        return 0.75 * model.width_param * model.electrons
    if model.family == HYDROGENIC_1S:
        return 0.5 * model.width_param**2 * model.electrons
    return 0.0


def analytic_t_tf(model: DensityModel) -> float:
    """Closed-form Thomas-Fermi kinetic energy of a 3-d model density.

    Uniform box: CTF (N_e/a^3)^(5/3) a^3.  Gaussian: the 5/3 moment of the
    normalized gaussian gives CTF N_e^(5/3) (g/pi) (3/5)^(3/2).  Hydrogenic:
    the exponential integral gives CTF N_e^(5/3) Z^2 (27/125) pi^(-2/3).
    """
    ne = model.electrons
    w = model.width_param
    if model.family == GAUSSIAN:
        return CTF * ne ** (5.0 / 3.0) * (w / math.pi) * (3.0 / 5.0) ** 1.5
    if model.family == HYDROGENIC_1S:
        return CTF * ne ** (5.0 / 3.0) * w**2 * (27.0 / 125.0) * math.pi ** (-2.0 / 3.0)
    return CTF * (ne / w**3) ** (5.0 / 3.0) * w**3

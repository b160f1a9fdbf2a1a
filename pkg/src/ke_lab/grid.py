"""Uniform Cartesian grids and fields with quadrature and derivatives.

Grids are cubic (same point count and spacing on every axis), immutable, and
either ``open`` or ``periodic``.  Quadrature uses rectangle weights on
periodic grids and trapezoid weights on open grids; reductions run in a fixed
order so repeated evaluation is bit-stable.  Derivatives are fourth-order
finite differences (see :mod:`ke_lab.stencils`).

Units are Hartree atomic units: lengths in bohr, energies in hartree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import stencils

OPEN = "open"
PERIODIC = "periodic"
BOUNDARIES = (OPEN, PERIODIC)


@dataclass(frozen=True)
class Grid:
    """Uniform grid over a line (dim 1) or cube (dim 3).

    Parameters
    ----------
    dim:
        1 or 3.
    points_per_axis:
        At least 8 samples per axis.
    spacing:
        Positive distance between neighboring samples, shared by all axes.
    boundary:
        ``"open"`` or ``"periodic"``.
    origin:
        Coordinates of the first sample on each axis.  Defaults to zero.
    """

    dim: int
    points_per_axis: int
    spacing: float
    boundary: str = OPEN
    origin: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.dim not in (1, 3):
            raise ValueError(f"dim must be 1 or 3, got {self.dim}")
        if self.points_per_axis < 8:
            raise ValueError(
                f"points_per_axis must be >= 8, got {self.points_per_axis}"
            )
        if not (np.isfinite(self.spacing) and self.spacing > 0.0):
            raise ValueError(f"spacing must be positive and finite, got {self.spacing}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")
        origin = tuple(float(c) for c in self.origin) or (0.0,) * self.dim
        if len(origin) != self.dim:
            raise ValueError(f"origin must have {self.dim} components, got {len(origin)}")
        if not all(np.isfinite(c) for c in origin):
            raise ValueError(f"origin must be finite, got {origin}")
        object.__setattr__(self, "origin", origin)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dim

    @property
    def n_points(self) -> int:
        return self.points_per_axis**self.dim

    @property
    def is_periodic(self) -> bool:
        return self.boundary == PERIODIC

    @property
    def extent(self) -> float:
        """Length of the quadrature domain along one axis.

        Periodic grids cover ``points_per_axis * spacing``; open grids cover
        the sampled hull ``(points_per_axis - 1) * spacing``.
        """
        n = self.points_per_axis
        return (n if self.is_periodic else n - 1) * self.spacing

    @property
    def total_volume(self) -> float:
        return self.extent**self.dim

    def axis_coordinates(self, axis: int = 0) -> np.ndarray:
        return self.origin[axis] + self.spacing * np.arange(self.points_per_axis)

    def coordinate_arrays(self) -> tuple[np.ndarray, ...]:
        """Per-axis coordinates shaped for broadcasting against field values."""
        axes = [self.axis_coordinates(a) for a in range(self.dim)]
        if self.dim == 1:
            return (axes[0],)
        return (
            axes[0][:, None, None],
            axes[1][None, :, None],
            axes[2][None, None, :],
        )

    def squared_radius(self) -> np.ndarray:
        """Squared distance of every sample from the coordinate origin."""
        coords = self.coordinate_arrays()
        r2 = coords[0] ** 2
        for c in coords[1:]:
            r2 = r2 + c**2
        return r2


@dataclass(frozen=True)
class ScalarField:
    """Real samples, one per grid point."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class VectorField:
    """One real component array per grid axis."""

    grid: Grid
    components: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.components) != self.grid.dim:
            raise ValueError(
                f"expected {self.grid.dim} components, got {len(self.components)}"
            )
        comps = tuple(np.asarray(c, dtype=float) for c in self.components)
        for c in comps:
            if c.shape != self.grid.shape:
                raise ValueError(
                    f"component shape {c.shape} does not match grid shape {self.grid.shape}"
                )
        object.__setattr__(self, "components", comps)

    def squared_magnitude(self) -> np.ndarray:
        total = self.components[0] ** 2
        for c in self.components[1:]:
            total = total + c**2
        return total


def _trapezoid_weights(n: int, spacing: float) -> np.ndarray:
    w = np.full(n, spacing)
    w[0] = 0.5 * spacing
    w[-1] = 0.5 * spacing
    return w


def quadrature_weights(grid: Grid) -> np.ndarray:
    """Per-point quadrature weights as a broadcastable array."""
    if grid.is_periodic:
        return np.full(grid.shape, grid.spacing**grid.dim)
    w = _trapezoid_weights(grid.points_per_axis, grid.spacing)
    if grid.dim == 1:
        return w
    return w[:, None, None] * w[None, :, None] * w[None, None, :]


def integrate_values(grid: Grid, values: np.ndarray):
    """Quadrature sum of raw samples; complex input yields a complex result."""
    if grid.is_periodic:
        return values.sum() * grid.spacing**grid.dim
    w = _trapezoid_weights(grid.points_per_axis, grid.spacing)
    if grid.dim == 1:
        return (values * w).sum()
    return (values * w[:, None, None] * w[None, :, None] * w[None, None, :]).sum()


def integrate(f: ScalarField) -> float:
    """Integral of a scalar field under the grid's quadrature rule."""
    return float(integrate_values(f.grid, f.values))


def gradient_values(grid: Grid, values: np.ndarray):
    return stencils.gradient(values, grid.spacing, grid.is_periodic)


def gradient(f: ScalarField) -> VectorField:
    """Fourth-order gradient; one-sided stencils on open-grid edge bands."""
    return VectorField(f.grid, gradient_values(f.grid, f.values))


def laplacian_values(grid: Grid, values: np.ndarray) -> np.ndarray:
    return stencils.laplacian(values, grid.spacing, grid.is_periodic)


def laplacian(f: ScalarField) -> ScalarField:
    """Fourth-order Laplacian with the same boundary handling as gradient."""
    return ScalarField(f.grid, laplacian_values(f.grid, f.values))

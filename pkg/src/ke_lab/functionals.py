"""Explicit kinetic-energy functionals and orbital-based evaluation.

Three evaluation routes for the non-interacting kinetic energy:

* :func:`t_vw`, the von Weizsaecker gradient form (1/8) int |grad n|^2 / n;
* :func:`t_tf`, the Thomas-Fermi local form CTF int n^(5/3);
* :func:`t_s_orbital`, the orbital form -(1/2) sum_i n_i int phi_i* lap phi_i
  over an orthogonal occupied set.

Orbitals follow the convention that each norm squared equals
(int n) / N_e, so scaled sets stay consistent without renormalizing.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from typing import Any, Mapping

import numpy as np

from .constants import CTF
from .densities import DensityField
from .errors import EmptyDensityError, OrthogonalityViolationError
from .grid import Grid, integrate_values, gradient_values, laplacian_values

VW = "vW"
TF = "TF"
KS_ORBITAL = "KS_orbital"
GAS_DISCRETE = "gas_discrete"
GAS_CONTINUUM = "gas_continuum"
FUNCTIONALS = (VW, TF, KS_ORBITAL, GAS_DISCRETE, GAS_CONTINUUM)

#: Relative floor applied to the density in the von Weizsaecker denominator.
VW_DENSITY_FLOOR = 1e-12

#: Absolute tolerance on pairwise orbital overlaps.
ORTHOGONALITY_TOL = 1e-8

#: Relative tolerance on the orbital norm convention.
NORM_TOL = 1e-8


@dataclass(frozen=True)
class EnergyResult:
    """A kinetic energy in hartree plus the route that produced it."""

    value: float
    functional: str
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.functional not in FUNCTIONALS:
            raise ValueError(
                f"functional must be one of {FUNCTIONALS}, got {self.functional!r}"
            )
        if not np.isfinite(self.value):
            raise ValueError(f"energy must be finite, got {self.value}")


def _grid_metadata(grid: Grid) -> dict[str, Any]:
    return {
        "points_per_axis": grid.points_per_axis,
        "spacing": grid.spacing,
        "boundary": grid.boundary,
    }


def _abs2(u: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(u):
        return u.real**2 + u.imag**2
    return u * u


@dataclass(frozen=True)
class OrbitalSet:
    """Occupied orbitals sharing one grid.

    ``orbitals`` holds the stored samples; the physical orbital i is
    sqrt(amplitude) times ``orbitals[i]``.  Coordinate scaling multiplies
    ``amplitude`` instead of rewriting samples, which keeps the induced
    density of a scaled set equal, sample for sample, to the scaled induced
    density.  Construction checks pairwise orthogonality (1e-8 absolute) and
    the norm convention <phi_i, phi_i> = (int n) / N_e (1e-8 relative), which
    together force the occupations to sum to the electron count.
    """

    grid: Grid
    orbitals: tuple[np.ndarray, ...]
    occupations: tuple[float, ...]
    electrons: float
    amplitude: float = 1.0
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool) -> None:
        orbitals = tuple(np.asarray(u) for u in self.orbitals)
        occupations = tuple(float(f) for f in self.occupations)
        object.__setattr__(self, "orbitals", orbitals)
        object.__setattr__(self, "occupations", occupations)
        if len(orbitals) != len(occupations):
            raise ValueError(
                f"{len(orbitals)} orbitals but {len(occupations)} occupations"
            )
        if not orbitals:
            raise ValueError("orbital set cannot be empty")
        for u in orbitals:
            if u.shape != self.grid.shape:
                raise ValueError(
                    f"orbital shape {u.shape} does not match grid shape {self.grid.shape}"
                )
        for f in occupations:
            if not (0.0 <= f <= 2.0):
                raise ValueError(f"occupations must lie in [0, 2], got {f}")
        if not (np.isfinite(self.electrons) and self.electrons > 0.0):
            raise ValueError(f"electrons must be positive, got {self.electrons}")
        if not (np.isfinite(self.amplitude) and self.amplitude > 0.0):
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")
        if validate:
            self.check_orthogonality()
            self._check_norm_convention()

    def overlap(self, i: int, j: int) -> complex:
        """Physical inner product <phi_i, phi_j> under the grid quadrature."""
        product = np.conj(self.orbitals[i]) * self.orbitals[j]
        return self.amplitude * integrate_values(self.grid, product)

    def check_orthogonality(self) -> None:
        count = len(self.orbitals)
        for i in range(count):
            for j in range(i + 1, count):
                overlap = abs(self.overlap(i, j))
                if overlap > ORTHOGONALITY_TOL:
                    raise OrthogonalityViolationError(
                        f"|<phi_{i}, phi_{j}>| = {overlap:g} exceeds "
                        f"{ORTHOGONALITY_TOL:g}"
                    )

    def _check_norm_convention(self) -> None:
        norms = [self.overlap(i, i).real for i in range(len(self.orbitals))]
        total = sum(f * q for f, q in zip(self.occupations, norms))
        target = total / self.electrons
        if target <= 0.0:
            raise ValueError("orbital set carries no density")
        for i, q in enumerate(norms):
            if abs(q - target) > NORM_TOL * target:
                raise ValueError(
                    f"orbital {i} norm^2 {q:g} deviates from (int n)/N_e = {target:g}"
                )

    def orbital_values(self, i: int) -> np.ndarray:
        """Physical samples of orbital i, amplitude included."""
        return np.sqrt(self.amplitude) * self.orbitals[i]

    def induced_density(self) -> DensityField:
        """Density sum_i n_i |phi_i|^2 as a field on the set's grid."""
        base = self.occupations[0] * _abs2(self.orbitals[0])
        for f, u in zip(self.occupations[1:], self.orbitals[1:]):
            base = base + f * _abs2(u)
        from .grid import ScalarField  # local import to keep module load light

        return DensityField.from_field(ScalarField(self.grid, self.amplitude * base))


def t_vw(n: DensityField) -> EnergyResult:
    """von Weizsaecker kinetic energy (1/8) int |grad n|^2 / n.

    The denominator is floored at 1e-12 of the density's maximum, so far
    tails cannot blow up the integrand.  Raises
    :class:`EmptyDensityError` on an identically zero density.
    """
    peak = float(n.values.max()) if n.values.size else 0.0
    if peak <= 0.0:
        raise EmptyDensityError("von Weizsaecker energy of an empty density")
    floor = VW_DENSITY_FLOOR * peak
    grads = gradient_values(n.grid, n.values)
    squared = grads[0] ** 2
    for g in grads[1:]:
        squared = squared + g**2
    integrand = squared / np.maximum(n.values, floor)
    value = 0.125 * float(integrate_values(n.grid, integrand))
    return EnergyResult(value, VW, _grid_metadata(n.grid))


def t_tf(n: DensityField) -> EnergyResult:
    """Thomas-Fermi kinetic energy CTF int n^(5/3)."""
    value = CTF * float(integrate_values(n.grid, n.values ** (5.0 / 3.0)))
    return EnergyResult(value, TF, _grid_metadata(n.grid))


def t_s_orbital(phi: OrbitalSet) -> EnergyResult:
    """Orbital kinetic energy -(1/2) sum_i n_i int Re(phi_i* lap phi_i).

    Verifies pairwise orthogonality first and raises
    :class:`OrthogonalityViolationError` on failure.  The result is
    nonnegative up to stencil rounding; values below -1e-10 raise.
    """
    phi.check_orthogonality()
    total = 0.0
    for f, u in zip(phi.occupations, phi.orbitals):
        lap = laplacian_values(phi.grid, u)
        integrand = (np.conj(u) * lap).real if np.iscomplexobj(u) else u * lap
        total += f * float(integrate_values(phi.grid, integrand))
    value = -0.5 * phi.amplitude * total
    if value < -1e-10:
        raise ValueError(f"orbital kinetic energy {value} is negative beyond rounding")
    meta = _grid_metadata(phi.grid)
    meta["orbital_count"] = len(phi.orbitals)
    return EnergyResult(value, KS_ORBITAL, meta)


def single_orbital_set(n: DensityField) -> OrbitalSet:
    """The doubly-occupied orbital phi = sqrt(n/2) as a one-orbital set.

    Its induced density is n itself, sample for sample, and its orbital
    kinetic energy equals the von Weizsaecker energy of n in the continuum
    (the occupation drops out of f |grad sqrt(n/f)|^2, so the choice f = 2
    carries no restriction on the integral of n).
    """
    peak = float(n.values.max()) if n.values.size else 0.0
    if peak <= 0.0:
        raise EmptyDensityError("cannot build an orbital from an empty density")
    u = np.sqrt(0.5 * n.values)
    return OrbitalSet(n.grid, (u,), (2.0,), 2.0)


def vw_from_orbital_identity(n: DensityField) -> tuple[EnergyResult, EnergyResult]:
    """Evaluate T_vW two ways: gradient form and the single-orbital form.

    The von Weizsaecker energy is the orbital kinetic energy of the doubly
    occupied orbital sqrt(n/2), exactly in the continuum (the identity that
    makes vW exact for one- and two-electron systems), so the two routes
    must agree up to discretization.
    """
    return (t_vw(n), t_s_orbital(single_orbital_set(n)))

"""Free electron gas in a periodic box and its continuum limit.

Plane waves in a cubic box of edge a carry wavevectors k = (2 pi / a) n
for integer triples n.  Filling the lowest |k|^2 shells with two electrons
per state gives the discrete kinetic energy T_g = (1/2) sum n(k) |k|^2;
holding the mean density fixed while the box grows drives T_g / V toward
CTF nbar^(5/3), which is the local ingredient of the Thomas-Fermi
functional.  Scaling the plane waves by amplitude alpha^(m/2) and
wavevector beta^p inside the shrunken box a / beta^p multiplies the
kinetic energy by exactly alpha^m / beta^p, the same factor the orbital
functional obeys, which is the point of the whole construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constants import CTF, TWO_PI
from .densities import DensityField
from .errors import NonPositiveDensityError
from .functionals import GAS_CONTINUUM, GAS_DISCRETE, TF, EnergyResult, t_tf
from .scaling import ScalingParams

#: Relative slack on the occupation sum invariant.
OCCUPATION_SUM_TOL = 1e-9


@dataclass(frozen=True)
class BoxGas:
    """Occupied plane-wave states of a free electron gas in a cubic box.

    ``triples`` holds the integer wavevector labels, one row per occupied
    state, sorted by increasing |n|^2 and lexicographically within a shell.
    Physical wavevectors are (2 pi / edge) times the rows.
    """

    edge: float
    electrons: int
    triples: np.ndarray
    occupations: np.ndarray

    def __post_init__(self) -> None:
        if not (np.isfinite(self.edge) and self.edge > 0.0):
            raise ValueError(f"box edge must be positive, got {self.edge}")
        if self.electrons < 1:
            raise ValueError(f"electron count must be >= 1, got {self.electrons}")
        triples = np.asarray(self.triples, dtype=np.int64)
        occupations = np.asarray(self.occupations, dtype=np.float64)
        if triples.ndim != 2 or triples.shape[1] != 3:
            raise ValueError(f"triples must have shape (states, 3), got {triples.shape}")
        if occupations.shape != (triples.shape[0],):
            raise ValueError("one occupation per state required")
        if occupations.size == 0:
            raise ValueError("gas must occupy at least one state")
        if np.any(occupations < 0.0) or np.any(occupations > 2.0):
            raise ValueError("occupations must lie in [0, 2]")
        n2 = np.sum(triples * triples, axis=1)
        if np.any(np.diff(n2) < 0):
            raise ValueError("states must be sorted by increasing |n|^2")
        total = float(np.sum(occupations))
        if abs(total - self.electrons) > OCCUPATION_SUM_TOL * max(self.electrons, 1):
            raise ValueError(
                f"occupations sum to {total!r}, expected {self.electrons}"
            )
        object.__setattr__(self, "triples", triples)
        object.__setattr__(self, "occupations", occupations)

    @property
    def n_squared(self) -> np.ndarray:
        """Integer |n|^2 per occupied state."""
        return np.sum(self.triples * self.triples, axis=1)

    @property
    def volume(self) -> float:
        return self.edge**3

    @property
    def mean_density(self) -> float:
        return self.electrons / self.volume

    def k_vectors(self) -> np.ndarray:
        """Physical wavevectors (2 pi / edge) n, shape (states, 3)."""
        return (TWO_PI / self.edge) * self.triples.astype(np.float64)


@dataclass(frozen=True)
class GasScalingReport:
    """Scaled-gas kinetic energy against the homogeneous scaling law."""

    unscaled_t: float
    scaled_t: float
    predicted_factor: float
    observed_factor: float

    def __post_init__(self) -> None:
        for label, value in (
            ("unscaled_t", self.unscaled_t),
            ("scaled_t", self.scaled_t),
            ("predicted_factor", self.predicted_factor),
            ("observed_factor", self.observed_factor),
        ):
            if not np.isfinite(value):
                raise ValueError(f"{label} must be finite, got {value}")


def _enumerate_sphere(min_states: int) -> tuple[np.ndarray, np.ndarray]:
    # Grow the cube until the inscribed sphere holds enough states; only
    # triples inside the sphere are trusted (the cube corners are partial
    # shells).
    bound = 1
    while True:
        axis = np.arange(-bound, bound + 1, dtype=np.int64)
        nx, ny, nz = np.meshgrid(axis, axis, axis, indexing="ij")
        triples = np.stack((nx.ravel(), ny.ravel(), nz.ravel()), axis=1)
        n2 = np.sum(triples * triples, axis=1)
        inside = n2 <= bound * bound
        if int(np.count_nonzero(inside)) >= min_states:
            triples = triples[inside]
            n2 = n2[inside]
            order = np.lexsort((triples[:, 2], triples[:, 1], triples[:, 0], n2))
            return triples[order], n2[order]
        bound *= 2


def fill_fermi_sphere(edge: float, electrons: int) -> BoxGas:
    """Occupy the lowest |k|^2 shells of a box gas with ``electrons`` electrons.

    Shells are filled two electrons per state in order of increasing |n|^2
    (lexicographic within a shell).  When the count lands mid-shell the
    remainder is spread uniformly over the degenerate shell as fractional
    occupation, which keeps the occupied set inversion-symmetric and the
    energy deterministic.
    """
    count = int(electrons)
    if count != electrons or count < 1:
        raise ValueError(f"electron count must be a positive integer, got {electrons}")
    triples, n2 = _enumerate_sphere(math.ceil(count / 2))
    occupations = np.zeros(n2.shape[0])
    remaining = float(count)
    start = 0
    while remaining > 0.0:
        stop = start + int(np.searchsorted(n2[start:], n2[start], side="right"))
        degeneracy = stop - start
        capacity = 2.0 * degeneracy
        if remaining >= capacity:
            occupations[start:stop] = 2.0
            remaining -= capacity
        else:
            occupations[start:stop] = remaining / degeneracy
            remaining = 0.0
        start = stop
    return BoxGas(float(edge), count, triples[:start], occupations[:start])


def kinetic_discrete(gas: BoxGas) -> EnergyResult:
    """Kinetic energy (1/2) sum n(k) |k|^2 of the occupied states."""
    base = float(np.sum(gas.occupations * gas.n_squared.astype(np.float64)))
    ksq = (TWO_PI / gas.edge) ** 2
    value = 0.5 * ksq * base
    meta = {"edge": gas.edge, "electrons": gas.electrons, "states": len(gas.occupations)}
    return EnergyResult(value, GAS_DISCRETE, meta)


def fermi_wavevector(nbar: float) -> float:
    """Fermi wavevector (3 pi^2 nbar)^(1/3) of a gas at mean density nbar."""
    if not (np.isfinite(nbar) and nbar > 0.0):
        raise NonPositiveDensityError(f"mean density must be positive, got {nbar}")
    return (3.0 * math.pi**2 * nbar) ** (1.0 / 3.0)


def t_g_continuum(nbar: float) -> float:
    """Continuum kinetic energy per volume CTF nbar^(5/3).

    Equals fermi_wavevector(nbar)^5 / (10 pi^2); the closed form in nbar is
    used directly.
    """
    if not (np.isfinite(nbar) and nbar > 0.0):
        raise NonPositiveDensityError(f"mean density must be positive, got {nbar}")
    return CTF * nbar ** (5.0 / 3.0)


@dataclass(frozen=True)
class ConvergenceRow:
    """One rung of the fixed-density continuum ladder."""

    electrons: int
    edge: float
    energy_per_volume: float
    continuum_value: float
    relative_error: float


def continuum_convergence(
    nbar: float, ladder: Sequence[int]
) -> tuple[ConvergenceRow, ...]:
    """Discrete T_g / V against CTF nbar^(5/3) along an electron-count ladder.

    Each rung keeps the mean density fixed by setting the box edge to
    (N_e / nbar)^(1/3).  Shell effects make the error noisy but it decays
    toward zero as the count grows.
    """
    reference = t_g_continuum(nbar)
    rows = []
    for entry in ladder:
        count = int(entry)
        if count != entry or count < 2:
            raise ValueError(f"ladder entries must be integers >= 2, got {entry}")
        edge = (count / nbar) ** (1.0 / 3.0)
        gas = fill_fermi_sphere(edge, count)
        per_volume = kinetic_discrete(gas).value / gas.volume
        error = abs(per_volume - reference) / reference
        rows.append(ConvergenceRow(count, edge, per_volume, reference, error))
    return tuple(rows)


def scaled_gas_identity(edge: float, electrons: int, s: ScalingParams) -> GasScalingReport:
    """Kinetic energy factor of the scaled gas, built from first principles.

    The scaled orbitals are alpha^(m/2) a^(-3/2) exp(i beta^p k . r) on the
    box a / beta^p: occupations are unchanged, each wavevector picks up
    beta^p, and each state's norm squared becomes alpha^m (a_scaled / a)^3.
    The resulting energy factor is alpha^m / beta^p regardless of the shell
    structure.  A filled ground shell only (T = 0) reports the predicted
    factor as observed, since 0/0 carries no information.
    """
    gas = fill_fermi_sphere(edge, electrons)
    unscaled = kinetic_discrete(gas).value
    contraction = s.contraction_factor
    # beta^p can underflow to zero for extreme p; catch it before dividing
    if contraction <= 0.0 or not np.isfinite(contraction):
        raise OverflowError(f"contraction factor {contraction} is not representable")
    edge_scaled = gas.edge / contraction
    if not (np.isfinite(edge_scaled) and edge_scaled > 0.0):
        raise OverflowError(
            f"scaled box edge {edge_scaled} is not representable"
        )
    norm_sq = s.amplitude_factor * (edge_scaled / gas.edge) ** 3
    base = float(np.sum(gas.occupations * gas.n_squared.astype(np.float64)))
    ksq_scaled = (contraction * (TWO_PI / gas.edge)) ** 2
    scaled = norm_sq * (0.5 * ksq_scaled * base)
    if not np.isfinite(scaled):
        raise OverflowError("scaled gas energy overflows")
    predicted = s.predicted_ts_factor()
    observed = scaled / unscaled if unscaled > 0.0 else predicted
    return GasScalingReport(unscaled, scaled, predicted, observed)


def tf_local_gas(n: DensityField) -> EnergyResult:
    """Thomas-Fermi energy built by the local-gas rule.

    At each point the density is matched by a gas of the same mean density
    and its continuum kinetic energy per volume CTF n(r)^(5/3) is integrated
    over the grid (zero wherever the density vanishes).  Algebraically this
    is the Thomas-Fermi functional; the route is what differs.
    """
    from .grid import integrate_values

    value = CTF * float(integrate_values(n.grid, n.values ** (5.0 / 3.0)))
    meta = {
        "points_per_axis": n.grid.points_per_axis,
        "spacing": n.grid.spacing,
        "boundary": n.grid.boundary,
    }
    return EnergyResult(value, GAS_CONTINUUM, meta)


def tf_scaled_corrected(n: DensityField, s: ScalingParams) -> EnergyResult:
    """Thomas-Fermi energy of the scaled density via the scaled-gas rule.

    Matching the scaled density pointwise with *scaled* gases multiplies the
    local kinetic energy density by alpha^m / beta^p instead of re-applying
    the unscaled formula, so the result is (alpha^m / beta^p) t_tf(n): the
    same factor the orbital functional obeys.
    """
    factor = s.predicted_ts_factor()
    base = t_tf(n)
    value = factor * base.value
    if not np.isfinite(value):
        raise OverflowError("corrected scaled energy overflows")
    meta = dict(base.metadata)
    meta["route"] = "scaled_gas"
    meta["factor"] = factor
    return EnergyResult(value, TF, meta)

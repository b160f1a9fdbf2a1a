"""Generalized homogeneous coordinate scaling of densities and orbitals.

A scaling (alpha, beta, m, p) sends a density n(r) to alpha^m n(beta^p r)
and an orbital phi(r) to alpha^(m/2) phi(beta^p r).  Scaled fields reuse the
original samples on a co-scaled grid: the values pick up the amplitude
factor while the spacing and origin divide by beta^p.  With this convention
the discrete functionals obey the continuum scaling laws exactly (to
rounding), independent of resolution:

* von Weizsaecker and the orbital kinetic energy scale by alpha^m / beta^p
  on 3-d grids (alpha^m beta^p on 1-d grids, where the volume element
  contributes beta^-p instead of beta^-3p);
* Thomas-Fermi scales by alpha^(5m/3) / beta^(3p), which is the mismatch
  that motivates the corrected gas-based scaling elsewhere in this package;
* the electron count scales by alpha^m / beta^(dim p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .densities import DensityField
from .errors import NonPositiveValueError
from .functionals import EnergyResult, OrbitalSet
from .grid import Grid, ScalarField

#: Default probe ladder for exponent regressions.
PROBE_LADDER = (0.5, 0.8, 1.25, 2.0)


@dataclass(frozen=True)
class ScalingParams:
    """Amplitude base alpha, coordinate base beta, and exponents m, p."""

    alpha: float
    beta: float
    m: float
    p: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        for name in ("m", "p"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def amplitude_factor(self) -> float:
        """alpha^m, the factor applied to density values."""
        return self.alpha**self.m

    @property
    def contraction_factor(self) -> float:
        """beta^p, the factor coordinates are multiplied by."""
        return self.beta**self.p

    def predicted_ts_factor(self) -> float:
        """Kinetic-energy factor alpha^m / beta^p for 3-d densities."""
        return self.alpha**self.m / self.beta**self.p

    def predicted_tf_naive_factor(self) -> float:
        """Factor alpha^(5m/3) / beta^(3p) picked up by Thomas-Fermi in 3-d."""
        return self.alpha ** (5.0 * self.m / 3.0) / self.beta ** (3.0 * self.p)

    def predicted_paradox_ratio(self) -> float:
        """Naive over corrected Thomas-Fermi factor, alpha^(2m/3) / beta^(2p)."""
        return self.alpha ** (2.0 * self.m / 3.0) / self.beta ** (2.0 * self.p)


def _scaled_grid(grid: Grid, shrink: float) -> Grid:
    spacing = grid.spacing / shrink
    if not (np.isfinite(spacing) and spacing > 0.0):
        raise OverflowError(f"scaled spacing {spacing} is not representable")
    origin = tuple(c / shrink for c in grid.origin)
    return Grid(grid.dim, grid.points_per_axis, spacing, grid.boundary, origin)


def scale_density(n: DensityField, s: ScalingParams) -> DensityField:
    """Scaled density on the co-scaled grid, reusing the original samples."""
    amp = s.amplitude_factor
    shrink = s.contraction_factor
    # shrink can underflow to zero for extreme p; catch it before dividing
    if not (np.isfinite(amp) and np.isfinite(shrink) and shrink > 0.0):
        raise OverflowError(
            f"scaling factors overflow: alpha^m={amp}, beta^p={shrink}"
        )
    electrons = n.electrons * amp / shrink**n.grid.dim
    if not np.isfinite(electrons):
        raise OverflowError(
            f"scaled electron count overflows: alpha^m={amp}, beta^p={shrink}"
        )
    values = amp * n.values
    if values.size and not np.isfinite(values.max()):
        raise OverflowError(f"scaled density values overflow at alpha^m={amp}")
    return DensityField(ScalarField(_scaled_grid(n.grid, shrink), values), electrons)


def scale_orbitals(phi: OrbitalSet, s: ScalingParams) -> OrbitalSet:
    """Scaled orbital set: same samples, co-scaled grid, amplitude folded in.

    The stored samples are untouched; the set's density amplitude multiplies
    by alpha^m (so each physical orbital gains alpha^(m/2)).  Occupations and
    the electron count of the reference system stay fixed.  The induced
    density of the scaled set then matches ``scale_density`` of the original
    induced density sample for sample.
    """
    amp = phi.amplitude * s.amplitude_factor
    if not (np.isfinite(amp) and amp > 0.0):
        raise OverflowError(f"orbital amplitude overflow: {amp}")
    return OrbitalSet(
        grid=_scaled_grid(phi.grid, s.contraction_factor),
        orbitals=phi.orbitals,
        occupations=phi.occupations,
        electrons=phi.electrons,
        amplitude=amp,
        validate=False,
    )


def homogeneity_exponents(
    functional: Callable[[DensityField], "EnergyResult | float"],
    n: DensityField,
    probe: Sequence[ScalingParams],
) -> tuple[float, float]:
    """Least-squares scaling exponents of a density functional.

    Evaluates the functional on scaled copies of ``n`` and regresses
    log T against m log(alpha) over the probe entries with beta == 1, and
    against p log(beta) over the entries with alpha == 1.  A functional that
    scales like alpha^m / beta^p returns slopes (1, -1); Thomas-Fermi on 3-d
    grids returns (5/3, -3); the electron count returns (1, -3).

    Raises :class:`NonPositiveValueError` when any evaluation is not a
    positive finite number, since the regression runs in log space.
    """
    alpha_group = [s for s in probe if s.beta == 1.0]
    beta_group = [s for s in probe if s.alpha == 1.0]
    for group, label in ((alpha_group, "beta == 1"), (beta_group, "alpha == 1")):
        if len(group) < 4:
            raise ValueError(
                f"probe needs at least 4 entries with {label}, got {len(group)}"
            )

    def evaluate(s: ScalingParams) -> float:
        result = functional(scale_density(n, s))
        value = result.value if isinstance(result, EnergyResult) else float(result)
        if not (np.isfinite(value) and value > 0.0):
            raise NonPositiveValueError(
                f"functional returned {value} under scaling {s}; log regression "
                "needs positive values"
            )
        return value

    def slope(group: list[ScalingParams], x_of: Callable[[ScalingParams], float]) -> float:
        x = np.array([x_of(s) for s in group])
        if np.ptp(x) == 0.0:
            raise ValueError("probe group does not vary the regression abscissa")
        y = np.array([math.log(evaluate(s)) for s in group])
        return float(np.polyfit(x, y, 1)[0])

    slope_alpha = slope(alpha_group, lambda s: s.m * math.log(s.alpha))
    slope_beta = slope(beta_group, lambda s: s.p * math.log(s.beta))
    return (slope_alpha, slope_beta)


def default_probe() -> list[ScalingParams]:
    """Ladder probe: alpha then beta stepped over PROBE_LADDER at m = p = 1."""
    probe = [ScalingParams(a, 1.0, 1.0, 1.0) for a in PROBE_LADDER]
    probe += [ScalingParams(1.0, b, 1.0, 1.0) for b in PROBE_LADDER]
    return probe

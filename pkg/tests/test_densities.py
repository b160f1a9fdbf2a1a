"""Model densities, their grids, and the closed-form oracles."""

import math

import numpy as np
import pytest

import ke_lab as kl
from ke_lab.grid import ScalarField, integrate


def test_model_validation():
    with pytest.raises(ValueError):
        kl.DensityModel("lorentzian", 1.0, 1.0)
    with pytest.raises(ValueError):
        kl.DensityModel(kl.GAUSSIAN, 0.0, 1.0)
    with pytest.raises(ValueError):
        kl.DensityModel(kl.GAUSSIAN, 1.0, -2.0)


def test_default_grid_gaussian_spans_eight_sigmas():
    model = kl.DensityModel(kl.GAUSSIAN, 1.0, 4.0)
    grid = kl.default_grid(model, 64, dim=3)
    assert grid.boundary == kl.OPEN
    assert grid.origin == (-4.0,) * 3
    assert grid.axis_coordinates(0)[-1] == pytest.approx(4.0, abs=1e-12)


@pytest.mark.parametrize("points", [64, 65])
def test_default_grid_hydrogenic_avoids_the_nucleus(points):
    model = kl.DensityModel(kl.HYDROGENIC_1S, 2.0, 1.0)
    grid = kl.default_grid(model, points, dim=3)
    x = grid.axis_coordinates(0)
    # no sample sits on the cusp regardless of point-count parity
    assert np.min(np.abs(x)) == pytest.approx(0.5 * grid.spacing, rel=1e-9)


def test_default_grid_uniform_box_is_periodic():
    model = kl.DensityModel(kl.UNIFORM_BOX, 1.0, 2.0)
    grid = kl.default_grid(model, 32, dim=3)
    assert grid.is_periodic
    assert grid.spacing == pytest.approx(2.0 / 32.0, rel=1e-15)
    assert grid.total_volume == pytest.approx(8.0, rel=1e-13)


def test_uniform_box_requires_periodic_boundaries():
    model = kl.DensityModel(kl.UNIFORM_BOX, 1.0, 1.0)
    with pytest.raises(kl.WrongBoundaryError):
        kl.sample_density(model, kl.Grid(3, 16, 1.0 / 16.0, kl.OPEN))


def test_undecayed_domain_is_rejected():
    model = kl.DensityModel(kl.GAUSSIAN, 1.0, 1.0)
    small = kl.Grid(3, 16, 0.1, kl.OPEN, (-0.75,) * 3)
    with pytest.raises(kl.DomainTooSmallError):
        kl.sample_density(model, small)


def test_density_field_rejects_negative_values():
    grid = kl.Grid(1, 16, 0.1)
    with pytest.raises(ValueError):
        kl.DensityField(ScalarField(grid, np.full(16, -1.0)), 1.0)


def test_density_field_electrons_must_match_quadrature():
    grid = kl.Grid(1, 16, 0.1)
    field = ScalarField(grid, np.ones(16))
    with pytest.raises(ValueError):
        kl.DensityField(field, 99.0)


def test_zero_density_is_allowed():
    grid = kl.Grid(1, 16, 0.1)
    n = kl.DensityField(ScalarField(grid, np.zeros(16)), 0.0)
    assert n.electrons == 0.0


def test_gaussian_integrates_to_electron_count(density):
    n = density(kl.GAUSSIAN, 2.0, 1.0, 64, 3)
    assert n.electrons == pytest.approx(2.0, rel=1e-8)
    assert n.electrons == pytest.approx(integrate(n.field), rel=1e-12)


def test_hydrogenic_quadrature_drift_is_recorded(density):
    # the cusp costs about a percent of mass at 64 points per axis; the
    # field records the actual quadrature value rather than the model count
    n = density(kl.HYDROGENIC_1S, 2.0, 1.0, 64, 3)
    assert n.electrons == pytest.approx(integrate(n.field), rel=1e-12)
    assert n.electrons == pytest.approx(2.0, rel=2e-2)
    assert abs(n.electrons - 2.0) > 1e-4


def test_uniform_box_samples_are_constant(density):
    n = density(kl.UNIFORM_BOX, 1.0, 1.0, 32, 3)
    assert np.all(n.values == 1.0)
    assert n.electrons == pytest.approx(1.0, rel=1e-13)


def test_analytic_t_vw_closed_forms():
    assert kl.analytic_t_vw(kl.DensityModel(kl.GAUSSIAN, 1.0, 1.0)) == 0.75
    assert kl.analytic_t_vw(kl.DensityModel(kl.HYDROGENIC_1S, 2.0, 1.0)) == 1.0
    assert kl.analytic_t_vw(kl.DensityModel(kl.UNIFORM_BOX, 1.0, 1.0)) == 0.0


def test_analytic_t_tf_uniform_box_is_ctf():
    model = kl.DensityModel(kl.UNIFORM_BOX, 1.0, 1.0)
    assert kl.analytic_t_tf(model) == pytest.approx(kl.CTF, rel=1e-15)


def test_analytic_t_tf_gaussian_matches_quadrature(density):
    model = kl.DensityModel(kl.GAUSSIAN, 1.0, 1.0)
    n = density(kl.GAUSSIAN, 1.0, 1.0, 64, 3)
    assert kl.t_tf(n).value == pytest.approx(kl.analytic_t_tf(model), rel=1e-10)


def test_analytic_t_tf_hydrogenic_closed_form():
    model = kl.DensityModel(kl.HYDROGENIC_1S, 1.0, 2.0)
    expect = kl.CTF * 4.0 * (27.0 / 125.0) * math.pi ** (-2.0 / 3.0)
    assert kl.analytic_t_tf(model) == pytest.approx(expect, rel=1e-15)


def test_one_dimensional_gaussian_target(density):
    n = density(kl.GAUSSIAN, 2.0, 1.0, 64, 1)
    assert n.grid.dim == 1
    assert np.all(n.values > 0.0)
    assert n.electrons == pytest.approx(2.0, rel=1e-10)

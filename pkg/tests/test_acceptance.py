"""End-to-end acceptance checks: exact scaling laws, oracle values, determinism.

Each test pins the tolerances and runtime budgets the package promises.
Scaling factors under grid co-scaling are exact identities, so those
tolerances sit at rounding level; quadrature-limited checks carry the
grid-accuracy tolerances measured for the shipped default grids.
"""

import math
import time

import numpy as np
import pytest

import ke_lab as kl
from ke_lab.cli import main
from ke_lab.constants import CTF, TWO_PI
from ke_lab.electron_gas import (
    continuum_convergence,
    fill_fermi_sphere,
    kinetic_discrete,
    scaled_gas_identity,
    tf_scaled_corrected,
)
from ke_lab.functionals import t_tf, t_vw, vw_from_orbital_identity
from ke_lab.scaling import (
    ScalingParams,
    default_probe,
    homogeneity_exponents,
    scale_density,
)
from ke_lab.search import SearchConfig, minimize_ts, objective_gradient_check

from conftest import SCALING_SWEEP

FACTOR_TOL = 1e-12


def sweep_params():
    return [ScalingParams(*tup) for tup in SCALING_SWEEP]


def test_01_vw_scaling_factor_exact_on_both_families(density):
    start = time.perf_counter()
    for family in (kl.GAUSSIAN, kl.HYDROGENIC_1S):
        n = density(family, 2.0, 1.0, 64, 3)
        base = t_vw(n).value
        for s in sweep_params():
            observed = t_vw(scale_density(n, s)).value / base
            assert observed == pytest.approx(s.predicted_ts_factor(), rel=FACTOR_TOL)
    assert time.perf_counter() - start <= 30.0


def test_02_tf_naive_scaling_factor_exact_on_both_families(density):
    start = time.perf_counter()
    for family in (kl.GAUSSIAN, kl.HYDROGENIC_1S):
        n = density(family, 2.0, 1.0, 64, 3)
        base = t_tf(n).value
        for s in sweep_params():
            observed = t_tf(scale_density(n, s)).value / base
            assert observed == pytest.approx(
                s.predicted_tf_naive_factor(), rel=FACTOR_TOL
            )
    assert time.perf_counter() - start <= 30.0


def test_03_corrected_tf_restores_the_orbital_factor(density):
    n = density(kl.GAUSSIAN, 2.0, 1.0, 64, 3)
    base = t_tf(n).value
    for s in sweep_params():
        corrected = tf_scaled_corrected(n, s).value
        naive = t_tf(scale_density(n, s)).value
        assert corrected / base == pytest.approx(
            s.predicted_ts_factor(), rel=FACTOR_TOL
        )
        assert naive / corrected == pytest.approx(
            s.predicted_paradox_ratio(), rel=FACTOR_TOL
        )


def test_04_scaled_gas_factor_exact_for_closed_shells():
    start = time.perf_counter()
    for electrons in (2, 14, 38, 66):
        for s in sweep_params():
            report = scaled_gas_identity(1.0, electrons, s)
            assert report.observed_factor == pytest.approx(
                s.predicted_ts_factor(), rel=FACTOR_TOL
            )
    assert time.perf_counter() - start <= 5.0


def test_05_gas_energy_density_reaches_the_continuum_value():
    start = time.perf_counter()
    rows = continuum_convergence(1.0, (100, 1000, 10000, 100000))
    errors = [row.relative_error for row in rows]
    assert errors[0] > errors[1] > errors[2] > errors[3]
    assert errors[-1] <= 0.02
    assert rows[-1].continuum_value == CTF
    assert time.perf_counter() - start <= 60.0


def test_06_functional_values_match_the_closed_forms(density):
    gaussian = density(kl.GAUSSIAN, 1.0, 1.0, 64, 3)
    assert t_vw(gaussian).value == pytest.approx(0.75, rel=1e-4)

    hydrogenic = density(kl.HYDROGENIC_1S, 2.0, 1.0, 256, 3)
    assert t_vw(hydrogenic).value == pytest.approx(1.0, rel=5e-3)

    uniform = density(kl.UNIFORM_BOX, 1.0, 1.0, 16, 3)
    assert t_tf(uniform).value == pytest.approx(CTF, rel=1e-12)

    gas = kinetic_discrete(fill_fermi_sphere(1.0, 14))
    assert gas.value == pytest.approx(6.0 * TWO_PI**2, rel=1e-12)


def test_07_vw_equals_the_single_orbital_kinetic_energy(density):
    n = density(kl.GAUSSIAN, 2.0, 1.0, 64, 3)
    grad_route, orbital_route = vw_from_orbital_identity(n)
    assert orbital_route.value == pytest.approx(grad_route.value, rel=1e-3)


def test_08_constrained_search_recovers_the_vw_value(density):
    start = time.perf_counter()
    n = density(kl.GAUSSIAN, 2.0, 1.0, 64, 1)
    cfg = SearchConfig(
        orbital_count=1,
        penalty_weight=1e10,
        step_size=1e-3,
        max_iterations=50000,
        convergence_tol=1e-2,
    )
    result = minimize_ts(n, cfg)
    assert result.converged
    assert result.density_residual <= 1e-4
    assert result.energy == pytest.approx(t_vw(n).value, rel=1e-6)
    assert objective_gradient_check(n, cfg, 1e-5) <= 1e-5
    assert time.perf_counter() - start <= 60.0


def test_09_regressed_exponents_match_the_scaling_laws(density):
    n = density(kl.GAUSSIAN, 2.0, 1.0, 64, 3)
    vw_alpha, vw_beta = homogeneity_exponents(t_vw, n, default_probe())
    assert vw_alpha == pytest.approx(1.0, abs=1e-6)
    assert vw_beta == pytest.approx(-1.0, abs=1e-6)
    tf_alpha, tf_beta = homogeneity_exponents(t_tf, n, default_probe())
    assert tf_alpha == pytest.approx(5.0 / 3.0, abs=1e-6)
    assert tf_beta == pytest.approx(-3.0, abs=1e-6)


@pytest.mark.parametrize(
    "args",
    [
        ("verify-scaling",),
        ("verify-scaling", "--functional", "ks", "--format", "json"),
        ("gas-converge",),
        ("paradox",),
        ("search",),
        ("tabulate",),
    ],
    ids=lambda args: args[0] if len(args) == 1 else f"{args[0]}-json",
)
def test_10_every_cli_command_is_byte_deterministic(capsys, args):
    code_first = main(list(args))
    first = capsys.readouterr()
    code_second = main(list(args))
    second = capsys.readouterr()
    assert code_first == code_second == 0
    assert first.out == second.out
    assert first.err == second.err == ""

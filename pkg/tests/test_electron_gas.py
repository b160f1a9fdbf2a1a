"""Box electron gas: shell filling, continuum limit, exact scaling factor."""

import math

import numpy as np
import pytest

import ke_lab as kl
from ke_lab.constants import CTF, TWO_PI
from ke_lab.electron_gas import (
    BoxGas,
    continuum_convergence,
    fermi_wavevector,
    fill_fermi_sphere,
    kinetic_discrete,
    scaled_gas_identity,
    t_g_continuum,
    tf_local_gas,
    tf_scaled_corrected,
)
from ke_lab.functionals import GAS_CONTINUUM, GAS_DISCRETE, TF, t_tf
from ke_lab.scaling import ScalingParams

# electron counts that exactly close a shell, with their state counts
CLOSED_SHELLS = ((2, 1), (14, 7), (38, 19), (54, 27), (66, 33))


class TestBoxGasValidation:
    def ground_state(self, **overrides):
        kwargs = {
            "edge": 1.0,
            "electrons": 2,
            "triples": np.zeros((1, 3), dtype=np.int64),
            "occupations": np.array([2.0]),
        }
        kwargs.update(overrides)
        return BoxGas(**kwargs)

    def test_valid_ground_state(self):
        gas = self.ground_state()
        assert gas.volume == 1.0
        assert gas.mean_density == 2.0
        assert np.array_equal(gas.k_vectors(), np.zeros((1, 3)))

    @pytest.mark.parametrize("edge", [0.0, -1.0, math.inf])
    def test_bad_edge_rejected(self, edge):
        with pytest.raises(ValueError, match="edge"):
            self.ground_state(edge=edge)

    def test_bad_electron_count_rejected(self):
        with pytest.raises(ValueError, match="electron count"):
            self.ground_state(electrons=0)

    def test_triples_shape_checked(self):
        with pytest.raises(ValueError, match="shape"):
            self.ground_state(triples=np.zeros((1, 2), dtype=np.int64))

    def test_one_occupation_per_state(self):
        with pytest.raises(ValueError, match="one occupation"):
            self.ground_state(occupations=np.array([1.0, 1.0]))

    def test_empty_gas_rejected(self):
        with pytest.raises(ValueError, match="at least one"):
            self.ground_state(
                triples=np.zeros((0, 3), dtype=np.int64), occupations=np.zeros(0)
            )

    @pytest.mark.parametrize("occ", [-0.5, 2.5])
    def test_occupation_range_checked(self, occ):
        with pytest.raises(ValueError, match=r"\[0, 2\]"):
            self.ground_state(occupations=np.array([occ]), electrons=1)

    def test_shell_ordering_checked(self):
        triples = np.array([[1, 0, 0], [0, 0, 0]], dtype=np.int64)
        with pytest.raises(ValueError, match="sorted"):
            self.ground_state(triples=triples, occupations=np.array([2.0, 2.0]), electrons=4)

    def test_occupation_sum_matches_electrons(self):
        with pytest.raises(ValueError, match="sum"):
            self.ground_state(occupations=np.array([1.5]))


class TestFillFermiSphere:
    def test_two_electrons_fill_the_ground_state(self):
        gas = fill_fermi_sphere(1.0, 2)
        assert gas.triples.tolist() == [[0, 0, 0]]
        assert gas.occupations.tolist() == [2.0]

    def test_partial_shell_spreads_fractional_occupation(self):
        gas = fill_fermi_sphere(1.0, 4)
        assert len(gas.occupations) == 7
        assert gas.occupations[0] == 2.0
        # 2 leftover electrons over the 6-fold shell: exactly 1/3 each
        assert np.all(gas.occupations[1:] == 1.0 / 3.0)

    @pytest.mark.parametrize("electrons, states", CLOSED_SHELLS)
    def test_closed_shells_are_fully_occupied(self, electrons, states):
        gas = fill_fermi_sphere(1.0, electrons)
        assert len(gas.occupations) == states
        assert np.all(gas.occupations == 2.0)

    def test_occupied_set_is_inversion_symmetric(self):
        gas = fill_fermi_sphere(2.0, 38)
        table = {tuple(t): o for t, o in zip(gas.triples.tolist(), gas.occupations)}
        for triple, occ in table.items():
            mirror = tuple(-c for c in triple)
            assert table[mirror] == occ

    def test_states_sorted_lexicographically_within_shells(self):
        gas = fill_fermi_sphere(2.0, 38)
        n2 = gas.n_squared
        for i in range(len(n2) - 1):
            assert n2[i] <= n2[i + 1]
            if n2[i] == n2[i + 1]:
                assert tuple(gas.triples[i]) < tuple(gas.triples[i + 1])

    @pytest.mark.parametrize("electrons", [0, -2, 2.5])
    def test_bad_counts_rejected(self, electrons):
        with pytest.raises(ValueError, match="positive integer"):
            fill_fermi_sphere(1.0, electrons)


class TestKineticDiscrete:
    def test_ground_state_costs_nothing(self):
        assert kinetic_discrete(fill_fermi_sphere(1.0, 2)).value == 0.0

    def test_first_closed_shell_value(self):
        # 6 states at |n|^2 = 1, doubly occupied: T = 6 (2 pi / a)^2
        result = kinetic_discrete(fill_fermi_sphere(1.0, 14))
        assert result.functional == GAS_DISCRETE
        assert result.value == pytest.approx(6.0 * TWO_PI**2, rel=1e-13)

    def test_doubling_the_box_quarters_the_energy(self):
        small = kinetic_discrete(fill_fermi_sphere(1.0, 14)).value
        large = kinetic_discrete(fill_fermi_sphere(2.0, 14)).value
        assert large / small == 0.25


class TestContinuumGas:
    @pytest.mark.parametrize("nbar", [0.5, 1.0, 2.0])
    def test_fermi_wavevector_round_trip(self, nbar):
        kf = fermi_wavevector(nbar)
        assert kf**3 / (3.0 * math.pi**2) == pytest.approx(nbar, rel=1e-14)

    @pytest.mark.parametrize("nbar", [0.5, 1.0, 2.0])
    def test_energy_density_equals_fifth_power_form(self, nbar):
        kf = fermi_wavevector(nbar)
        assert t_g_continuum(nbar) == pytest.approx(
            kf**5 / (10.0 * math.pi**2), rel=1e-14
        )

    def test_unit_density_gives_the_tf_constant(self):
        assert t_g_continuum(1.0) == CTF

    @pytest.mark.parametrize("nbar", [0.0, -1.0, math.nan])
    def test_nonpositive_density_rejected(self, nbar):
        with pytest.raises(kl.NonPositiveDensityError):
            fermi_wavevector(nbar)
        with pytest.raises(kl.NonPositiveDensityError):
            t_g_continuum(nbar)


class TestContinuumConvergence:
    def test_rows_carry_the_fixed_density_geometry(self):
        rows = continuum_convergence(2.0, (14, 38))
        for row in rows:
            assert row.edge == pytest.approx((row.electrons / 2.0) ** (1.0 / 3.0))
            assert row.continuum_value == t_g_continuum(2.0)

    def test_ground_state_rung_misses_by_everything(self):
        (row,) = continuum_convergence(1.0, (2,))
        assert row.energy_per_volume == 0.0
        assert row.relative_error == 1.0

    def test_error_shrinks_when_the_ladder_doubles(self):
        # shell effects make single rungs noisy; compare ladder means
        ladder = tuple(64 * 2**i for i in range(8))
        doubled = tuple(128 * 2**i for i in range(8))
        mean = np.mean([r.relative_error for r in continuum_convergence(1.0, ladder)])
        mean_doubled = np.mean(
            [r.relative_error for r in continuum_convergence(1.0, doubled)]
        )
        assert mean_doubled < mean
        assert mean < 5e-3

    @pytest.mark.parametrize("entry", [1, 0, 2.5])
    def test_bad_ladder_entries_rejected(self, entry):
        with pytest.raises(ValueError, match=">= 2"):
            continuum_convergence(1.0, (entry,))


class TestScaledGasIdentity:
    def test_identity_scaling_reports_factor_one(self):
        report = scaled_gas_identity(1.0, 14, ScalingParams(1.0, 1.0, 1.0, 1.0))
        assert report.observed_factor == 1.0
        assert report.predicted_factor == 1.0
        assert report.scaled_t == report.unscaled_t

    @pytest.mark.parametrize(
        "params, factor",
        [
            ((3.0, 2.0, 2.0, 1.0), 4.5),
            ((2.0, 2.0, 1.0, 2.0), 0.5),
            ((2.0, 2.0, 1.0, 1.0), 1.0),
        ],
    )
    def test_observed_factor_is_exactly_the_predicted_one(self, params, factor):
        report = scaled_gas_identity(1.0, 14, ScalingParams(*params))
        assert report.predicted_factor == pytest.approx(factor, rel=1e-14)
        assert report.observed_factor == pytest.approx(factor, rel=1e-12)
        assert report.scaled_t == pytest.approx(
            factor * report.unscaled_t, rel=1e-12
        )

    def test_shell_structure_does_not_matter(self):
        s = ScalingParams(3.0, 2.0, 2.0, 1.0)
        for electrons in (4, 14, 38, 66):
            report = scaled_gas_identity(1.0, electrons, s)
            assert report.observed_factor == pytest.approx(4.5, rel=1e-12)

    def test_zero_energy_gas_reports_the_prediction(self):
        report = scaled_gas_identity(1.0, 2, ScalingParams(3.0, 2.0, 2.0, 1.0))
        assert report.unscaled_t == 0.0
        assert report.observed_factor == report.predicted_factor

    @pytest.mark.parametrize("p", [3000.0, -3000.0])
    def test_unrepresentable_scales_raise(self, p):
        with pytest.raises(OverflowError):
            scaled_gas_identity(1.0, 14, ScalingParams(1.0, 2.0, 1.0, p))


class TestLocalGasFunctional:
    def test_matches_thomas_fermi_pointwise(self, density):
        n = density(kl.GAUSSIAN, 2.0, 1.0, 32, 3)
        local = tf_local_gas(n)
        assert local.functional == GAS_CONTINUUM
        assert local.value == pytest.approx(t_tf(n).value, rel=1e-13)

    def test_scaled_gas_rule_applies_the_orbital_factor(self, density):
        n = density(kl.GAUSSIAN, 2.0, 1.0, 32, 3)
        s = ScalingParams(2.0, 2.0, 1.0, 1.0)
        corrected = tf_scaled_corrected(n, s)
        assert corrected.functional == TF
        assert corrected.metadata["route"] == "scaled_gas"
        # alpha^m / beta^p = 1 here, while the naive rescaling loses 2^(4/3)
        assert corrected.value == pytest.approx(t_tf(n).value, rel=1e-15)
        from ke_lab.scaling import scale_density

        naive = t_tf(scale_density(n, s)).value
        assert naive / corrected.value == pytest.approx(2.0 ** (-4.0 / 3.0), rel=1e-12)
        assert s.predicted_paradox_ratio() == pytest.approx(
            2.0 ** (-4.0 / 3.0), rel=1e-15
        )

    def test_pure_amplitude_scaling_on_the_uniform_box(self, density):
        n = density(kl.UNIFORM_BOX, 8.0, 2.0, 16, 3)
        s = ScalingParams(8.0, 1.0, 1.0, 0.0)
        corrected = tf_scaled_corrected(n, s)
        assert corrected.value == pytest.approx(8.0 * t_tf(n).value, rel=1e-15)
        from ke_lab.scaling import scale_density

        naive = t_tf(scale_density(n, s)).value
        assert naive == pytest.approx(8.0 ** (5.0 / 3.0) * t_tf(n).value, rel=1e-12)

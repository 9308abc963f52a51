"""Tests for the correlated dephasing environment and its closed forms.

The decoherence factors have an independent oracle here: two-dimensional
Gauss-Hermite quadrature of the phase average over the joint Gaussian
frequency density.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from densecoding import (
    BellLabel,
    DephasingTimes,
    JointSpectrum,
    PauliLabel,
    Party,
    StructuralError,
    apply_pauli,
    bell_state,
    capacity_bob_noise,
    capacity_from_non_markovianity,
    decoherence_function,
    dephase_encoded_state,
    evolve_post_encoding,
    evolve_pre_encoding,
    fidelity,
    joint_dephasing_factor,
    non_markovianity,
    validate_density_matrix,
)

_GH_NODES, _GH_WEIGHTS = np.polynomial.hermite.hermgauss(96)


def phase_average_quadrature(spec: JointSpectrum, u: float, v: float) -> complex:
    """Oracle: E[exp(i(u wA + v wB))] by 2-D Gauss-Hermite quadrature."""
    cov = np.array([
        [spec.c_aa, spec.k * math.sqrt(spec.c_aa * spec.c_bb)],
        [spec.k * math.sqrt(spec.c_aa * spec.c_bb), spec.c_bb],
    ])
    vals, vecs = np.linalg.eigh(cov)
    scale = vecs @ np.diag(np.sqrt(np.clip(vals, 0.0, None)))
    z1, z2 = np.meshgrid(_GH_NODES, _GH_NODES, indexing="ij")
    w = (spec.omega0 / 2.0) + math.sqrt(2.0) * np.stack(
        [scale[0, 0] * z1 + scale[0, 1] * z2, scale[1, 0] * z1 + scale[1, 1] * z2])
    integrand = np.exp(1j * (u * w[0] + v * w[1]))
    weights = np.outer(_GH_WEIGHTS, _GH_WEIGHTS)
    return complex((weights * integrand).sum() / math.pi)


class TestDecoherenceFunction:
    def test_no_interaction(self):
        assert decoherence_function(JointSpectrum(), 0.0) == pytest.approx(1.0 + 0.0j)

    def test_reference_point(self):
        # omega0=2, c_aa=1, delta_n=1, t=1 -> exp(i) * exp(-1/2)
        val = decoherence_function(JointSpectrum(omega0=2, c_aa=1, delta_n=1), 1.0)
        assert val == pytest.approx(np.exp(1j) * math.exp(-0.5), abs=1e-14)

    def test_monotone_decay(self):
        spec = JointSpectrum()
        mags = [abs(decoherence_function(spec, t)) for t in np.linspace(0, 3, 20)]
        assert all(a > b for a, b in zip(mags, mags[1:]))

    @pytest.mark.parametrize("c_aa", [0.3, 0.7, 1.0, 1.8, 3.0])
    @pytest.mark.parametrize("t", [0.2, 0.5, 0.9, 1.4, 2.1])
    def test_against_quadrature(self, c_aa, t):
        spec = JointSpectrum(omega0=1.6, c_aa=c_aa, c_bb=0.9, k=0.4, delta_n=1.1)
        oracle = phase_average_quadrature(spec, spec.delta_n * t, 0.0)
        assert decoherence_function(spec, t) == pytest.approx(oracle, abs=1e-8)

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError):
            decoherence_function(JointSpectrum(), -0.5)


class TestJointDephasingFactor:
    def test_idle_receiver_reduces_to_sender_factor(self):
        spec = JointSpectrum(k=-0.7)
        t = 1.3
        assert joint_dephasing_factor(spec, DephasingTimes(t, 0.0)) == pytest.approx(
            decoherence_function(spec, t), abs=1e-14)

    def test_perfect_anticorrelation_preserves_magnitude(self):
        spec = JointSpectrum(c_aa=1.2, c_bb=1.2, k=-1.0)
        for t in (0.4, 1.1, 2.5):
            assert abs(joint_dephasing_factor(spec, DephasingTimes(t, t))) == pytest.approx(
                1.0, abs=1e-12)

    def test_uncorrelated_environments_factorize(self):
        spec = JointSpectrum(c_aa=0.8, c_bb=1.5, k=0.0)
        times = DephasingTimes(0.9, 1.4)
        joint = abs(joint_dephasing_factor(spec, times))
        local_a = abs(phase_average_quadrature(spec, spec.delta_n * times.t_a, 0.0))
        local_b = abs(phase_average_quadrature(spec, 0.0, spec.delta_n * times.t_b))
        assert joint == pytest.approx(local_a * local_b, abs=1e-8)

    @pytest.mark.parametrize("k", [-1.0, -0.5, 0.0, 0.6, 1.0])
    def test_against_quadrature(self, k):
        spec = JointSpectrum(omega0=2.3, c_aa=1.1, c_bb=0.6, k=k, delta_n=0.8)
        times = DephasingTimes(0.7, 1.2)
        oracle = phase_average_quadrature(
            spec, spec.delta_n * times.t_a, spec.delta_n * times.t_b)
        assert joint_dephasing_factor(spec, times) == pytest.approx(oracle, abs=1e-8)

    @given(st.floats(0.0, 3.0), st.floats(0.0, 3.0), st.floats(-1.0, 1.0))
    @settings(max_examples=60, deadline=None)
    def test_magnitude_never_exceeds_one(self, t_a, t_b, k):
        spec = JointSpectrum(c_aa=1.0, c_bb=1.4, k=k)
        assert abs(joint_dephasing_factor(spec, DephasingTimes(t_a, t_b))) <= 1.0 + 1e-12

    def test_degradation_monotone_unless_perfectly_anticorrelated(self):
        grid = np.linspace(0.0, 2.5, 26)
        for k in (-0.99, -0.5, 0.0, 0.7):
            spec = JointSpectrum(k=k)
            mags = [abs(joint_dephasing_factor(spec, DephasingTimes(t, t))) for t in grid]
            assert all(a >= b - 1e-12 for a, b in zip(mags, mags[1:]))
        spec = JointSpectrum(k=-1.0)
        mags = [abs(joint_dephasing_factor(spec, DephasingTimes(t, t))) for t in grid]
        assert all(m == pytest.approx(1.0, abs=1e-12) for m in mags)


class TestEvolvePreEncoding:
    def test_no_noise_gives_bell_state(self):
        np.testing.assert_allclose(
            evolve_pre_encoding(JointSpectrum(), 0.0),
            bell_state(BellLabel.PHI_PLUS), atol=1e-14)

    def test_full_dephasing(self):
        rho = evolve_pre_encoding(JointSpectrum(), 50.0)
        assert abs(rho[0, 3]) < 1e-12
        assert rho[0, 0] == pytest.approx(0.5) and rho[3, 3] == pytest.approx(0.5)

    def test_coherence_entry_is_decoherence_function(self):
        spec = JointSpectrum(omega0=1.7, c_aa=0.9, delta_n=1.2)
        t = 0.8
        rho = evolve_pre_encoding(spec, t)
        assert rho[0, 3] == pytest.approx(decoherence_function(spec, t) / 2.0, abs=1e-15)

    def test_always_valid(self):
        for t in (0.0, 0.3, 1.0, 4.0):
            validate_density_matrix(evolve_pre_encoding(JointSpectrum(k=0.2), t), dim=4)


class TestEvolvePostEncoding:
    def test_idle_receiver_without_compensation_is_identity(self):
        spec = JointSpectrum(k=-0.4)
        rho = apply_pauli(evolve_pre_encoding(spec, 1.1), PauliLabel.X, Party.ALICE)
        out = evolve_post_encoding(rho, spec, DephasingTimes(1.1, 0.0),
                                   phase_compensation=False)
        np.testing.assert_allclose(out, rho, atol=1e-14)

    @pytest.mark.parametrize("label", list(BellLabel))
    def test_anticorrelated_noise_recreates_bell_state(self, label):
        from densecoding import PAULI_FOR_BELL

        spec = JointSpectrum(k=-1.0)
        t = 1.905  # |kappa| ~ 0.163
        rho = evolve_pre_encoding(spec, t)
        rho = apply_pauli(rho, PAULI_FOR_BELL[label], Party.ALICE)
        out = evolve_post_encoding(rho, spec, DephasingTimes(t, t))
        assert fidelity(out, bell_state(label)) >= 1.0 - 1e-10

    @pytest.mark.parametrize("k", [-1.0, -0.6, 0.0, 0.5])
    @pytest.mark.parametrize("kappa", [0.2, 0.5, 0.8])
    def test_total_coherence_magnitude(self, k, kappa):
        # with equal times and variances the surviving coherence magnitude
        # is |kappa| ** (2 (1 + k))
        spec = JointSpectrum(k=k)
        t = math.sqrt(-2.0 * math.log(kappa))
        rho = apply_pauli(evolve_pre_encoding(spec, t), PauliLabel.X, Party.ALICE)
        out = evolve_post_encoding(rho, spec, DephasingTimes(t, t))
        assert 2.0 * abs(out[2, 1]) == pytest.approx(kappa ** (2 * (1 + k)), abs=1e-10)

    def test_total_factor_equals_joint_dephasing_factor(self):
        spec = JointSpectrum(omega0=2.2, c_aa=1.3, c_bb=0.7, k=-0.8, delta_n=0.9)
        times = DephasingTimes(0.9, 1.6)
        rho = evolve_pre_encoding(spec, times.t_a)
        out = evolve_post_encoding(rho, spec, times, phase_compensation=False)
        assert 2.0 * out[0, 3] == pytest.approx(
            joint_dephasing_factor(spec, times), abs=1e-12)

    def test_phase_compensation_leaves_real_magnitude(self):
        spec = JointSpectrum(k=-0.3)
        times = DephasingTimes(0.8, 0.8)
        out = evolve_post_encoding(evolve_pre_encoding(spec, 0.8), spec, times)
        coh = 2.0 * out[0, 3]
        assert coh.imag == pytest.approx(0.0, abs=1e-12)
        assert coh.real == pytest.approx(abs(joint_dephasing_factor(spec, times)), abs=1e-12)

    def test_rejects_coherence_outside_antidiagonal_pairs(self):
        rho = np.full((4, 4), 0.25, dtype=complex)
        with pytest.raises(StructuralError):
            evolve_post_encoding(rho, JointSpectrum(), DephasingTimes(1.0, 1.0))

    def test_rejects_two_active_pairs(self):
        rho = np.zeros((4, 4), dtype=complex)
        np.fill_diagonal(rho, 0.25)
        rho[0, 3] = rho[3, 0] = 0.1
        rho[1, 2] = rho[2, 1] = 0.1
        with pytest.raises(StructuralError):
            evolve_post_encoding(rho, JointSpectrum(), DephasingTimes(1.0, 1.0))


class TestDephaseEncodedState:
    def test_matches_staged_route_for_phi_sector(self):
        # Z-encoded states commute with the sender-side noise, so both noise
        # orders must give the same state
        spec = JointSpectrum(k=-0.6)
        times = DephasingTimes(1.2, 1.2)
        staged = evolve_post_encoding(
            apply_pauli(evolve_pre_encoding(spec, times.t_a), PauliLabel.Z, Party.ALICE),
            spec, times)
        reordered = dephase_encoded_state(
            apply_pauli(bell_state(BellLabel.PHI_PLUS), PauliLabel.Z, Party.ALICE),
            spec, times)
        np.testing.assert_allclose(staged, reordered, atol=1e-12)

    def test_psi_sector_sees_opposite_cross_term(self):
        # sender noise after an X encoding reverses the sign of the frequency
        # coefficient on Alice's side: cross term flips, oracle by quadrature
        spec = JointSpectrum(k=-0.8)
        times = DephasingTimes(0.9, 0.9)
        rho = dephase_encoded_state(bell_state(BellLabel.PSI_PLUS), spec, times,
                                    phase_compensation=False)
        oracle = phase_average_quadrature(
            spec, -spec.delta_n * times.t_a, spec.delta_n * times.t_b)
        assert 2.0 * rho[2, 1] == pytest.approx(oracle, abs=1e-8)

    def test_output_valid(self):
        spec = JointSpectrum(k=0.3)
        out = dephase_encoded_state(bell_state(BellLabel.PSI_MINUS), spec,
                                    DephasingTimes(0.7, 1.1))
        validate_density_matrix(out, dim=4)


class TestNonMarkovianity:
    def test_markovian_case_is_zero(self):
        assert non_markovianity(0.37, 0.0) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("k", [-1.0, 1.0])
    def test_extremal_correlation(self, k):
        assert non_markovianity(0.3, k) == pytest.approx(0.7, abs=1e-12)

    def test_reference_point(self):
        assert non_markovianity(0.5, -0.5) == pytest.approx(0.09460355750136051, abs=1e-12)

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.3])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            non_markovianity(bad, -0.5)


class TestCapacityFromNonMarkovianity:
    def test_zero_backflow_matches_uncorrelated_capacity(self):
        for kappa in (0.2, 0.5, 0.8):
            assert capacity_from_non_markovianity(0.0, kappa) == pytest.approx(
                capacity_bob_noise(kappa, 0.0), abs=1e-12)

    def test_maximal_backflow_gives_two_bits(self):
        for kappa in (0.1, 0.45, 0.9):
            assert capacity_from_non_markovianity(1.0 - kappa, kappa) == pytest.approx(
                2.0, abs=1e-10)

    @pytest.mark.parametrize("kappa", np.arange(0.1, 0.95, 0.1))
    @pytest.mark.parametrize("k", [-1.0, -0.75, -0.5, -0.25, 0.0])
    def test_round_trip_through_backflow(self, kappa, k):
        n = non_markovianity(kappa, k)
        assert capacity_from_non_markovianity(n, kappa) == pytest.approx(
            capacity_bob_noise(kappa, k), abs=1e-10)

    @pytest.mark.parametrize("kappa", [0.0, 1.0])
    def test_singular_domain(self, kappa):
        with pytest.raises(ValueError):
            capacity_from_non_markovianity(0.1, kappa)

    def test_out_of_range_backflow(self):
        with pytest.raises(ValueError):
            capacity_from_non_markovianity(0.9, 0.5)
        with pytest.raises(ValueError):
            capacity_from_non_markovianity(-0.1, 0.5)


class TestJointSpectrumValidation:
    def test_rejects_bad_variance(self):
        with pytest.raises(ValueError):
            JointSpectrum(c_aa=0.0)
        with pytest.raises(ValueError):
            JointSpectrum(c_bb=-1.0)

    def test_rejects_bad_correlation(self):
        with pytest.raises(ValueError):
            JointSpectrum(k=1.5)

    def test_rejects_negative_times(self):
        with pytest.raises(ValueError):
            DephasingTimes(-1.0, 0.0)
        with pytest.raises(ValueError):
            DephasingTimes(0.0, -2.0)

"""The lossy thermal channel and the receiver-side states it produces."""

import math

import numpy as np
import pytest

from qread.channels import (
    IdealCell,
    MemoryCell,
    SignalProfile,
    apply_lossy_channel,
    coherent_outputs,
    theta_states,
)
from qread.fock import (
    density_from_vector,
    lossy_channel_fock,
    tmsv_fock,
    trace_norm_diff,
    two_mode_squeezed_thermal_fock,
)
from qread.gaussian import symplectic_eigenvalues, thermal, tmsv, vacuum


def test_vacuum_becomes_thermal():
    out = apply_lossy_channel(vacuum(1), 0, 0.0, 0.8)
    np.testing.assert_allclose(out.cov, thermal(0.8).cov, atol=1e-14)


def test_full_transmission_is_identity():
    st = tmsv(1.3)
    out = apply_lossy_channel(st, 0, 1.0, 0.5)
    np.testing.assert_allclose(out.cov, st.cov, atol=1e-14)
    np.testing.assert_allclose(out.mean, st.mean, atol=1e-14)


def test_tmsv_half_loss_covariance_blocks():
    # tmsv(1) through r = 0.5, N_B = 0: signal 2I, cross (c/sqrt2) Z, idler 3I
    out = apply_lossy_channel(tmsv(1.0), 0, 0.5, 0.0)
    c = 2.0 * math.sqrt(2.0)
    np.testing.assert_allclose(out.cov[:2, :2], 2.0 * np.eye(2), atol=1e-12)
    np.testing.assert_allclose(
        out.cov[:2, 2:], (c / math.sqrt(2.0)) * np.diag([1.0, -1.0]), atol=1e-12
    )
    np.testing.assert_allclose(out.cov[2:, 2:], 3.0 * np.eye(2), atol=1e-12)


def test_tmsv_half_loss_matches_fock_route():
    # same state rebuilt brute-force in a truncated Fock basis
    d = 25
    rho = lossy_channel_fock(
        density_from_vector(tmsv_fock(1.0, d, 1e-7), 2, d), 0, 0.5, 0.0
    )
    c = 2.0 * math.sqrt(2.0)
    analytic = two_mode_squeezed_thermal_fock(2.0, 3.0, c / math.sqrt(2.0), d)
    assert trace_norm_diff(rho, analytic) < 1e-8


def test_theta_states_full_loss_and_ideal_land():
    # r0 = 0 kills all correlations; r1 = 1 returns the probe unchanged
    th0, th1 = theta_states(MemoryCell(0.0, 1.0, 0.0), 1.0)
    mu = 3.0
    np.testing.assert_allclose(
        th0.cov, np.diag([1.0, 1.0, mu, mu]), atol=1e-12
    )
    np.testing.assert_allclose(th1.cov, tmsv(1.0).cov, atol=1e-12)


def test_channel_composition_at_zero_bath():
    # pure-loss channels compose multiplicatively in the transmissivity
    st = tmsv(0.7)
    twice = apply_lossy_channel(apply_lossy_channel(st, 0, 0.8, 0.0), 0, 0.6, 0.0)
    once = apply_lossy_channel(st, 0, 0.48, 0.0)
    np.testing.assert_allclose(twice.cov, once.cov, atol=1e-12)
    np.testing.assert_allclose(twice.mean, once.mean, atol=1e-12)


def test_energy_ordering_at_zero_bath():
    # with no bath photons, lower transmissivity can only lose energy
    from qread.gaussian import mean_photons

    st = tmsv(1.0)
    energies = [
        mean_photons(apply_lossy_channel(st, 0, r, 0.0), 0)
        for r in (0.0, 0.25, 0.5, 0.75, 1.0)
    ]
    assert all(a <= b + 1e-12 for a, b in zip(energies, energies[1:]))


@pytest.mark.parametrize("r", [0.0, 0.3, 0.7, 1.0])
@pytest.mark.parametrize("n_b", [0.0, 0.01, 0.5])
@pytest.mark.parametrize("n_s", [0.05, 0.5, 1.5])
def test_theta_states_bona_fide_grid(r, n_b, n_s):
    th0, th1 = theta_states(MemoryCell(r, 1.0, n_b), n_s)
    for th in (th0, th1):
        assert np.min(symplectic_eigenvalues(th)) >= 1.0 - 1e-9


def test_coherent_outputs_closed_form():
    out0, out1 = coherent_outputs(MemoryCell(0.3, 0.9, 0.2), 0.4)
    for out, r in ((out0, 0.3), (out1, 0.9)):
        np.testing.assert_allclose(
            out.mean, [2.0 * math.sqrt(r * 0.4), 0.0], atol=1e-12
        )
        np.testing.assert_allclose(
            out.cov, (1.0 + 2.0 * (1.0 - r) * 0.2) * np.eye(2), atol=1e-12
        )


def test_cell_validation():
    with pytest.raises(ValueError):
        MemoryCell(0.9, 0.5, 0.0)  # r0 > r1
    with pytest.raises(ValueError):
        MemoryCell(0.1, 0.5, -0.2)
    with pytest.raises(ValueError):
        IdealCell(1.0, 0.0)  # ideal cell needs r0 < 1
    with pytest.raises(ValueError):
        SignalProfile(0, 1.0)
    with pytest.raises(ValueError):
        SignalProfile(1, 0.0)


def test_channel_argument_validation():
    with pytest.raises(ValueError):
        apply_lossy_channel(vacuum(1), 0, 1.5, 0.0)
    with pytest.raises(IndexError):
        apply_lossy_channel(vacuum(1), 1, 0.5, 0.0)

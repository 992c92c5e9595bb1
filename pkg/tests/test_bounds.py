"""Fidelity, classical bound, quantum Chernoff bound, and the gain report."""

import math

import numpy as np
import pytest

from qread.bounds import (
    binary_entropy,
    classical_bound,
    gaussian_fidelity_1mode,
    info_gain,
    quantum_chernoff_bound,
    quantum_chernoff_bound_ideal,
    s_overlap_gaussian,
)
from qread.channels import (
    IdealCell,
    MemoryCell,
    SignalProfile,
    coherent_outputs,
    theta_states,
)
from qread.gaussian import coherent, thermal, vacuum

R0_GRID = (0.0, 0.3, 0.7)
R1_GRID = (0.8, 1.0)
NB_GRID = (0.0, 0.01, 0.5)
NS_GRID = (0.05, 0.5, 1.5)


def ideal_fidelity(r0, n_b, n_s):
    gamma = 1.0 + (1.0 - r0) * n_b
    return math.exp(-((1.0 - math.sqrt(r0)) ** 2) * n_s / gamma) / gamma


def test_binary_entropy_endpoints():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)


def test_binary_entropy_quarter():
    val = binary_entropy(0.25)
    assert val == pytest.approx(0.8112781244591328, abs=1e-14)
    assert val == pytest.approx(binary_entropy(0.75), abs=1e-15)


def test_binary_entropy_domain():
    with pytest.raises(ValueError):
        binary_entropy(-0.01)
    with pytest.raises(ValueError):
        binary_entropy(1.01)


def test_fidelity_identical_states():
    st = thermal(0.7)
    assert gaussian_fidelity_1mode(st, st) == pytest.approx(1.0, abs=1e-12)


def test_fidelity_vacuum_vs_thermal():
    assert gaussian_fidelity_1mode(vacuum(1), thermal(0.8)) == pytest.approx(
        1.0 / 1.8, rel=1e-12
    )


def test_fidelity_ideal_memory_closed_form_grid():
    for r0 in np.linspace(0.0, 0.95, 20):
        for n_b, n_s in ((0.0, 0.5), (0.3, 1.2)):
            out0, out1 = coherent_outputs(MemoryCell(r0, 1.0, n_b), n_s)
            assert gaussian_fidelity_1mode(out0, out1) == pytest.approx(
                ideal_fidelity(r0, n_b, n_s), abs=1e-12
            )


def test_fidelity_full_loss_no_bath():
    out0, out1 = coherent_outputs(MemoryCell(0.0, 1.0, 0.0), 0.9)
    assert gaussian_fidelity_1mode(out0, out1) == pytest.approx(
        math.exp(-0.9), rel=1e-12
    )


def test_fidelity_general_point_frozen():
    # frozen against the Fock engine (polar-factor route, dev < 1e-15)
    out0, out1 = coherent_outputs(MemoryCell(0.5, 0.95, 0.01), 3.5)
    assert gaussian_fidelity_1mode(out0, out1) == pytest.approx(
        0.7775995661897104, rel=1e-10
    )


def test_fidelity_rejects_multimode():
    from qread.gaussian import tmsv

    with pytest.raises(ValueError):
        gaussian_fidelity_1mode(tmsv(1.0), tmsv(1.0))


def test_classical_bound_indistinguishable():
    assert classical_bound(MemoryCell(0.5, 0.5, 0.1), SignalProfile(3, 1.0)) == 0.5


def test_classical_bound_closed_form():
    for m, n_s in ((1, 0.5), (10, 0.2), (100, 0.05)):
        expected = (1.0 - math.sqrt(1.0 - math.exp(-m * n_s))) / 2.0
        got = classical_bound(MemoryCell(0.0, 1.0, 0.0), SignalProfile(m, n_s))
        assert got == pytest.approx(expected, rel=1e-12)


def test_classical_bound_deep_asymptote():
    # M N_S >> 1: C tends to exp(-M N_S) / 4 without underflow
    got = classical_bound(MemoryCell(0.0, 1.0, 0.0), SignalProfile(2000, 0.05))
    assert got == pytest.approx(math.exp(-100.0) / 4.0, rel=1e-9)


def test_classical_bound_table_row_six():
    got = classical_bound(MemoryCell(0.995, 1.0, 0.0), SignalProfile(200000, 0.01))
    assert got == pytest.approx(0.4442031416510833, rel=1e-10)
    assert got == pytest.approx(0.444, abs=5e-4)


def test_classical_bound_monotone_in_m():
    vals = [
        classical_bound(MemoryCell(0.3, 0.9, 0.1), SignalProfile(m, 0.5))
        for m in (1, 2, 5, 10, 50)
    ]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_s_overlap_equal_states_is_one():
    th0, _ = theta_states(MemoryCell(0.4, 0.9, 0.2), 0.8)
    for s in (0.1, 0.5, 0.9):
        assert s_overlap_gaussian(th0, th0, s) == pytest.approx(1.0, abs=1e-10)


def test_s_overlap_pure_states_is_squared_overlap():
    # powers of pure states are idempotent: the result is |<0|alpha>|^2 = e^{-|alpha|^2}
    a = coherent(0.0, 0.0)
    b = coherent(0.7, 0.0)
    for s in (0.2, 0.5, 0.8):
        assert s_overlap_gaussian(a, b, s) == pytest.approx(
            math.exp(-0.49), rel=1e-10
        )


def test_s_overlap_theta_pair_frozen():
    # frozen against the sector-SVD Fock engine (dev < 1e-12 at its tail-rule cutoff)
    th0, th1 = theta_states(MemoryCell(0.5, 0.95, 0.01), 3.5)
    assert s_overlap_gaussian(th0, th1, 0.5) == pytest.approx(
        0.5488867290614379, rel=1e-10
    )


def test_s_overlap_domain():
    th0, th1 = theta_states(MemoryCell(0.4, 0.9, 0.2), 0.8)
    with pytest.raises(ValueError):
        s_overlap_gaussian(th0, th1, -0.1)
    with pytest.raises(ValueError):
        s_overlap_gaussian(th0, th1, 1.1)


def test_s_minimum_unique_on_grid():
    # guard for the bounded scalar minimizer: a single descending run
    # followed by a single ascending run over 101 equispaced s values
    from qread.bounds import _log_s_overlap

    for r0 in R0_GRID:
        for r1 in R1_GRID:
            for n_b in NB_GRID:
                for n_s in NS_GRID:
                    th0, th1 = theta_states(MemoryCell(r0, r1, n_b), n_s)
                    ss = np.linspace(0.0, 1.0, 101)
                    vals = np.array([_log_s_overlap(th0, th1, s) for s in ss])
                    diffs = np.sign(np.round(np.diff(vals), 15))
                    moves = diffs[diffs != 0.0]
                    # at most one sign change, and only downward-to-upward
                    flips = np.sum(np.abs(np.diff(moves)) > 0)
                    assert flips <= 1
                    if flips == 1:
                        assert moves[0] < 0 < moves[-1]


def test_chernoff_indistinguishable():
    q, _ = quantum_chernoff_bound(MemoryCell(0.5, 0.5, 0.1), SignalProfile(3, 1.0))
    assert q == pytest.approx(0.5, abs=1e-10)


def test_chernoff_matches_ideal_closed_form():
    for r0 in R0_GRID:
        for n_b in NB_GRID:
            for n_s in NS_GRID:
                for m in (1, 7, 40):
                    cell = MemoryCell(r0, 1.0, n_b)
                    profile = SignalProfile(m, n_s)
                    q, _ = quantum_chernoff_bound(cell, profile)
                    q_ideal = quantum_chernoff_bound_ideal(
                        IdealCell(r0, n_b), profile
                    )
                    assert q == pytest.approx(q_ideal, rel=1e-9)


def test_chernoff_ideal_special_cases():
    # r0 = 0, N_B = 0: Q = (1 + N_S)^{-2M} / 2
    q = quantum_chernoff_bound_ideal(IdealCell(0.0, 0.0), SignalProfile(1, 1.0))
    assert q == pytest.approx(0.125, rel=1e-14)
    q = quantum_chernoff_bound_ideal(IdealCell(0.0, 0.0), SignalProfile(3, 0.5))
    assert q == pytest.approx(0.5 * 1.5 ** (-6), rel=1e-13)
    # r0 -> 1: the channels coincide
    q = quantum_chernoff_bound_ideal(IdealCell(1.0 - 1e-12, 0.5), SignalProfile(1, 1.0))
    assert q == pytest.approx(0.5, abs=1e-9)


def test_chernoff_table_row_six():
    q = quantum_chernoff_bound_ideal(
        IdealCell(0.995, 0.0), SignalProfile(200000, 0.01)
    )
    assert q == pytest.approx(2.2420087956330786e-05, rel=1e-9)
    assert q == pytest.approx(2.2e-05, abs=5e-07)


def test_bound_ordering_sanity():
    for r0 in R0_GRID:
        for r1 in R1_GRID:
            for n_b in NB_GRID:
                for n_s in NS_GRID:
                    cell = MemoryCell(r0, r1, n_b)
                    profile = SignalProfile(5, n_s)
                    report = info_gain(cell, profile)
                    assert 0.0 <= report.f <= 1.0
                    assert 0.0 < report.c <= 0.5
                    assert 0.0 < report.q <= 0.5


def test_bounds_approach_half_as_r1_approaches_r0():
    qs, cs = [], []
    for r1 in (0.9, 0.6, 0.50001):
        report = info_gain(MemoryCell(0.5, r1, 0.1), SignalProfile(3, 0.5))
        qs.append(report.q)
        cs.append(report.c)
    assert all(a < b for a, b in zip(qs, qs[1:]))
    assert all(a < b for a, b in zip(cs, cs[1:]))
    assert qs[-1] == pytest.approx(0.5, abs=1e-3)
    assert cs[-1] == pytest.approx(0.5, abs=1e-3)


def test_gain_zero_for_equal_reflectivities():
    report = info_gain(MemoryCell(0.4, 0.4, 0.2), SignalProfile(10, 1.0))
    assert report.c == 0.5
    assert report.q == 0.5
    assert report.g == 0.0


def test_gain_report_internal_consistency():
    report = info_gain(MemoryCell(0.2, 0.8, 0.01), SignalProfile(10, 1.0))
    assert report.j_class == pytest.approx(1.0 - binary_entropy(report.c), abs=1e-15)
    assert report.j_quant == pytest.approx(1.0 - binary_entropy(report.q), abs=1e-15)
    assert report.g == pytest.approx(report.j_quant - report.j_class, abs=1e-15)
    assert 0.0 < report.s_opt <= 1.0


def test_helstrom_sandwich():
    # C lower-bounds and Q upper-bounds the exact single-copy error
    from qread.fock import (
        choose_cutoff,
        coherent_output_fock,
        helstrom_error_fock,
        theta_fock,
    )

    cell = MemoryCell(0.3, 0.9, 0.1)
    n_s = 0.5
    profile = SignalProfile(1, n_s)
    c = classical_bound(cell, profile)
    q, _ = quantum_chernoff_bound(cell, profile)
    d = choose_cutoff([n_s, 0.1])
    coh = helstrom_error_fock(
        coherent_output_fock(cell.r0, cell.n_b, n_s, d),
        coherent_output_fock(cell.r1, cell.n_b, n_s, d),
    )
    th = helstrom_error_fock(
        theta_fock(cell.r0, cell.n_b, n_s, d),
        theta_fock(cell.r1, cell.n_b, n_s, d),
    )
    assert c <= coh + 1e-9
    assert th <= q + 1e-9

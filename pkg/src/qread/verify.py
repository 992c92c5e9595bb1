"""Cross-validation of every Gaussian closed form against the Fock oracle.

Each check sweeps a fixed parameter grid, evaluates the same quantity along
the closed-form route and the truncated-Fock route, and records the worst
absolute deviation.  The grids are small but chosen to exercise every branch
that matters: full loss (r0 = 0), ideal cells (r1 = 1), zero and thermal
baths, and signal energies from deep-quantum (0.05) to bright (1.5).
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .bounds import gaussian_fidelity_1mode, s_overlap_gaussian
from .channels import MemoryCell, coherent_outputs, theta_states
from .fock import (
    channel_output_factor,
    choose_cutoff,
    coherent_fock,
    fidelity_from_factors,
    s_overlap_from_sector_eigs,
    sector_eigs_from_factor,
    theta_factor,
    theta_fock,
    tmsv_fock,
)

R0_GRID = (0.0, 0.3, 0.7)
R1_GRID = (0.8, 1.0)
NB_GRID = (0.0, 0.01, 0.5)
NS_GRID = (0.05, 0.5, 1.5)
S_GRID = (0.2, 0.5, 0.8)

# fractional powers amplify a truncation tail of mass t to t^s, so the
# overlap states are built with a deeper tail target than plain densities
OVERLAP_TAIL_TARGET = 1e-14
OVERLAP_FLOOR = 16

S_OVERLAP_TOL = 1e-6
FIDELITY_TOL = 1e-7
TRACE_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    """Worst-case deviation of one oracle-agreement check."""

    name: str
    worst: float
    tol: float
    worst_at: str
    seconds: float

    @property
    def passed(self) -> bool:
        return self.worst < self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.name}: worst {self.worst:.3e} "
            f"(tol {self.tol:.0e}) at {self.worst_at} [{self.seconds:.1f}s]"
        )


def _overlap_cutoff(n_s: float, n_b: float, override: int | None) -> int:
    if override is not None:
        return override
    return choose_cutoff(
        [n_s, n_b], tail_target=OVERLAP_TAIL_TARGET, floor=OVERLAP_FLOOR
    )


# the fine grid roughly doubles each axis; same tolerances, longer runtime
R0_GRID_FINE = (0.0, 0.15, 0.3, 0.5, 0.7)
R1_GRID_FINE = (0.8, 0.9, 1.0)
S_GRID_FINE = (0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9)


def check_s_overlap(
    cutoff: int | None = None,
    r0_grid=R0_GRID,
    r1_grid=R1_GRID,
    s_grid=S_GRID,
) -> CheckResult:
    """Keystone check: Gaussian vs Fock s-overlap over the full grid.

    The receiver-side states are cached per (r, N_B, N_S) as sector
    eigendecompositions, so each grid point is a cheap contraction.
    """
    t0 = time.perf_counter()
    cache = {}
    reflectivities = sorted(set(r0_grid) | set(r1_grid))
    for n_s in NS_GRID:
        for n_b in NB_GRID:
            d = _overlap_cutoff(n_s, n_b, cutoff)
            for r in reflectivities:
                b = theta_factor(r, n_b, n_s, d)
                cache[(r, n_b, n_s)] = sector_eigs_from_factor(b, d)
    worst, worst_at = 0.0, ""
    for r0 in r0_grid:
        for r1 in r1_grid:
            for n_b in NB_GRID:
                for n_s in NS_GRID:
                    th0, th1 = theta_states(MemoryCell(r0, r1, n_b), n_s)
                    e0 = cache[(r0, n_b, n_s)]
                    e1 = cache[(r1, n_b, n_s)]
                    for s in s_grid:
                        gauss = s_overlap_gaussian(th0, th1, s)
                        fock = s_overlap_from_sector_eigs(e0, e1, s)
                        dev = abs(gauss - fock)
                        if dev > worst:
                            worst = dev
                            worst_at = (
                                f"r0={r0}, r1={r1}, N_B={n_b}, N_S={n_s}, s={s}"
                            )
    return CheckResult(
        "s-overlap (Gaussian vs Fock)",
        worst,
        S_OVERLAP_TOL,
        worst_at,
        time.perf_counter() - t0,
    )


def _coherent_cutoff(n_s: float, n_b: float) -> int:
    """Cutoff for a lossy coherent probe: the Poisson tail decays much
    faster than a geometric one, so mean + 10 sigma padding is ample; the
    thermal admixture keeps the geometric rule."""
    poisson = math.ceil(n_s + 10.0 * math.sqrt(max(n_s, 1.0)) + 10.0)
    return max(
        poisson, choose_cutoff([n_b], tail_target=OVERLAP_TAIL_TARGET)
    )


def check_fidelity(cutoff: int | None = None) -> CheckResult:
    """Single-probe output fidelity: closed form vs Fock factors."""
    t0 = time.perf_counter()
    worst, worst_at = 0.0, ""
    for n_b in NB_GRID:
        for n_s in NS_GRID:
            d = cutoff if cutoff is not None else _coherent_cutoff(n_s, n_b)
            psi = coherent_fock(math.sqrt(n_s), d)
            factors = {
                r: channel_output_factor(r, n_b, psi, d)
                for r in sorted(set(R0_GRID) | set(R1_GRID))
            }
            for r0 in R0_GRID:
                for r1 in R1_GRID:
                    out0, out1 = coherent_outputs(MemoryCell(r0, r1, n_b), n_s)
                    gauss = gaussian_fidelity_1mode(out0, out1)
                    fock = fidelity_from_factors(factors[r0], factors[r1])
                    dev = abs(gauss - fock)
                    if dev > worst:
                        worst = dev
                        worst_at = f"r0={r0}, r1={r1}, N_B={n_b}, N_S={n_s}"
    return CheckResult(
        "coherent-output fidelity",
        worst,
        FIDELITY_TOL,
        worst_at,
        time.perf_counter() - t0,
    )


def check_trace_preservation(cutoff: int | None = None) -> CheckResult:
    """Trace preserved by the dilated channel at the standard cutoffs."""
    t0 = time.perf_counter()
    worst, worst_at = 0.0, ""
    for n_b in NB_GRID:
        for n_s in NS_GRID:
            # cutoff target matches the channel's trace tolerance: no
            # fractional powers are taken here, so the deep overlap-grade
            # tail is unnecessary
            d = (
                cutoff
                if cutoff is not None
                else choose_cutoff([n_s, n_b], tail_target=TRACE_TOL)
            )
            norm_in = float(np.sum(np.abs(tmsv_fock(n_s, d, 1e-8)) ** 2))
            for r in sorted(set(R0_GRID) | set(R1_GRID)):
                theta = theta_fock(r, n_b, n_s, d)
                dev = abs(norm_in - theta.trace)
                if dev > worst:
                    worst = dev
                    worst_at = f"r={r}, N_B={n_b}, N_S={n_s}"
    return CheckResult(
        "channel trace preservation",
        worst,
        TRACE_TOL,
        worst_at,
        time.perf_counter() - t0,
    )


def run_verify(cutoff: int | None = None, fine: bool = False) -> list[CheckResult]:
    """Run every oracle-agreement check; raises CutoffError when a forced
    cutoff is too small to hold the states."""
    if fine:
        overlap = check_s_overlap(
            cutoff, R0_GRID_FINE, R1_GRID_FINE, S_GRID_FINE
        )
    else:
        overlap = check_s_overlap(cutoff)
    return [
        overlap,
        check_fidelity(cutoff),
        check_trace_preservation(cutoff),
    ]

"""The memory-cell model: conditional lossy thermal channels and the
receiver-side states they produce.

A memory cell is a beam splitter whose reflectivity encodes one bit
(r0 for bit 0, r1 for bit 1).  Reading the cell sends each signal mode
through a one-mode lossy channel of transmissivity r_u that mixes it with a
thermal bath of N_B mean photons.
"""

from dataclasses import dataclass

import numpy as np

from .gaussian import GaussianState, coherent, tmsv


@dataclass(frozen=True)
class MemoryCell:
    """A two-reflectivity memory cell in a thermal bath.

    r0 encodes bit 0 (the "pit"), r1 >= r0 encodes bit 1 (the "land");
    n_b is the mean photon number of each bath mode.
    """

    r0: float
    r1: float
    n_b: float

    def __post_init__(self):
        if not 0.0 <= self.r0 <= self.r1 <= 1.0:
            raise ValueError("need 0 <= r0 <= r1 <= 1")
        if self.n_b < 0:
            raise ValueError("bath photon number must be >= 0")


@dataclass(frozen=True)
class IdealCell:
    """A memory cell with perfect land reflectivity (r1 = 1)."""

    r0: float
    n_b: float

    def __post_init__(self):
        if not 0.0 <= self.r0 < 1.0:
            raise ValueError("need 0 <= r0 < 1 for an ideal cell")
        if self.n_b < 0:
            raise ValueError("bath photon number must be >= 0")

    def as_cell(self) -> MemoryCell:
        return MemoryCell(self.r0, 1.0, self.n_b)


@dataclass(frozen=True)
class SignalProfile:
    """Signal profile {M, N_S}: number of signal modes and mean photons per
    signal mode."""

    m: int
    n_s: float

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one signal mode")
        if self.n_s <= 0:
            raise ValueError("signal energy must be > 0")


def apply_lossy_channel(
    state: GaussianState, mode: int, r: float, n_b: float
) -> GaussianState:
    """Apply the one-mode lossy thermal channel to one mode of a state.

    The targeted mode's mean is scaled by sqrt(r), its diagonal covariance
    block A becomes r A + (1 - r)(2 n_b + 1) I, and every cross block with the
    other modes is scaled by sqrt(r).
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError("transmissivity must lie in [0, 1]")
    if n_b < 0:
        raise ValueError("bath photon number must be >= 0")
    if not 0 <= mode < state.n_modes:
        raise IndexError(f"mode {mode} out of range for {state.n_modes} modes")

    d = 2 * state.n_modes
    sl = slice(2 * mode, 2 * mode + 2)
    scale = np.ones(d)
    scale[sl] = np.sqrt(r)
    mean = state.mean * scale
    cov = state.cov * np.outer(scale, scale)
    cov[sl, sl] += (1.0 - r) * (2.0 * n_b + 1.0) * np.eye(2)
    return GaussianState(state.n_modes, mean, cov)


def theta_states(cell: MemoryCell, n_s: float):
    """Receiver-side states (theta0, theta1) of the EPR transmitter.

    Each is a TMSV of energy n_s with the conditional lossy channel applied
    to its signal mode (mode 0); the idler (mode 1) is untouched.
    """
    probe = tmsv(n_s)
    theta0 = apply_lossy_channel(probe, 0, cell.r0, cell.n_b)
    theta1 = apply_lossy_channel(probe, 0, cell.r1, cell.n_b)
    return theta0, theta1


def coherent_outputs(cell: MemoryCell, n_s: float):
    """The two possible outputs of the coherent probe |sqrt(n_s)>.

    Single-mode states with mean (2 sqrt(r_u n_s), 0) and covariance
    (1 + 2 (1 - r_u) n_b) I.
    """
    probe = coherent(np.sqrt(n_s), 0.0)
    out0 = apply_lossy_channel(probe, 0, cell.r0, cell.n_b)
    out1 = apply_lossy_channel(probe, 0, cell.r1, cell.n_b)
    return out0, out1

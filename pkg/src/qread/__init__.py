"""Quantum reading of optical memories: error-probability bounds under a
local energy constraint.

The package computes the fidelity-based lower bound on the readout error of
any classical transmitter, the quantum Chernoff upper bound for an EPR
(two-mode squeezed vacuum) transmitter, the resulting information gain, and
the critical number of signal modes above which the gain is positive.  A
truncated-Fock-space oracle independently verifies every Gaussian closed
form.
"""

from .gaussian import GaussianState, coherent, mean_photons, symplectic_eigenvalues, symplectic_form, thermal, tmsv, vacuum
from .channels import IdealCell, MemoryCell, SignalProfile, apply_lossy_channel, coherent_outputs, theta_states
from .bounds import (
    GainReport,
    binary_entropy,
    classical_bound,
    gaussian_fidelity_1mode,
    info_gain,
    quantum_chernoff_bound,
    quantum_chernoff_bound_ideal,
    s_overlap_gaussian,
)
from .critical import (
    CriticalPoint,
    asymptote_r0_near_1,
    critical_M,
    critical_M_at_noise,
    delta_expansion_thermal,
    gain_expansion_noiseless,
    m_tilde,
)

__all__ = [
    "GaussianState",
    "vacuum",
    "coherent",
    "thermal",
    "tmsv",
    "symplectic_form",
    "symplectic_eigenvalues",
    "mean_photons",
    "MemoryCell",
    "IdealCell",
    "SignalProfile",
    "apply_lossy_channel",
    "theta_states",
    "coherent_outputs",
    "GainReport",
    "binary_entropy",
    "gaussian_fidelity_1mode",
    "classical_bound",
    "s_overlap_gaussian",
    "quantum_chernoff_bound",
    "quantum_chernoff_bound_ideal",
    "info_gain",
    "CriticalPoint",
    "critical_M_at_noise",
    "critical_M",
    "asymptote_r0_near_1",
    "gain_expansion_noiseless",
    "delta_expansion_thermal",
    "m_tilde",
]

__version__ = "0.1.0"

"""Multimode Gaussian states as mean vectors plus covariance matrices.

Conventions: quadratures are ordered (q1, p1, q2, p2, ...), the vacuum
covariance is the identity, and a coherent state of amplitude alpha has mean
(2 Re alpha, 2 Im alpha).  With this normalization a thermal state with nbar
mean photons has covariance (2 nbar + 1) I and the two-mode squeezed vacuum
has diagonal entries 2 N_S + 1.
"""

from dataclasses import dataclass, field

import numpy as np

# Symplectic eigenvalues may dip below 1 by this much before a covariance is
# rejected as unphysical.
BONA_FIDE_TOL = 1e-9


def symplectic_form(n_modes: int) -> np.ndarray:
    """The 2n x 2n symplectic form: block-diagonal [[0, 1], [-1, 0]]."""
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


@dataclass(frozen=True)
class GaussianState:
    """An n-mode Gaussian state.

    Attributes:
        n_modes: number of bosonic modes.
        mean: real vector of length 2 n_modes, quadrature order q1,p1,q2,p2,...
        cov: real symmetric 2n x 2n covariance matrix, vacuum = identity.

    The covariance is symmetrized on construction and rejected if any
    symplectic eigenvalue falls below 1 - 1e-9 (not a physical state).
    """

    n_modes: int
    mean: np.ndarray = field(repr=False)
    cov: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError("n_modes must be >= 1")
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        cov = np.asarray(self.cov, dtype=float)
        d = 2 * self.n_modes
        if mean.shape != (d,) or cov.shape != (d, d):
            raise ValueError(
                f"expected mean of length {d} and cov of shape ({d}, {d})"
            )
        cov = 0.5 * (cov + cov.T)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        nus = symplectic_eigenvalues(self)
        if np.min(nus) < 1.0 - BONA_FIDE_TOL:
            raise ValueError(
                f"covariance is not bona fide: min symplectic eigenvalue {np.min(nus)}"
            )

    def is_pure(self, tol: float = BONA_FIDE_TOL) -> bool:
        return bool(np.all(np.abs(symplectic_eigenvalues(self) - 1.0) <= tol))


def vacuum(n: int) -> GaussianState:
    """The n-mode vacuum: zero mean, identity covariance."""
    if n < 1:
        raise ValueError("need at least one mode")
    return GaussianState(n, np.zeros(2 * n), np.eye(2 * n))


def coherent(alpha_re: float, alpha_im: float) -> GaussianState:
    """Single-mode coherent state of amplitude alpha_re + i alpha_im."""
    return GaussianState(1, np.array([2.0 * alpha_re, 2.0 * alpha_im]), np.eye(2))


def thermal(nbar: float) -> GaussianState:
    """Single-mode thermal state with nbar mean photons."""
    if nbar < 0:
        raise ValueError("mean photon number must be >= 0")
    return GaussianState(1, np.zeros(2), (2.0 * nbar + 1.0) * np.eye(2))


def tmsv(n_s: float) -> GaussianState:
    """Two-mode squeezed vacuum with n_s mean photons per mode.

    Covariance [[mu I, c Z], [c Z, mu I]] with mu = 2 n_s + 1,
    c = 2 sqrt(n_s (n_s + 1)) and Z = diag(1, -1).
    """
    if n_s < 0:
        raise ValueError("mean photon number must be >= 0")
    mu = 2.0 * n_s + 1.0
    c = 2.0 * np.sqrt(n_s * (n_s + 1.0))
    z = np.diag([1.0, -1.0])
    cov = np.block([[mu * np.eye(2), c * z], [c * z, mu * np.eye(2)]])
    return GaussianState(2, np.zeros(4), cov)


def _raw_symplectic_spectrum(cov: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a covariance matrix, one per mode, sorted
    nonincreasing.  No bona fide check."""
    n = cov.shape[0] // 2
    omega = symplectic_form(n)
    eigs = np.linalg.eigvals(omega @ cov)
    moduli = np.sort(np.abs(eigs))[::-1]
    # eigenvalues come in conjugate pairs +-(i nu); keep one per pair
    return moduli[::2].copy()


def symplectic_eigenvalues(state: GaussianState) -> np.ndarray:
    """Symplectic eigenvalues of the state's covariance, nonincreasing.

    For a bona fide state every value is >= 1; purity means all equal 1.
    """
    return _raw_symplectic_spectrum(state.cov)


def mean_photons(state: GaussianState, mode: int) -> float:
    """Mean photon number in one mode.

    (cov_qq + cov_pp - 2 + mean_q^2 + mean_p^2) / 4 in this convention.
    """
    if not 0 <= mode < state.n_modes:
        raise IndexError(f"mode {mode} out of range for {state.n_modes} modes")
    q, p = 2 * mode, 2 * mode + 1
    val = (
        state.cov[q, q]
        + state.cov[p, p]
        - 2.0
        + state.mean[q] ** 2
        + state.mean[p] ** 2
    ) / 4.0
    # clip fp noise for the vacuum-like directions
    return val if val > 0.0 else 0.0

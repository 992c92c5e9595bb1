"""Discrimination bounds for reading a memory cell.

Classical side: any transmitter with a positive P-representation and signal
profile {M, N_S} has readout error at least C = (1 - sqrt(1 - F^M)) / 2,
where F is the fidelity between the two outputs of a single coherent probe.

Quantum side: the EPR transmitter (M copies of a TMSV) has error at most the
quantum Chernoff bound Q = (1/2) [inf_s Tr(theta0^s theta1^(1-s))]^M.  The
single-copy s-overlap is evaluated in closed form from the symplectic
spectra of the two Gaussian covariances.

Both bounds are converted to bits via J = 1 - H(P_err); the information gain
G = J_quant - J_class lower-bounds the advantage of the EPR transmitter (a
negative G certifies nothing).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import xlogy

from .channels import IdealCell, MemoryCell, SignalProfile, coherent_outputs, theta_states
from .gaussian import GaussianState, symplectic_eigenvalues, symplectic_form

# interior s-search window; the closed-interval endpoints are handled
# separately because the infimum sits at s = 1 whenever theta1 is pure
# (e.g. every ideal cell, r1 = 1)
S_EDGE = 1e-6

# symplectic eigenvalues this close to 1 are treated as exactly pure, which
# keeps (nu - 1)^s from amplifying eigenvalue noise
PURE_NU_TOL = 1e-9


@dataclass(frozen=True)
class GainReport:
    """All bound values at one parameter point.

    f: single-probe output fidelity; c: classical error lower bound;
    q: quantum Chernoff error upper bound; j_class / j_quant: the matching
    information bounds in bits; g = j_quant - j_class; s_opt: the minimizing
    Chernoff exponent.
    """

    f: float
    c: float
    q: float
    j_class: float
    j_quant: float
    g: float
    s_opt: float


def binary_entropy(x: float) -> float:
    """Binary Shannon entropy H(x) in bits, with H(0) = H(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("binary entropy needs a probability in [0, 1]")
    return float(-(xlogy(x, x) + xlogy(1.0 - x, 1.0 - x)) / math.log(2.0))


def gaussian_fidelity_1mode(a: GaussianState, b: GaussianState) -> float:
    """Uhlmann fidelity (squared convention) of two single-mode Gaussians.

    F = 2 exp(-d^T (Va+Vb)^{-1} d / 2) / (sqrt(D + L) - sqrt(L)) with
    D = det(Va+Vb) and L = (det Va - 1)(det Vb - 1).
    """
    if a.n_modes != 1 or b.n_modes != 1:
        raise ValueError("only the single-mode fidelity is implemented")
    vsum = a.cov + b.cov
    delta = a.mean - b.mean
    big_d = np.linalg.det(vsum)
    big_l = (np.linalg.det(a.cov) - 1.0) * (np.linalg.det(b.cov) - 1.0)
    big_l = max(big_l, 0.0)
    quad = float(delta @ np.linalg.solve(vsum, delta))
    fid = 2.0 * math.exp(-0.5 * quad) / (math.sqrt(big_d + big_l) - math.sqrt(big_l))
    return min(fid, 1.0)


def _classical_from_log_f(log_f: float, m: int) -> float:
    """C = (1 - sqrt(1 - F^M)) / 2 from ln F, stable for F^M near 0 and 1."""
    p = math.exp(m * log_f)  # F^M
    return p / (2.0 * (1.0 + math.sqrt(max(1.0 - p, 0.0))))


def classical_bound(cell: MemoryCell, profile: SignalProfile) -> float:
    """Error-probability lower bound for every classical transmitter."""
    out0, out1 = coherent_outputs(cell, profile.n_s)
    f = gaussian_fidelity_1mode(out0, out1)
    if f >= 1.0:
        return 0.5
    return _classical_from_log_f(math.log(f), profile.m)


def _stretched_cov(cov: np.ndarray, s: float):
    """Covariance of the renormalized s-th power of a Gaussian state.

    Each symplectic eigenvalue nu is mapped to
    Lambda_s(nu) = [(nu+1)^s + (nu-1)^s] / [(nu+1)^s - (nu-1)^s]
    while the Williamson basis is kept.  Returns the stretched covariance and
    the log-normalization sum_k ln G_s(nu_k) with
    G_s(nu) = 2^s / [(nu+1)^s - (nu-1)^s].

    Computed spectrally from Omega V: its eigenvalues are +-(i nu_k), and
    mapping each to +-(i Lambda_s(nu_k)) in the same eigenbasis yields
    Omega V_stretched.
    """
    n = cov.shape[0] // 2
    omega = symplectic_form(n)
    w = omega @ cov
    vals, vecs = np.linalg.eig(w)
    nus = np.abs(vals)
    if np.min(nus) < 1.0 - PURE_NU_TOL:
        raise ValueError("covariance is not bona fide")
    pure = nus <= 1.0 + PURE_NU_TOL
    nus = np.where(pure, 1.0, nus)
    # pure directions: Lambda = G = 1 for every s (powers are idempotent)
    plus = (nus + 1.0) ** s
    minus = np.where(pure, 0.0, (nus - 1.0) ** s)
    lam = (plus + minus) / (plus - minus)
    # log G summed over modes only (each nu appears twice in the spectrum)
    log_g = 0.5 * float(
        np.sum(np.where(pure, 0.0, s * math.log(2.0) - np.log(plus - minus)))
    )
    mapped = lam * vals / nus
    f_w = vecs @ (mapped[:, None] * np.linalg.inv(vecs))
    stretched = omega.T @ f_w
    stretched = 0.5 * np.real(stretched + stretched.T)
    return stretched, log_g


def _is_pure_cov(cov: np.ndarray) -> bool:
    from .gaussian import _raw_symplectic_spectrum

    return bool(np.max(_raw_symplectic_spectrum(cov)) <= 1.0 + PURE_NU_TOL)


def _log_s_overlap(theta0: GaussianState, theta1: GaussianState, s: float) -> float:
    """ln Tr(theta0^s theta1^(1-s)) for Gaussian states, s in [0, 1].

    At the endpoints the vanishing power of a full-rank state is the
    identity, so the overlap is 1; for a pure state any power is the state
    itself and the closed form applies unchanged.
    """
    if theta0.n_modes != theta1.n_modes:
        raise ValueError("states must have the same number of modes")
    if not 0.0 <= s <= 1.0:
        raise ValueError("s must lie in [0, 1]")
    if s == 0.0 and not _is_pure_cov(theta0.cov):
        return 0.0
    if s == 1.0 and not _is_pure_cov(theta1.cov):
        return 0.0
    n = theta0.n_modes
    v0, log_g0 = _stretched_cov(theta0.cov, s)
    v1, log_g1 = _stretched_cov(theta1.cov, 1.0 - s)
    vsum = v0 + v1
    sign, logdet = np.linalg.slogdet(vsum)
    if sign <= 0:
        raise ValueError("singular covariance sum in s-overlap")
    delta = theta0.mean - theta1.mean
    quad = float(delta @ np.linalg.solve(vsum, delta))
    return log_g0 + log_g1 + n * math.log(2.0) - 0.5 * logdet - 0.5 * quad


def s_overlap_gaussian(theta0: GaussianState, theta1: GaussianState, s: float) -> float:
    """Tr(theta0^s theta1^(1-s)) for two Gaussian states."""
    return math.exp(_log_s_overlap(theta0, theta1, s))


def _min_log_overlap(theta0: GaussianState, theta1: GaussianState):
    """Minimize the single-copy log s-overlap over s in [0, 1].

    Bounded scalar search over the interior plus an explicit check of both
    endpoints; when either state is pure the infimum of the open-interval
    formulation is attained there as a limit.  Returns (log value, s).
    """
    res = minimize_scalar(
        lambda s: _log_s_overlap(theta0, theta1, s),
        bounds=(S_EDGE, 1.0 - S_EDGE),
        method="bounded",
        options={"xatol": 1e-10},
    )
    if not res.success:
        raise RuntimeError(f"s-minimization failed: {res.message}")
    best, s_opt = float(res.fun), float(res.x)
    for s_end in (0.0, 1.0):
        val = _log_s_overlap(theta0, theta1, s_end)
        if val < best:
            best, s_opt = val, s_end
    return best, s_opt


def quantum_chernoff_bound(cell: MemoryCell, profile: SignalProfile):
    """Quantum Chernoff bound Q and its minimizing exponent s.

    The single-copy overlap is minimized once and raised to the M-th power in
    log space, so M ~ 1e5 costs the same as M = 1.
    """
    if cell.r0 == cell.r1:
        # identical channels: the overlap is exactly 1 for every s
        return 0.5, 0.5
    theta0, theta1 = theta_states(cell, profile.n_s)
    log_overlap, s_opt = _min_log_overlap(theta0, theta1)
    log_overlap = min(log_overlap, 0.0)
    q = 0.5 * math.exp(profile.m * log_overlap)
    return q, s_opt


def quantum_chernoff_bound_ideal(cell: IdealCell, profile: SignalProfile) -> float:
    """Closed-form Chernoff bound for an ideal memory (r1 = 1):
    Q = (1/2) {[1 + (1 - sqrt(r0)) N_S]^2 + N_B (2 N_S + 1)(1 - r0)}^{-M}.
    """
    base = (1.0 + (1.0 - math.sqrt(cell.r0)) * profile.n_s) ** 2 + cell.n_b * (
        2.0 * profile.n_s + 1.0
    ) * (1.0 - cell.r0)
    return 0.5 * math.exp(-profile.m * math.log(base))


def info_gain(cell: MemoryCell, profile: SignalProfile) -> GainReport:
    """Full bound report {F, C, Q, J_class, J_quant, G} at one point."""
    out0, out1 = coherent_outputs(cell, profile.n_s)
    f = gaussian_fidelity_1mode(out0, out1)
    c = 0.5 if f >= 1.0 else _classical_from_log_f(math.log(f), profile.m)
    q, s_opt = quantum_chernoff_bound(cell, profile)
    j_class = 1.0 - binary_entropy(c)
    j_quant = 1.0 - binary_entropy(q)
    return GainReport(f, c, q, j_class, j_quant, j_quant - j_class, s_opt)

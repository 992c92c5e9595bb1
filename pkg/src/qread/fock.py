"""Brute-force verification engine in a truncated Fock basis.

Everything the Gaussian modules compute in closed form is recomputed here
the hard way: states as explicit (truncated) density matrices, the lossy
thermal channel by unitary dilation with a thermal ancilla and a beam
splitter, s-overlaps and fidelities by eigendecomposition.  Agreement
between the two routes is the package's keystone check.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

HERMITIAN_TOL = 1e-10
# eigenvalues of a density operator below this are declared invalid rather
# than silently clipped
NEG_EIG_TOL = -1e-10

DEFAULT_TAIL_TOL = 1e-9


class CutoffError(ValueError):
    """Raised when a truncation leaves too much tail mass."""


@dataclass(frozen=True)
class FockOperator:
    """A Hermitian operator on a truncated one- or two-mode Fock space."""

    n_modes: int
    cutoff: int
    matrix: np.ndarray

    def __post_init__(self):
        dim = self.cutoff**self.n_modes
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (dim, dim):
            raise ValueError(f"expected a {dim} x {dim} matrix")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValueError("operator is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))


def choose_cutoff(
    nbars, tail_target: float = 1e-10, floor: int = 12, cap: int | None = None
) -> int:
    """Cutoff d so that each geometric photon-number tail is below target.

    For mean occupation nbar the tail mass beyond d is (nbar/(1+nbar))^d.
    Quantities that raise eigenvalues to a fractional power alpha amplify the
    tail to tail^alpha, so they should request a correspondingly smaller
    tail_target rather than the default."""
    d = floor
    for nbar in np.atleast_1d(nbars):
        if nbar <= 0:
            continue
        q = nbar / (1.0 + nbar)
        d = max(d, math.ceil(math.log(tail_target) / math.log(q)))
    return d if cap is None else min(d, cap)


def destroy(d: int) -> np.ndarray:
    """Annihilation operator on a d-dimensional Fock space."""
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), k=1)


def coherent_fock(alpha: complex, cutoff: int) -> np.ndarray:
    """Number-basis amplitudes of the coherent state |alpha>."""
    n = np.arange(cutoff)
    from scipy.special import gammaln

    log_mag = n * np.log(np.abs(alpha)) if alpha != 0 else np.where(n == 0, 0.0, -np.inf)
    amps = np.exp(-0.5 * np.abs(alpha) ** 2 + log_mag - 0.5 * gammaln(n + 1.0))
    phase = np.exp(1j * n * np.angle(alpha)) if alpha != 0 else 1.0
    return amps * phase


def thermal_fock(nbar: float, cutoff: int) -> np.ndarray:
    """Thermal density matrix diag(nbar^n / (1 + nbar)^(n+1))."""
    if nbar < 0:
        raise ValueError("mean photon number must be >= 0")
    if nbar == 0:
        p = np.zeros(cutoff)
        p[0] = 1.0
    else:
        n = np.arange(cutoff)
        p = np.exp(n * math.log(nbar) - (n + 1) * math.log(1.0 + nbar))
    return np.diag(p.astype(complex))


def tmsv_fock(n_s: float, cutoff: int, tail_tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
    """State vector of the two-mode squeezed vacuum, length cutoff**2.

    Components (cosh xi)^{-1} (tanh xi)^n on |n, n>, with sinh^2 xi = n_s.
    Raises CutoffError if the truncated norm falls below 1 - tail_tol.
    """
    xi = math.asinh(math.sqrt(n_s))
    t = math.tanh(xi)
    c = np.zeros(cutoff**2)
    coeffs = (t ** np.arange(cutoff)) / math.cosh(xi)
    idx = np.arange(cutoff) * cutoff + np.arange(cutoff)
    c[idx] = coeffs
    norm2 = float(np.sum(coeffs**2))
    if norm2 < 1.0 - tail_tol:
        raise CutoffError(
            f"cutoff {cutoff} keeps only {norm2:.12f} of the TMSV norm "
            f"(tail tolerance {tail_tol})"
        )
    return c


def beam_splitter(r: float, d_a: int, d_b: int) -> np.ndarray:
    """Two-mode beam-splitter unitary of transmissivity r on modes of
    dimension d_a (signal) and d_b (ancilla).

    Built block by block in the total-photon-number sectors it conserves, so
    every sector that fits inside the truncation is exact.
    """
    theta = math.acos(math.sqrt(min(max(r, 0.0), 1.0)))
    u = np.zeros((d_a * d_b, d_a * d_b))
    for n_tot in range(d_a + d_b - 1):
        ks = np.arange(max(0, n_tot - d_b + 1), min(n_tot, d_a - 1) + 1)
        idx = ks * d_b + (n_tot - ks)
        # generator of a^dag b - a b^dag restricted to the sector
        off = np.sqrt((ks[:-1] + 1.0) * (n_tot - ks[:-1]))
        gen = np.diag(off, k=-1) - np.diag(off, k=1)
        u[np.ix_(idx, idx)] = expm(theta * gen)
    return u


def _ancilla_dims(r: float, n_b: float, cutoff: int, tail_target: float = 1e-10):
    """(thermal support, total ancilla dimension) for the channel dilation.

    The ancilla must hold both the bath occupation and every photon the
    signal can lose, roughly (1 - r) times the signal cutoff."""
    if n_b <= 0:
        support = 1
    else:
        q = n_b / (1.0 + n_b)
        support = max(1, math.ceil(math.log(tail_target) / math.log(q)))
    total = min(
        cutoff + support,
        support + math.ceil((1.0 - r) * (cutoff - 1)) + 8,
    )
    return support, max(total, support)


def lossy_channel_superop(r: float, n_b: float, cutoff: int, d_anc: int | None = None) -> np.ndarray:
    """Superoperator matrix of the one-mode lossy thermal channel.

    Built by unitary dilation: beam-split the mode with a thermal ancilla of
    n_b mean photons and trace the ancilla out.  Returns a cutoff^2 x
    cutoff^2 matrix acting on vectorized density matrices (row-major).
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError("transmissivity must lie in [0, 1]")
    if d_anc is None:
        # the support trim truncates the thermal mixture, which shows up
        # directly as a trace defect; keep it well under the 1e-12 identity
        # tolerance rather than at the channel's 1e-9 trace tolerance
        support, total = _ancilla_dims(r, n_b, cutoff, tail_target=1e-13)
    else:
        support = total = d_anc
    u = beam_splitter(r, cutoff, total)
    p_anc = np.real(np.diag(thermal_fock(n_b, total)))[:support]
    # B[a, k, b, n] = U[(a,k),(b,n)] sqrt(p_n); Phi = C C^T with
    # C[(a,b), (k,n)] collecting the ancilla indices; the input ancilla index
    # n only needs the thermal support, the output index k the full range
    b4 = (
        u.reshape(cutoff, total, cutoff, total)[:, :, :, :support]
        * np.sqrt(p_anc)[None, None, None, :]
    )
    c = b4.transpose(0, 2, 1, 3).reshape(cutoff * cutoff, total * support)
    gram = (c @ c.T).reshape(cutoff, cutoff, cutoff, cutoff)
    # gram carries indices [a, s, b, t]; reorder to [(a, b), (s, t)] so the
    # superoperator left-multiplies vec(rho) in row-major layout
    return gram.transpose(0, 2, 1, 3).reshape(cutoff**2, cutoff**2)


def lossy_channel_fock(
    rho: FockOperator,
    mode: int,
    r: float,
    n_b: float,
    d_anc: int | None = None,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> FockOperator:
    """Apply the lossy thermal channel to one mode of a Fock density operator.

    Raises CutoffError if the output trace drops by more than tail_tol
    relative to the input (mass pushed past the truncation).
    """
    if not 0 <= mode < rho.n_modes:
        raise IndexError(f"mode {mode} out of range")
    d = rho.cutoff
    phi = lossy_channel_superop(r, n_b, d, d_anc)
    # the superoperator is real; avoid promoting a real density to complex
    mat = rho.matrix
    if np.max(np.abs(mat.imag)) == 0.0:
        mat = mat.real
    if rho.n_modes == 1:
        out = (phi @ mat.reshape(-1)).reshape(d, d)
    else:
        r4 = mat.reshape(d, d, d, d)
        if mode == 0:
            # out[a, i, b, j] = Phi[(a,b),(s,t)] rho[s, i, t, j]
            rho_perm = r4.transpose(0, 2, 1, 3).reshape(d * d, d * d)
            out4 = (phi @ rho_perm).reshape(d, d, d, d)
            out = out4.transpose(0, 2, 1, 3).reshape(d * d, d * d)
        else:
            rho_perm = r4.transpose(1, 3, 0, 2).reshape(d * d, d * d)
            out4 = (phi @ rho_perm).reshape(d, d, d, d)
            out = out4.transpose(2, 0, 3, 1).reshape(d * d, d * d)
    out = 0.5 * (out + out.conj().T)
    result = FockOperator(rho.n_modes, d, out)
    if rho.trace - result.trace > tail_tol:
        raise CutoffError(
            f"channel lost {rho.trace - result.trace:.3e} of trace at cutoff {d}"
        )
    return result


def two_mode_squeezed_thermal_fock(
    diag0: float, diag1: float, cross: float, cutoff: int
) -> FockOperator:
    """Fock matrix of the zero-mean two-mode Gaussian state with covariance
    [[a I, c Z], [c Z, b I]] (the standard form of every receiver-side
    state here).

    Decomposes the covariance as a two-mode squeezer acting on a product of
    thermal states and builds the squeezer as a matrix exponential.
    """
    a, b, c = diag0, diag1, cross
    nu_sum_sq = (a + b) ** 2 - 4.0 * c**2
    if nu_sum_sq <= 0:
        raise ValueError("covariance is not in the two-mode squeezed thermal family")
    nu_sum = math.sqrt(nu_sum_sq)
    nu0 = 0.5 * (nu_sum + (a - b))
    nu1 = 0.5 * (nu_sum - (a - b))
    if min(nu0, nu1) < 1.0 - 1e-9:
        raise ValueError("covariance is not bona fide")
    lam = 0.5 * math.atanh(2.0 * c / (a + b))

    # the squeezer conserves the photon-number difference, so work sector by
    # sector; an enlarged internal dimension keeps truncation distortion out
    # of the returned block
    big = 2 * cutoff + 24
    pb0 = np.real(np.diag(thermal_fock(max(nu0 - 1.0, 0.0) / 2.0, big)))
    pb1 = np.real(np.diag(thermal_fock(max(nu1 - 1.0, 0.0) / 2.0, big)))
    m = np.zeros((cutoff * cutoff, cutoff * cutoff))
    for q in range(-(cutoff - 1), cutoff):
        size = big - abs(q)
        ms = np.arange(size)
        n_idx = ms + q if q >= 0 else ms
        m_idx = ms if q >= 0 else ms - q
        off = np.sqrt((n_idx[:-1] + 1.0) * (m_idx[:-1] + 1.0))
        gen = np.diag(off, k=-1) - np.diag(off, k=1)
        sq = expm(lam * gen)
        block = (sq * (pb0[n_idx] * pb1[m_idx])[None, :]) @ sq.T
        keep = min(cutoff - abs(q), size)
        rows = n_idx[:keep] * cutoff + m_idx[:keep]
        m[np.ix_(rows, rows)] = block[:keep, :keep]
    return FockOperator(2, cutoff, m)


def _clipped_eigh(matrix: np.ndarray):
    vals, vecs = np.linalg.eigh(matrix)
    if np.min(vals) < NEG_EIG_TOL:
        raise ValueError(
            f"operator has eigenvalue {np.min(vals):.3e} below the negativity slack"
        )
    return np.clip(vals, 0.0, None), vecs


def _joint_blocks(m0: np.ndarray, m1: np.ndarray):
    """Index sets of the connected components of the joint support graph.

    Two basis states belong to the same block when either operator couples
    them.  Number-conserving structure (for example a fixed photon-number
    difference between signal and idler) shows up as many small blocks, which
    makes the eigendecompositions both cheaper and more accurate: eigh noise
    scales with the norm of the block, so weak far-off-diagonal sectors no
    longer inherit noise from the dominant ones.
    """
    import scipy.sparse as sp
    from scipy.sparse.csgraph import connected_components

    mask = (np.abs(m0) + np.abs(m1)) > 0.0
    n_comp, labels = connected_components(sp.csr_matrix(mask), directed=False)
    return [np.where(labels == c)[0] for c in range(n_comp)]


def kraus_operators(
    r: float,
    n_b: float,
    cutoff: int,
    d_anc: int | None = None,
    tail_target: float = 1e-10,
) -> np.ndarray:
    """Kraus operators of the lossy thermal channel from its dilation.

    Returns an array of shape (n_kraus, cutoff, cutoff); operators whose
    thermal weight underflows are dropped.
    """
    support, total = _ancilla_dims(r, n_b, cutoff, tail_target)
    if d_anc is not None:
        support = total = d_anc
    u4 = beam_splitter(r, cutoff, total).reshape(cutoff, total, cutoff, total)
    p_anc = np.real(np.diag(thermal_fock(n_b, total)))
    ops = []
    for n in range(support):
        if p_anc[n] <= 0.0:
            continue
        w = math.sqrt(p_anc[n])
        for k in range(total):
            ops.append(w * u4[:, k, :, n])
    return np.array(ops)


def theta_factor(
    r: float,
    n_b: float,
    n_s: float,
    cutoff: int | None = None,
    state_tail_tol: float = 1e-8,
    anc_tail_target: float = 1e-24,
) -> np.ndarray:
    """Low-rank factor B with theta = B B^dagger for one receiver-side state.

    Columns are (K_j otimes I) |tmsv>; the rank is at most the squared
    ancilla cutoff, far below the full two-mode dimension, which makes the
    spectral quantities cheap at large cutoffs.  The ancilla tail target is
    deep because the factor feeds fractional-power quantities, which amplify
    any missing tail mass to tail^s.
    """
    if cutoff is None:
        cutoff = choose_cutoff([n_s, n_b])
    psi = tmsv_fock(n_s, cutoff, state_tail_tol).reshape(cutoff, cutoff)
    support, total = _ancilla_dims(r, n_b, cutoff, anc_tail_target)
    u4 = beam_splitter(r, cutoff, total).reshape(cutoff, total, cutoff, total)
    p_anc = np.real(np.diag(thermal_fock(n_b, total)))[:support]
    # columns indexed by the Kraus label (k, n); one BLAS contraction instead
    # of materializing every Kraus operator
    cols = np.tensordot(u4[:, :, :, :support], psi, axes=([2], [0]))
    cols *= np.sqrt(p_anc)[None, None, :, None]
    return cols.transpose(0, 3, 1, 2).reshape(cutoff * cutoff, total * support)


def eig_from_factor(b: np.ndarray):
    """Eigenpairs of B B^dagger from the SVD of B, noise floor removed."""
    u, sig, _ = np.linalg.svd(b, full_matrices=False)
    keep = sig > (sig[0] * max(b.shape) * np.finfo(float).eps if sig.size else 0.0)
    return (sig[keep] ** 2, u[:, keep])


def sector_eigs_from_factor(b: np.ndarray, cutoff: int):
    """Eigenpairs of B B^dagger per photon-number-difference sector.

    The receiver-side states commute with the signal-minus-idler photon
    number, so every column of the factor lives in a single sector
    q = n_signal - n_idler.  Splitting the SVD over sectors keeps the cost
    near cutoff^3 instead of cutoff^6 and avoids cross-sector noise.
    Returns {q: (vals, vecs)} with vectors in the basis |n, n - q>.
    """
    b3 = b.reshape(cutoff, cutoff, -1)
    out = {}
    for q in range(-(cutoff - 1), cutoff):
        idx_n = np.arange(max(q, 0), min(cutoff, cutoff + q))
        bq = b3[idx_n, idx_n - q, :]
        live = np.einsum("ij,ij->j", np.abs(bq), np.abs(bq)) > 0.0
        u, sig, _ = np.linalg.svd(bq[:, live], full_matrices=False)
        out[q] = (sig**2, u)
    return out


def s_overlap_from_sector_eigs(eigs0: dict, eigs1: dict, s: float) -> float:
    """Tr(rho0^s rho1^(1-s)) from per-sector eigenpairs of both states."""
    total = 0.0
    for q, (v0, u0) in eigs0.items():
        v1, u1 = eigs1[q]
        total += s_overlap_from_eig(v0, u0, v1, u1, s)
    return total


def s_overlap_from_eig(v0, u0, v1, u1, s: float) -> float:
    """Tr(rho0^s rho1^(1-s)) from precomputed eigenpairs."""
    overlap = np.abs(u0.conj().T @ u1) ** 2
    return float((v0**s) @ overlap @ (v1 ** (1.0 - s)))


def channel_output_factor(
    r: float,
    n_b: float,
    psi: np.ndarray,
    cutoff: int,
    tail_target: float = 1e-24,
) -> np.ndarray:
    """Factor B with B B^dagger = channel(|psi><psi|) for a one-mode ket."""
    ks = kraus_operators(r, n_b, cutoff, tail_target=tail_target)
    return np.stack([k @ psi for k in ks], axis=1)


def fidelity_from_factors(b0: np.ndarray, b1: np.ndarray) -> float:
    """Squared-convention Uhlmann fidelity of rho_i = B_i B_i^dagger.

    Polar decomposition gives B_i = sqrt(rho_i) U_i, so the singular values
    of B0^dagger B1 equal those of sqrt(rho0) sqrt(rho1) and
    F = ||sqrt(rho0) sqrt(rho1)||_1^2 = (sum of those singular values)^2.
    This sidesteps the square root of an eigendecomposition, whose noise
    floor is on the order of sqrt(machine epsilon).
    """

    def reduce(b):
        # right-multiplying by an isometry changes nothing here, so a wide
        # factor can be compressed to at most (dim x dim) before the product
        if b.shape[1] <= b.shape[0]:
            return b
        u, sig, _ = np.linalg.svd(b, full_matrices=False)
        return u * sig

    b0, b1 = reduce(b0), reduce(b1)
    sig = np.linalg.svd(b0.conj().T @ b1, compute_uv=False)
    return float(np.sum(sig) ** 2)


def s_overlap_fock(rho0: FockOperator, rho1: FockOperator, s: float) -> float:
    """Tr(rho0^s rho1^(1-s)) by blockwise eigendecomposition."""
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    if rho0.matrix.shape != rho1.matrix.shape:
        raise ValueError("dimension mismatch")
    total = 0.0
    for idx in _joint_blocks(rho0.matrix, rho1.matrix):
        v0, u0 = _clipped_eigh(rho0.matrix[np.ix_(idx, idx)])
        v1, u1 = _clipped_eigh(rho1.matrix[np.ix_(idx, idx)])
        total += s_overlap_from_eig(v0, u0, v1, u1, s)
    return total


def uhlmann_fidelity_fock(rho0: FockOperator, rho1: FockOperator) -> float:
    """Squared-convention Uhlmann fidelity [Tr sqrt(sqrt(rho0) rho1 sqrt(rho0))]^2.

    The trace splits over the common block structure of the two operators.
    """
    if rho0.matrix.shape != rho1.matrix.shape:
        raise ValueError("dimension mismatch")
    root_sum = 0.0
    for idx in _joint_blocks(rho0.matrix, rho1.matrix):
        v0, u0 = _clipped_eigh(rho0.matrix[np.ix_(idx, idx)])
        sqrt0 = (u0 * np.sqrt(v0)) @ u0.conj().T
        inner = sqrt0 @ rho1.matrix[np.ix_(idx, idx)] @ sqrt0
        vals = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
        root_sum += float(np.sum(np.sqrt(np.clip(vals, 0.0, None))))
    return root_sum**2


def helstrom_error_fock(rho0: FockOperator, rho1: FockOperator) -> float:
    """Minimum equal-prior discrimination error (1 - trace distance)/2."""
    if rho0.matrix.shape != rho1.matrix.shape:
        raise ValueError("dimension mismatch")
    vals = np.linalg.eigvalsh(rho0.matrix - rho1.matrix)
    return float((1.0 - 0.5 * np.sum(np.abs(vals))) / 2.0)


def trace_norm_diff(rho0: FockOperator, rho1: FockOperator) -> float:
    """Trace-norm distance ||rho0 - rho1||_1."""
    vals = np.linalg.eigvalsh(rho0.matrix - rho1.matrix)
    return float(np.sum(np.abs(vals)))


def density_from_vector(psi: np.ndarray, n_modes: int, cutoff: int) -> FockOperator:
    """Rank-one density operator |psi><psi| (psi need not be normalized)."""
    return FockOperator(n_modes, cutoff, np.outer(psi, psi.conj()))


def theta_fock(
    r: float,
    n_b: float,
    n_s: float,
    cutoff: int | None = None,
    tail_tol: float = DEFAULT_TAIL_TOL,
    state_tail_tol: float = 1e-8,
) -> FockOperator:
    """Receiver-side state of one TMSV probe, computed entirely in Fock space.

    state_tail_tol bounds the truncation loss of the input ket (looser than
    the channel's trace-preservation tolerance, which compares input and
    output traces and is unaffected by the input tail).
    """
    if cutoff is None:
        cutoff = choose_cutoff([n_s, n_b])
    psi = tmsv_fock(n_s, cutoff, state_tail_tol)
    rho = density_from_vector(psi, 2, cutoff)
    return lossy_channel_fock(rho, 0, r, n_b, tail_tol=tail_tol)


def coherent_output_fock(
    r: float, n_b: float, n_s: float, cutoff: int | None = None
) -> FockOperator:
    """Single coherent probe |sqrt(n_s)> after the lossy thermal channel."""
    if cutoff is None:
        cutoff = choose_cutoff([4.0 * n_s, n_b])
    psi = coherent_fock(math.sqrt(n_s), cutoff)
    rho = density_from_vector(psi, 1, cutoff)
    return lossy_channel_fock(rho, 0, r, n_b)

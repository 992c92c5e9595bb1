"""Critical signal number for ideal memories.

For a cell with perfect land reflectivity (r1 = 1) both bounds have closed
forms, so the gain G(M) can be evaluated in microseconds and the smallest M
with G > 0 found by doubling plus binary search.  The critical number is the
maximum of that threshold over the bath noise N_B, with the analytically
identified extremal baths (N_B = 0 and N_B* = N_S / (1 + 2 N_S)) always
probed.  Asymptotic expansions near r0 = 1 and at r0 = 0 are provided for
cross-checking and for seeding the search.
"""

import math
from dataclasses import dataclass

from scipy.optimize import brentq, minimize_scalar

from .bounds import _classical_from_log_f, binary_entropy
from .channels import IdealCell

# G must exceed this to count as a positive gain; guards against declaring
# advantage from rounding noise.
GAIN_TOL = 1e-12

DEFAULT_M_CAP = 10**8
DEFAULT_NB_CAP = 100.0

#: Marker for "no finite M gives a positive gain below the cap".
UNBOUNDED = math.inf


@dataclass(frozen=True)
class CriticalPoint:
    """Critical signal number at one (r0, N_S) point of an ideal memory.

    m_crit is the smallest integer M with G > 0 after maximizing over the
    bath noise, or math.inf if none exists below the cap; n_b_worst is the
    bath value attaining the maximum.
    """

    r0: float
    n_s: float
    m_crit: float
    n_b_worst: float
    method: str


def gain_ideal(m: float, r0: float, n_b: float, n_s: float) -> float:
    """Information gain for an ideal memory via the closed forms.

    Accepts real M so that the zero crossing can be located continuously.
    """
    gamma = 1.0 + (1.0 - r0) * n_b
    log_f = -math.log(gamma) - (1.0 - math.sqrt(r0)) ** 2 * n_s / gamma
    c = _classical_from_log_f(log_f, m)
    base = (1.0 + (1.0 - math.sqrt(r0)) * n_s) ** 2 + n_b * (2.0 * n_s + 1.0) * (
        1.0 - r0
    )
    q = 0.5 * math.exp(-m * math.log(base))
    return binary_entropy(c) - binary_entropy(q)


def critical_M_at_noise(
    cell: IdealCell, n_s: float, m_cap: int = DEFAULT_M_CAP
) -> float:
    """Smallest integer M with G > 0 at fixed bath noise, or UNBOUNDED.

    Seeds from the near-r0=1 asymptote, doubles until the gain is positive,
    then binary-searches.  The search assumes G crosses zero once in M and
    asserts monotonicity along its path.
    """
    r0, n_b = cell.r0, cell.n_b

    def g(m):
        return gain_ideal(m, r0, n_b, n_s)

    if g(1) > GAIN_TOL:
        return 1
    seed = max(2, min(m_cap, math.ceil(asymptote_r0_near_1(n_s, 1.0 - r0))))
    lo, hi = 1, seed
    while g(hi) <= GAIN_TOL:
        if hi >= m_cap:
            return UNBOUNDED
        lo = hi
        hi = min(2 * hi, m_cap)
    # binary search for the threshold in (lo, hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if g(mid) > GAIN_TOL:
            hi = mid
        else:
            if mid > hi:  # pragma: no cover - single-threshold assumption
                raise RuntimeError(
                    f"gain not single-crossing in M at r0={r0}, n_b={n_b}, n_s={n_s}"
                )
            lo = mid
    return hi


def critical_M_continuous(cell: IdealCell, n_s: float, m_cap: int = DEFAULT_M_CAP):
    """Real-valued zero crossing of G in M at fixed bath noise, or UNBOUNDED."""
    r0, n_b = cell.r0, cell.n_b

    def g(m):
        return gain_ideal(m, r0, n_b, n_s)

    hi = 1.0
    if g(hi) > 0:
        lo = hi
        while lo > 1e-12 and g(lo) > 0:
            hi = lo
            lo /= 2.0
        if g(lo) > 0:
            return lo
    else:
        lo = hi
        while g(hi) <= 0:
            if hi >= m_cap:
                return UNBOUNDED
            lo = hi
            hi = min(2.0 * hi, float(m_cap))
    return float(brentq(g, lo, hi, xtol=1e-12, rtol=1e-14))


def worst_bath(r0: float, n_s: float, nb_cap: float = DEFAULT_NB_CAP):
    """Maximize the continuous zero crossing of G over the bath noise.

    Returns (m_cross, n_b_worst); m_cross may be UNBOUNDED.  Probes a coarse
    log grid plus the analytically extremal baths, then refines with a
    bounded scalar search in log N_B around the grid argmax.
    """
    cand = [0.0, n_s / (1.0 + 2.0 * n_s)]
    cand += [10.0 ** (-4 + 6 * k / 24) for k in range(25)]
    cand = sorted({nb for nb in cand if nb <= nb_cap})

    best_m, best_nb = -math.inf, 0.0
    for nb in cand:
        m = critical_M_continuous(IdealCell(r0, nb), n_s)
        if m > best_m:
            best_m, best_nb = m, nb
    if math.isinf(best_m):
        return UNBOUNDED, best_nb

    if best_nb > 0.0:
        lo = math.log10(max(best_nb / 10.0, 1e-6))
        hi = math.log10(min(best_nb * 10.0, nb_cap))
        res = minimize_scalar(
            lambda t: -critical_M_continuous(IdealCell(r0, 10.0**t), n_s),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-6},
        )
        if res.success and -res.fun > best_m:
            best_m, best_nb = -float(res.fun), 10.0 ** float(res.x)
    return best_m, best_nb


def critical_M(
    r0: float,
    n_s: float,
    m_cap: int = DEFAULT_M_CAP,
    nb_cap: float = DEFAULT_NB_CAP,
) -> CriticalPoint:
    """Critical signal number maximized over the bath noise."""
    if not 0.0 <= r0 < 1.0:
        raise ValueError("need r0 in [0, 1)")
    m_cross, nb_worst = worst_bath(r0, n_s, nb_cap)
    if math.isinf(m_cross):
        return CriticalPoint(r0, n_s, UNBOUNDED, nb_worst, "exact_search")
    m_crit = critical_M_at_noise(IdealCell(r0, nb_worst), n_s, m_cap)
    # the integer threshold can sit at a slightly different bath than the
    # continuous argmax; keep the larger of the probed values
    for nb in (0.0, n_s / (1.0 + 2.0 * n_s)):
        m_alt = critical_M_at_noise(IdealCell(r0, nb), n_s, m_cap)
        if m_alt > m_crit:
            m_crit, nb_worst = m_alt, nb
    return CriticalPoint(r0, n_s, m_crit, nb_worst, "exact_search")


def asymptote_r0_near_1(n_s: float, epsilon: float) -> float:
    """Critical M near r0 = 1: [4 N_S (2 N_S + 1) eps]^{-1}, eps = 1 - r0."""
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    return 1.0 / (4.0 * n_s * (2.0 * n_s + 1.0) * epsilon)


def gain_expansion_noiseless(m: int, n_s: float, epsilon: float) -> float:
    """Second-order gain near r0 = 1 at zero bath noise:
    M N_S (4 M N_S - 1) eps^2 / (8 ln 2)."""
    return m * n_s * (4.0 * m * n_s - 1.0) * epsilon**2 / (8.0 * math.log(2.0))


def delta_expansion_thermal(m: int, n_s: float, n_b: float, epsilon: float) -> float:
    """First-order Q - C near r0 = 1 for a thermal bath:
    [(M N_B eps)^{1/2} - M (N_B + N_S + 2 N_B N_S) eps] / 2."""
    return 0.5 * (
        math.sqrt(m * n_b * epsilon) - m * (n_b + n_s + 2.0 * n_b * n_s) * epsilon
    )


def m_tilde(n_s: float):
    """High-energy estimate of the critical M at r0 = N_B = 0:
    ln 2 / [2 ln(1 + N_S) - N_S], UNBOUNDED once the denominator is <= 0.

    Only meaningful for N_S >= 1 (the approximation regime)."""
    if n_s < 1.0:
        raise ValueError("m_tilde is an N_S >= 1 approximation")
    denom = 2.0 * math.log(1.0 + n_s) - n_s
    if denom <= 0.0:
        return UNBOUNDED
    return math.log(2.0) / denom


def m_tilde_divergence_energy() -> float:
    """The energy where m_tilde diverges: the positive root of
    2 ln(1 + N_S) = N_S (about 2.513)."""
    return float(brentq(lambda x: 2.0 * math.log(1.0 + x) - x, 2.0, 3.0, xtol=1e-12))

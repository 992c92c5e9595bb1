"""Critical signal number versus pit reflectivity.

For an ideal memory (land reflectivity 1) the critical number M^(N_S)(r0)
is the smallest number of signal modes with a guaranteed positive gain,
maximized over the bath noise.  The curves are finite everywhere on [0, 1)
for low energies and diverge as r0 -> 1 like 1 / [4 N_S (2 N_S + 1)(1-r0)];
at high energy the r0 = 0 end diverges instead, at N_S about 2.513.
"""

import math

from qread.critical import (
    asymptote_r0_near_1,
    critical_M,
    m_tilde,
    m_tilde_divergence_energy,
)

GRID = [0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.99]

for n_s in (0.1, 0.5, 1.0):
    print(f"N_S = {n_s}")
    print(f"  {'r0':>5} {'M_crit':>7} {'N_B_worst':>10} {'asymptote':>10}")
    for r0 in GRID:
        point = critical_M(r0, n_s)
        asym = asymptote_r0_near_1(n_s, 1.0 - r0)
        print(f"  {r0:>5.2f} {point.m_crit:>7.0f} {point.n_b_worst:>10.4f}"
              f" {asym:>10.2f}")
    print()

root = m_tilde_divergence_energy()
print(f"High-energy estimate at r0 = 0: ln2 / [2 ln(1+N_S) - N_S],")
print(f"diverging at N_S = {root:.4f}:")
for n_s in (1.0, 1.5, 2.0, 2.3, 2.45):
    est = m_tilde(n_s)
    print(f"  N_S = {n_s:>4}: M~ = {est:8.3f}  ceil = {math.ceil(est)}")

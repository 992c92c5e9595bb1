"""Cross-validation of the Gaussian closed forms against the Fock engine.

Every bound in the package rests on three closed-form ingredients: the
Gaussian s-overlap, the single-mode Uhlmann fidelity, and the lossy thermal
channel itself.  Each is recomputed here by brute force in a truncated Fock
basis (explicit density matrices, channel by unitary dilation with a thermal
ancilla) and compared over a parameter grid.
"""

import sys

from qread.verify import run_verify

checks = run_verify()
for check in checks:
    print(check.line())
sys.exit(0 if all(c.passed for c in checks) else 1)

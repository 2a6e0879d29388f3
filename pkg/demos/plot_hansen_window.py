"""
Compressions inside a narrow spectral window
============================================

``f(C*AC) <= 2 C* f(A/2) C`` for isometries ``C`` once the spectrum of ``A``
sits in ``[λ, (1 + 2√2) λ]``, checked through the unitary dilation.
"""

import numpy as np

from opmonotone.inequalities import HANSEN_RATIO, SpectralWindow, build_dilation, verify_hansen_type
from opmonotone.sampler import InstanceSpec, generate, random_isometry
from opmonotone.suites import run_suite

rng = np.random.default_rng(0)
C = random_isometry(rng, 4, 2)
U, V = build_dilation(C)
print("unitarity defects:", np.linalg.norm(U.conj().T @ U - np.eye(6)), np.linalg.norm(V.conj().T @ V - np.eye(6)))

window = SpectralWindow(1.0, HANSEN_RATIO)
A, _ = generate(InstanceSpec(4, "psd_window", 1, {"lo": window.lo, "hi": window.hi}))
print(verify_hansen_type(A, C, window).to_text())

###############################################################################
# Widening the window past the admissible ratio is an exploration: the run is
# labeled out of hypothesis and any violation is recorded, never asserted.

explore = run_suite("hansen-explore", 3, 50, 0, 1e-8)
print("out of hypothesis:", explore.out_of_hypothesis, "violations:", explore.extras["boundary_violations"])

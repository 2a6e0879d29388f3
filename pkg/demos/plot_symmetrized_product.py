"""
When AB + BA fails to be positive
=================================

Two positive matrices whose symmetrized product is indefinite, and what
that does to the kernels ``f_λ(t) = λt/(λ+t)``.
"""

import numpy as np

from opmonotone.hermitian import psd_check, symmetrized_product
from opmonotone.inequalities import (
    LAMBDA_GRID,
    f_lambda_defect,
    subadditivity_tail,
    verify_subadditivity_converse,
    verify_subadditivity_forward,
)
from opmonotone.sampler import InstanceSpec, generate

# A projection and a rank-one matrix
A = np.array([[1.0, 0.0], [0.0, 0.0]])
B = np.array([[1.0, 1.0], [1.0, 1.0]])
S = symmetrized_product(A, B)
print("AB + BA =\n", S.real)
print("min eigenvalue:", psd_check(S).min_eigenvalue, "vs 1 - sqrt(2) =", 1 - np.sqrt(2))

###############################################################################
# Scan the kernels. The defect ``f_λ(A) + f_λ(B) - f_λ(A + B)`` has a negative
# eigenvalue at every λ on the grid here, and the tail ``BXB + AYA`` that
# separates the defect from ``AB + BA`` decays like ``1/λ``.

for lam in (2.0**-5, 1.0, 2.0**5, 2.0**15):
    defect = psd_check(f_lambda_defect(A, B, lam), 0.0).min_eigenvalue
    tail = np.linalg.norm(subadditivity_tail(A, B, lam), 2)
    print(f"λ = {lam:10.4g}   defect min eig = {defect: .3e}   ||tail|| = {tail:.3e}")

report = verify_subadditivity_converse(A, B, LAMBDA_GRID)
print("verdict:", report.verdict, "first λ:", report.extras["found_lam"])

###############################################################################
# Pairs whose symmetrized product *is* positive pass the whole catalog subset.

(P, Q), info = generate(InstanceSpec(4, "jordan_positive_pair", seed=3))
print(verify_subadditivity_forward(P, Q).to_text())

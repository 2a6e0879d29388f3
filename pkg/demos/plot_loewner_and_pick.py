"""
Löwner matrices and the upper half-plane
========================================

Finite-order monotonicity certificates next to the Pick-function view, and
the first-quadrant test for compositions ``t² ∘ g``.
"""

from opmonotone.catalog import power, t_squared
from opmonotone.loewner import loewner_certificate, order_n_monotone, pick_scan
from opmonotone.suites import run_suite

# Divided differences of √t at three points form a positive matrix
cert = loewner_certificate(power(0.5), [0.25, 1.0, 4.0])
print("√t Löwner matrix:\n", cert.metadata["matrix"].round(4), "\nmin eig", cert.min_eigenvalue)

# t² already fails at two points
print("t² at {0, 1}: min eig", loewner_certificate(t_squared(), [0.0, 1.0]).min_eigenvalue)

###############################################################################
# Randomized order-6 certificates; the report carries the finite-order caveat.

report = order_n_monotone(power(0.3), 6, 200, seed=1)
print(report.to_text())

###############################################################################
# ``t^p`` maps the upper half-plane into the first quadrant exactly when
# ``p <= 1/2``, which is also when ``(t^p)² = t^{2p}`` stays monotone.

for p in (0.25, 0.5, 0.6, 0.9):
    scan = pick_scan(power(p))
    print(f"p = {p}: Pick {scan.is_pick_on_grid}, first quadrant {scan.is_first_quadrant_on_grid}, "
          f"min Re = {scan.min_re:.3e}")

print(run_suite("composition", 4, 100, 0, 1e-8).extras["agreement"], "exponents agree")

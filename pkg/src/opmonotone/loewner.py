"""
Monotonicity lab
~~~~~~~~~~~~~~~~
Finite-order certificates of operator monotonicity (positivity of Löwner
matrices of divided differences), midpoint operator convexity checks, Pick
function scans over the upper half-plane and the composition criterion for
``f o g`` with ``f`` operator convex and ``g`` non-negative operator monotone.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import CONVEX_TAG, FPRIME0_NONNEG, NONNEG_MONOTONE, complex_sample, compose
from .errors import DomainError, HypothesisError
from .hermitian import apply_function, as_hermitian, psd_check, spectral_norm
from .report import FINITE_ORDER_CAVEAT, SuiteReport

MERGE_RTOL = 1e-8
NEAR_RTOL = 1e-5
PICK_TOL = 1e-10
# sampling window used for functions on [0, inf)
LOG_FLOOR = 1e-6
LOG_CEIL = 1e3


def _too_close(a, b):
    return abs(a - b) < MERGE_RTOL * (1.0 + max(abs(a), abs(b)))


@dataclass
class LoewnerMatrix:
    points: np.ndarray
    entries: np.ndarray
    merged: list = field(default_factory=list)
    midpoint_pairs: list = field(default_factory=list)


def loewner_matrix(f, points):
    """Matrix of first divided differences of ``f`` at ``points``.

    Points closer than ``1e-8 (1 + |t|)`` are merged (dropped, recorded in
    ``merged``); pairs within relative gap ``1e-5`` use the derivative at the
    midpoint instead of the difference quotient.
    """
    kept, merged = [], []
    for t in map(float, points):
        hit = next((s for s in kept if _too_close(s, t)), None)
        if hit is None:
            kept.append(t)
        else:
            merged.append((t, hit))
    pts = np.array(kept)
    if not np.all(f.domain.contains(pts)):
        bad = pts[~f.domain.contains(pts)][0]
        raise DomainError(f"point {bad!r} lies outside {f.domain}", eigenvalue=float(bad))
    vals = np.asarray(f.eval(pts), dtype=float)
    der = np.asarray(f.deriv(pts), dtype=float)
    if not (np.all(np.isfinite(vals)) and np.all(np.isfinite(der))):
        raise DomainError(f"{f.label} or its derivative is not finite at {pts.tolist()}")
    k = len(pts)
    mat = np.diag(der)
    near = []
    for i in range(k):
        for j in range(i + 1, k):
            gap = pts[i] - pts[j]
            if abs(gap) <= NEAR_RTOL * max(abs(pts[i]), abs(pts[j])):
                d = float(f.deriv(np.array([0.5 * (pts[i] + pts[j])]))[0])
                near.append((i, j))
            else:
                d = (vals[i] - vals[j]) / gap
            mat[i, j] = mat[j, i] = d
    return LoewnerMatrix(pts, mat, merged, near)


def loewner_certificate(f, points, tol=None):
    """PSD certificate of the Löwner matrix of ``f`` at ``points``."""
    lm = loewner_matrix(f, points)
    cert = psd_check(lm.entries, tol)
    cert.metadata.update(
        points=lm.points.tolist(), merged=lm.merged, midpoint_pairs=lm.midpoint_pairs, matrix=lm.entries
    )
    return cert


def default_interval(f):
    lo, hi = f.domain.lo, f.domain.hi
    if lo >= 0:
        return (max(lo, LOG_FLOOR), min(hi, LOG_CEIL))
    return (max(lo, -LOG_CEIL), min(hi, LOG_CEIL))


def sample_points(rng, n, interval):
    """``n`` points, log-uniform on non-negative intervals, redrawn until well separated."""
    lo, hi = interval
    log_scale = lo >= 0
    if log_scale:
        lo = max(lo, LOG_FLOOR)
    while True:
        if log_scale:
            pts = np.exp(rng.uniform(math.log(lo), math.log(hi), n))
        else:
            pts = rng.uniform(lo, hi, n)
        s = np.sort(pts)
        if not any(_too_close(a, b) for a, b in zip(s[:-1], s[1:])):
            return pts


def order_n_monotone(f, n, trials, seed, interval=None, tol=None):
    """Randomized order-``n`` monotonicity certificate.

    All point sets are drawn from ``seed`` before any certificate is
    evaluated, so the report does not depend on evaluation order.
    """
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    interval = tuple(interval) if interval is not None else default_interval(f)
    rng = np.random.default_rng(seed)
    point_sets = [sample_points(rng, n, interval) for _ in range(trials)]
    report = SuiteReport(
        "order-n-monotone",
        params={"function": f.label, "n": n, "interval": list(interval)},
        seed=seed,
        tolerances={"psd": 1e-9 if tol is None else tol, "merge_rtol": MERGE_RTOL, "near_rtol": NEAR_RTOL},
        notes=[FINITE_ORDER_CAVEAT],
    )
    for k, pts in enumerate(point_sets):
        cert = loewner_certificate(f, pts, tol)
        report.trials += 1
        report.add_record(k, f.label, cert.min_eigenvalue, cert.positive)
        if not cert.positive:
            report.add_failure(cert.min_eigenvalue, trial=k, points=pts.tolist())
    return report


def midpoint_convexity_check(f, a, b, tol=None):
    """Certify ``(f(A) + f(B))/2 - f((A + B)/2) >= 0``."""
    a = as_hermitian(a)
    b = as_hermitian(b)
    fa = apply_function(f, a)
    fb = apply_function(f, b)
    fm = apply_function(f, 0.5 * (a + b))
    scale = max(spectral_norm(fa), spectral_norm(fb), spectral_norm(fm))
    return psd_check(0.5 * (fa + fb) - fm, tol, scale=scale)


# --- upper half-plane ----------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Log-polar grid: moduli log-spaced on ``[mod_lo, mod_hi]``, arguments ``k pi / (n_arg + 1)``."""

    mod_lo: float = 1e-3
    mod_hi: float = 1e3
    n_mod: int = 24
    n_arg: int = 32

    def points(self):
        r = np.geomspace(self.mod_lo, self.mod_hi, self.n_mod)
        theta = np.pi * np.arange(1, self.n_arg + 1) / (self.n_arg + 1)
        return (r[:, None] * np.exp(1j * theta[None, :])).ravel()


@dataclass
class PickReport:
    grid: np.ndarray
    min_im: float
    min_re: float
    is_pick_on_grid: bool
    is_first_quadrant_on_grid: bool
    argmin_im: complex = None
    argmin_re: complex = None

    def summary(self):
        return {
            "min_im": self.min_im,
            "min_re": self.min_re,
            "is_pick_on_grid": self.is_pick_on_grid,
            "is_first_quadrant_on_grid": self.is_first_quadrant_on_grid,
            "argmin_re": [self.argmin_re.real, self.argmin_re.imag],
        }


def pick_scan(f, grid=None, tau=PICK_TOL):
    grid = GridSpec() if grid is None else grid
    z = grid.points()
    w = np.broadcast_to(complex_sample(f, z), z.shape)
    i_im = int(np.argmin(w.imag))
    i_re = int(np.argmin(w.real))
    min_im = float(w.imag[i_im])
    min_re = float(w.real[i_re])
    pick = min_im >= -tau
    return PickReport(z, min_im, min_re, pick, pick and min_re >= -tau, complex(z[i_im]), complex(z[i_re]))


def composition_monotone_check(f, g, n, trials, seed, interval=None, tol=None, grid=None):
    """Order-``n`` monotonicity of ``f o g`` alongside the first-quadrant scan of ``g``.

    Both sides are reported so the equivalence can be checked in either
    direction: ``extras["first_quadrant"]`` against ``extras["composition_monotone"]``.
    """
    if not f.has(CONVEX_TAG, FPRIME0_NONNEG):
        raise HypothesisError(f"{f.label} must be tagged {CONVEX_TAG} and {FPRIME0_NONNEG}")
    if not g.has(NONNEG_MONOTONE):
        raise HypothesisError(f"{g.label} must be tagged {NONNEG_MONOTONE}")
    fg = compose(f, g)
    if interval is None:
        interval = (max(g.domain.lo, LOG_FLOOR), min(g.domain.hi, LOG_CEIL))
    report = order_n_monotone(fg, n, trials, seed, interval, tol)
    pick = pick_scan(g, grid)
    report.suite = "composition"
    report.params.update(f=f.label, g=g.label)
    report.extras.update(
        pick=pick.summary(),
        first_quadrant=pick.is_first_quadrant_on_grid,
        composition_monotone=report.passed,
    )
    return report

"""
Hermitian matrix arithmetic
~~~~~~~~~~~~~~~~~~~~~~~~~~~
Validation, a cyclic Jacobi eigensolver for complex Hermitian matrices,
spectral functional calculus and positive semidefinite order predicates.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; ``as_hermitian``
is the single entry point that validates and symmetrizes them.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - pure-Python fallback, same results
    def njit(*args, **kwargs):
        return lambda fn: fn

from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    HypothesisError,
    NotHermitianError,
)

MAX_SWEEPS = 100
OFFDIAG_RTOL = 1e-14
HERM_RTOL = 1e-12
DEFAULT_PSD_TOL = 1e-9
DOMAIN_SNAP = 1e-10


def as_hermitian(a, rtol=HERM_RTOL):
    """Validate ``a`` as a Hermitian matrix and return an exactly Hermitian copy.

    Entries may deviate from Hermitian symmetry by at most
    ``rtol * (1 + max|a_ij|)``; the returned matrix is ``(a + a^*) / 2``.
    """
    a = np.array(a, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitianError("matrix has non-finite entries")
    scale = 1.0 + float(np.max(np.abs(a)))
    asym = float(np.max(np.abs(a - a.conj().T)))
    if asym > rtol * scale:
        raise NotHermitianError(f"matrix is not Hermitian: max|A - A*| = {asym:.3e}")
    return 0.5 * (a + a.conj().T)


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in non-decreasing order with matching orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    @property
    def n(self):
        return self.eigenvalues.shape[0]

    @property
    def norm(self):
        return float(np.max(np.abs(self.eigenvalues)))

    def reconstruct(self):
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


@njit(cache=True)
def _jacobi_sweeps(a, v, target, skip, max_sweeps):
    """Row-cyclic complex Jacobi sweeps on ``a`` (in place), accumulating ``v``.

    Returns the number of sweeps taken and the final off-diagonal mass.
    """
    n = a.shape[0]
    sweeps = 0
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        off = math.sqrt(off)
        if off <= target or sweeps >= max_sweeps:
            return sweeps, off
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                mod = abs(b)
                if mod <= skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                ph = b / mod
                zeta = (aqq - app) / (2.0 * mod)
                if abs(zeta) > 1e150:
                    t = 0.5 / zeta
                elif zeta >= 0.0:
                    t = 1.0 / (zeta + math.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sph = s * ph
                sphc = sph.conjugate()
                # A <- A J with J = [[c, s ph], [-s conj(ph), c]] on columns p, q
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - sphc * akq
                    a[k, q] = sph * akp + c * akq
                # A <- J* A on rows p, q
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - sph * aqk
                    a[q, k] = sphc * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mod
                a[q, q] = aqq + t * mod
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - sphc * vkq
                    v[k, q] = sph * vkp + c * vkq
        sweeps += 1


def eigh(a, max_sweeps=MAX_SWEEPS):
    """Spectral decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like
        Hermitian matrix (validated with ``as_hermitian``).
    max_sweeps : int
        Upper bound on full row-cyclic sweeps.

    Returns
    -------
    Spectrum
        Ascending eigenvalues and unitary eigenvector matrix.

    Raises
    ------
    ConvergenceError
        If the off-diagonal Frobenius mass is still above
        ``1e-14 * ||A||_F`` after ``max_sweeps`` sweeps.
    """
    a = as_hermitian(a)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    target = OFFDIAG_RTOL * float(np.linalg.norm(a))
    # entries below this are treated as already annihilated
    skip = 1e-3 * target / n
    sweeps, off = _jacobi_sweeps(a, v, target, skip, max_sweeps)
    if off > target:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal mass {off:.3e})",
            residual=off,
        )
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], v[:, order], int(sweeps))


def _spectrum_of(a):
    return a if isinstance(a, Spectrum) else eigh(a)


def apply_function(f, a, snap=DOMAIN_SNAP):
    """Return ``U f(Λ) U*`` for ``A = U Λ U*``.

    ``f`` is either a catalog ``ScalarFunctionSpec`` (its domain is enforced,
    with eigenvalues less than ``snap`` outside a closed endpoint clamped onto
    it) or a plain vectorized callable. ``a`` may be a precomputed ``Spectrum``.
    """
    spec = _spectrum_of(a)
    lam = spec.eigenvalues
    domain = getattr(f, "domain", None)
    if domain is not None:
        lam = domain.snap(lam, snap)
    vals = np.asarray(f(lam), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = lam[~np.isfinite(vals)][0]
        raise DomainError(f"function is not finite at eigenvalue {bad!r}", eigenvalue=float(bad))
    u = spec.eigenvectors
    out = (u * vals) @ u.conj().T
    return 0.5 * (out + out.conj().T)


def symmetrized_product(a, b):
    """``S(A, B) = AB + BA``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _check_same_shape(a, b)
    ab = a @ b
    return ab + ab.conj().T if _is_herm_pair(a, b) else ab + b @ a


def _is_herm_pair(a, b):
    # (AB)* = BA holds exactly in floating point only for exactly Hermitian inputs
    return np.array_equal(a, a.conj().T) and np.array_equal(b, b.conj().T)


@dataclass
class PsdCertificate:
    """Outcome of a positivity check.

    ``verdict`` is ``"positive"`` iff ``min_eigenvalue >= -tolerance_used``;
    ``witness`` is a unit eigenvector for ``min_eigenvalue``.
    """

    verdict: str
    min_eigenvalue: float
    tolerance_used: float
    witness: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def positive(self):
        return self.verdict == "positive"

    def __bool__(self):
        return self.positive


def psd_check(a, tol=None, scale=None):
    """Certify ``A >= 0``.

    The tolerance is relative: ``tolerance_used = tol * (1 + s)`` where ``s``
    is ``scale`` when given (callers pass the norm of the operands a
    difference was formed from) and the spectral norm of ``A`` otherwise.
    """
    if tol is None:
        tol = DEFAULT_PSD_TOL
    if tol < 0:
        raise ValueError("tol must be non-negative")
    spec = _spectrum_of(a)
    s = spec.norm if scale is None else float(scale)
    tol_used = tol * (1.0 + s)
    lam_min = float(spec.eigenvalues[0])
    verdict = "positive" if lam_min >= -tol_used else "indefinite"
    return PsdCertificate(verdict, lam_min, tol_used, spec.eigenvectors[:, 0].copy())


def spectral_norm(a):
    """Largest singular value (any shape)."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def leq(a, b, tol=None):
    """Certify ``A <= B``, i.e. ``B - A >= 0``."""
    a = as_hermitian(a)
    b = as_hermitian(b)
    _check_same_shape(a, b)
    return psd_check(b - a, tol, scale=max(spectral_norm(a), spectral_norm(b)))


def resolvent_product(a, lam, tol=None):
    """``A (A + λI)^{-1}`` computed spectrally; eigenvalues lie in ``[0, 1)``."""
    if not lam > 0:
        raise ValueError("λ must be positive")
    spec = _spectrum_of(a)
    cert = psd_check(spec, tol)
    if not cert.positive:
        raise HypothesisError(f"A is not PSD (min eigenvalue {cert.min_eigenvalue:.3e})")
    w = np.clip(spec.eigenvalues, 0.0, None)
    u = spec.eigenvectors
    out = (u * (w / (w + lam))) @ u.conj().T
    return 0.5 * (out + out.conj().T)


# --- matrix JSON interchange -------------------------------------------------


def matrix_to_dict(a):
    """``{"n", "re", "im"}`` for square matrices; rectangular ones add ``"shape"``."""
    a = np.asarray(a, dtype=complex)
    out = {"n": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        out["shape"] = list(a.shape)
    return out


def matrix_from_dict(d, hermitian=True):
    try:
        a = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        n = int(d["n"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if a.ndim != 2 or a.shape[0] != n:
        raise DimensionError(f"declared n={n} does not match entries of shape {a.shape}")
    if hermitian and "shape" not in d:
        return as_hermitian(a)
    return a


def load_matrices(path):
    """Read a matrix JSON file: one matrix, a list, or a name -> matrix mapping."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, list):
        return [matrix_from_dict(d) for d in data]
    if "re" in data:
        return [matrix_from_dict(data)]
    return {k: matrix_from_dict(v) for k, v in data.items()}


def save_matrices(path, matrices):
    if isinstance(matrices, dict):
        data = {k: matrix_to_dict(v) for k, v in matrices.items()}
    elif isinstance(matrices, (list, tuple)):
        data = [matrix_to_dict(m) for m in matrices]
    else:
        data = matrix_to_dict(matrices)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)

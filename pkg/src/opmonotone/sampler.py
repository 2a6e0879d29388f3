"""
Seeded instance generation and counterexample shrinking.

Every generated instance is re-checked against the defining predicate of
its kind; a violation there is a generator bug and raises, it is never
passed on to a verifier.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationError
from .hermitian import apply_function, as_hermitian, eigh, leq, psd_check, symmetrized_product

MAX_NORM = 10.0
PREDICATE_TOL = 1e-10
INDEFINITE_MARGIN = 1e-3

KINDS = (
    "psd",
    "psd_window",
    "psd_pair",
    "ordered_pair_leq",
    "ordered_pair_sq_leq",
    "sq_violating_pair",
    "jordan_positive_pair",
    "jordan_indefinite_pair",
    "isometry",
    "resolution_of_identity",
)


@dataclass(frozen=True)
class InstanceSpec:
    """What to generate.

    ``params`` by kind: ``psd_window`` takes ``lo``, ``hi``; ``isometry``
    takes ``rows``, ``cols`` (``dim`` is ignored); ``resolution_of_identity``
    takes ``count``.
    """

    dim: int
    kind: str
    seed: int
    params: dict = field(default_factory=dict)


def haar_unitary(rng, n):
    """QR of a complex Ginibre matrix with the phases of ``diag(R)`` removed."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_isometry(rng, rows, cols):
    if cols > rows:
        raise ValueError("an isometry needs rows >= cols")
    z = (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _from_eigs(u, w):
    return as_hermitian((u * w) @ u.conj().T)


def random_psd(rng, n, eigenvalues=None):
    """``Q diag(|g|) Q*``; spectral norm at most 10."""
    w = np.abs(rng.standard_normal(n)) if eigenvalues is None else np.asarray(eigenvalues, float)
    top = w.max()
    if top > MAX_NORM:
        w = w * (MAX_NORM / top)
    return _from_eigs(haar_unitary(rng, n), w)


def _psd_root(a):
    return apply_function(np.sqrt, _clipped(a))


def _clipped(a):
    s = eigh(a)
    return _from_eigs(s.eigenvectors, np.clip(s.eigenvalues, 0.0, None))


def _scale(a, b):
    return max(np.linalg.norm(a, 2) * np.linalg.norm(b, 2), 1e-300)


def _jordan_min(a, b):
    return psd_check(symmetrized_product(a, b), 0.0).min_eigenvalue


def _jordan_positive(rng, n):
    budget = 10 * n * n
    for attempt in range(budget):
        a, b = random_psd(rng, n), random_psd(rng, n)
        if _jordan_min(a, b) >= 0.0:
            return (a, b), {"attempts": attempt + 1, "fallback": False}
    # commuting PSD pairs always have AB + BA >= 0
    a = random_psd(rng, n)
    b = _from_eigs(eigh(a).eigenvectors, np.abs(rng.standard_normal(n)))
    return (a, _rescale(b)), {"attempts": budget, "fallback": True}


def _rescale(a):
    top = np.linalg.norm(a, 2)
    return as_hermitian(a * (MAX_NORM / top)) if top > MAX_NORM else a


def _reject(rng, n, draw, accept, what, budget=None):
    budget = budget or max(1000, 10 * n * n)
    for attempt in range(budget):
        inst = draw()
        if accept(inst):
            return inst, {"attempts": attempt + 1}
    raise GenerationError(f"{what}: no acceptable instance in {budget} draws", attempts=budget, accepted=0)


def _resolution(rng, n, count):
    parts = [random_psd(rng, n) + 1e-3 * np.eye(n) for _ in range(count)]
    t_inv_half = apply_function(lambda w: 1.0 / np.sqrt(w), sum(parts))
    normalized = [as_hermitian(t_inv_half @ r @ t_inv_half) for r in parts]
    return [_psd_root(r) for r in normalized]


def generate(spec):
    """Build an instance of ``spec.kind``; a pure function of ``spec`` including its seed.

    Returns ``(instance, info)`` where ``info`` holds generation diagnostics.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.dim
    kind = spec.kind
    p = spec.params
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; valid kinds: {', '.join(KINDS)}")
    if kind != "isometry" and not 1 <= n <= 64:
        raise ValueError("dim must lie in [1, 64]")
    info = {}
    if kind == "psd":
        inst = random_psd(rng, n)
    elif kind == "psd_window":
        lo, hi = float(p["lo"]), float(p["hi"])
        inst = _from_eigs(haar_unitary(rng, n), rng.uniform(lo, hi, n))
    elif kind == "psd_pair":
        inst = (random_psd(rng, n), random_psd(rng, n))
    elif kind == "ordered_pair_leq":
        lower = random_psd(rng, n)
        upper = lower + random_psd(rng, n)
        # one common factor keeps the order
        factor = min(1.0, MAX_NORM / np.linalg.norm(upper, 2))
        inst = (as_hermitian(factor * lower), as_hermitian(factor * upper))
    elif kind == "ordered_pair_sq_leq":
        a = random_psd(rng, n)
        # A(I - W)A with 0 <= W <= I is a PSD matrix below A^2
        w = _from_eigs(haar_unitary(rng, n), rng.uniform(0.0, 1.0, n))
        inst = (a, _psd_root(as_hermitian(a @ (np.eye(n) - w) @ a)))
    elif kind == "sq_violating_pair":
        inst, info = _reject(
            rng, n, lambda: (random_psd(rng, n), random_psd(rng, n)),
            lambda ab: not leq(ab[1] @ ab[1], ab[0] @ ab[0], PREDICATE_TOL).positive,
            "sq_violating_pair",
        )
    elif kind == "jordan_positive_pair":
        inst, info = _jordan_positive(rng, n)
    elif kind == "jordan_indefinite_pair":
        if n == 1:
            # scalars commute, so AB + BA = 2ab >= 0
            raise GenerationError("jordan_indefinite_pair needs dim >= 2", attempts=0, accepted=0)
        inst, info = _reject(
            rng, n, lambda: (random_psd(rng, n), random_psd(rng, n)),
            lambda ab: _jordan_min(*ab) < -INDEFINITE_MARGIN * _scale(*ab),
            "jordan_indefinite_pair",
        )
    elif kind == "isometry":
        inst = random_isometry(rng, int(p["rows"]), int(p["cols"]))
    else:
        inst = _resolution(rng, n, int(p.get("count", 3)))
    if not satisfies(kind, inst, p):
        raise GenerationError(f"generated {kind} instance violates its defining predicate")
    return inst, info


def satisfies(kind, inst, params=None, tol=PREDICATE_TOL):
    """The defining predicate of each kind, checked within ``tol``."""
    params = params or {}
    if kind == "psd":
        return psd_check(inst, tol).positive
    if kind == "psd_window":
        n = inst.shape[0]
        return (leq(params["lo"] * np.eye(n), inst, tol).positive
                and leq(inst, params["hi"] * np.eye(n), tol).positive)
    if kind == "isometry":
        return np.linalg.norm(inst.conj().T @ inst - np.eye(inst.shape[1]), 2) <= tol
    if kind == "resolution_of_identity":
        n = inst[0].shape[1]
        return np.linalg.norm(sum(c.conj().T @ c for c in inst) - np.eye(n), 2) <= tol
    a, b = inst
    if not (psd_check(a, tol).positive and psd_check(b, tol).positive):
        return False
    if kind == "psd_pair":
        return True
    if kind == "ordered_pair_leq":
        return leq(a, b, tol).positive
    if kind == "ordered_pair_sq_leq":
        return leq(b @ b, a @ a, tol).positive
    if kind == "sq_violating_pair":
        return not leq(b @ b, a @ a, tol).positive
    if kind == "jordan_positive_pair":
        return psd_check(symmetrized_product(a, b), tol).positive
    if kind == "jordan_indefinite_pair":
        return _jordan_min(a, b) < -INDEFINITE_MARGIN * _scale(a, b)
    raise ValueError(f"unknown kind {kind!r}")


# --- shrinking -------------------------------------------------------------------


def _as_tuple(instance):
    return (instance,) if isinstance(instance, np.ndarray) else tuple(instance)


def _restore(template, mats):
    return mats[0] if isinstance(template, np.ndarray) else type(template)(mats)


def _still_fails(predicate, cand):
    try:
        return bool(predicate(cand))
    except Exception:
        return False


def shrink(instance, failing_predicate, max_steps=200):
    """Simplify a failing instance while ``failing_predicate`` stays true.

    Tried in order: deleting one index from every matrix (principal
    submatrices), rounding entries to 1..6 decimals, and moving each matrix
    toward a multiple of the identity. Each step is kept only if the
    predicate still holds; at most ``max_steps`` candidate evaluations.
    """
    mats = [np.asarray(m, dtype=complex) for m in _as_tuple(instance)]
    steps = 0

    def attempt(cand):
        nonlocal steps, mats
        if steps >= max_steps:
            return False
        steps += 1
        obj = _restore(instance, cand)
        if _still_fails(failing_predicate, obj):
            mats = cand
            return True
        return False

    progress = True
    while progress and steps < max_steps:
        progress = False
        n = mats[0].shape[0]
        if n > 1:
            for i in range(n):
                keep = [k for k in range(n) if k != i]
                if attempt([m[np.ix_(keep, keep)] for m in mats]):
                    progress = True
                    break
            if progress:
                continue
        for digits in range(1, 7):
            cand = [np.round(m.real, digits) + 1j * np.round(m.imag, digits) for m in mats]
            if all(np.array_equal(c, m) for c, m in zip(cand, mats)):
                break
            if attempt(cand):
                progress = True
                break
        if progress:
            continue
        for alpha in (0.5, 0.25, 0.1):
            cand = []
            for m in mats:
                target = np.trace(m).real / m.shape[0] * np.eye(m.shape[0])
                cand.append((1.0 - alpha) * m + alpha * target)
            if attempt(cand):
                progress = True
                break
    return _restore(instance, mats)

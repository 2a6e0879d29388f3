"""
Inequality verifiers
~~~~~~~~~~~~~~~~~~~~
One verifier per operator inequality. Each takes a concrete instance,
checks the hypotheses (raising ``HypothesisError`` when they fail, unless
``explore=True``), certifies the conclusion with ``psd_check`` and returns a
single-instance ``SuiteReport``.

Conventions: ``tol`` is relative to the norm of the operands (see
``psd_check``); records are one row per certified difference.
"""
import math
from dataclasses import dataclass

import numpy as np

from .catalog import (
    CONVEX_TAG,
    FPRIME0_NONNEG,
    NONNEG_MONOTONE,
    OPEN_HALF_LINE,
    convex_kernel,
    convex_subset,
    from_callables,
    monotone_subset,
    power,
    t_squared,
)
from .errors import HypothesisError
from .hermitian import (
    apply_function,
    as_hermitian,
    eigh,
    leq,
    psd_check,
    resolvent_product,
    spectral_norm,
    symmetrized_product,
)
from .report import SuiteReport

DEFAULT_TOL = 1e-8
HANSEN_RATIO = 1.0 + 2.0 * math.sqrt(2.0)
LAMBDA_GRID = tuple(2.0**k for k in range(-5, 26))
CONVEX_LAMBDAS = tuple(2.0**k for k in range(-4, 5))
IDENTITY_RTOL = 1e-12


@dataclass(frozen=True)
class SpectralWindow:
    """Scalar bounds ``lo I <= A <= hi I``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"need 0 <= lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def ratio(self):
        return math.inf if self.lo == 0 else self.hi / self.lo

    def contains(self, a, tol=DEFAULT_TOL):
        n = a.shape[0]
        return leq(self.lo * np.eye(n), a, tol).positive and leq(a, self.hi * np.eye(n), tol).positive


@dataclass
class ContractionFamily:
    """Blocks ``C_i`` (possibly rectangular, equal column count)."""

    blocks: list

    @property
    def resolution_defect(self):
        k = self.blocks[0].shape[1]
        return spectral_norm(sum(c.conj().T @ c for c in self.blocks) - np.eye(k))

    @property
    def stacked(self):
        return np.vstack(self.blocks)


def _require(ok, message, report, explore):
    if ok:
        return
    if not explore:
        raise HypothesisError(message)
    report.out_of_hypothesis = True
    report.notes.append("out of hypothesis: " + message)


def _require_psd(a, name, tol, report, explore):
    cert = psd_check(a, tol)
    _require(cert.positive, f"{name} is not PSD (min eigenvalue {cert.min_eigenvalue:.3e})", report, explore)


def _certify(report, label, diff, scale, tol, **context):
    cert = psd_check(diff, tol, scale=scale)
    report.add_record(0, label, cert.min_eigenvalue, cert.positive)
    if not cert.positive:
        report.add_failure(cert.min_eigenvalue, function=label, witness=cert.witness, **context)
    return cert


def _norm(*mats):
    return max(spectral_norm(m) for m in mats)


def _monotone_only(fs, report):
    keep = [f for f in fs if f.has(NONNEG_MONOTONE)]
    for f in fs:
        if f not in keep:
            report.notes.append(f"skipped {f.label}: not tagged {NONNEG_MONOTONE}")
    return keep


def _convex_only(fs, report):
    keep = [f for f in fs if f.has(CONVEX_TAG, FPRIME0_NONNEG)]
    for f in fs:
        if f not in keep:
            report.notes.append(f"skipped {f.label}: not tagged {CONVEX_TAG} and {FPRIME0_NONNEG}")
    return keep


def default_convex_family():
    """Convex suite functions plus the kernels ``λt²/(λ+t)`` over a dyadic λ grid."""
    fs = convex_subset()
    seen = {f.label for f in fs}
    fs += [f for f in (convex_kernel(lam) for lam in CONVEX_LAMBDAS) if f.label not in seen]
    return fs


# --- symmetrized product and subadditivity ---------------------------------------


def verify_subadditivity_forward(a, b, fs=None, tol=DEFAULT_TOL, explore=False):
    """``AB + BA >= 0`` implies ``f(A+B) <= f(A) + f(B)`` for non-negative operator monotone ``f``."""
    a, b = as_hermitian(a), as_hermitian(b)
    report = SuiteReport("thm-subadd-fwd", params={"dim": a.shape[0]}, trials=1, tolerances={"psd": tol})
    _require_psd(a, "A", tol, report, explore)
    _require_psd(b, "B", tol, report, explore)
    s_cert = psd_check(symmetrized_product(a, b), tol)
    report.params["lambda_min_S"] = s_cert.min_eigenvalue
    _require(s_cert.positive, f"AB + BA is not PSD (min eigenvalue {s_cert.min_eigenvalue:.3e})", report, explore)
    fs = _monotone_only(monotone_subset() if fs is None else fs, report)
    sa, sb, sab = eigh(a), eigh(b), eigh(a + b)
    for f in fs:
        fa, fb, fab = apply_function(f, sa), apply_function(f, sb), apply_function(f, sab)
        _certify(report, f.label, fa + fb - fab, _norm(fa, fb, fab), tol)
    return report


def subadditivity_tail(a, b, lam):
    """``B X_λ B + A Y_λ A`` with ``X_λ = A(A+λ)^{-1}``, ``Y_λ = B(B+λ)^{-1}``."""
    x = resolvent_product(a, lam)
    y = resolvent_product(b, lam)
    return b @ x @ b + a @ y @ a


def f_lambda_defect(a, b, lam):
    """``f_λ(A) + f_λ(B) - f_λ(A+B)`` for ``f_λ(t) = λt/(λ+t)``, via resolvent products."""
    x = resolvent_product(a, lam)
    y = resolvent_product(b, lam)
    z = resolvent_product(a + b, lam)
    return as_hermitian(lam * (x + y - z))


def verify_subadditivity_converse(a, b, lam_grid=LAMBDA_GRID, tol=DEFAULT_TOL, explore=False):
    """Search ``lam_grid`` for a λ at which ``f_λ`` fails to be subadditive on ``(A, B)``.

    The report passes iff a violation is found (``verdict = "violation_found"``);
    otherwise the verdict is ``"inconclusive"`` and the defect spectrum at the
    largest λ is attached. ``extras["tail_norms"]`` tracks ``||B X_λ B + A Y_λ A||``
    along the grid.
    """
    a, b = as_hermitian(a), as_hermitian(b)
    report = SuiteReport("thm-subadd-conv", params={"dim": a.shape[0]}, trials=1, tolerances={"psd": tol})
    _require_psd(a, "A", tol, report, explore)
    _require_psd(b, "B", tol, report, explore)
    s = symmetrized_product(a, b)
    s_cert = psd_check(s, tol)
    report.params["lambda_min_S"] = s_cert.min_eigenvalue
    _require(
        s_cert.min_eigenvalue < -10.0 * s_cert.tolerance_used,
        f"AB + BA is not indefinite by a margin (min eigenvalue {s_cert.min_eigenvalue:.3e})",
        report,
        explore,
    )
    na, nb = spectral_norm(a), spectral_norm(b)
    grid = sorted(float(x) for x in lam_grid)
    violations, congruent, tails, bounds, proof_mins = [], [], [], [], []
    last = None
    for lam in grid:
        defect = f_lambda_defect(a, b, lam)
        scale = min(lam, max(na, nb, spectral_norm(a + b)))
        cert = psd_check(defect, tol, scale=scale)
        label = f"f_lambda:lam={lam:g}"
        report.add_record(0, label, cert.min_eigenvalue, cert.positive, lam=lam)
        if not cert.positive:
            violations.append({"lam": lam, "min_eigenvalue": cert.min_eigenvalue, "witness": cert.witness})
        tail = subadditivity_tail(a, b, lam)
        tails.append(spectral_norm(tail))
        bounds.append((nb * nb * na + na * na * nb) / lam)
        # the defect is congruent to λ(S + tail) through (λ + A + B)^{-1}, so both share inertia
        proof = psd_check(s + tail, tol)
        proof_mins.append(proof.min_eigenvalue)
        if not proof.positive:
            congruent.append({"lam": lam, "min_eigenvalue": proof.min_eigenvalue, "witness": proof.witness})
        last = (lam, cert, defect)
    report.extras.update(
        lam_grid=grid,
        tail_norms=tails,
        tail_bounds=bounds,
        tail_monotone_decay=all(x >= y - 1e-12 * (1 + x) for x, y in zip(tails, tails[1:])),
        tail_within_bound=all(t <= bd * (1 + 1e-9) for t, bd in zip(tails, bounds)),
        proof_matrix_min_eigenvalues=proof_mins,
        violations=violations,
        congruence_violations=congruent,
    )
    if violations or congruent:
        hits = violations or congruent
        report.verdict = "violation_found"
        report.extras["certified_by"] = "defect" if violations else "congruence"
        report.extras["found_lam"] = hits[0]["lam"]
        report.extras["worst_lam"] = min(hits, key=lambda v: v["min_eigenvalue"])["lam"]
    else:
        lam, cert, defect = last
        report.verdict = "inconclusive"
        report.add_failure(
            cert.min_eigenvalue, reason="no violating λ on the grid", lam=lam,
            defect_spectrum=eigh(defect).eigenvalues,
        )
    return report


def gustafson_bound(wa, wb):
    """``mn - (M - m)(N - n)/8``."""
    return wa.lo * wb.lo - (wa.hi - wa.lo) * (wb.hi - wb.lo) / 8.0


def verify_gustafson(a, b, wa, wb, tol=DEFAULT_TOL, explore=False):
    """``(AB + BA)/2 >= mn - (M - m)(N - n)/8`` for windows ``m <= A <= M``, ``n <= B <= N``."""
    a, b = as_hermitian(a), as_hermitian(b)
    report = SuiteReport(
        "gustafson", params={"dim": a.shape[0], "wA": [wa.lo, wa.hi], "wB": [wb.lo, wb.hi]},
        trials=1, tolerances={"psd": tol},
    )
    _require(wa.contains(a, tol), f"spectrum of A is not inside [{wa.lo}, {wa.hi}]", report, explore)
    _require(wb.contains(b, tol), f"spectrum of B is not inside [{wb.lo}, {wb.hi}]", report, explore)
    bound = gustafson_bound(wa, wb)
    half_s = 0.5 * symmetrized_product(a, b)
    report.params["bound"] = bound
    _certify(report, "gustafson", half_s - bound * np.eye(a.shape[0]), max(spectral_norm(half_s), abs(bound)), tol)
    return report


def window_condition(wa, wb):
    return (wa.hi - wa.lo) * (wb.hi - wb.lo) <= 8.0 * wa.lo * wb.lo * (1 + 1e-12)


def verify_window_subadditivity(a, b, wa, wb, fs=None, tol=DEFAULT_TOL, explore=False):
    """Windows with ``(M - m)(N - n) <= 8mn`` force ``AB + BA >= 0`` and hence subadditivity."""
    a, b = as_hermitian(a), as_hermitian(b)
    report = SuiteReport(
        "window-subadd", params={"dim": a.shape[0], "wA": [wa.lo, wa.hi], "wB": [wb.lo, wb.hi]},
        trials=1, tolerances={"psd": tol},
    )
    _require(window_condition(wa, wb), "(M - m)(N - n) > 8mn", report, explore)
    g = verify_gustafson(a, b, wa, wb, tol, explore)
    report.records.extend(g.records)
    report.failures.extend(g.failures)
    report.out_of_hypothesis |= g.out_of_hypothesis
    s_cert = psd_check(symmetrized_product(a, b), tol)
    report.add_record(0, "AB+BA", s_cert.min_eigenvalue, s_cert.positive)
    if not s_cert.positive:
        report.add_failure(s_cert.min_eigenvalue, function="AB+BA")
        return report
    fwd = verify_subadditivity_forward(a, b, fs, tol, explore)
    report.records.extend(fwd.records)
    report.failures.extend(fwd.failures)
    report.notes.extend(fwd.notes)
    return report


def _check_exponent(p, report, explore):
    _require(0.0 <= p <= 0.5, f"p = {p} is outside [0, 1/2]", report, explore)


def verify_power_split(a, b, p, fs=None, tol=DEFAULT_TOL, explore=False):
    """``A <= B``, ``0 <= p <= 1/2``: ``f(B^p) <= f((B^p + A^p)/2) + f((B^p - A^p)/2)``.

    Also certifies the engine of the argument: ``S_2 >= 0`` and
    ``2(S_1 S_2 + S_2 S_1) = B^{2p} - A^{2p} >= 0``.
    """
    a, b = as_hermitian(a), as_hermitian(b)
    report = SuiteReport("power-split", params={"dim": a.shape[0], "p": p}, trials=1, tolerances={"psd": tol})
    _check_exponent(p, report, explore)
    _require_psd(a, "A", tol, report, explore)
    _require(leq(a, b, tol).positive, "A <= B fails", report, explore)
    g = power(p)
    ap, bp = apply_function(g, a), apply_function(g, b)
    s1, s2 = 0.5 * (bp + ap), 0.5 * (bp - ap)
    _certify(report, "S2", s2, _norm(ap, bp), tol)
    g2 = power(2 * p)
    a2p, b2p = apply_function(g2, a), apply_function(g2, b)
    engine = 2.0 * symmetrized_product(s1, s2)
    scale = 1.0 + _norm(a2p, b2p)
    report.extras["identity_residual"] = float(np.linalg.norm(engine - (b2p - a2p)) / scale)
    _certify(report, "B^2p-A^2p", b2p - a2p, _norm(a2p, b2p), tol)
    fs = _monotone_only(monotone_subset() if fs is None else fs, report)
    s1_spec, s2_spec, bp_spec = eigh(s1), eigh(s2), eigh(bp)
    for f in fs:
        f1, f2, fb = apply_function(f, s1_spec), apply_function(f, s2_spec), apply_function(f, bp_spec)
        _certify(report, f.label, f1 + f2 - fb, _norm(f1, f2, fb), tol)
    return report


# --- isometries and the dilation ------------------------------------------------


def build_dilation(c, tol=1e-10):
    """Unitaries ``U = [[C, D], [0, -C*]]`` and ``V = [[C, -D], [0, C*]]`` with ``D = (I - CC*)^{1/2}``.

    ``C`` is an ``m x k`` isometry (``C*C = I_k``); ``U`` and ``V`` are
    ``(m + k)`` square.
    """
    c = np.asarray(c, dtype=complex)
    m, k = c.shape
    defect = spectral_norm(c.conj().T @ c - np.eye(k))
    if defect > tol:
        raise HypothesisError(f"C is not an isometry: ||C*C - I|| = {defect:.3e}")
    # I - CC* is a projector; snap rounding noise so the square root stays exact
    d = apply_function(lambda w: np.sqrt(np.where(w < tol, 0.0, w)), as_hermitian(np.eye(m) - c @ c.conj().T))
    zero = np.zeros((k, k), dtype=complex)
    u = np.block([[c, d], [zero, -c.conj().T]])
    v = np.block([[c, -d], [zero, c.conj().T]])
    return u, v


def dilation_block_identity(a, c, a2=None):
    """Check the block structure used in the argument with ``X = diag(A, A2)``.

    ``A2`` acts on the domain of ``C`` (``A2 = C*AC`` by default). Returns the
    residuals of the (1,1) block of ``U*XU + V*XV`` against ``2 C*AC`` and of
    the off-diagonal blocks against zero, plus the unitarity defects.
    """
    c = np.asarray(c, dtype=complex)
    m, k = c.shape
    a = as_hermitian(a)
    a2 = c.conj().T @ a @ c if a2 is None else as_hermitian(a2)
    u, v = build_dilation(c)
    x = np.block([[a, np.zeros((m, k))], [np.zeros((k, m)), a2]])
    total = u.conj().T @ (0.5 * x) @ u + v.conj().T @ (0.5 * x) @ v
    eye = np.eye(m + k)
    return {
        "block11": spectral_norm(total[:k, :k] - c.conj().T @ a @ c),
        "offdiag": spectral_norm(total[:k, k:]),
        "unitary_U": spectral_norm(u.conj().T @ u - eye),
        "unitary_V": spectral_norm(v.conj().T @ v - eye),
    }


def _hansen_window(window, mats, tol, report, explore):
    _require(
        window.hi <= HANSEN_RATIO * window.lo * (1 + 1e-12),
        f"window [{window.lo:g}, {window.hi:g}] is wider than [λ, (1+2√2)λ]",
        report,
        explore,
    )
    for i, m in enumerate(mats):
        _require(window.contains(m, tol), f"spectrum of A_{i} is outside the window", report, explore)


def verify_hansen_type(a, family, window, fs=None, tol=DEFAULT_TOL, explore=False):
    """Isometry and resolution-of-identity forms of ``f(C*AC) <= 2 C* f(A/2) C``.

    ``a`` is one matrix (used for every block) or a list ``A_1..A_n``;
    ``family`` is an isometry matrix or a ``ContractionFamily``. The family
    form is evaluated with ``f(A_i / 2)`` inside the sum; when all ``A_i``
    coincide this is the same as the reading with a single ``A``.
    """
    if isinstance(family, ContractionFamily):
        blocks = family.blocks
    else:
        blocks = [np.asarray(family, dtype=complex)]
    mats = [as_hermitian(m) for m in (a if isinstance(a, (list, tuple)) else [a] * len(blocks))]
    if len(mats) != len(blocks):
        raise ValueError("need one A_i per block")
    form = "isometry" if len(blocks) == 1 else "family"
    report = SuiteReport(
        "hansen", params={"form": form, "window": [window.lo, window.hi], "blocks": len(blocks)},
        trials=1, tolerances={"psd": tol},
    )
    fam = ContractionFamily(blocks)
    report.extras["resolution_defect"] = fam.resolution_defect
    _require(fam.resolution_defect <= 1e-10, "sum C_i* C_i != I", report, explore)
    _hansen_window(window, mats, tol, report, explore)
    coincide = all(np.array_equal(m, mats[0]) for m in mats)
    report.extras["literal_reading"] = "coincides with per-index reading" if coincide else "not applicable"
    if form == "isometry":
        report.extras["dilation"] = dilation_block_identity(mats[0], blocks[0])
    inner = sum(c.conj().T @ m @ c for c, m in zip(blocks, mats))
    inner = as_hermitian(inner)
    fs = _monotone_only(monotone_subset() if fs is None else fs, report)
    halves = [eigh(0.5 * m) for m in mats]
    inner_spec = eigh(inner)
    for f in fs:
        lhs = apply_function(f, inner_spec)
        rhs = 2.0 * sum(c.conj().T @ apply_function(f, h) @ c for c, h in zip(blocks, halves))
        _certify(report, f.label, rhs - lhs, _norm(lhs, rhs), tol)
    return report


def verify_weighted_corollary(weights, parts, window, fs=None, tol=DEFAULT_TOL, explore=False):
    """``sum A_i = I``, ``w_i`` in the window: ``f(sum w_i A_i) <= 2 sum f(w_i/2) A_i``.

    The weight interval is taken closed.
    """
    parts = [as_hermitian(p) for p in parts]
    n = parts[0].shape[0]
    weights = [float(w) for w in weights]
    report = SuiteReport(
        "hansen", params={"form": "weights", "window": [window.lo, window.hi], "weights": weights},
        trials=1, tolerances={"psd": tol},
        notes=["weights taken in the closed interval [λ, (1+2√2)λ]"],
    )
    for i, p in enumerate(parts):
        _require_psd(p, f"A_{i}", tol, report, explore)
    defect = spectral_norm(sum(parts) - np.eye(n))
    report.extras["resolution_defect"] = defect
    _require(defect <= 1e-10, "sum A_i != I", report, explore)
    _require(window.hi <= HANSEN_RATIO * window.lo * (1 + 1e-12), "window wider than [λ, (1+2√2)λ]", report, explore)
    _require(all(window.lo <= w <= window.hi for w in weights), "a weight lies outside the window", report, explore)
    combo = as_hermitian(sum(w * p for w, p in zip(weights, parts)))
    combo_spec = eigh(combo)
    fs = _monotone_only(monotone_subset() if fs is None else fs, report)
    for f in fs:
        lhs = apply_function(f, combo_spec)
        rhs = 2.0 * sum(float(f(np.array([w / 2.0]))[0]) * p for w, p in zip(weights, parts))
        _certify(report, f.label, rhs - lhs, _norm(lhs, rhs), tol)
    return report


# --- convex functions ------------------------------------------------------------


def difference_of_squares_residual(a, b):
    """Relative Frobenius residual of ``S(A - B, A + B) = 2(A² - B²)``."""
    a, b = as_hermitian(a), as_hermitian(b)
    lhs = symmetrized_product(a - b, a + b)
    rhs = 2.0 * (a @ a - b @ b)
    scale = 1.0 + np.linalg.norm(a) ** 2 + np.linalg.norm(b) ** 2
    return float(np.linalg.norm(lhs - rhs) / scale)


def verify_square_order(a, b, fs_convex=None, tol=DEFAULT_TOL, explore=False):
    """``B² <= A²`` iff ``f(B) <= f(A)`` for operator convex ``f`` with ``f'(0+) >= 0``.

    Forward branch (``B² <= A²``): certify ``f(A) - f(B) >= 0`` for each ``f``.
    Converse branch: confirm the witness ``t²`` separates the pair.
    """
    a, b = as_hermitian(a), as_hermitian(b)
    report = SuiteReport("square-order", params={"dim": a.shape[0]}, trials=1, tolerances={"psd": tol})
    _require_psd(a, "A", tol, report, explore)
    _require_psd(b, "B", tol, report, explore)
    resid = difference_of_squares_residual(a, b)
    report.extras["difference_of_squares_residual"] = resid
    if resid > IDENTITY_RTOL:
        report.add_failure(resid, function="difference-of-squares")
    a2, b2 = a @ a, b @ b
    sq = leq(b2, a2, tol)
    report.params["lambda_min_A2_minus_B2"] = sq.min_eigenvalue
    sa, sb = eigh(a), eigh(b)
    if sq.positive:
        report.verdict = "forward"
        fs = _convex_only(default_convex_family() if fs_convex is None else fs_convex, report)
        for f in fs:
            fa, fb = apply_function(f, sa), apply_function(f, sb)
            _certify(report, f.label, fa - fb, _norm(fa, fb), tol)
    else:
        report.verdict = "converse"
        sq_fn = t_squared()
        fa, fb = apply_function(sq_fn, sa), apply_function(sq_fn, sb)
        cert = psd_check(fa - fb, tol, scale=_norm(fa, fb))
        # a witness is found exactly when the certificate is indefinite
        report.add_record(0, "t_squared-witness", cert.min_eigenvalue, not cert.positive)
        if cert.positive:
            report.add_failure(cert.min_eigenvalue, function="t_squared-witness")
        report.extras["witness"] = cert.witness
    return report


def verify_power_monotone(a, b, p, fs_convex=None, tol=DEFAULT_TOL, explore=False):
    """``B <= A``, ``0 <= p <= 1/2``: ``f(B^p) <= f(A^p)`` for convex ``f`` with ``f'(0+) >= 0``."""
    a, b = as_hermitian(a), as_hermitian(b)
    report = SuiteReport("power-monotone", params={"dim": a.shape[0], "p": p}, trials=1, tolerances={"psd": tol})
    _check_exponent(p, report, explore)
    _require_psd(b, "B", tol, report, explore)
    _require(leq(b, a, tol).positive, "B <= A fails", report, explore)
    g = power(p)
    ap, bp = eigh(apply_function(g, a)), eigh(apply_function(g, b))
    fs = _convex_only(default_convex_family() if fs_convex is None else fs_convex, report)
    for f in fs:
        fa, fb = apply_function(f, ap), apply_function(f, bp)
        _certify(report, f.label, fa - fb, _norm(fa, fb), tol)
    return report


def _strictly_positive(f):
    probe = np.geomspace(1e-6, 1e6, 49)
    return bool(np.all(np.asarray(f(probe)) > 0))


def verify_tf_corollary(a, b, p, f, tol=DEFAULT_TOL, parts=("i", "ii"), explore=False):
    """``B <= A``, ``0 <= p <= 1/2``, ``f`` non-negative operator monotone:

    (i)  ``B^p f(B^p) <= A^p f(A^p)``;
    (ii) ``A^{p-1} f(A^p) <= B^{p-1} f(B^p)`` for invertible ``A, B`` and ``f > 0`` on ``(0, inf)``.
    """
    a, b = as_hermitian(a), as_hermitian(b)
    report = SuiteReport(
        "tf-corollary", params={"dim": a.shape[0], "p": p, "function": f.label, "parts": list(parts)},
        trials=1, tolerances={"psd": tol},
    )
    _check_exponent(p, report, explore)
    _require(f.has(NONNEG_MONOTONE), f"{f.label} is not tagged {NONNEG_MONOTONE}", report, explore)
    _require_psd(b, "B", tol, report, explore)
    _require(leq(b, a, tol).positive, "B <= A fails", report, explore)
    sa, sb = eigh(a), eigh(b)
    g = power(p)
    if "i" in parts:
        h = from_callables(
            "t^p f(t^p)", lambda t: g(t) * f(g(t)), None, domain=g.domain
        )
        ha, hb = apply_function(h, sa), apply_function(h, sb)
        _certify(report, f"(i) {f.label}", ha - hb, _norm(ha, hb), tol)
    if "ii" in parts:
        floor = 10.0 * tol * (1.0 + max(sa.norm, sb.norm))
        if not (sa.eigenvalues[0] > floor and sb.eigenvalues[0] > floor):
            raise HypothesisError("part (ii) needs invertible A and B")
        if not _strictly_positive(f):
            raise HypothesisError(f"part (ii) needs {f.label} > 0 on (0, inf)")
        k = from_callables(
            "t^(p-1) f(t^p)", lambda t: np.power(t, p - 1.0) * f(g(t)), None, domain=OPEN_HALF_LINE
        )
        ka, kb = apply_function(k, sa), apply_function(k, sb)
        _certify(report, f"(ii) {f.label}", kb - ka, _norm(ka, kb), tol)
    return report

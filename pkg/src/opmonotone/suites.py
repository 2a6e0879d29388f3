"""
Named suites
~~~~~~~~~~~~
Seeded batteries that pair the sampler with a verifier. Every suite is a
pure function of ``(dim, trials, seed, tol, functions, inputs)``; trial ``k``
draws from its own seed derived from ``(seed, k)`` so trials are independent
of each other and of evaluation order.
"""
import math

import numpy as np

from .catalog import monotone_subset, power, t_squared
from .errors import HypothesisError
from .inequalities import (
    HANSEN_RATIO,
    ContractionFamily,
    SpectralWindow,
    verify_gustafson,
    verify_hansen_type,
    verify_power_monotone,
    verify_power_split,
    verify_square_order,
    verify_subadditivity_converse,
    verify_subadditivity_forward,
    verify_tf_corollary,
    verify_weighted_corollary,
    verify_window_subadditivity,
)
from .loewner import composition_monotone_check, order_n_monotone
from .report import SuiteReport
from .sampler import InstanceSpec, generate, shrink

SHRINK_LIMIT = 3
COMPOSITION_EXPONENTS = (0.1, 0.25, 0.5, 0.6, 0.75, 0.9)
EXPLORE_SPREAD = 5.0
INVERTIBLE_SHIFT = 0.05


def trial_seed(seed, k):
    return int(np.random.SeedSequence([seed, k]).generate_state(1, np.uint64)[0])


def _draw(kind, dim, seed, **params):
    return generate(InstanceSpec(dim, kind, seed, params))[0]


def _new_report(name, dim, trials, seed, tol, **params):
    return SuiteReport(name, params={"dim": dim, **params}, seed=seed, tolerances={"psd": tol})


def _attach(report, before, trial, matrices):
    """Tag failures added since ``before`` with the instance that produced them."""
    for f in report.failures[before:]:
        f.setdefault("trial", trial)
        f["matrices"] = list(matrices)


def _fails(verify):
    def predicate(inst):
        try:
            return not verify(*inst).passed
        except HypothesisError:
            return False
    return predicate


def _shrink_failures(report, verify):
    seen = set()
    for f in report.failures:
        if len(seen) >= SHRINK_LIMIT or "matrices" not in f or f["trial"] in seen:
            continue
        seen.add(f["trial"])
        small = shrink(tuple(f["matrices"]), _fails(verify))
        f["shrunk"] = list(small)


def _pair_suite(name, kind, verify, dim, trials, seed, tol, **params):
    report = _new_report(name, dim, trials, seed, tol, kind=kind, **params)
    for k in range(trials):
        a, b = _draw(kind, dim, trial_seed(seed, k))
        before = len(report.failures)
        report.absorb(verify(a, b), k)
        _attach(report, before, k, (a, b))
    _shrink_failures(report, verify)
    return report


# --- suites ----------------------------------------------------------------------


def suite_subadd_forward(dim, trials, seed, tol, functions=None, inputs=None):
    verify = lambda a, b: verify_subadditivity_forward(a, b, functions, tol)
    if inputs:
        return _fixed_pair("thm-subadd-fwd", verify, inputs, seed, tol)
    return _pair_suite("thm-subadd-fwd", "jordan_positive_pair", verify, dim, trials, seed, tol)


def suite_subadd_converse(dim, trials, seed, tol, functions=None, inputs=None):
    verify = lambda a, b: verify_subadditivity_converse(a, b, tol=tol)
    if inputs:
        return _fixed_pair("thm-subadd-conv", verify, inputs, seed, tol)
    report = _pair_suite("thm-subadd-conv", "jordan_indefinite_pair", verify, dim, trials, seed, tol)
    report.verdict = "violation_found" if report.passed else "inconclusive"
    return report


def _fixed_pair(name, verify, inputs, seed, tol):
    a, b = _pair_from(inputs)
    single = verify(a, b)
    report = _new_report(name, a.shape[0], 1, seed, tol, source="input")
    report.absorb(single, 0)
    report.verdict = single.verdict
    report.extras.update(single.extras)
    report.notes.extend(single.notes)
    _attach(report, 0, 0, (a, b))
    return report


def _pair_from(inputs):
    mats = list(inputs.values()) if isinstance(inputs, dict) else list(inputs)
    if len(mats) != 2:
        raise ValueError(f"this suite needs exactly two input matrices, got {len(mats)}")
    return mats[0], mats[1]


def _random_window(rng):
    lo = rng.uniform(0.0, 2.0)
    return SpectralWindow(lo, lo + rng.uniform(0.0, 3.0))


def suite_gustafson(dim, trials, seed, tol, functions=None, inputs=None):
    report = _new_report("gustafson", dim, trials, seed, tol)
    for k in range(trials):
        rng = np.random.default_rng(trial_seed(seed, k))
        wa, wb = _random_window(rng), _random_window(rng)
        a = _draw("psd_window", dim, int(rng.integers(2**63)), lo=wa.lo, hi=wa.hi)
        b = _draw("psd_window", dim, int(rng.integers(2**63)), lo=wb.lo, hi=wb.hi)
        before = len(report.failures)
        report.absorb(verify_gustafson(a, b, wa, wb, tol), k)
        _attach(report, before, k, (a, b))
    return report


def suite_window_subadd(dim, trials, seed, tol, functions=None, inputs=None):
    """Windows ``[m, m(1 + r)]`` and ``[n, n(1 + s)]`` with ``rs <= 8``."""
    report = _new_report("window-subadd", dim, trials, seed, tol)
    edge = 2.0 * math.sqrt(2.0)
    for k in range(trials):
        rng = np.random.default_rng(trial_seed(seed, k))
        m, n = rng.uniform(0.5, 2.0, 2)
        r, s = rng.uniform(0.0, edge, 2)
        wa, wb = SpectralWindow(m, m * (1 + r)), SpectralWindow(n, n * (1 + s))
        a = _draw("psd_window", dim, int(rng.integers(2**63)), lo=wa.lo, hi=wa.hi)
        b = _draw("psd_window", dim, int(rng.integers(2**63)), lo=wb.lo, hi=wb.hi)
        before = len(report.failures)
        report.absorb(verify_window_subadditivity(a, b, wa, wb, functions, tol), k)
        _attach(report, before, k, (a, b))
    return report


def _exponent(seed, k):
    return float(np.random.default_rng([seed, k, 1]).uniform(0.0, 0.5))


def suite_power_split(dim, trials, seed, tol, functions=None, inputs=None):
    report = _new_report("power-split", dim, trials, seed, tol, kind="ordered_pair_leq")
    for k in range(trials):
        a, b = _draw("ordered_pair_leq", dim, trial_seed(seed, k))
        p = _exponent(seed, k)
        before = len(report.failures)
        single = verify_power_split(a, b, p, functions, tol)
        report.absorb(single, k)
        report.extras.setdefault("identity_residuals", []).append(single.extras["identity_residual"])
        _attach(report, before, k, (a, b))
    return report


def _hansen_trial(report, k, dim, seed, tol, functions, window, explore):
    rng = np.random.default_rng(trial_seed(seed, k))
    sub = lambda: int(rng.integers(2**63))
    big = _draw("psd_window", 2 * dim, sub(), lo=window.lo, hi=window.hi)
    c = _draw("isometry", dim, sub(), rows=2 * dim, cols=dim)
    forms = [("isometry", verify_hansen_type(big, c, window, functions, tol, explore), (big, c))]
    blocks = _draw("resolution_of_identity", dim, sub(), count=3)
    mats = [_draw("psd_window", dim, sub(), lo=window.lo, hi=window.hi) for _ in blocks]
    forms.append(("family", verify_hansen_type(mats, ContractionFamily(blocks), window, functions, tol, explore),
                  tuple(mats) + tuple(blocks)))
    parts = [c.conj().T @ c for c in _draw("resolution_of_identity", dim, sub(), count=3)]
    weights = rng.uniform(window.lo, window.hi, len(parts))
    forms.append(("weights", verify_weighted_corollary(weights, parts, window, functions, tol, explore),
                  tuple(parts)))
    for form, single, matrices in forms:
        before = len(report.failures)
        report.absorb(single, k)
        for r in report.records[len(report.records) - len(single.records):]:
            r["form"] = form
        report.notes.extend(n for n in single.notes if n not in report.notes)
        _attach(report, before, k, matrices)
        for f in report.failures[before:]:
            f["form"] = form
        report.out_of_hypothesis |= single.out_of_hypothesis
    report.trials += 1 - len(forms)


def suite_hansen(dim, trials, seed, tol, functions=None, inputs=None):
    """Isometry ``dim -> 2 dim``, a three-block resolution of identity and the weighted form."""
    window = SpectralWindow(1.0, HANSEN_RATIO)
    report = _new_report("hansen", dim, trials, seed, tol, window=[window.lo, window.hi])
    for k in range(trials):
        _hansen_trial(report, k, dim, seed, tol, functions, window, False)
    return report


def suite_hansen_explore(dim, trials, seed, tol, functions=None, inputs=None):
    """Spectra spread over ``[1, 5]``, past the admissible ratio; violations are recorded only."""
    window = SpectralWindow(1.0, EXPLORE_SPREAD)
    report = _new_report("hansen-explore", dim, trials, seed, tol, window=[window.lo, window.hi])
    for k in range(trials):
        _hansen_trial(report, k, dim, seed, tol, functions, window, True)
    report.out_of_hypothesis = True
    report.extras["boundary_violations"] = len(report.failures)
    report.extras["admissible_ratio"] = HANSEN_RATIO
    report.verdict = "violations_recorded" if report.failures else "no_violation_seen"
    return report


def suite_square_order(dim, trials, seed, tol, functions=None, inputs=None):
    """Each trial runs one ``B² <= A²`` pair (forward) and one violating pair (converse)."""
    report = _new_report("square-order", dim, trials, seed, tol)
    verify = lambda a, b: verify_square_order(a, b, functions, tol)
    counts = {"forward": 0, "converse": 0}
    for k in range(trials):
        s = trial_seed(seed, k)
        for kind, branch in (("ordered_pair_sq_leq", "forward"), ("sq_violating_pair", "converse")):
            a, b = _draw(kind, dim, s)
            single = verify(a, b)
            if single.verdict != branch:
                single.add_failure(single.params["lambda_min_A2_minus_B2"], reason=f"expected {branch} branch")
            counts[branch] += single.passed
            before = len(report.failures)
            report.absorb(single, k)
            _attach(report, before, k, (a, b))
        report.trials -= 1
    report.extras["branch_passes"] = counts
    return report


def suite_power_monotone(dim, trials, seed, tol, functions=None, inputs=None):
    report = _new_report("power-monotone", dim, trials, seed, tol)
    for k in range(trials):
        lower, upper = _draw("ordered_pair_leq", dim, trial_seed(seed, k))
        before = len(report.failures)
        report.absorb(verify_power_monotone(upper, lower, _exponent(seed, k), functions, tol), k)
        _attach(report, before, k, (upper, lower))
    return report


def suite_tf_corollary(dim, trials, seed, tol, functions=None, inputs=None):
    """Both parts for every monotone function; pairs are shifted by ``0.05 I`` to be invertible."""
    fs = monotone_subset() if functions is None else functions
    report = _new_report("tf-corollary", dim, trials, seed, tol)
    shift = INVERTIBLE_SHIFT * np.eye(dim)
    for k in range(trials):
        lower, upper = _draw("ordered_pair_leq", dim, trial_seed(seed, k))
        a, b = upper + shift, lower + shift
        p = _exponent(seed, k)
        before = len(report.failures)
        for f in fs:
            report.absorb(verify_tf_corollary(a, b, p, f, tol), k)
            report.trials -= 1
        report.trials += 1
        _attach(report, before, k, (a, b))
    return report


def suite_loewner(dim, trials, seed, tol, functions=None, inputs=None):
    """Order-``dim`` Löwner certificates for each function; untagged functions are exploratory."""
    fs = monotone_subset() if functions is None else functions
    report = _new_report("loewner-order", dim, trials, seed, tol)
    report.trials = trials
    exploratory = {}
    for i, f in enumerate(fs):
        single = order_n_monotone(f, dim, trials, trial_seed(seed, i), tol=tol)
        if f.has("nonneg_operator_monotone"):
            report.records.extend(single.records)
            report.failures.extend({**x, "function": f.label} for x in single.failures)
        else:
            exploratory[f.label] = {"failures": len(single.failures), "min_margin": single.min_margin()}
        report.notes = single.notes
    report.extras["exploratory"] = exploratory
    return report


def suite_composition(dim, trials, seed, tol, functions=None, inputs=None):
    """``t² o t^p`` against the first-quadrant scan of ``t^p`` over a grid of exponents."""
    f = t_squared()
    gs = [power(p) for p in COMPOSITION_EXPONENTS] if functions is None else functions
    report = _new_report("composition", dim, trials, seed, tol, f=f.label)
    report.trials = trials
    rows = []
    for i, g in enumerate(gs):
        single = composition_monotone_check(f, g, dim, trials, trial_seed(seed, i), tol=tol)
        agree = single.extras["first_quadrant"] == single.extras["composition_monotone"]
        rows.append({
            "g": g.label,
            "first_quadrant": single.extras["first_quadrant"],
            "composition_monotone": single.extras["composition_monotone"],
            "loewner_failures": len(single.failures),
            "min_re": single.extras["pick"]["min_re"],
            "agree": agree,
        })
        report.add_record(0, g.label, single.min_margin(), agree)
        if not agree:
            report.add_failure(single.min_margin(), function=g.label, reason="dichotomy mismatch")
    report.extras["dichotomy"] = rows
    report.extras["agreement"] = f"{sum(r['agree'] for r in rows)}/{len(rows)}"
    return report


SUITES = {
    "thm-subadd-fwd": suite_subadd_forward,
    "thm-subadd-conv": suite_subadd_converse,
    "gustafson": suite_gustafson,
    "window-subadd": suite_window_subadd,
    "power-split": suite_power_split,
    "hansen": suite_hansen,
    "hansen-explore": suite_hansen_explore,
    "square-order": suite_square_order,
    "power-monotone": suite_power_monotone,
    "tf-corollary": suite_tf_corollary,
    "loewner-order": suite_loewner,
    "composition": suite_composition,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def suite_all(dim, trials, seed, tol, functions=None, inputs=None):
    """Every suite on sub-seeds that mix the suite index into ``seed``; inputs are ignored."""
    report = _new_report("all", dim, trials, seed, tol)
    report.trials = trials
    body = {}
    for i, (name, fn) in enumerate(SUITES.items()):
        sub = trial_seed(seed, 1_000_003 + i)
        single = fn(dim, trials, sub, tol, functions if name in ("loewner-order",) else None)
        body[name] = {"seed": sub, "failures": len(single.in_hypothesis_failures), "verdict": single.verdict}
        report.records.extend({**r, "suite": name} for r in single.records)
        report.failures.extend({**f, "suite": name} for f in single.in_hypothesis_failures)
    report.extras["suites"] = body
    return report


def run_suite(name, dim, trials, seed, tol, functions=None, inputs=None):
    if name == "all":
        return suite_all(dim, trials, seed, tol, functions, inputs)
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; valid suites: {', '.join(SUITE_NAMES)}") from None
    return fn(dim, trials, seed, tol, functions, inputs)

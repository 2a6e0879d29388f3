"""
Function catalog
~~~~~~~~~~~~~~~~
Scalar functions with closed-form values, derivatives, upper half-plane
continuations and class tags. Entries are addressed by ``id`` plus
parameters, e.g. ``lookup("power", p=0.5)`` or the selector string
``"power:p=0.5"``.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, UnsupportedError
from .representation import CONVEX, Density, IntegralRepresentation, times_t

NONNEG_MONOTONE = "nonneg_operator_monotone"
CONVEX_TAG = "operator_convex"
FPRIME0_NONNEG = "fprime0_nonneg"
NONNEG = "nonneg"


@dataclass(frozen=True)
class Interval:
    lo: float = 0.0
    hi: float = math.inf
    lo_closed: bool = True
    hi_closed: bool = False

    def contains(self, t):
        t = np.asarray(t, dtype=float)
        above = t >= self.lo if self.lo_closed else t > self.lo
        below = t <= self.hi if self.hi_closed else t < self.hi
        return above & below

    def snap(self, t, tau):
        """Clamp values within ``tau`` outside a closed endpoint; reject the rest."""
        t = np.array(t, dtype=float)
        if self.lo_closed:
            t[(t < self.lo) & (t >= self.lo - tau)] = self.lo
        if self.hi_closed:
            t[(t > self.hi) & (t <= self.hi + tau)] = self.hi
        bad = ~self.contains(t)
        if bad.any():
            raise DomainError(f"eigenvalue {t[bad][0]!r} lies outside {self}", eigenvalue=float(t[bad][0]))
        return t

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"


HALF_LINE = Interval(0.0, math.inf, True, False)
OPEN_HALF_LINE = Interval(0.0, math.inf, False, False)
REAL_LINE = Interval(-math.inf, math.inf, False, False)


@dataclass(frozen=True, eq=False)
class ScalarFunctionSpec:
    id: str
    domain: Interval
    eval: Callable
    deriv: Callable
    complex_eval: Optional[Callable] = None
    class_tags: frozenset = frozenset()
    params: dict = field(default_factory=dict)
    representation: Optional[IntegralRepresentation] = None

    def __call__(self, t):
        return self.eval(np.asarray(t, dtype=float))

    @property
    def label(self):
        if not self.params:
            return self.id
        return self.id + ":" + ",".join(f"{k}={v:g}" for k, v in self.params.items())

    def has(self, *tags):
        return all(t in self.class_tags for t in tags)

    def __repr__(self):
        return f"ScalarFunctionSpec({self.label})"


def complex_sample(f, z):
    """Value of the upper half-plane continuation of ``f`` at ``z`` (``Im z > 0``)."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise ValueError("complex_sample needs Im z > 0")
    if f.complex_eval is None:
        raise UnsupportedError(f"{f.label} has no analytic continuation")
    return f.complex_eval(z)


# --- entries -------------------------------------------------------------------


def f_lambda(lam=1.0):
    lam = float(lam)
    if not lam > 0:
        raise ValueError("λ must be positive")
    return ScalarFunctionSpec(
        "f_lambda",
        HALF_LINE,
        lambda t: lam * t / (lam + t),
        lambda t: lam * lam / (lam + t) ** 2,
        lambda z: lam * z / (lam + z),
        frozenset({NONNEG_MONOTONE, NONNEG, FPRIME0_NONNEG}),
        {"lam": lam},
        IntegralRepresentation(atoms=((lam, 1.0),)),
    )


def _power_rep(p):
    if p == 0:
        return IntegralRepresentation(f0=1.0)
    if p == 1:
        return IntegralRepresentation(beta=1.0)
    c = math.sin(p * math.pi) / math.pi
    return IntegralRepresentation(
        density=Density(lambda lam: c * lam ** (p - 2.0), 0.0, (p - 2.0, p - 2.0))
    )


def _power_deriv(t, p):
    t = np.asarray(t, dtype=float)
    if p == 1:
        return np.ones_like(t)
    with np.errstate(divide="ignore"):
        return p * np.power(t, p - 1.0)


def power(p=0.5):
    """``t**p`` on ``[0, inf)``; ``p = 0`` is the constant 1."""
    p = float(p)
    if p < 0:
        raise ValueError("power needs p >= 0")
    tags = {NONNEG, FPRIME0_NONNEG}
    if p <= 1:
        tags.add(NONNEG_MONOTONE)
    if 1 <= p <= 2:
        tags.add(CONVEX_TAG)
    if p == 0:
        ev = lambda t: np.ones_like(np.asarray(t, dtype=float))
        dv = lambda t: np.zeros_like(np.asarray(t, dtype=float))
        cv = lambda z: np.ones_like(np.asarray(z, dtype=complex))
    else:
        ev = lambda t: np.power(t, p)
        dv = lambda t: _power_deriv(t, p)
        cv = lambda z: np.power(z, p)
    rep = None
    if p <= 1:
        rep = _power_rep(p)
    elif p <= 2:
        rep = times_t(_power_rep(p - 1.0))
    return ScalarFunctionSpec("power", HALF_LINE, ev, dv, cv, frozenset(tags), {"p": p}, rep)


def log1p():
    return ScalarFunctionSpec(
        "log1p",
        HALF_LINE,
        np.log1p,
        lambda t: 1.0 / (1.0 + t),
        lambda z: np.log(1.0 + z),
        frozenset({NONNEG_MONOTONE, NONNEG, FPRIME0_NONNEG}),
        {},
        IntegralRepresentation(density=Density(lambda lam: lam**-2.0, 1.0, (0.0, -2.0))),
    )


def t_squared():
    return ScalarFunctionSpec(
        "t_squared",
        HALF_LINE,
        lambda t: t * t,
        lambda t: 2.0 * t,
        lambda z: z * z,
        frozenset({CONVEX_TAG, FPRIME0_NONNEG, NONNEG}),
        {},
        IntegralRepresentation(gamma=1.0, kind=CONVEX),
    )


def convex_kernel(lam=1.0):
    lam = float(lam)
    if not lam > 0:
        raise ValueError("λ must be positive")
    return ScalarFunctionSpec(
        "convex_kernel",
        HALF_LINE,
        lambda t: lam * t * t / (lam + t),
        lambda t: lam * t * (t + 2.0 * lam) / (lam + t) ** 2,
        lambda z: lam * z * z / (lam + z),
        frozenset({CONVEX_TAG, FPRIME0_NONNEG, NONNEG}),
        {"lam": lam},
        IntegralRepresentation(atoms=((lam, 1.0),), kind=CONVEX),
    )


def affine(c=0.0, beta=1.0):
    c, beta = float(c), float(beta)
    tags = {CONVEX_TAG}
    if beta >= 0:
        tags.add(FPRIME0_NONNEG)
        if c >= 0:
            tags |= {NONNEG_MONOTONE, NONNEG}
    rep = IntegralRepresentation(f0=c, beta=beta) if beta >= 0 else None
    return ScalarFunctionSpec(
        "affine",
        HALF_LINE,
        lambda t: c + beta * np.asarray(t, dtype=float),
        lambda t: np.full_like(np.asarray(t, dtype=float), beta),
        lambda z: c + beta * z,
        frozenset(tags),
        {"c": c, "beta": beta},
        rep,
    )


def constant(c=1.0):
    spec = affine(c, 0.0)
    return ScalarFunctionSpec(
        "constant", spec.domain, spec.eval, spec.deriv, spec.complex_eval,
        spec.class_tags, {"c": float(c)}, spec.representation,
    )


def times_identity(f, id_=None):
    """``t f(t)`` for a non-negative operator monotone ``f``; operator convex with ``g'(0) = f(0)``."""
    if not f.has(NONNEG_MONOTONE):
        raise ValueError(f"{f.label} is not tagged {NONNEG_MONOTONE}")
    cv = None if f.complex_eval is None else (lambda z: z * f.complex_eval(z))
    return ScalarFunctionSpec(
        id_ or "t_times_" + f.id,
        f.domain,
        lambda t: t * f.eval(t),
        lambda t: f.eval(t) + _safe_mul(t, f.deriv(t)),
        cv,
        frozenset({CONVEX_TAG, FPRIME0_NONNEG, NONNEG}),
        dict(f.params),
        None if f.representation is None else times_t(f.representation),
    )


def _safe_mul(t, d):
    t = np.asarray(t, dtype=float)
    d = np.asarray(d, dtype=float)
    with np.errstate(invalid="ignore"):
        out = t * d
    return np.where(t == 0, 0.0, out)


def t_times_power(p=0.5):
    return times_identity(power(p))


def t_times_log1p():
    return times_identity(log1p())


def t_times_f_lambda(lam=1.0):
    return times_identity(f_lambda(lam))


def compose(f, g):
    """The scalar function ``f(g(t))`` on the domain of ``g``; carries no class tags."""
    cv = None
    if f.complex_eval is not None and g.complex_eval is not None:
        cv = lambda z: f.complex_eval(g.complex_eval(z))
    return ScalarFunctionSpec(
        f"({f.label})o({g.label})",
        g.domain,
        lambda t: f.eval(g.eval(t)),
        lambda t: f.deriv(g.eval(t)) * g.deriv(t),
        cv,
        frozenset(),
        {},
    )


def from_callables(id_, fn, deriv, domain=REAL_LINE, complex_fn=None, tags=()):
    """Ad-hoc entry for maps built from catalog pieces (not registered)."""
    return ScalarFunctionSpec(id_, domain, fn, deriv, complex_fn, frozenset(tags), {})


REGISTRY = {
    "f_lambda": f_lambda,
    "power": power,
    "log1p": log1p,
    "t_squared": t_squared,
    "convex_kernel": convex_kernel,
    "affine": affine,
    "constant": constant,
    "t_times_power": t_times_power,
    "t_times_log1p": t_times_log1p,
    "t_times_f_lambda": t_times_f_lambda,
}


def lookup(id_, **params):
    try:
        factory = REGISTRY[id_]
    except KeyError:
        raise KeyError(f"unknown function {id_!r}; valid ids: {', '.join(sorted(REGISTRY))}") from None
    return factory(**params)


def parse_selector(text):
    """``"power:p=0.5"`` -> ``lookup("power", p=0.5)``."""
    id_, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise ValueError(f"malformed parameter {item!r} in selector {text!r}")
        params[key.strip()] = float(value)
    try:
        return lookup(id_.strip(), **params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {id_!r}: {exc}") from None


def monotone_subset():
    """Non-negative operator monotone functions used by the subadditivity suites."""
    fs = [f_lambda(lam) for lam in (0.1, 1.0, 10.0)]
    fs += [power(p) for p in (0.25, 0.5, 0.75, 1.0)]
    fs.append(log1p())
    return fs


def convex_subset():
    """Operator convex functions with ``f'(0+) >= 0`` used by the convex suites."""
    fs = [t_squared()]
    fs += [convex_kernel(lam) for lam in (0.1, 1.0, 10.0)]
    fs += [times_identity(f) for f in monotone_subset()]
    return fs


def catalog_list():
    fs = monotone_subset()
    fs += [power(0.0), power(0.1), power(0.3), power(0.6), power(0.9)]
    fs += convex_subset()
    fs += [affine(1.0, 2.0), constant(1.0)]
    return fs

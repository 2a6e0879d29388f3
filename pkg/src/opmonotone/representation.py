"""
Integral representations
~~~~~~~~~~~~~~~~~~~~~~~~
Operator monotone functions on [0, inf) are stored as::

    f(t) = f(0) + beta t + sum_k w_k lam_k t / (lam_k + t) + int lam t / (lam + t) rho(lam) dlam

and operator convex ones with the kernel ``lam t^2 / (lam + t)`` plus ``gamma t^2``.
Densities carry their support and power-law exponents at both ends; the
integral is evaluated after the substitution ``lam = lo + tan(theta)`` with
Gauss-Jacobi nodes whose weight absorbs the declared endpoint powers.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.special import roots_jacobi

from .errors import RepresentationError

QUAD_NODES = 256
MONOTONE = "monotone_kernel"
CONVEX = "convex_kernel"


@dataclass(frozen=True)
class Density:
    """Non-negative density on ``[lo, inf)``.

    ``exponents = (a_lo, a_inf)`` declares ``rho(lam) ~ (lam - lo)**a_lo`` as
    ``lam -> lo`` and ``rho(lam) ~ lam**a_inf`` as ``lam -> inf``.
    """

    fn: Callable
    lo: float = 0.0
    exponents: tuple = (0.0, -2.0)

    def __call__(self, lam):
        return self.fn(lam)


@dataclass(frozen=True)
class IntegralRepresentation:
    f0: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    atoms: tuple = ()
    density: Optional[Density] = None
    kind: str = MONOTONE

    def __post_init__(self):
        if self.kind not in (MONOTONE, CONVEX):
            raise RepresentationError(f"unknown kernel kind {self.kind!r}")
        if self.beta < 0 or self.gamma < 0:
            raise RepresentationError("beta and gamma must be non-negative")
        if self.kind == MONOTONE and self.gamma != 0:
            raise RepresentationError("the monotone form has no quadratic term")
        for lam, w in self.atoms:
            if not (lam > 0 and w > 0):
                raise RepresentationError(f"atoms need positive location and weight, got {(lam, w)}")

    def kernel(self, lam, t):
        k = lam * t / (lam + t)
        return k * t if self.kind == CONVEX else k


def _jacobi_weights(density):
    a_lo, a_inf = density.exponents
    # kernel ~ lam near lam = 0, bounded near infinity
    beta = a_lo + (1.0 if density.lo == 0 else 0.0)
    alpha = -a_inf - 2.0
    if not (alpha > -1.0 and beta > -1.0):
        raise RepresentationError(
            f"density with exponents {density.exponents} on [{density.lo}, inf) is not integrable "
            "against the kernel"
        )
    return alpha, beta


@lru_cache(maxsize=64)
def _nodes(alpha, beta, n):
    with np.errstate(invalid="ignore", divide="ignore"):
        return roots_jacobi(n, alpha, beta)


def density_integral(rep, t, n=QUAD_NODES):
    dens = rep.density
    alpha, beta = _jacobi_weights(dens)
    u, w = _nodes(alpha, beta, n)
    theta = 0.25 * np.pi * (u + 1.0)
    lam = dens.lo + np.tan(theta)
    jac = 0.25 * np.pi / np.cos(theta) ** 2
    weight = (1.0 - u) ** alpha * (1.0 + u) ** beta
    vals = dens(lam) * rep.kernel(lam, t) * jac / weight
    return float(np.dot(w, vals))


def reconstruct(rep, t, n=QUAD_NODES):
    """Evaluate a representation at ``t >= 0`` (atoms exactly, density by quadrature)."""
    if t < 0:
        raise ValueError("representations are defined on [0, inf)")
    t = float(t)
    val = rep.f0 + rep.beta * t + rep.gamma * t * t
    for lam, w in rep.atoms:
        val += w * rep.kernel(lam, t)
    if rep.density is not None and t > 0:
        val += density_integral(rep, t, n)
    return val


def times_t(rep):
    """Representation of ``t f(t)`` from that of a monotone ``f``.

    ``t * lam t/(lam+t)`` is the convex kernel, so the measure is unchanged;
    ``f(0)`` becomes the linear coefficient and ``beta`` the quadratic one.
    """
    if rep.kind != MONOTONE:
        raise RepresentationError("times_t needs a monotone-kernel representation")
    return IntegralRepresentation(0.0, rep.f0, rep.beta, rep.atoms, rep.density, CONVEX)

"""The slice preserving entire functions mu, nu and the inverse phi of mu on D_0.

    mu(q) = sum_m (-1)^m q^m / (2m)!      so that  mu(q^2) = cos(q)
    nu(q) = sum_m (-1)^m q^m / (2m+1)!    so that  nu(q^2) q = sin(q)

Both satisfy ``mu(q)^2 + nu(q)^2 q = 1``.  ``phi`` maps H minus (-inf, -1]
biregularly onto the parabolic region D_0.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from .errors import BranchCutError
from .quat import Quaternion, slice_apply, slice_decompose

PI2 = math.pi**2

# below this modulus the raw power series is used instead of cos(sqrt(q))
SERIES_RADIUS = 0.25
SERIES_TERMS = 30
CUT_TOL = 1e-12
GAMMA_TOL = 1e-12
# Taylor coefficients at c <= BINOMIAL_MAX are re-expanded from the global series
BINOMIAL_MAX = 25.0


def _mu_series(z: complex) -> complex:
    term, total = 1.0 + 0j, 1.0 + 0j
    for m in range(1, SERIES_TERMS):
        term *= -z / ((2 * m - 1) * (2 * m))
        total += term
    return total


def _nu_series(z: complex) -> complex:
    term, total = 1.0 + 0j, 1.0 + 0j
    for m in range(1, SERIES_TERMS):
        term *= -z / ((2 * m) * (2 * m + 1))
        total += term
    return total


def mu_complex(z: complex) -> complex:
    if abs(z) < SERIES_RADIUS:
        return _mu_series(z)
    return cmath.cos(cmath.sqrt(z))


def nu_complex(z: complex) -> complex:
    if abs(z) < SERIES_RADIUS:
        return _nu_series(z)
    s = cmath.sqrt(z)
    return cmath.sin(s) / s


def phi_complex(z: complex) -> complex:
    z = complex(z)
    if abs(z.imag) <= CUT_TOL and z.real <= -1.0 + CUT_TOL:
        raise BranchCutError(f"phi is undefined on (-inf, -1]: got {z.real!r}")
    if z.imag == 0.0 and z.real >= 1.0:
        return -math.acosh(z.real) ** 2 + 0j
    return cmath.acos(z) ** 2


def mu_eval(q: Quaternion) -> Quaternion:
    return slice_apply(mu_complex, q)


def nu_eval(q: Quaternion) -> Quaternion:
    return slice_apply(nu_complex, q)


def phi_eval(xi: Quaternion) -> Quaternion:
    """The unique ``w`` in D_0 with ``mu(w) = xi``; raises on the cut (-inf, -1]."""
    sp = slice_decompose(xi)
    if sp.beta <= CUT_TOL and sp.alpha <= -1.0 + CUT_TOL:
        raise BranchCutError(f"phi is undefined on (-inf, -1]: got {sp.alpha!r}")
    return slice_apply(phi_complex, xi)


def gamma_abscissa(n: int, y: float) -> float:
    """The x coordinate of the parabola Gamma_n at height y."""
    return n * n * PI2 - y * y / (4.0 * n * n * PI2)


class Membership(NamedTuple):
    inside: bool
    on_gamma: bool


def in_Dn(q: Quaternion, n: int) -> Membership:
    """Test ``q`` against D_n; ``on_gamma`` flags the bounding parabolas."""
    if n < 0:
        raise ValueError("domain index must be nonnegative")
    sp = slice_decompose(q)
    x, y = sp.alpha, sp.beta
    upper = gamma_abscissa(n + 1, y)
    near = [upper]
    inside = x < upper
    if n > 0:
        lower = gamma_abscissa(n, y)
        near.append(lower)
        inside = inside and x > lower
    on_gamma = any(abs(x - g) <= GAMMA_TOL * max(1.0, abs(x), abs(g)) for g in near)
    return Membership(inside and not on_gamma, on_gamma)


def _binomial_taylor(c: float, order: int, ratio) -> np.ndarray:
    """Taylor coefficients at ``c`` of sum_m a_m q^m, with a_{m+1}/a_m = ratio(m)."""
    out = np.zeros(order + 1)
    a_k = 1.0
    for k in range(order + 1):
        if k > 0:
            a_k *= ratio(k - 1)
        t, total = a_k, a_k
        j = 0
        while j < 4000 and t != 0.0:
            t *= ratio(k + j) * (k + j + 1) / (j + 1) * c
            total += t
            j += 1
            if abs(t) <= 1e-18 * abs(total) and j > 2:
                break
        out[k] = total
    return out


def munu_taylor_coeffs(c: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Taylor coefficients of mu and nu at the real point ``c`` as float arrays."""
    c = float(c)
    if c <= BINOMIAL_MAX:
        m = _binomial_taylor(c, order, lambda k: -1.0 / ((2 * k + 1) * (2 * k + 2)))
        n = _binomial_taylor(c, order, lambda k: -1.0 / ((2 * k + 2) * (2 * k + 3)))
        return m, n
    # mu' = -nu/2 and 2q nu' = mu - nu, expanded around c
    m = np.zeros(order + 1)
    n = np.zeros(order + 1)
    s = math.sqrt(c)
    m[0], n[0] = math.cos(s), math.sin(s) / s
    for k in range(order):
        m[k + 1] = -n[k] / (2 * (k + 1))
        n[k + 1] = (m[k] - (2 * k + 1) * n[k]) / (2 * c * (k + 1))
    return m, n


def munu_taylor_at(c: float, order: int):
    """Return ``(mu_jet, nu_jet)``: the Taylor expansions of mu, nu at ``c`` as RJets."""
    from .series import RJet

    m, n = munu_taylor_coeffs(c, order)
    return RJet(m), RJet(n)

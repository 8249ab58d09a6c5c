"""High-precision reference computations (mpmath, 50 digits).

These use different algorithms from the package where that is cheap: the
*-exponential is summed from its defining series, real jet transcendentals
come from power series of the inner jet rather than coefficient recurrences,
and mu/nu are evaluated as cos(sqrt z) and sin(sqrt z)/sqrt z.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def mpf_array(a):
    return [mp.mpf(float(x)) for x in np.asarray(a, dtype=float).ravel()]


def qmul(p, q):
    a0, a1, a2, a3 = p
    b0, b1, b2, b3 = q
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def qjet(coeffs):
    """(n, 4) float array -> list of mp quaternion tuples."""
    return [tuple(mp.mpf(float(x)) for x in row) for row in np.asarray(coeffs, dtype=float)]


def to_array(jet) -> np.ndarray:
    return np.array([[float(x) for x in c] for c in jet])


def qjet_mul(A, B, N):
    zero = (mp.mpf(0),) * 4
    out = []
    for k in range(N + 1):
        acc = [mp.mpf(0)] * 4
        for j in range(k + 1):
            if j < len(A) and k - j < len(B):
                t = qmul(A[j], B[k - j])
                acc = [x + y for x, y in zip(acc, t)]
        out.append(tuple(acc) if any(acc) else zero)
    return out


def qjet_exp(F, N, tol=mp.mpf(10) ** -45, max_terms=2000):
    """``sum F^{*n}/n!`` until the terms drop below ``tol``."""
    F = list(F) + [(mp.mpf(0),) * 4] * (N + 1 - len(F))
    total = [(mp.mpf(1),) + (mp.mpf(0),) * 3] + [(mp.mpf(0),) * 4] * N
    term = list(total)
    for n in range(1, max_terms):
        term = [tuple(x / n for x in c) for c in qjet_mul(term, F, N)]
        total = [tuple(a + b for a, b in zip(s, t)) for s, t in zip(total, term)]
        if max(abs(x) for c in term for x in c) < tol and n > 5:
            break
    return total


def rjet_mul(a, b, N):
    return [mp.fsum(a[j] * b[k - j] for j in range(k + 1) if j < len(a) and k - j < len(b)) for k in range(N + 1)]


def rjet_compose(series_coeff, f, N, terms=400):
    """``sum_m c_m (f - f0)^m`` with ``c_m = series_coeff(m, f0)``."""
    f0 = f[0]
    d = [mp.mpf(0)] + list(f[1 : N + 1]) + [mp.mpf(0)] * max(0, N + 1 - len(f))
    d = d[: N + 1]
    out = [mp.mpf(0)] * (N + 1)
    power = [mp.mpf(1)] + [mp.mpf(0)] * N
    for m in range(min(terms, N + 1)):
        c = series_coeff(m, f0)
        out = [o + c * p for o, p in zip(out, power)]
        power = rjet_mul(power, d, N)
    return out


def rjet_exp(f, N):
    return rjet_compose(lambda m, c: mp.exp(c) / mp.factorial(m), f, N)


def rjet_log(f, N):
    def coeff(m, c):
        return mp.log(c) if m == 0 else (-1) ** (m + 1) / (m * c**m)

    return rjet_compose(coeff, f, N)


def rjet_sqrt(f, N):
    return rjet_compose(lambda m, c: mp.binomial(mp.mpf(1) / 2, m) * c ** (mp.mpf(1) / 2 - m), f, N)


def rjet_recip(f, N):
    return rjet_compose(lambda m, c: (-1) ** m / c ** (m + 1), f, N)


def mu(z):
    z = mp.mpc(z)
    return mp.cos(mp.sqrt(z))


def nu(z):
    z = mp.mpc(z)
    if z == 0:
        return mp.mpc(1)
    s = mp.sqrt(z)
    return mp.sin(s) / s


def mu_taylor(c, N):
    """Taylor coefficients of mu at a real centre by mpmath differentiation."""
    return [mp.re(x) for x in mp.taylor(lambda t: mu(t), mp.mpf(c), N)]


def nu_taylor(c, N):
    return [mp.re(x) for x in mp.taylor(lambda t: nu(t), mp.mpf(c), N)]


def slice_apply(fn, q):
    """Evaluate a slice preserving function at a float quaternion (w, x, y, z)."""
    w, x, y, z = (mp.mpf(float(t)) for t in q)
    beta = mp.sqrt(x * x + y * y + z * z)
    val = fn(mp.mpc(w, beta))
    if beta == 0:
        return (mp.re(val), mp.mpf(0), mp.mpf(0), mp.mpf(0))
    s = mp.im(val) / beta
    return (mp.re(val), x * s, y * s, z * s)


def qjet_eval(A, q):
    """``sum q^n a_n`` at a quaternion ``q`` given as 4 floats."""
    qq = tuple(mp.mpf(float(t)) for t in q)
    power = (mp.mpf(1), mp.mpf(0), mp.mpf(0), mp.mpf(0))
    acc = [mp.mpf(0)] * 4
    for a in A:
        t = qmul(power, a)
        acc = [u + v for u, v in zip(acc, t)]
        power = qmul(power, qq)
    return tuple(acc)


def qdist(p, q) -> float:
    return float(mp.sqrt(mp.fsum((a - b) ** 2 for a, b in zip(p, q))))

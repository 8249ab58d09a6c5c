"""Zero sets of quaternionic polynomials and the *-logarithm obstruction test.

The zeros of ``P`` lie on the spheres ``alpha + beta*S`` cut out by the roots
``alpha +- i*beta`` of the real polynomial ``P^s``.  On such a sphere the
representation formula gives ``P(alpha + J*beta) = c + J*d``, so either
``c = d = 0`` and the whole sphere is a zero, or ``J = -c d^{-1}`` picks out a
single isolated zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError
from .quat import I, Quaternion, format_short
from .series import QJet, as_qjet, eval_jet, star_conv

REAL_BETA = 1e-10
SPHERE_TOL = 1e-8
RESIDUAL_TOL = 1e-8
# roots of P^s closer than this (relative) are candidates for one multiple root
CLUSTER_RADIUS = 1e-2


@dataclass
class ZeroReport:
    real_zeros: list[tuple[float, int]] = field(default_factory=list)
    spherical_zeros: list[tuple[float, float]] = field(default_factory=list)
    isolated_zeros: list[Quaternion] = field(default_factory=list)
    max_residual: float = 0.0

    def to_dict(self) -> dict:
        return {
            "real": [{"point": x, "multiplicity": m} for x, m in self.real_zeros],
            "spherical": [{"alpha": a, "beta": b} for a, b in self.spherical_zeros],
            "isolated": [q.to_list() for q in self.isolated_zeros],
            "max_residual": self.max_residual,
        }


@dataclass(frozen=True)
class Obstruction:
    """A non-real isolated zero of g_v at which the normalized g is not 1."""

    zero_point: Quaternion
    g0_value: Quaternion

    rule = "non-real isolated zero of g_v with g(q0) != 1"

    def describe(self) -> str:
        return (
            f"no *-logarithm: g_v has a non-real isolated zero at {format_short(self.zero_point, 10)} "
            f"where the normalized g equals {format_short(self.g0_value, 10)} "
            f"(rule: {self.rule})"
        )


def _coeff_array(P) -> np.ndarray:
    if isinstance(P, (np.ndarray, list, tuple)):
        A = np.asarray(P, dtype=float).reshape(-1, 4)
    else:
        A = as_qjet(P).coeffs
    norms = np.linalg.norm(A, axis=1)
    nz = np.nonzero(norms)[0]
    if nz.size == 0:
        raise DomainError("the zero polynomial has no classified zero set")
    return A[: nz[-1] + 1]


def eval_scale(A: np.ndarray, q: Quaternion) -> float:
    """``sum |a_n| |q|^n``: the natural size of rounding errors in ``P(q)``."""
    r = abs(q)
    norms = np.linalg.norm(A, axis=1)
    return float(np.sum(norms * r ** np.arange(len(A))))


def poly_residual(A: np.ndarray, q: Quaternion) -> float:
    return abs(eval_jet(QJet(A, trust_radius=math.inf), q)) / max(eval_scale(A, q), 1e-300)


def sym_poly(A: np.ndarray) -> np.ndarray:
    """Coefficients of ``P^s`` (degree 2 deg P), lowest first."""
    conj = A * np.array([1.0, -1.0, -1.0, -1.0])
    return star_conv(A, conj)[:, 0]


def _polish(c: np.ndarray, r: complex, steps: int = 4) -> complex:
    p = np.polynomial.Polynomial(c)
    dp = p.deriv()
    best, best_res = r, abs(p(r))
    for _ in range(steps):
        d = dp(r)
        if d == 0:
            break
        r = r - p(r) / d
        res = abs(p(r))
        if res < best_res:
            best, best_res = r, res
        else:
            break
    return best


def _taylor_at(c: np.ndarray, r: complex, upto: int) -> list[tuple[float, float]]:
    """``(|p^(j)(r)/j!|, scale_j)`` for j < upto."""
    out = []
    n = len(c)
    ar = abs(r)
    for j in range(upto):
        k = np.arange(j, n)
        binom = np.array([math.comb(int(kk), j) for kk in k], dtype=float)
        val = np.sum(c[j:] * binom * np.power(complex(r), k - j))
        scale = np.sum(np.abs(c[j:]) * binom * ar ** (k - j))
        out.append((abs(val), scale))
    return out


def _cluster_roots(c: np.ndarray, roots: np.ndarray) -> list[tuple[complex, int]]:
    """Group numerically split multiple roots; each group is checked by derivatives."""
    remaining = sorted(roots, key=lambda z: (z.real, z.imag))
    clusters: list[list[complex]] = []
    used = [False] * len(remaining)
    for a in range(len(remaining)):
        if used[a]:
            continue
        group = [remaining[a]]
        used[a] = True
        changed = True
        while changed:
            changed = False
            for b in range(len(remaining)):
                if used[b]:
                    continue
                rb = remaining[b]
                if any(abs(rb - g) <= CLUSTER_RADIUS * max(1.0, abs(g)) for g in group):
                    group.append(rb)
                    used[b] = True
                    changed = True
        clusters.append(group)
    out = []
    for group in clusters:
        m = len(group)
        centre = complex(np.mean(group))
        if m > 1:
            derivs = _taylor_at(c, centre, m)
            if all(v <= 1e-6 * s for v, s in derivs):
                out.append((centre, m))
                continue
            out.extend((_polish(c, g), 1) for g in group)
        else:
            out.append((_polish(c, centre), 1))
    return out


def _sphere_data(A: np.ndarray, alpha: float, beta: float) -> tuple[Quaternion, Quaternion]:
    P = QJet(A, trust_radius=math.inf)
    a = eval_jet(P, Quaternion(alpha, beta))
    b = eval_jet(P, Quaternion(alpha, -beta))
    c = (a + b) * 0.5
    d = I * ((b - a) * 0.5)
    return c, d


def classify_zeros(P, radius: float | None = None) -> ZeroReport:
    """Classify the zeros of a polynomial as real, spherical or non-real isolated.

    ``radius`` restricts the report to zeros with modulus at most ``radius``.
    """
    A = _coeff_array(P)
    report = ZeroReport()
    if len(A) == 1:
        return report
    ps = sym_poly(A)
    ps = ps[: np.nonzero(ps)[0][-1] + 1]
    roots = np.polynomial.polynomial.polyroots(ps)
    limit = None if radius is None else radius * (1.0 + 1e-6) + 1e-9
    scale = 1.0 + float(np.linalg.norm(A, axis=1).max())
    worst = 0.0
    for r, mult in _cluster_roots(ps, roots):
        if limit is not None and abs(r) > limit:
            continue
        alpha, beta = float(r.real), float(r.imag)
        if abs(beta) <= REAL_BETA:
            x = Quaternion(alpha)
            res = poly_residual(A, x)
            if res > RESIDUAL_TOL:
                raise NumericError(f"real root {alpha!r} of P^s does not annihilate P", res)
            worst = max(worst, res)
            report.real_zeros.append((alpha, max(1, mult // 2)))
            continue
        if beta < 0:
            continue
        c, d = _sphere_data(A, alpha, beta)
        if abs(c) <= SPHERE_TOL * scale and abs(d) <= SPHERE_TOL * scale:
            report.spherical_zeros.append((alpha, beta))
            worst = max(worst, poly_residual(A, Quaternion(alpha, beta)))
            continue
        if abs(d) == 0.0:
            raise NumericError(f"sphere ({alpha!r}, {beta!r}) has c != 0 but d = 0", abs(c))
        Jq = -(c * d.inverse())
        if abs(Jq.w) > 1e-6 * abs(Jq) or abs(abs(Jq) - 1.0) > 1e-6:
            raise NumericError(
                f"sphere ({alpha!r}, {beta!r}): -c d^-1 = {Jq} is not an imaginary unit",
                abs(abs(Jq) - 1.0),
            )
        v = Jq.vector
        axis = v / abs(v)
        q0 = alpha + beta * axis
        res = poly_residual(A, q0)
        if res > RESIDUAL_TOL:
            raise NumericError(f"isolated zero {q0} does not annihilate P", res)
        worst = max(worst, res)
        report.isolated_zeros.append(q0)
    report.max_residual = worst
    report.real_zeros.sort()
    report.spherical_zeros.sort()
    report.isolated_zeros.sort(key=lambda q: (abs(q), q.to_list()))
    return report


def trim_polynomial(F: QJet, rel: float = 1e-15) -> tuple[np.ndarray, bool]:
    """Drop coefficients negligible on the trust ball.

    Returns the trimmed coefficient array and whether the jet is polynomial
    like, i.e. its tail beyond the trimmed degree is negligible for at least
    ``max(2, N // 8)`` orders.
    """
    F = as_qjet(F)
    R = F.trust_radius
    weights = np.linalg.norm(F.coeffs, axis=1) * R ** np.arange(len(F))
    top = float(weights.max(initial=0.0))
    if top == 0.0:
        return F.coeffs[:1], True
    keep = np.nonzero(weights > rel * top)[0]
    degree = int(keep[-1])
    margin = max(2, F.order // 8)
    return F.coeffs[: degree + 1].copy(), degree <= F.order - margin


def obstruction_check(
    Ghat: QJet, report: ZeroReport, radius: float | None = None, tol: float = 1e-6
) -> list[Obstruction]:
    """Isolated zeros of the vector part where the normalized function is not 1."""
    Ghat = as_qjet(Ghat)
    radius = Ghat.trust_radius if radius is None else radius
    found = []
    for q0 in report.isolated_zeros:
        if abs(q0) > radius * (1.0 + 1e-6) + 1e-9:
            continue
        value = eval_jet(Ghat, q0) if abs(q0) <= Ghat.trust_radius else _eval_quiet(Ghat, q0)
        if abs(value - 1.0) > tol:
            found.append(Obstruction(q0, value))
    return found


def _eval_quiet(F: QJet, q: Quaternion) -> Quaternion:
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return eval_jet(F, q)

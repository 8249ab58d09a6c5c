"""Invariant suites run by ``slicelog verify``.

Each suite returns a list of :class:`~slicelog.report.CheckResult`.  Sample
sizes and thresholds follow the acceptance targets; everything is seeded, so
repeated runs report identical residuals.
"""

from __future__ import annotations

import math

import numpy as np

from . import entire
from .quat import I, J, Quaternion, qmul, random_quaternions
from .report import CheckResult
from .series import QJet, eval_jet, jet_distance, split_jet, star_mul, symmetrize
from .starexp import star_exp_direct, star_exp_formula
from .starlog import LogConfig, LogResult, star_log, uniqueness_shift
from .zeros import Obstruction, sym_poly

SUITES = ("identities", "roundtrip", "obstruction")


def random_jet(rng: np.random.Generator, order: int, max_norm: float, real_shift: float = 0.0) -> QJet:
    """Coefficients uniform in direction with norms uniform in ``[0, max_norm]``."""
    c = rng.standard_normal((order + 1, 4))
    c /= np.linalg.norm(c, axis=1)[:, None]
    c *= max_norm * rng.random((order + 1, 1))
    if real_shift:
        c[:, 0] += rng.uniform(-real_shift, real_shift, order + 1)
    return QJet(c)


def sample_D0(rng: np.random.Generator, n: int, margin: float = 0.5, xmin: float = -20.0, ymax: float = 20.0):
    """Points of D_0 at least ``margin`` left of its boundary parabola."""
    out = []
    while len(out) < n:
        y = ymax * rng.random()
        x = rng.uniform(xmin, entire.gamma_abscissa(1, y) - margin)
        axis = random_quaternions(rng, 1)[0].vector
        if abs(axis) == 0.0:
            continue
        out.append(x + y * (axis / abs(axis)))
    return out


def sigma_zero_free(F: QJet, radius: float = 1.0) -> bool:
    """Whether ``F_v^s`` (as the full polynomial) has no zero in the closed disc of ``radius``.

    This is what makes ``H_v = F_v / sqrt(F_v^s)`` regular on the ball, the
    setting in which ``F + 2 pi m H_v`` share one *-exponential.
    """
    s = sym_poly(split_jet(F).vector().coeffs)
    nz = np.nonzero(s)[0]
    if nz.size == 0 or not s[0] > 0.0:
        return False
    if nz[-1] == 0:
        return True
    roots = np.polynomial.polynomial.polyroots(s[: nz[-1] + 1])
    return bool(np.abs(roots).min() > radius)


def _check(name: str, residual: float, threshold: float) -> CheckResult:
    return CheckResult(name, bool(residual <= threshold), float(residual), threshold)


def identities(seed: int = 0, points: int = 10_000, jets: int = 100) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    worst = 0.0
    for q in random_quaternions(rng, points, 20.0):
        m, n = entire.mu_eval(q), entire.nu_eval(q)
        worst = max(worst, abs(m * m + qmul(n * n, q) - 1.0))
    out.append(_check("mu^2 + nu^2 q = 1", worst, 1e-10))

    worst = 0.0
    for xi in random_quaternions(rng, points, 20.0):
        if xi.is_real() and xi.w <= -1.0:
            continue
        worst = max(worst, abs(entire.mu_eval(entire.phi_eval(xi)) - xi) / max(1.0, abs(xi)))
    out.append(_check("mu(phi(xi)) = xi", worst, 1e-9))

    worst = 0.0
    for w in sample_D0(rng, points // 10):
        worst = max(worst, abs(entire.phi_eval(entire.mu_eval(w)) - w) / max(1.0, abs(w)))
    out.append(_check("phi(mu(w)) = w on D_0", worst, 1e-9))
    out.append(_check("phi(1) = 0", abs(entire.phi_eval(Quaternion(1.0))), 1e-12))

    pi = math.pi
    closed = [
        abs(eval_jet(star_exp_formula(QJet.constant(pi * I, 0)), Quaternion()) + 1.0),
        abs(
            eval_jet(star_exp_formula(QJet.constant(pi * I + pi * J, 0)), Quaternion())
            - (math.cos(math.sqrt(2) * pi) + (I + J) * (math.sin(math.sqrt(2) * pi) / math.sqrt(2)))
        ),
        abs(eval_jet(star_exp_formula(QJet.constant(I) + QJet.variable() * J), J) - I),
    ]
    closed += [abs(entire.mu_eval(Quaternion(pi * pi * k * k)) - (-1.0) ** k) for k in range(6)]
    out.append(_check("closed-form exp_* and mu values", max(closed), 1e-10))

    agree = sym = inv = 0.0
    for _ in range(jets):
        F = random_jet(rng, int(rng.integers(0, 17)), 2.0)
        E = star_exp_formula(F)
        agree = max(agree, jet_distance(star_exp_direct(F), E))
        f0 = split_jet(F).f0
        sym = max(sym, jet_distance(symmetrize(E), (f0 * 2.0).exp()))
        inv = max(inv, jet_distance(star_mul(star_exp_formula(-F), E), QJet.constant(1.0, F.order)))
    out.append(_check("direct and closed-form exp_* agree", agree, 1e-8))
    out.append(_check("(exp_* F)^s = exp(2 f0)", sym, 1e-9))
    out.append(_check("exp_*(-F) * exp_*(F) = 1", inv, 1e-9))
    return out


def roundtrip(seed: int = 1, jets: int = 200, families: int = 50) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    real_part = 0.0
    failures = 0
    for _ in range(jets):
        F = random_jet(rng, int(rng.integers(0, 13)), 0.5, real_shift=2.0 * rng.random())
        G = star_exp_formula(F)
        try:
            res = star_log(G)
        except (ArithmeticError, ValueError):
            failures += 1
            continue
        worst = max(worst, jet_distance(star_exp_formula(res.f), G))
        f0 = split_jet(res.f).f0
        if not np.array_equal(f0.coeffs, (res.psi * 0.5).coeffs):
            real_part = max(real_part, jet_distance(f0, res.psi * 0.5) or math.inf)
    out = [
        _check("star_log succeeds on exp_*(F)", float(failures), 0.0),
        _check("exp_*(star_log(exp_*(F))) = exp_*(F)", worst, 1e-7),
        _check("real part of the logarithm is psi/2", real_part, 0.0),
    ]

    worst = 0.0
    done = 0
    while done < families:
        F = random_jet(rng, int(rng.integers(0, 13)), 0.5)
        # H_v converges only up to the nearest zero of F_v^s
        if not sigma_zero_free(F, F.trust_radius):
            continue
        worst = max(worst, jet_distance(star_exp_formula(uniqueness_shift(F, 1)), star_exp_formula(F)))
        done += 1
    out.append(_check("exp_*(F + 2 pi H_v) = exp_*(F)", worst, 1e-7))
    return out


def obstruction_fixtures(order: int = 64) -> list[tuple[str, QJet]]:
    """The three exponentials whose negatives have no *-logarithm."""
    q = QJet.variable(order)
    return [
        ("(q-i)*j", star_mul(q - I, QJet.constant(J, order))),
        ("(q-i)^2*j", star_mul(star_mul(q - I, q - I), QJet.constant(J, order))),
        ("(q-i)*(q-2j)*(-2i+j)", star_mul(star_mul(q - I, q - 2.0 * J), QJet.constant(-2.0 * I + J, order))),
    ]


def obstruction(order: int = 64, config: LogConfig | None = None) -> list[CheckResult]:
    out = []
    for label, F in obstruction_fixtures(order):
        G = star_exp_formula(F)
        neg = star_log(-G, config)
        hit = isinstance(neg, Obstruction) and abs(neg.g0_value + 1.0) <= 1e-6
        out.append(CheckResult(f"-exp_*({label}) is obstructed", hit, 0.0, 0.0))
        try:
            pos = star_log(G, config)
        except (ArithmeticError, ValueError) as exc:
            residual = getattr(exc, "residual", math.inf)
            out.append(CheckResult(f"exp_*({label}) has a logarithm", False, float(residual), 1e-7))
            continue
        ok = isinstance(pos, LogResult)
        residual = pos.residual if ok else math.inf
        out.append(_check(f"exp_*({label}) has a logarithm", residual, 1e-7))
    return out


def run_suite(name: str, order: int = 64) -> list[CheckResult]:
    if name == "identities":
        return identities()
    if name == "roundtrip":
        return roundtrip()
    if name == "obstruction":
        return obstruction(order)
    if name == "all":
        return identities() + roundtrip() + obstruction(order)
    raise ValueError(f"unknown suite {name!r}")

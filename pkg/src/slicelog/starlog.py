"""Constructive *-logarithms of jets on a ball.

Given ``G`` with ``G(0) != 0`` we look for ``f`` with ``exp_*(f) = G``:

1. normalize: ``psi = log(G^s)`` and ``Ghat = exp(-psi/2) G`` so ``Ghat^s = 1``;
2. a real ``Ghat`` is ``+1`` or ``-1`` and the answer is ``psi/2`` (plus ``pi i``);
3. polynomial-like inputs are screened for isolated zeros of ``ghat_v`` where
   ``Ghat != 1``, which rule out any logarithm;
4. the vector part comes from ``fv = gv / nu(phi(g0))`` or, failing that, from
   ``gamma = cossin_solve(g0, tau)`` with ``tau = sqrt(gv^s)`` and
   ``fv = gamma / tau * gv``;
5. ``f = psi/2 + fv`` is accepted only if ``exp_*(f)`` reproduces ``G``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConsistencyError, DomainError, ResidualError, RouteInapplicable, SliceError
from .quat import I
from .series import (
    QJet,
    RJet,
    as_qjet,
    compose_entire,
    eval_jet,
    jet_distance,
    sample_points,
    scale_exact,
    split_jet,
    symmetrize,
)
from .starexp import star_exp_direct, star_exp_formula
from .zeros import Obstruction, ZeroReport, classify_zeros, obstruction_check, trim_polynomial

ROUTES = ("phi", "tau", "slice_preserving", "minus_one_shift")


@dataclass
class LogConfig:
    coeff_threshold: float = 1e-7
    point_threshold: float = 1e-6
    obstruction_tol: float = 1e-6
    unit_tol: float = 1e-8
    samples: int = 64
    # pointwise checks use the ball of radius sample_fraction * trust_radius
    sample_fraction: float = 0.5
    seed: int = 0
    # one quotient-log correction of the route output before giving up on it
    refine: bool = True
    # largest |m| tried in f + 2 pi m H_v when the first branch fails verification
    max_shift: int = 2


@dataclass
class LogResult:
    f: QJet
    route: str
    residual: float
    point_residual: float = 0.0
    psi: RJet | None = None
    attempts: dict = field(default_factory=dict)
    # f = route output + 2 pi shift H_v, see branch_shifts
    shift: int = 0


def normalize_unit_s(G: QJet, tol: float = 1e-8) -> tuple[RJet, QJet]:
    """Return ``(psi, Ghat)`` with ``exp(psi) = G^s`` and ``Ghat = exp(-psi/2) G``."""
    G = as_qjet(G)
    S = symmetrize(G)
    if not S.coeffs[0] > 0.0:
        raise DomainError(f"G vanishes at the centre: G^s(0) = {float(S.coeffs[0])!r}")
    psi = S.log()
    Ghat = (psi * -0.5).exp() * G
    err = jet_distance(symmetrize(Ghat), RJet.constant(1.0, Ghat.order))
    if err > tol:
        raise ConsistencyError(f"normalization left |Ghat^s - 1| = {err:.3e}")
    return psi, Ghat


def cossin_solve(a0: RJet, a1: RJet, tol: float = 1e-9) -> RJet:
    """Real jet ``gamma`` with ``cos(gamma) = a0`` and ``sin(gamma) = a1``.

    Uses ``gamma' = a0 a1' - a1 a0'`` and ``gamma(0) = atan2(a1(0), a0(0))``.
    """
    a0 = as_rjet(a0)
    a1 = as_rjet(a1)
    n = max(a0.order, a1.order)
    a0, a1 = a0.truncate(n), a1.truncate(n)
    err = jet_distance(a0 * a0 + a1 * a1, RJet.constant(1.0, n))
    if err > tol:
        raise DomainError(f"(a0, a1) is not on the unit circle: |a0^2 + a1^2 - 1| = {err:.3e}")
    if n == 0:
        return a0._like([math.atan2(a1.coeffs[0], a0.coeffs[0])])
    lo0, lo1 = a0.truncate(n - 1), a1.truncate(n - 1)
    dgamma = lo0 * a1.derive() - lo1 * a0.derive()
    gamma = dgamma.truncate(n).integrate() + math.atan2(a1.coeffs[0], a0.coeffs[0])
    gamma = a0._like(gamma.coeffs, a1)
    c, s = gamma.cos_sin()
    check = max(jet_distance(c, a0), jet_distance(s, a1))
    if check > tol:
        raise ConsistencyError(f"cossin_solve reconstruction error {check:.3e}")
    return gamma


def as_rjet(F) -> RJet:
    return F if isinstance(F, RJet) else F.to_rjet()


def _unit_parts(Ghat: QJet, tol: float) -> tuple[RJet, QJet]:
    err = jet_distance(symmetrize(Ghat), RJet.constant(1.0, Ghat.order))
    if err > tol:
        raise DomainError(f"input is not normalized: |Ghat^s - 1| = {err:.3e}")
    parts = split_jet(Ghat)
    return parts.f0, parts.vector()


def log_phi_route(Ghat: QJet, tol: float = 1e-8) -> QJet:
    """``fv = gv / nu(phi(g0))`` for ``Ghat^s = 1`` with ``g0(0) > -1``."""
    g0, gv = _unit_parts(as_qjet(Ghat), tol)
    c = float(g0.coeffs[0])
    if c <= -1.0 + 1e-12:
        raise RouteInapplicable(
            f"g0(0) = {c!r} lies on (-inf, -1]: the centre is outside the connected "
            "component where phi(g0) is defined"
        )
    w = compose_entire("phi", g0)
    return scale_exact(compose_entire("nu", w).recip(), gv)


def log_tau_route(Ghat: QJet, tol: float = 1e-8) -> QJet:
    """``fv = (gamma / tau) gv`` with ``tau = sqrt(gv^s)``, ``cos gamma = g0``, ``sin gamma = tau``."""
    g0, gv = _unit_parts(as_qjet(Ghat), tol)
    sigma = symmetrize(gv)
    if not sigma.coeffs[0] > tol:
        raise RouteInapplicable(
            f"gv^s(0) = {float(sigma.coeffs[0])!r} is not positive; tau route does not apply"
        )
    tau = sigma.sqrt()
    gamma = cossin_solve(g0, tau, tol=max(tol, 1e-9))
    return scale_exact(gamma * tau.recip(), gv)


def residuals(f: QJet, G: QJet, config: LogConfig) -> tuple[float, float]:
    """Coefficientwise and pointwise mismatch between ``exp_*(f)`` and ``G``."""
    E = star_exp_direct(f)
    coeff = jet_distance(E, G)
    radius = G.trust_radius * config.sample_fraction
    point = 0.0
    for q in sample_points(radius, config.samples, config.seed):
        a, b = eval_jet(E, q), eval_jet(G, q)
        point = max(point, abs(a - b) / max(1.0, abs(b)))
    return coeff, point


def find_obstructions(Ghat: QJet, config: LogConfig) -> tuple[list[Obstruction], ZeroReport | None]:
    """Screen ``ghat_v`` for isolated zeros where ``Ghat != 1`` (polynomial-like jets only)."""
    coeffs, polynomial_like = trim_polynomial(Ghat.vector_part())
    if not polynomial_like:
        return [], None
    report = classify_zeros(coeffs, radius=Ghat.trust_radius)
    return obstruction_check(Ghat, report, tol=config.obstruction_tol), report


def star_log(G: QJet, config: LogConfig | None = None) -> LogResult | Obstruction:
    config = config or LogConfig()
    G = as_qjet(G)
    psi, Ghat = normalize_unit_s(G, config.unit_tol)
    half = (psi * 0.5).to_qjet()

    if Ghat.is_real(config.unit_tol):
        if Ghat.coeffs[0, 0] > 0:
            candidates = {"slice_preserving": half}
        else:
            candidates = {"minus_one_shift": half + math.pi * I}
    else:
        obstructions, _ = find_obstructions(Ghat, config)
        if obstructions:
            return obstructions[0]
        candidates = {}
        for name, route in (("phi", log_phi_route), ("tau", log_tau_route)):
            try:
                candidates[name] = half + route(Ghat, config.unit_tol)
            except (SliceError, ArithmeticError) as exc:
                candidates[name] = exc

    attempts = {}
    best = None
    for name, f in candidates.items():
        if isinstance(f, Exception):
            attempts[name] = str(f)
            continue
        for key, m, fm in _variants(name, f, Ghat, config):
            coeff, point = residuals(fm, G, config)
            attempts[key] = {"residual": coeff, "point_residual": point}
            if coeff <= config.coeff_threshold and point <= config.point_threshold:
                return LogResult(fm, name, coeff, point, psi, attempts, m)
            if best is None or coeff < best[1]:
                best = (key, coeff, point)
    if best is None:
        raise RouteInapplicable(f"no logarithm route applies: {attempts}")
    raise ResidualError(
        f"route {best[0]} left residual {best[1]:.3e} (pointwise {best[2]:.3e})", best[1]
    )


def refine_log(f: QJet, Ghat: QJet) -> QJet:
    """One correction ``f_v += log_*(exp_*(-f_v) * Ghat)``.

    Both routes return ``f_v = lam * g_v`` with a real jet ``lam``, so the
    computed and the exact logarithm differ by a real multiple of ``g_v``
    and *-commute.  The quotient is then close to 1, where the logarithm is
    well conditioned, and its log is exactly the missing correction.  This
    matters when ``g0`` reaches -1 inside the ball: ``lam`` has a pole there
    and its rounding errors grow geometrically with the order.
    """
    parts = split_jet(f)
    fv = parts.vector()
    D = star_exp_formula(-fv) * Ghat
    _, Dhat = normalize_unit_s(D, tol=1e-6)
    dv = log_phi_route(Dhat, tol=1e-6)
    return f + dv


def _variants(name: str, f: QJet, Ghat: QJet, config: LogConfig):
    """Candidates in the order they are verified: raw, refined, branch shifts."""
    yield name, 0, f
    if config.refine:
        try:
            f = refine_log(f, Ghat)
        except (SliceError, ArithmeticError):
            pass
        else:
            yield f"{name}/refined", 0, f
    for m, fm in branch_shifts(f, config.max_shift):
        if m:
            yield f"{name}{m:+d}", m, fm


def branch_shifts(f: QJet, max_shift: int):
    """Yield ``(m, f + 2 pi m H_v)`` for m = 0, -1, 1, -2, 2, ...

    All of these share one *-exponential.  A branch whose series converges
    only up to the trust radius verifies poorly in double precision, while a
    neighbouring branch may be entire; trying them in turn picks a
    well-conditioned representative.
    """
    yield 0, f
    if max_shift <= 0:
        return
    try:
        Hv = unit_vector_jet(f)
    except (SliceError, ArithmeticError):
        return
    for k in range(1, max_shift + 1):
        for m in (-k, k):
            yield m, f + Hv * (2.0 * math.pi * m)


def uniqueness_shift(F: QJet, m: int = 1) -> QJet:
    """``F + 2 pi m H_v`` with ``H_v = F_v / sqrt(F_v^s)``; has the same *-exponential."""
    F = as_qjet(F)
    fv = split_jet(F).vector()
    sigma = symmetrize(fv)
    if not sigma.coeffs[0] > 0.0:
        raise DomainError("F_v^s(0) must be positive")
    Hv = sigma.sqrt().recip() * fv
    return F + Hv * (2.0 * math.pi * m)


def unit_vector_jet(F: QJet) -> QJet:
    """``F_v / sqrt(F_v^s)``: a jet with symmetrization 1."""
    fv = split_jet(as_qjet(F)).vector()
    return symmetrize(fv).sqrt().recip() * fv


__all__ = [
    "LogConfig",
    "LogResult",
    "Obstruction",
    "cossin_solve",
    "log_phi_route",
    "log_tau_route",
    "normalize_unit_s",
    "refine_log",
    "star_log",
    "uniqueness_shift",
]

"""The *-exponential, *-cosine and *-sine of quaternionic jets.

Two independent routes compute ``exp_*``: the defining series
``sum F^{*n}/n!`` and the closed form

    exp_*(f) = exp(f0) * (mu(fv^s) + nu(fv^s) * fv)

where ``f = f0 + fv`` splits off the real part.
"""

from __future__ import annotations

import numpy as np

from .errors import ConsistencyError
from .series import QJet, as_qjet, compose_entire, jet_distance, split_jet, star_mul, symmetrize

COS_SIN_CHECK_TOL = 1e-8
# low orders still need enough terms for the scalar exponential to converge
MIN_TERMS = 64


def _series_terms(F: QJet, terms: int | None):
    """Yield ``F^{*n}/n!`` for n = 0, 1, ... with the early-exit rule applied."""
    F = as_qjet(F)
    M = max(4 * F.order, MIN_TERMS) if terms is None else terms
    term = QJet.constant(1.0, F.order, trust_radius=F.trust_radius, tol=F.tol)
    yield term
    floor = 1e-3 * F.tol
    small = 0
    for n in range(1, M + 1):
        term = star_mul(term, F) / n
        yield term
        if float(np.abs(term.coeffs).max()) <= floor:
            small += 1
            if small >= 2:
                return
        else:
            small = 0


def star_exp_direct(F: QJet, terms: int | None = None) -> QJet:
    """Partial sum of ``sum F^{*n}/n!`` (``terms`` defaults to four times the order)."""
    total = None
    for t in _series_terms(F, terms):
        total = t if total is None else total + t
    return total


def star_exp_formula(F: QJet) -> QJet:
    F = as_qjet(F)
    parts = split_jet(F)
    fv = parts.vector()
    sigma = symmetrize(fv)
    inner = compose_entire("mu", sigma) + compose_entire("nu", sigma) * fv
    return parts.f0.exp() * inner


def star_exp(F: QJet) -> QJet:
    return star_exp_formula(F)


def star_cos_sin(F: QJet, terms: int | None = None, check: bool = True) -> tuple[QJet, QJet]:
    """``(cos_* F, sin_* F)`` from the defining even/odd series.

    When F has no real part, ``F^{*2} = -F_v^s`` is real and the result is
    checked against ``(mu(-sigma), nu(-sigma) F)``.
    """
    F = as_qjet(F)
    cos = QJet.constant(0.0, F.order, trust_radius=F.trust_radius, tol=F.tol)
    sin = cos
    for n, t in enumerate(_series_terms(F, terms)):
        sign = -1.0 if n % 4 >= 2 else 1.0
        if n % 2 == 0:
            cos = cos + t * sign
        else:
            sin = sin + t * sign
    if check and float(np.abs(F.coeffs[:, 0]).max()) <= F.tol * F.scale():
        c2, s2 = cos_sin_via_munu(F)
        err = max(jet_distance(cos, c2), jet_distance(sin, s2))
        if err > COS_SIN_CHECK_TOL:
            raise ConsistencyError(f"cos_*/sin_* series and mu/nu routes disagree by {err:.3e}")
    return cos, sin


def cos_sin_via_munu(F: QJet) -> tuple[QJet, QJet]:
    """For F with zero real part: ``cos_* F = mu(-F^s)`` and ``sin_* F = nu(-F^s) F``."""
    F = as_qjet(F)
    neg_sigma = -symmetrize(F)
    return compose_entire("mu", neg_sigma).to_qjet(), compose_entire("nu", neg_sigma) * F


"""JSON function files.

The two basic kinds are

    {"kind": "qpoly", "coeffs": [[w, x, y, z], ...], "trust_radius": 1.0}
    {"kind": "rpoly", "coeffs": [c0, c1, ...], "trust_radius": 1.0}

with the constant coefficient first.  Two derived kinds build jets from
other function descriptions, so that inputs such as ``-exp_*((q-i)*j)`` can be
written down without precomputing their Taylor coefficients:

    {"kind": "star_exp", "arg": <function>}
    {"kind": "star_prod", "factors": [<function>, ...]}

Derived kinds are expanded at the truncation order requested by the caller.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .series import DEFAULT_ORDER, QJet, RJet, as_qjet, star_mul
from .starexp import star_exp_formula

KINDS = ("qpoly", "rpoly", "star_exp", "star_prod")


class FunctionFileError(ValueError):
    """Malformed function description."""


def _radius(doc: dict) -> float:
    r = doc.get("trust_radius", 1.0)
    if r is None:
        return math.inf
    if not isinstance(r, (int, float)) or isinstance(r, bool) or not r > 0:
        raise FunctionFileError(f"trust_radius must be a positive number, got {r!r}")
    return float(r)


def _coeffs(doc: dict, width: int | None) -> np.ndarray:
    if "coeffs" not in doc:
        raise FunctionFileError(f"{doc.get('kind')} needs a 'coeffs' list")
    try:
        a = np.asarray(doc["coeffs"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise FunctionFileError(f"coefficients are not numeric: {exc}") from None
    if a.size == 0:
        raise FunctionFileError("empty coefficient list")
    if width is None and a.ndim != 1:
        raise FunctionFileError("rpoly coefficients must be a flat list of numbers")
    if width is not None and (a.ndim != 2 or a.shape[1] != width):
        raise FunctionFileError("qpoly coefficients must be [w, x, y, z] rows")
    if not np.all(np.isfinite(a)):
        raise FunctionFileError("coefficients must be finite")
    return a


def _fit(a: np.ndarray, order: int) -> np.ndarray:
    n = order + 1
    if len(a) >= n:
        return a[:n].copy()
    return np.concatenate([a, np.zeros((n - len(a),) + a.shape[1:])])


def jet_from_dict(doc, order: int = DEFAULT_ORDER) -> QJet | RJet:
    """Build the jet described by ``doc``, truncated or padded to ``order``."""
    if not isinstance(doc, dict):
        raise FunctionFileError(f"a function description must be an object, got {type(doc).__name__}")
    kind = doc.get("kind")
    if kind == "qpoly":
        return QJet(_fit(_coeffs(doc, 4), order), trust_radius=_radius(doc))
    if kind == "rpoly":
        return RJet(_fit(_coeffs(doc, None), order), trust_radius=_radius(doc))
    if kind == "star_exp":
        if "arg" not in doc:
            raise FunctionFileError("star_exp needs an 'arg'")
        return star_exp_formula(as_qjet(jet_from_dict(doc["arg"], order)))
    if kind == "star_prod":
        factors = doc.get("factors")
        if not isinstance(factors, list) or not factors:
            raise FunctionFileError("star_prod needs a non-empty 'factors' list")
        out = as_qjet(jet_from_dict(factors[0], order))
        for f in factors[1:]:
            out = star_mul(out, as_qjet(jet_from_dict(f, order)))
        return out
    raise FunctionFileError(f"unknown function kind {kind!r}; expected one of {', '.join(KINDS)}")


def jet_to_dict(F) -> dict:
    """Serialize a jet as ``qpoly`` (or ``rpoly`` for an RJet)."""
    # null stands for an unlimited trust radius (plain polynomials)
    radius = float(F.trust_radius) if math.isfinite(F.trust_radius) else None
    if isinstance(F, RJet):
        doc = {"kind": "rpoly", "coeffs": [float(c) for c in F.coeffs]}
    else:
        doc = {"kind": "qpoly", "coeffs": [[float(c) for c in row] for row in F.coeffs]}
    doc["trust_radius"] = radius
    return doc


def load_function(path, order: int = DEFAULT_ORDER) -> QJet | RJet:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FunctionFileError(f"{path}: not valid JSON ({exc})") from None
    return jet_from_dict(doc, order)


def save_function(path, F) -> None:
    Path(path).write_text(json.dumps(jet_to_dict(F), sort_keys=True) + "\n")


def qpoly(coeffs, trust_radius: float = 1.0) -> dict:
    """Convenience constructor for a ``qpoly`` description."""
    return {"kind": "qpoly", "coeffs": [list(map(float, c)) for c in coeffs], "trust_radius": trust_radius}

"""Truncated quaternionic power series centred at 0.

A :class:`QJet` holds the right coefficients ``a_0 .. a_N`` of
``f(q) = sum q^n a_n``, which is how a slice regular function on a ball
around the origin is written.  On such series the *-product is plain
coefficient convolution (quaternion products taken in order), so it is
associative but not commutative.  An :class:`RJet` has real coefficients and
models a slice preserving function; it commutes with every jet.

Binary operations pad to the larger truncation order; results carry the
smaller trust radius of their operands.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from numbers import Real

import numpy as np

from . import entire
from .errors import BranchCutError, ConsistencyError, DomainError, NotInvertibleError
from .quat import Quaternion, slice_decompose

DEFAULT_ORDER = 64
DEFAULT_TOL = 1e-12


class TrustRadiusWarning(UserWarning):
    """A jet was evaluated outside the radius its truncation is trusted on."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _pad(a: np.ndarray, length: int) -> np.ndarray:
    if a.shape[0] >= length:
        return a[:length]
    pad = [(0, length - a.shape[0])] + [(0, 0)] * (a.ndim - 1)
    return np.pad(a, pad)


def star_conv(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Full (untruncated) *-convolution of two (n, 4) coefficient arrays."""
    c = [[np.convolve(A[:, p], B[:, q]) for q in range(4)] for p in range(4)]
    return np.stack(
        [
            c[0][0] - c[1][1] - c[2][2] - c[3][3],
            c[0][1] + c[1][0] + c[2][3] - c[3][2],
            c[0][2] - c[1][3] + c[2][0] + c[3][1],
            c[0][3] + c[1][2] - c[2][1] + c[3][0],
        ],
        axis=1,
    )


def _scale(coeffs: np.ndarray) -> float:
    if coeffs.size == 0:
        return 1.0
    norms = np.abs(coeffs) if coeffs.ndim == 1 else np.linalg.norm(coeffs, axis=1)
    return max(1.0, float(norms.max()))


class RJet:
    """Truncated power series with real coefficients (a slice preserving function)."""

    __slots__ = ("coeffs", "trust_radius", "tol")

    def __init__(self, coeffs, trust_radius: float = 1.0, tol: float = DEFAULT_TOL):
        a = np.array(coeffs, dtype=float).reshape(-1)
        if a.size == 0:
            a = np.zeros(1)
        self.coeffs = _freeze(a)
        self.trust_radius = float(trust_radius)
        self.tol = float(tol)

    @classmethod
    def constant(cls, c: float, order: int = DEFAULT_ORDER, **kw) -> RJet:
        a = np.zeros(order + 1)
        a[0] = c
        return cls(a, **kw)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER, **kw) -> RJet:
        a = np.zeros(order + 1)
        if order >= 1:
            a[1] = 1.0
        return cls(a, **kw)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self) -> str:
        return f"RJet(order={self.order}, coeffs={np.array2string(self.coeffs[:6], precision=6)}...)"

    def _like(self, coeffs, other=None) -> RJet:
        radius = self.trust_radius
        if other is not None:
            radius = min(radius, other.trust_radius)
        return RJet(coeffs, trust_radius=radius, tol=self.tol)

    def truncate(self, order: int) -> RJet:
        return self._like(_pad(self.coeffs, order + 1))

    def to_qjet(self) -> QJet:
        a = np.zeros((len(self), 4))
        a[:, 0] = self.coeffs
        return QJet(a, trust_radius=self.trust_radius, tol=self.tol)

    def scale(self) -> float:
        return _scale(self.coeffs)

    def allclose(self, other, tol: float | None = None) -> bool:
        return jet_distance(self, other) <= (self.tol if tol is None else tol)

    # arithmetic
    def __neg__(self) -> RJet:
        return self._like(-self.coeffs)

    def __add__(self, other):
        if isinstance(other, Real):
            a = self.coeffs.copy()
            a[0] += other
            return self._like(a)
        if isinstance(other, QJet):
            return self.to_qjet() + other
        if not isinstance(other, RJet):
            return NotImplemented
        n = max(len(self), len(other))
        return self._like(_pad(self.coeffs, n) + _pad(other.coeffs, n), other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (Real, RJet, QJet)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return self._like(self.coeffs * other)
        if isinstance(other, QJet):
            return star_mul(self.to_qjet(), other)
        if isinstance(other, Quaternion):
            return self.to_qjet() * other
        if not isinstance(other, RJet):
            return NotImplemented
        n = max(len(self), len(other))
        return self._like(np.convolve(self.coeffs, other.coeffs)[:n], other)

    def __rmul__(self, other):
        if isinstance(other, Real):
            return self._like(self.coeffs * other)
        if isinstance(other, Quaternion):
            return other * self.to_qjet()
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return self._like(self.coeffs / other)
        if isinstance(other, RJet):
            return self * other.recip()
        return NotImplemented

    def __call__(self, q: Quaternion) -> Quaternion:
        return eval_jet(self, q)

    # real functional calculus
    def exp(self) -> RJet:
        f = self.coeffs
        n = len(f)
        e = np.zeros(n)
        e[0] = math.exp(f[0])
        jf = np.arange(n) * f
        for k in range(1, n):
            e[k] = np.dot(jf[1 : k + 1], e[k - 1 :: -1][:k]) / k
        return self._like(e)

    def log(self) -> RJet:
        f = self.coeffs
        if not f[0] > 0.0:
            raise DomainError(f"log needs a positive constant term, got {float(f[0])!r}")
        n = len(f)
        out = np.zeros(n)
        out[0] = math.log(f[0])
        for k in range(1, n):
            j = np.arange(1, k)
            acc = np.dot(j * out[1:k], f[k - 1 : 0 : -1]) if k > 1 else 0.0
            out[k] = (f[k] - acc / k) / f[0]
        return self._like(out)

    def sqrt(self) -> RJet:
        f = self.coeffs
        if not f[0] > 0.0:
            raise DomainError(f"sqrt needs a positive constant term, got {float(f[0])!r}")
        n = len(f)
        r = np.zeros(n)
        r[0] = math.sqrt(f[0])
        for k in range(1, n):
            acc = np.dot(r[1:k], r[k - 1 : 0 : -1]) if k > 1 else 0.0
            r[k] = (f[k] - acc) / (2.0 * r[0])
        return self._like(r)

    def recip(self) -> RJet:
        f = self.coeffs
        if f[0] == 0.0 or not math.isfinite(f[0]):
            raise DomainError(f"recip needs a nonzero constant term, got {float(f[0])!r}")
        n = len(f)
        r = np.zeros(n)
        r[0] = 1.0 / f[0]
        for k in range(1, n):
            r[k] = -np.dot(f[1 : k + 1], r[k - 1 :: -1][:k]) / f[0]
        return self._like(r)

    def integrate(self) -> RJet:
        f = self.coeffs
        out = np.zeros(len(f))
        out[1:] = f[:-1] / np.arange(1, len(f))
        return self._like(out)

    def derive(self) -> RJet:
        f = self.coeffs
        if len(f) == 1:
            return self._like(np.zeros(1))
        return self._like(f[1:] * np.arange(1, len(f)))

    def compose(self, inner: RJet) -> RJet:
        """Formal composition ``self(inner)``; ``inner`` must vanish at 0."""
        if abs(inner.coeffs[0]) > self.tol * inner.scale():
            raise DomainError("inner series of a composition must have zero constant term")
        out = _horner(self.coeffs, inner - inner.coeffs[0])
        return self._like(out.coeffs, inner)

    def cos_sin(self) -> tuple[RJet, RJet]:
        """``(cos(self), sin(self))`` from ``C' = -S g'`` and ``S' = C g'``."""
        g = self.coeffs
        n = len(g)
        c = np.zeros(n)
        s = np.zeros(n)
        c[0], s[0] = math.cos(g[0]), math.sin(g[0])
        jg = np.arange(n) * g
        for k in range(1, n):
            c[k] = -np.dot(jg[1 : k + 1], s[k - 1 :: -1][:k]) / k
            s[k] = np.dot(jg[1 : k + 1], c[k - 1 :: -1][:k]) / k
        return self._like(c), self._like(s)


class QJet:
    """Truncated power series ``sum q^n a_n`` with quaternion right coefficients."""

    __slots__ = ("coeffs", "trust_radius", "tol")

    def __init__(self, coeffs, trust_radius: float = 1.0, tol: float = DEFAULT_TOL):
        if isinstance(coeffs, np.ndarray):
            a = np.array(coeffs, dtype=float)
        else:
            a = np.array(
                [c.to_list() if isinstance(c, Quaternion) else c for c in coeffs], dtype=float
            )
        if a.ndim == 1:
            if a.size == 0:
                a = np.zeros((1, 4))
            elif a.size % 4 != 0:
                raise ValueError("QJet coefficients must be quaternions")
        a = a.reshape(-1, 4)
        self.coeffs = _freeze(a)
        self.trust_radius = float(trust_radius)
        self.tol = float(tol)

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER, **kw) -> QJet:
        a = np.zeros((order + 1, 4))
        a[0] = c.to_array() if isinstance(c, Quaternion) else [c, 0, 0, 0]
        return cls(a, **kw)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER, **kw) -> QJet:
        a = np.zeros((order + 1, 4))
        if order >= 1:
            a[1, 0] = 1.0
        return cls(a, **kw)

    @classmethod
    def from_poly(cls, coeffs, order: int = DEFAULT_ORDER, **kw) -> QJet:
        """Polynomial with given right coefficients, padded/truncated to ``order``."""
        q = cls(coeffs)
        return cls(_pad(q.coeffs, order + 1), **kw)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    def __getitem__(self, k) -> Quaternion:
        return Quaternion.from_array(self.coeffs[k])

    def __repr__(self) -> str:
        return f"QJet(order={self.order}, coeffs={np.array2string(self.coeffs[:3], precision=6)}...)"

    def _like(self, coeffs, other=None) -> QJet:
        radius = self.trust_radius
        if other is not None:
            radius = min(radius, other.trust_radius)
        return QJet(coeffs, trust_radius=radius, tol=self.tol)

    def truncate(self, order: int) -> QJet:
        return self._like(_pad(self.coeffs, order + 1))

    def scale(self) -> float:
        return _scale(self.coeffs)

    def is_real(self, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        return float(np.abs(self.coeffs[:, 1:]).max(initial=0.0)) <= tol * self.scale()

    def real_part(self) -> RJet:
        return RJet(self.coeffs[:, 0], trust_radius=self.trust_radius, tol=self.tol)

    def vector_part(self) -> QJet:
        a = self.coeffs.copy()
        a[:, 0] = 0.0
        return self._like(a)

    def to_rjet(self, tol: float | None = None) -> RJet:
        if not self.is_real(tol):
            raise DomainError("jet has non-real coefficients")
        return self.real_part()

    def allclose(self, other, tol: float | None = None) -> bool:
        return jet_distance(self, other) <= (self.tol if tol is None else tol)

    def conj(self) -> QJet:
        return conj_jet(self)

    def sym(self) -> RJet:
        return symmetrize(self)

    def split(self) -> VectorSplit:
        return split_jet(self)

    def __neg__(self) -> QJet:
        return self._like(-self.coeffs)

    def __add__(self, other):
        if isinstance(other, Real):
            a = self.coeffs.copy()
            a[0, 0] += other
            return self._like(a)
        if isinstance(other, Quaternion):
            a = self.coeffs.copy()
            a[0] += other.to_array()
            return self._like(a)
        if isinstance(other, RJet):
            other = other.to_qjet()
        if not isinstance(other, QJet):
            return NotImplemented
        n = max(len(self), len(other))
        return self._like(_pad(self.coeffs, n) + _pad(other.coeffs, n), other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (Real, Quaternion, RJet, QJet)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return self._like(self.coeffs * other)
        if isinstance(other, Quaternion):
            return star_mul(self, QJet.constant(other, 0))
        if isinstance(other, RJet):
            other = other.to_qjet()
        if not isinstance(other, QJet):
            return NotImplemented
        return star_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, Real):
            return self._like(self.coeffs * other)
        if isinstance(other, Quaternion):
            return star_mul(QJet.constant(other, 0), self)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return self._like(self.coeffs / other)
        if isinstance(other, RJet):
            return self * other.recip()
        return NotImplemented

    def __call__(self, q: Quaternion) -> Quaternion:
        return eval_jet(self, q)


@dataclass(frozen=True)
class VectorSplit:
    """``f = f0 + f1*i + f2*j + f3*k`` with real jets ``f0 .. f3``."""

    f0: RJet
    f1: RJet
    f2: RJet
    f3: RJet

    def reassemble(self) -> QJet:
        a = np.stack([self.f0.coeffs, self.f1.coeffs, self.f2.coeffs, self.f3.coeffs], axis=1)
        return QJet(a, trust_radius=self.f0.trust_radius, tol=self.f0.tol)

    def vector(self) -> QJet:
        a = np.stack(
            [np.zeros(len(self.f0)), self.f1.coeffs, self.f2.coeffs, self.f3.coeffs], axis=1
        )
        return QJet(a, trust_radius=self.f0.trust_radius, tol=self.f0.tol)


def as_qjet(F) -> QJet:
    return F.to_qjet() if isinstance(F, RJet) else F


def jet_distance(F, G) -> float:
    """Largest coefficient difference relative to ``max(1, largest coefficient norm)``."""
    if isinstance(F, RJet) and isinstance(G, RJet):
        n = max(len(F), len(G))
        a, b = _pad(F.coeffs, n), _pad(G.coeffs, n)
        return float(np.abs(a - b).max()) / max(F.scale(), G.scale())
    F, G = as_qjet(F), as_qjet(G)
    n = max(len(F), len(G))
    a, b = _pad(F.coeffs, n), _pad(G.coeffs, n)
    return float(np.linalg.norm(a - b, axis=1).max()) / max(F.scale(), G.scale())


def star_mul(F: QJet, G: QJet) -> QJet:
    """The *-product ``F*G``: coefficient convolution truncated at the larger order."""
    F, G = as_qjet(F), as_qjet(G)
    n = max(len(F), len(G))
    return F._like(star_conv(F.coeffs, G.coeffs)[:n], G)


_SPLITTER = 134217729.0  # 2**27 + 1


def _two_prod(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Dekker's error-free product: ``a*b == p + e`` exactly."""
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def scale_exact(lam: RJet, V: QJet) -> QJet:
    """``lam * V`` with every coefficient correctly rounded.

    Used when ``lam`` has large coefficients whose contributions cancel in the
    product; plain convolution would leave rounding noise of size
    ``eps * sum |lam_j| |V_{k-j}|`` in directions not parallel to ``V``.
    """
    V = as_qjet(V)
    n = max(len(lam), len(V))
    a = _pad(lam.coeffs, n)
    B = _pad(V.coeffs, n)
    out = np.empty((n, 4))
    for k in range(n):
        p, e = _two_prod(a[: k + 1, None], B[k::-1])
        for c in range(4):
            out[k, c] = math.fsum(np.concatenate((p[:, c], e[:, c])))
    return V._like(out, lam)


def conj_jet(F: QJet) -> QJet:
    F = as_qjet(F)
    a = F.coeffs.copy()
    a[:, 1:] *= -1.0
    return F._like(a)


def symmetrize(F: QJet) -> RJet:
    """``F^s = F * F^c``, returned as a real jet."""
    F = as_qjet(F)
    S = star_mul(F, conj_jet(F))
    residual = float(np.abs(S.coeffs[:, 1:]).max(initial=0.0))
    if residual > max(F.tol, 1e-12) * S.scale():
        raise ConsistencyError(f"symmetrized jet has imaginary residual {residual:.3e}")
    return S.real_part()


def split_jet(F: QJet) -> VectorSplit:
    F = as_qjet(F)
    parts = [RJet(F.coeffs[:, m], trust_radius=F.trust_radius, tol=F.tol) for m in range(4)]
    return VectorSplit(*parts)


def eval_jet(F, q: Quaternion) -> Quaternion:
    """Evaluate ``sum q^n a_n`` at ``q``.

    With ``q = alpha + I*beta`` the powers are ``q^n = u_n + I v_n`` where
    ``(alpha + i beta)^n = u_n + i v_n``, so the value is ``c + I*d`` with
    ``c = sum u_n a_n`` and ``d = sum v_n a_n``.
    """
    F = as_qjet(F)
    if abs(q) > F.trust_radius * (1.0 + 1e-12):
        warnings.warn(
            f"evaluating at |q| = {abs(q):.6g} outside trust radius {F.trust_radius:.6g}",
            TrustRadiusWarning,
            stacklevel=2,
        )
    sp = slice_decompose(q)
    z = sp.as_complex()
    powers = np.ones(len(F), dtype=complex)
    for n in range(1, len(F)):
        powers[n] = powers[n - 1] * z
    c = Quaternion.from_array(powers.real @ F.coeffs)
    if sp.beta == 0.0:
        return c
    d = Quaternion.from_array(powers.imag @ F.coeffs)
    return c + sp.axis * d


def star_inverse(F: QJet) -> QJet:
    """``F^{-*} = (F^s)^{-1} F^c``."""
    F = as_qjet(F)
    S = symmetrize(F)
    if abs(S.coeffs[0]) <= max(F.tol, 1e-300):
        raise NotInvertibleError(
            f"F^s has vanishing constant term {float(S.coeffs[0])!r}; F is not *-invertible"
        )
    return S.recip() * conj_jet(F)


_CALCULUS = {
    "exp": RJet.exp,
    "log": RJet.log,
    "sqrt": RJet.sqrt,
    "recip": RJet.recip,
    "integrate": RJet.integrate,
    "derive": RJet.derive,
}


def rjet_calculus(op: str, F: RJet) -> RJet:
    try:
        fn = _CALCULUS[op]
    except KeyError:
        raise ValueError(f"unknown real-jet operation {op!r}") from None
    return fn(F)


def _horner(coeffs: np.ndarray, d: RJet) -> RJet:
    out = RJet.constant(coeffs[-1], d.order)
    for c in coeffs[-2::-1]:
        out = out * d + float(c)
    return out


def _compose_taylor(which: str, S: RJet) -> RJet:
    c = float(S.coeffs[0])
    m, n = entire.munu_taylor_coeffs(c, S.order)
    d = S - c
    out = _horner(m if which == "mu" else n, d)
    return S._like(out.coeffs)


def _compose_phi(S: RJet) -> RJet:
    c = float(S.coeffs[0])
    if c <= -1.0 + entire.CUT_TOL:
        raise BranchCutError(f"phi composition needs a constant term > -1, got {c!r}")
    w0 = entire.phi_complex(c).real
    m, n = entire.munu_taylor_coeffs(w0, S.order)
    w = RJet.constant(w0, S.order)
    if S.order == 0:
        return S._like(w.coeffs)
    # Newton on mu(w) = S (mu' = -nu/2) gets the low orders cheaply
    for _ in range(max(1, S.order).bit_length() + 1):
        d = w - w0
        step = (2.0 * (_horner(m, d) - S)) * _horner(n, d).recip()
        a = step.coeffs.copy()
        a[0] = 0.0
        w = RJet(w.coeffs + a)
    # mu(w) - S cancels badly once w has O(1) coefficients; finish with sweeps of
    # nu(w) w' = -2 S', each fixing at least one more order without cancellation
    dS = S.derive() * -2.0
    for _ in range(S.order + 2):
        rhs = dS * _horner(n, w - w0).truncate(S.order - 1).recip()
        new = rhs.truncate(S.order).integrate() + w0
        change = float(np.abs(new.coeffs - w.coeffs).max())
        w = new
        if change <= 1e-17 * w.scale():
            break
    return S._like(w.coeffs)


def compose_entire(which: str, S: RJet) -> RJet:
    """Formal composition of mu, nu or phi with a real jet."""
    if isinstance(S, QJet):
        S = S.to_rjet()
    if which in ("mu", "nu"):
        return _compose_taylor(which, S)
    if which == "phi":
        return _compose_phi(S)
    raise ValueError(f"unknown entire function {which!r}")


def sample_points(radius: float, n: int = 64, seed: int = 0) -> list[Quaternion]:
    """Deterministic sample of quaternions in the closed ball of the given radius."""
    from .quat import random_quaternions

    return random_quaternions(np.random.default_rng(seed), n, radius)


__all__ = [
    "DEFAULT_ORDER",
    "DEFAULT_TOL",
    "QJet",
    "RJet",
    "TrustRadiusWarning",
    "VectorSplit",
    "compose_entire",
    "conj_jet",
    "eval_jet",
    "jet_distance",
    "rjet_calculus",
    "scale_exact",
    "split_jet",
    "star_inverse",
    "star_mul",
    "symmetrize",
]

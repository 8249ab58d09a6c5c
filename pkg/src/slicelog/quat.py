"""Quaternion arithmetic and the slice decomposition q = alpha + I*beta.

Quaternions are immutable values with components ``(w, x, y, z)`` standing
for ``w + x*i + y*j + z*k``.  Every non-real quaternion lies on exactly one
complex slice ``C_I = R + R*I`` with ``I`` a unit imaginary quaternion, which
is how slice preserving functions are evaluated (see :func:`slice_apply`).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .errors import DomainError

# "is real" test: |q_v| <= REAL_TOL * max(1, |q|)
REAL_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, a) -> Quaternion:
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @classmethod
    def from_complex(cls, z: complex, axis: Quaternion) -> Quaternion:
        """Map ``a + ib`` onto the slice through ``axis`` as ``a + axis*b``."""
        z = complex(z)
        return cls(z.real + 0.0, axis.x * z.imag, axis.y * z.imag, axis.z * z.imag)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=float)

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    @property
    def real(self) -> float:
        return self.w

    @property
    def vector(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def conj(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> Quaternion:
        n = self.norm2()
        if n == 0.0:
            raise ZeroDivisionError("quaternion inverse of 0")
        return Quaternion(self.w / n, -self.x / n, -self.y / n, -self.z / n)

    def is_real(self, tol: float = REAL_TOL) -> bool:
        return vnorm(self) <= tol * max(1.0, abs(self))

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __add__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return qmul(self, other)

    def __rmul__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        # right division p * q^-1
        return qmul(self, other.inverse())

    def __str__(self) -> str:
        return format_quaternion(self)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True, slots=True)
class SlicePoint:
    """``q = alpha + axis*beta`` with ``beta >= 0`` and ``axis`` in the unit sphere S."""

    alpha: float
    beta: float
    axis: Quaternion = I

    def recompose(self) -> Quaternion:
        return self.alpha + self.beta * self.axis

    def as_complex(self) -> complex:
        return complex(self.alpha, self.beta)


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p*q``."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def vnorm(q: Quaternion) -> float:
    return math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)


def qconj_split(q: Quaternion) -> tuple[float, Quaternion]:
    """Split ``q`` into its real part and its (purely imaginary) vector part."""
    return q.w, q.vector


def slice_decompose(q: Quaternion) -> SlicePoint:
    """Return ``(alpha, beta, axis)`` with ``q = alpha + axis*beta`` and ``beta >= 0``.

    Real quaternions get ``beta = 0`` and the conventional axis ``i``.
    """
    beta = vnorm(q)
    if q.is_real():
        return SlicePoint(q.w, 0.0, I)
    return SlicePoint(q.w, beta, Quaternion(0.0, q.x / beta, q.y / beta, q.z / beta))


def jfun(q: Quaternion) -> Quaternion:
    """The slice preserving function ``q0 + qv -> qv/|qv|`` on H minus R."""
    if q.is_real():
        raise DomainError(f"jfun is undefined on the real axis (got {format_quaternion(q)})")
    return slice_decompose(q).axis


def slice_apply(fn, q: Quaternion) -> Quaternion:
    """Evaluate the slice preserving extension of a complex function ``fn``.

    ``fn`` must satisfy ``fn(conj z) = conj fn(z)``; the value at
    ``alpha + I*beta`` is ``fn(alpha + i*beta)`` carried onto the slice ``C_I``.
    """
    sp = slice_decompose(q)
    if sp.beta == 0.0:
        return Quaternion(complex(fn(complex(sp.alpha, 0.0))).real)
    return Quaternion.from_complex(fn(sp.as_complex()), sp.axis)


def random_quaternions(rng: np.random.Generator, n: int, radius: float = 1.0) -> list[Quaternion]:
    """Uniform samples from the closed 4-ball of the given radius."""
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=1)[:, None]
    r = radius * rng.random(n) ** 0.25
    return [Quaternion.from_array(row) for row in v * r[:, None]]


def random_axes(rng: np.random.Generator, n: int) -> list[Quaternion]:
    """Uniform samples from the sphere S of imaginary units."""
    v = rng.standard_normal((n, 3))
    v /= np.linalg.norm(v, axis=1)[:, None]
    return [Quaternion(0.0, *row) for row in v]


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"([+-])?({_NUM})?([ijk])?")


def parse_quaternion(text: str) -> Quaternion:
    """Parse literals such as ``1+2i-3j+4k``, ``1-0.5j``, ``i`` or ``-2k``."""
    if re.search(r"[\d.]\s+[\d.]", text):
        raise ValueError(f"whitespace inside a number in {text!r}")
    s = "".join(text.split())
    if not s:
        raise ValueError("empty quaternion literal")
    comps = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, unit = m.groups()
        if m.end() == pos or (num is None and unit is None):
            raise ValueError(f"cannot parse quaternion literal {text!r}")
        if pos > 0 and sign is None:
            raise ValueError(f"missing sign between terms in {text!r}")
        unit = unit or ""
        value = float(num) if num is not None else 1.0
        comps[unit] += -value if sign == "-" else value
        pos = m.end()
    return Quaternion(comps[""], comps["i"], comps["j"], comps["k"])


def format_quaternion(q: Quaternion) -> str:
    """Serialize with all four components, e.g. ``1.0+0.0i-0.5j+0.0k``."""
    return f"{q.w!r}{q.x:+}i{q.y:+}j{q.z:+}k"


def format_short(q: Quaternion, digits: int = 12) -> str:
    """Compact human form dropping negligible components (``i``, ``-1``, ``1+2j``)."""
    parts = []
    for value, unit in ((q.w, ""), (q.x, "i"), (q.y, "j"), (q.z, "k")):
        v = round(value, digits)
        if v == 0.0:
            continue
        mag = abs(v)
        body = f"{mag:.{digits}g}"
        if unit and body == "1":
            body = ""
        sign = "-" if v < 0 else ("+" if parts else "")
        parts.append(f"{sign}{body}{unit}")
    return "".join(parts) or "0"


def qexp(q: Quaternion) -> Quaternion:
    """Pointwise quaternion exponential ``e^{q0} (cos|qv| + qv/|qv| sin|qv|)``."""
    r = vnorm(q)
    e = math.exp(q.w)
    if r == 0.0:
        return Quaternion(e)
    s = e * math.sin(r) / r
    return Quaternion(e * math.cos(r), q.x * s, q.y * s, q.z * s)

"""Real Clifford algebra Cl(3) with Euclidean signature.

Multivectors carry 8 real coefficients over the blade basis

    1, e1, e2, e3, J1, J2, J3, e1e2e3

where the bivector generators are ``J1 = e3e2``, ``J2 = e1e3`` and
``J3 = e2e1``. With this orientation ``J1 J2 = J3`` (and cyclic),
``Jk^2 = -1``, and ``J(n) = -I n`` with ``I = e1e2e3`` the pseudoscalar.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError

BLADE_NAMES = ("1", "e1", "e2", "e3", "J1", "J2", "J3", "e123")
GRADES = np.array([0, 1, 1, 1, 2, 2, 2, 3])

# Each basis blade as (bitmask over e1,e2,e3; sign relative to the ascending product).
# J1 = e3e2 = -e2e3, J2 = e1e3, J3 = e2e1 = -e1e2.
_BLADES = ((0b000, 1), (0b001, 1), (0b010, 1), (0b100, 1),
           (0b110, -1), (0b101, 1), (0b011, -1), (0b111, 1))

UNIT_TOL = 1e-12
RENORMALIZE_TOL = 1e-6


def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated ascending blades ``a`` and ``b``."""
    swaps = 0
    a >>= 1
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _structure_table() -> tuple[np.ndarray, np.ndarray]:
    index = {mask: (k, sign) for k, (mask, sign) in enumerate(_BLADES)}
    target = np.zeros((8, 8), dtype=np.int64)
    sign = np.zeros((8, 8), dtype=np.int64)
    for i, (mi, si) in enumerate(_BLADES):
        for j, (mj, sj) in enumerate(_BLADES):
            # Euclidean metric: repeated generators square to +1.
            k, sk = index[mi ^ mj]
            target[i, j] = k
            sign[i, j] = si * sj * sk * _reorder_sign(mi, mj)
    target.setflags(write=False)
    sign.setflags(write=False)
    return target, sign


PRODUCT_TARGET, PRODUCT_SIGN = _structure_table()


class Multivector:
    """Immutable element of Cl(3)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients=None):
        if coefficients is None:
            coeffs = np.zeros(8)
        else:
            coeffs = np.array(coefficients, dtype=float)
        if coeffs.shape != (8,):
            raise DomainError(f"a multivector needs 8 coefficients, got shape {coeffs.shape}")
        coeffs.setflags(write=False)
        self._coeffs = coeffs

    @classmethod
    def blade(cls, name: str, scale: float = 1.0) -> "Multivector":
        coeffs = np.zeros(8)
        coeffs[BLADE_NAMES.index(name)] = scale
        return cls(coeffs)

    @classmethod
    def scalar(cls, value: float) -> "Multivector":
        return cls.blade("1", value)

    @property
    def coefficients(self) -> np.ndarray:
        return self._coeffs

    def __getitem__(self, name: str) -> float:
        return float(self._coeffs[BLADE_NAMES.index(name)])

    def __add__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self._coeffs + other._coeffs)
        if np.isscalar(other):
            return self + Multivector.scalar(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Multivector(-self._coeffs)

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self._coeffs - other._coeffs)
        if np.isscalar(other):
            return self - Multivector.scalar(other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if np.isscalar(other):
            return Multivector(self._coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Multivector(self._coeffs * other)
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return Multivector(self._coeffs / other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return bool(np.array_equal(self._coeffs, other._coeffs))

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def isclose(self, other: "Multivector", atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._coeffs - other._coeffs)) <= atol)

    def __repr__(self):
        terms = [f"{c:+g}*{n}" for c, n in zip(self._coeffs, BLADE_NAMES) if c != 0]
        return f"Multivector({' '.join(terms) or '0'})"


E1 = Multivector.blade("e1")
E2 = Multivector.blade("e2")
E3 = Multivector.blade("e3")
J1 = Multivector.blade("J1")
J2 = Multivector.blade("J2")
J3 = Multivector.blade("J3")
PSEUDOSCALAR = Multivector.blade("e123")
ONE = Multivector.scalar(1.0)


def geometric_product(lhs: Multivector, rhs: Multivector) -> Multivector:
    terms = np.outer(lhs.coefficients, rhs.coefficients) * PRODUCT_SIGN
    return Multivector(np.bincount(PRODUCT_TARGET.ravel(), weights=terms.ravel(), minlength=8))


def grade_project(m: Multivector, k: int) -> Multivector:
    """Part of ``m`` of grade ``k`` (0 scalar, 1 vector, 2 bivector, 3 pseudoscalar)."""
    if k not in (0, 1, 2, 3):
        raise DomainError(f"grade must be 0, 1, 2 or 3, got {k!r}")
    return Multivector(np.where(GRADES == k, m.coefficients, 0.0))


@dataclass(frozen=True)
class Direction:
    """Unit vector in R^3.

    Inputs within ``RENORMALIZE_TOL`` of unit length are rescaled to unit length;
    anything further off is rejected. Use :meth:`from_vector` to normalize an
    arbitrary nonzero vector.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        v = np.array([self.x, self.y, self.z], dtype=float)
        if not np.all(np.isfinite(v)):
            raise DomainError("direction components must be finite")
        norm = math.sqrt(float(v @ v))
        if abs(norm - 1.0) > RENORMALIZE_TOL:
            raise DomainError(f"direction must be a unit vector, got norm {norm:.12g}")
        if abs(norm - 1.0) > UNIT_TOL:
            v = v / norm
        object.__setattr__(self, "x", float(v[0]))
        object.__setattr__(self, "y", float(v[1]))
        object.__setattr__(self, "z", float(v[2]))

    @classmethod
    def from_vector(cls, v) -> "Direction":
        v = np.asarray(v, dtype=float)
        if v.shape != (3,):
            raise DomainError("direction needs exactly 3 components")
        norm = float(np.linalg.norm(v))
        if not np.isfinite(norm) or norm == 0.0:
            raise DomainError("direction must be nonzero")
        return cls(*(v / norm))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "Direction":
        """Polar angle ``theta`` from +z, azimuth ``phi`` from +x."""
        st = math.sin(theta)
        return cls(st * math.cos(phi), st * math.sin(phi), math.cos(theta))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "Direction") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self):
        return Direction(-self.x, -self.y, -self.z)


@dataclass(frozen=True)
class Bivector:
    """Bivector ``n1 J1 + n2 J2 + n3 J3``."""

    n1: float
    n2: float
    n3: float

    def to_multivector(self) -> Multivector:
        return Multivector([0, 0, 0, 0, self.n1, self.n2, self.n3, 0])


def bivector_from_direction(n: Direction) -> Bivector:
    if not isinstance(n, Direction):
        raise DomainError("bivector_from_direction expects a Direction")
    return Bivector(n.x, n.y, n.z)

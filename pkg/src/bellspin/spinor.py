"""Spinor representation of Cl(3) on C^2 and the spin operators Sigma(n).

Matrices are plain complex numpy arrays. Tolerances use the max-abs entry norm.
"""
from __future__ import annotations

import cmath

import numpy as np

from .clifford import Direction, Multivector, bivector_from_direction
from .errors import DomainError

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
for _m in (I2, *PAULI):
    _m.setflags(write=False)

# Images of the blades 1, e1, e2, e3, J1, J2, J3, e1e2e3.
# rho(e_k) = sigma_k forces rho(J_k) = -i sigma_k and rho(e1e2e3) = i I.
_BLADE_IMAGES = np.stack([
    I2, SIGMA_X, SIGMA_Y, SIGMA_Z,
    SIGMA_Z @ SIGMA_Y, SIGMA_X @ SIGMA_Z, SIGMA_Y @ SIGMA_X,
    SIGMA_X @ SIGMA_Y @ SIGMA_Z,
])
_BLADE_IMAGES.setflags(write=False)


def max_norm(m) -> float:
    return float(np.max(np.abs(m)))


def is_hermitian(m, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and max_norm(m - m.conj().T) <= tol


def is_identity(m, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and max_norm(m - np.eye(m.shape[0])) <= tol


def is_unitary(m, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and is_identity(m.conj().T @ m, tol)


def rho(m: Multivector) -> np.ndarray:
    """2x2 complex matrix image of a multivector."""
    return np.tensordot(m.coefficients, _BLADE_IMAGES, axes=1)


def spin_operator(n: Direction) -> np.ndarray:
    """Hermitian spin observable along ``n``, equal to n.sigma.

    Obtained from the bivector image as ``i rho(J(n))``; with rho(J_k) = -i sigma_k
    the factor is +i, not -i.
    """
    return 1j * rho(bivector_from_direction(n).to_multivector())


def anticommutator(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"anticommutator needs square matrices of equal size, got {a.shape} and {b.shape}")
    return a @ b + b @ a


def eigenvalues_2x2(m) -> tuple[complex, complex]:
    """Roots of the characteristic polynomial, sorted by (real, imag)."""
    m = np.asarray(m)
    if m.shape != (2, 2):
        raise DomainError(f"eigenvalues_2x2 needs a 2x2 matrix, got shape {m.shape}")
    a, b, c, d = (complex(v) for v in m.ravel())
    half_trace = (a + d) / 2
    # sqrt(((a-d)/2)^2 + bc) avoids cancellation in tr^2/4 - det.
    disc = cmath.sqrt(((a - d) / 2) ** 2 + b * c)
    roots = [half_trace - disc, half_trace + disc]
    roots.sort(key=lambda z: (z.real, z.imag))
    return roots[0], roots[1]

import math

import numpy as np
import pytest

from bellspin.clifford import J1, J2, J3, ONE, PSEUDOSCALAR, Direction, Multivector
from bellspin.errors import DomainError
from bellspin.spinor import (I2, PAULI, SIGMA_X, SIGMA_Y, SIGMA_Z, anticommutator, eigenvalues_2x2,
                             is_hermitian, is_identity, is_unitary, max_norm, rho, spin_operator)

from conftest import random_directions


def test_pauli_triple():
    for s in PAULI:
        assert is_hermitian(s) and is_unitary(s) and is_identity(s @ s)
        assert abs(np.trace(s)) == 0
    for k in range(3):
        a, b, c = PAULI[k], PAULI[(k + 1) % 3], PAULI[(k + 2) % 3]
        assert max_norm(a @ b - 1j * c) == 0


def test_rho_examples():
    assert is_identity(rho(ONE))
    assert max_norm(rho(J3) - (-1j * SIGMA_Z)) == 0
    assert max_norm(rho(J1) - (-1j * SIGMA_X)) == 0
    assert max_norm(rho(J2) - (-1j * SIGMA_Y)) == 0
    assert max_norm(rho(J1 * J2) - rho(J1) @ rho(J2)) == 0
    assert max_norm(rho(J1 * J2) - (-1j * SIGMA_Z)) == 0
    assert max_norm(rho(PSEUDOSCALAR) - 1j * I2) == 0


def test_rho_bivectors_anti_hermitian():
    for J in (J1, J2, J3):
        m = rho(J)
        assert max_norm(m + m.conj().T) == 0
        assert is_identity(-(m @ m))


def test_homomorphism_1000_pairs(rng):
    worst = 0.0
    for _ in range(1000):
        a = Multivector(rng.uniform(-1, 1, 8))
        b = Multivector(rng.uniform(-1, 1, 8))
        worst = max(worst, max_norm(rho(a * b) - rho(a) @ rho(b)))
    assert worst <= 1e-12


def test_spin_operator_basis():
    assert max_norm(spin_operator(Direction(0, 0, 1)) - SIGMA_Z) == 0
    assert max_norm(spin_operator(Direction(1, 0, 0)) - SIGMA_X) == 0
    assert max_norm(spin_operator(Direction(0, 1, 0)) - SIGMA_Y) == 0


def test_spin_operator_equals_pauli_expansion(rng):
    for n in random_directions(rng, 200):
        direct = n.x * SIGMA_X + n.y * SIGMA_Y + n.z * SIGMA_Z
        assert max_norm(spin_operator(n) - direct) <= 1e-15


def test_spin_operator_properties(rng):
    for n in random_directions(rng, 1000):
        s = spin_operator(n)
        assert is_hermitian(s, 1e-12)
        assert abs(np.trace(s)) <= 1e-12
        assert is_identity(s @ s, 1e-12)
        lo, hi = eigenvalues_2x2(s)
        assert abs(lo + 1) <= 1e-10 and abs(hi - 1) <= 1e-10


def test_spin_spectrum_diagonal_direction():
    r = 1 / math.sqrt(2)
    s = spin_operator(Direction(r, 0, r))
    # Oracle: characteristic polynomial l^2 - tr l + det.
    oracle = np.sort_complex(np.roots([1, -np.trace(s), np.linalg.det(s)]))
    got = eigenvalues_2x2(s)
    assert np.allclose(got, oracle, atol=1e-12)
    assert np.allclose(got, (-1, 1), atol=1e-12)


def test_anticommutator_examples():
    assert max_norm(anticommutator(SIGMA_X, SIGMA_Y)) == 0
    assert max_norm(anticommutator(SIGMA_Z, SIGMA_Z) - 2 * I2) == 0
    n = Direction(1, 0, 0)
    m = Direction(0.3, math.sqrt(0.91), 0)
    assert max_norm(anticommutator(spin_operator(n), spin_operator(m)) - 0.6 * I2) <= 1e-15
    with pytest.raises(DomainError):
        anticommutator(SIGMA_X, np.eye(4))


def test_clifford_relation_transported(rng):
    dirs = random_directions(rng, 2000)
    worst = 0.0
    for n, m in zip(dirs[::2], dirs[1::2]):
        lhs = anticommutator(spin_operator(n), spin_operator(m))
        worst = max(worst, max_norm(lhs - 2 * n.dot(m) * I2))
    assert worst <= 1e-12


def test_eigenvalues_2x2_examples(rng):
    assert eigenvalues_2x2(I2) == (1, 1)
    assert eigenvalues_2x2(SIGMA_Z) == (-1, 1)
    for _ in range(100):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        ours = np.array(eigenvalues_2x2(m))
        oracle = np.roots([1, -np.trace(m), np.linalg.det(m)])
        assert np.allclose(np.sort_complex(ours), np.sort_complex(oracle), atol=1e-10)
    with pytest.raises(DomainError):
        eigenvalues_2x2(np.eye(4))

import math

import numpy as np
import pytest

from bellspin.bipartite import (TSIRELSON, ChshSettings, born_probabilities, check_state, chsh_expectation,
                                chsh_operator, chsh_operator_norm, correlation, kron, sigma_a, sigma_b,
                                singlet, tsirelson_multistart, tsirelson_search)
from bellspin.clifford import Direction
from bellspin.errors import DomainError
from bellspin.spinor import I2, SIGMA_X, SIGMA_Z, is_hermitian, is_identity, max_norm

from conftest import random_directions

Z = Direction(0, 0, 1)
X = Direction(1, 0, 0)


def random_state(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return v / np.linalg.norm(v)


def test_kron_examples():
    assert is_identity(kron(I2, I2))
    a, b = kron(SIGMA_Z, I2), kron(I2, SIGMA_X)
    assert max_norm(a @ b - b @ a) == 0
    psi = singlet()
    # Oracle: sigma_x flips each qubit, so XX maps |01> - |10> to |10> - |01>.
    flipped = np.array([psi[3], psi[2], psi[1], psi[0]])
    assert max_norm(kron(SIGMA_X, SIGMA_X) @ psi - flipped) == 0
    assert max_norm(flipped + psi) == 0


def test_local_operators(rng):
    assert max_norm(sigma_a(Z) - kron(SIGMA_Z, I2)) == 0
    dirs = random_directions(rng, 400)
    for n, m in zip(dirs[::2], dirs[1::2]):
        A, B = sigma_a(n), sigma_b(m)
        assert max_norm(A @ B - B @ A) <= 1e-14
        assert is_hermitian(A) and is_identity(A @ A, 1e-12) and is_identity(B @ B, 1e-12)


def test_singlet_annihilation(rng):
    psi = singlet()
    assert abs(np.linalg.norm(psi) - 1) <= 1e-15
    for n in random_directions(rng, 1000):
        assert np.linalg.norm((sigma_a(n) + sigma_b(n)) @ psi) <= 1e-12


def test_singlet_is_unique_annihilated_vector():
    # Null space of the stacked total-spin operators along x, y, z is one-dimensional.
    stacked = np.vstack([sigma_a(d) + sigma_b(d) for d in (X, Direction(0, 1, 0), Z)])
    s = np.linalg.svd(stacked, compute_uv=False)
    assert np.sum(s < 1e-12) == 1


def test_correlation_examples():
    psi = singlet()
    assert correlation(psi, Z, Z) == pytest.approx(-1, abs=1e-15)
    assert correlation(psi, Z, X) == pytest.approx(0, abs=1e-15)
    b = Direction(math.sqrt(0.75), 0, 0.5)
    full = np.vdot(psi, sigma_a(Z) @ sigma_b(b) @ psi)
    assert abs(full.imag) <= 1e-15
    assert correlation(psi, Z, b) == pytest.approx(-0.5, abs=1e-12)
    assert correlation(psi, Z, b) == pytest.approx(full.real, abs=1e-15)


def test_correlation_law(rng):
    dirs = random_directions(rng, 2000)
    for a, b in zip(dirs[::2], dirs[1::2]):
        assert abs(correlation(singlet(), a, b) + a.dot(b)) <= 1e-12


def test_correlation_rejects_unnormalized():
    with pytest.raises(DomainError):
        correlation(2 * singlet(), Z, Z)
    with pytest.raises(DomainError):
        check_state(np.ones(3))


def test_chsh_optimal():
    s = ChshSettings.optimal()
    # Oracle: each of the four -a.b terms contributes 1/sqrt(2) with its sign.
    terms = [-s.a0.dot(s.b0), -s.a0.dot(s.b1), -s.a1.dot(s.b0), s.a1.dot(s.b1)]
    assert terms == pytest.approx([1 / math.sqrt(2)] * 4, abs=1e-15)
    assert abs(chsh_expectation(singlet(), s) - TSIRELSON) <= 1e-12
    assert is_hermitian(chsh_operator(s))


def test_chsh_all_equal(rng):
    n = random_directions(rng, 1)[0]
    s = ChshSettings.uniform(n)
    assert max_norm(chsh_operator(s) - 2 * sigma_a(n) @ sigma_b(n)) <= 1e-15
    assert chsh_expectation(singlet(), s) == pytest.approx(-2, abs=1e-12)


def test_chsh_expectation_real_for_any_state(rng):
    for _ in range(50):
        s = ChshSettings.random(rng)
        psi = random_state(rng)
        val = np.vdot(psi, chsh_operator(s) @ psi)
        assert abs(val.imag) <= 1e-14
        assert chsh_expectation(psi, s) == pytest.approx(val.real, abs=1e-14)


def test_born_probabilities_aligned():
    p = born_probabilities(singlet(), Z, Z)
    assert p == pytest.approx(np.array([[0, 0.5], [0.5, 0]]), abs=1e-15)


def test_born_probabilities_against_closed_form(rng):
    dirs = random_directions(rng, 200)
    for a, b in zip(dirs[::2], dirs[1::2]):
        p = born_probabilities(singlet(), a, b)
        # Oracle: singlet has uniform marginals and E = -a.b, so P(A,B) = (1 - AB a.b)/4.
        oracle = np.array([[(1 - A * B * a.dot(b)) / 4 for B in (1, -1)] for A in (1, -1)])
        assert p == pytest.approx(oracle, abs=1e-12)
        assert p.sum(axis=0) == pytest.approx([0.5, 0.5], abs=1e-12)
        assert p.sum(axis=1) == pytest.approx([0.5, 0.5], abs=1e-12)


def test_born_consistency_random_states(rng):
    signs = np.array([[1, -1], [-1, 1]])
    for _ in range(300):
        psi = random_state(rng)
        a, b = random_directions(rng, 2)
        p = born_probabilities(psi, a, b)
        assert p.min() >= 0 and abs(p.sum() - 1) <= 1e-12
        assert abs((signs * p).sum() - correlation(psi, a, b)) <= 1e-12


def test_tsirelson_ceiling(rng):
    for _ in range(2000):
        assert abs(chsh_expectation(singlet(), ChshSettings.random(rng))) <= TSIRELSON + 1e-9


def test_tsirelson_search_from_optimum():
    res = tsirelson_search(ChshSettings.optimal())
    assert res.status == "converged"
    assert res.sweeps == 1
    assert abs(res.value - TSIRELSON) <= 1e-12
    assert res.max_seen <= TSIRELSON + 1e-9


def test_tsirelson_search_from_all_equal():
    res = tsirelson_search(ChshSettings.uniform(Direction.from_vector([1, 2, 3])))
    assert abs(res.value - TSIRELSON) <= 1e-6
    assert res.max_seen <= TSIRELSON + 1e-9
    assert all(b >= a for a, b in zip(res.history, res.history[1:]))


def test_multistart_independent_of_workers():
    serial, runs = tsirelson_multistart(4, seed=3)
    parallel, runs_p = tsirelson_multistart(4, seed=3, workers=4)
    assert [r.value for r in runs] == [r.value for r in runs_p]
    assert serial.start_index == parallel.start_index
    assert serial.settings == parallel.settings


def test_operator_norm_examples(rng):
    assert abs(chsh_operator_norm(ChshSettings.optimal()) - TSIRELSON) <= 1e-9
    assert abs(chsh_operator_norm(ChshSettings.uniform(Z)) - 2) <= 1e-9
    for _ in range(50):
        s = ChshSettings.random(rng)
        norm = chsh_operator_norm(s)
        oracle = np.max(np.abs(np.linalg.eigvalsh(chsh_operator(s))))
        assert abs(norm - oracle) <= 1e-9
        for _ in range(20):
            assert norm >= abs(chsh_expectation(random_state(rng), s)) - 1e-12


def test_operator_norm_attained_by_state(rng):
    # Max of |<psi|S|psi>| over states is reached on an eigenvector; random states only bound it.
    for _ in range(20):
        s = ChshSettings.random(rng)
        op = chsh_operator(s)
        norm = chsh_operator_norm(s)
        vals, vecs = np.linalg.eigh(op)
        best = max(abs(chsh_expectation(vecs[:, k] / np.linalg.norm(vecs[:, k]), s)) for k in range(4))
        assert abs(norm - best) <= 1e-6
        sampled = max(abs(chsh_expectation(random_state(rng), s)) for _ in range(100))
        assert sampled <= norm + 1e-12


def test_settings_angles_round_trip(rng):
    for _ in range(20):
        s = ChshSettings.random(rng)
        back = ChshSettings.from_angles(s.to_angles())
        for d, e in zip(s.directions, back.directions):
            assert np.allclose(d.as_array(), e.as_array(), atol=1e-12)

"""Unit tests for the small dense linear-algebra helpers."""

import numpy as np
import pytest

from bottlab import linalg


def test_as_square_rejects_nonsquare():
    with pytest.raises(ValueError):
        linalg.as_square(np.ones((2, 3)))


def test_frobenius_matches_numpy():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.isclose(linalg.frobenius(a), np.linalg.norm(a))


def test_cross_makes_special_unitary_triples():
    rng = np.random.default_rng(7)
    for _ in range(25):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        w = rng.normal(size=3) + 1j * rng.normal(size=3)
        z /= np.linalg.norm(z)
        w -= z * np.vdot(z, w)
        w /= np.linalg.norm(w)
        u = np.column_stack([z, w, linalg.cross(z, w)])
        check = linalg.is_special_unitary(u, 1e-12)
        assert check.ok and check.residual < 1e-12


def test_cross_is_conjugate_bilinear():
    z = np.array([1.0, 2j, -1.0 + 1j])
    w = np.array([0.5, 1.0, 1j])
    np.testing.assert_allclose(
        linalg.cross(2j * z, w), np.conj(2j) * linalg.cross(z, w)
    )


def test_cross_on_canonical_basis():
    e = np.eye(3)
    np.testing.assert_allclose(linalg.cross(e[0], e[1]), e[2], atol=1e-15)
    z = np.array([1.0, 2j, -1.0 + 1j])
    np.testing.assert_allclose(linalg.cross(z, z), 0.0, atol=1e-15)


def test_cross_is_su3_equivariant():
    e = np.eye(3)
    for seed in range(10):
        a = linalg.random_special_unitary(3, seed)
        np.testing.assert_allclose(
            linalg.cross(a @ e[0], a @ e[1]), a @ e[2], atol=1e-12
        )


def test_is_unitary_vs_special():
    d = np.diag([np.exp(1j * 0.3), 1.0])
    assert linalg.is_unitary(d, 1e-12).ok
    assert not linalg.is_special_unitary(d, 1e-12).ok
    assert linalg.is_special_unitary(np.eye(3), 1e-15).ok


def test_membership_check_is_truthy():
    good = linalg.is_unitary(np.eye(2))
    bad = linalg.is_unitary(2.0 * np.eye(2))
    assert bool(good) and good.residual == 0.0
    assert not bool(bad) and bad.residual > 1.0


@pytest.mark.parametrize("m", [1, 2, 3])
def test_j_matrix_squares_to_minus_identity(m):
    for convention in ("interleaved", "split"):
        j = linalg.j_matrix(m, convention)
        np.testing.assert_allclose(j @ j, -np.eye(2 * m))
        np.testing.assert_allclose(j.T, -j)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_shuffle_conjugates_split_to_interleaved(m):
    p = linalg.shuffle_permutation(m)
    np.testing.assert_allclose(p @ p.T, np.eye(2 * m))
    np.testing.assert_allclose(
        p @ linalg.j_matrix(m, "split") @ p.T, linalg.j_matrix(m, "interleaved")
    )


def test_j_matrix_rejects_unknown_convention():
    with pytest.raises(ValueError):
        linalg.j_matrix(2, "rowmajor")


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_special_unitary_is_deterministic_and_special(seed):
    a = linalg.random_special_unitary(4, seed)
    b = linalg.random_special_unitary(4, seed)
    np.testing.assert_array_equal(a, b)
    assert linalg.is_special_unitary(a, 1e-12).ok


@pytest.mark.parametrize("m,convention", [(1, "interleaved"), (2, "interleaved"), (2, "split"), (3, "split")])
def test_random_symplectic_membership(m, convention):
    a = linalg.random_symplectic(m, 5, convention)
    assert linalg.is_symplectic(a, convention, 1e-11).ok
    assert not linalg.is_symplectic(np.diag([1j] + [1.0] * (2 * m - 1)), convention, 1e-10).ok


def test_interleaved_symplectic_columns_come_in_j_pairs():
    m = 2
    a = linalg.random_symplectic(m, 9, "interleaved")
    j = linalg.j_matrix(m, "interleaved")
    for k in range(m):
        np.testing.assert_allclose(a[:, 2 * k + 1], j @ np.conj(a[:, 2 * k]), atol=1e-12)


def test_is_symplectic_rejects_phase_diagonal():
    a = np.diag([1j, 1j, -1j, -1j])
    assert not linalg.is_symplectic(a, "interleaved", 1e-10)


def test_random_special_unitary_seeds_are_distinct():
    a = linalg.random_special_unitary(3, 0)
    b = linalg.random_special_unitary(3, 1)
    assert linalg.frobenius(a - b) > 1e-6


def test_det_is_multiplicative_on_unitary_pairs():
    for seed in range(10):
        a = linalg.random_special_unitary(4, seed)
        b = linalg.random_special_unitary(4, seed + 100)
        assert abs(np.linalg.det(a @ b) - np.linalg.det(a) * np.linalg.det(b)) < 1e-10


def test_is_symplectic_rejects_odd_size():
    with pytest.raises(ValueError):
        linalg.is_symplectic(np.eye(3))

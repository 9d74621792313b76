"""Dense complex linear algebra and matrix-group membership tests.

Matrices are plain numpy arrays of complex128. Group membership is always
decided against an explicit tolerance and the residual is returned together
with the verdict, so callers can report how close a value was to the group.
"""

from __future__ import annotations

from typing import Literal, NamedTuple

import numpy as np

Convention = Literal["interleaved", "split"]

_SQRT2 = np.sqrt(2.0)


class MembershipCheck(NamedTuple):
    """Verdict of a membership test plus the worst residual behind it."""

    ok: bool
    residual: float

    def __bool__(self) -> bool:  # allow `if is_special_unitary(a):`
        return self.ok


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of rank {m.ndim}")
    return m


def as_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def mat_mul(a, b) -> np.ndarray:
    """Matrix product with an explicit shape check."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"incompatible shapes {a.shape} x {b.shape}")
    return a @ b


def det(a) -> complex:
    """Determinant of a square complex matrix (pivoted elimination)."""
    return complex(np.linalg.det(as_square(a)))


def frobenius(a) -> float:
    """Frobenius norm, the distance measure used by every residual here."""
    return float(np.linalg.norm(np.asarray(a)))


def cross(z, w) -> np.ndarray:
    """Conjugate-bilinear cross product on C^3.

    (z x w)_1 = conj(z_2 w_3 - z_3 w_2) and cyclically; equivariant under
    SU(3): (Az) x (Aw) = A (z x w).
    """
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    if z.shape != (3,) or w.shape != (3,):
        raise ValueError("cross is defined for 3-vectors only")
    return np.conj(np.cross(z, w))


def is_unitary(a, tol: float = 1e-10) -> MembershipCheck:
    a = as_square(a)
    r = frobenius(a.conj().T @ a - np.eye(a.shape[0]))
    return MembershipCheck(r <= tol, r)


def is_special_unitary(a, tol: float = 1e-10) -> MembershipCheck:
    """a* a = I in Frobenius norm and det a = 1; residual is the max of both."""
    a = as_square(a)
    ru = frobenius(a.conj().T @ a - np.eye(a.shape[0]))
    rd = abs(np.linalg.det(a) - 1.0)
    r = max(ru, float(rd))
    return MembershipCheck(r <= tol, r)


def j_matrix(m: int, convention: Convention = "interleaved") -> np.ndarray:
    """The standard skew form J on C^{2m} in either coordinate convention.

    interleaved: block-diagonal copies of [[0,-1],[1,0]] (coordinates grouped
    as (z_1, w_1, z_2, w_2, ...)); split: [[0,-I_m],[I_m,0]]. Both square to -I.
    """
    if m < 1:
        raise ValueError("m must be positive")
    j = np.zeros((2 * m, 2 * m))
    if convention == "interleaved":
        k = np.arange(m)
        j[2 * k, 2 * k + 1] = -1.0
        j[2 * k + 1, 2 * k] = 1.0
    elif convention == "split":
        j[:m, m:] = -np.eye(m)
        j[m:, :m] = np.eye(m)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return j


def shuffle_permutation(m: int) -> np.ndarray:
    """Perfect shuffle P with P @ j_matrix(m,'split') @ P.T = j_matrix(m,'interleaved')."""
    p = np.zeros((2 * m, 2 * m))
    k = np.arange(m)
    p[2 * k, k] = 1.0
    p[2 * k + 1, m + k] = 1.0
    return p


def is_symplectic(a, convention: Convention = "interleaved", tol: float = 1e-10) -> MembershipCheck:
    """Membership in Sp(m) = {A in SU(2m) : A^T J A = J} for the chosen J."""
    a = as_square(a)
    n = a.shape[0]
    if n % 2 != 0:
        raise ValueError("symplectic matrices have even size")
    j = j_matrix(n // 2, convention)
    rj = frobenius(a.T @ j @ a - j)
    su = is_special_unitary(a, tol)
    r = max(su.residual, rj)
    return MembershipCheck(r <= tol, r)


def random_special_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-ish random SU(n): QR of a complex Gaussian, phases fixed, det rotated to 1.

    Deterministic per seed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / _SQRT2
    q, r = np.linalg.qr(g)
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    q = q * ph  # column phase correction
    q[:, 0] *= np.conj(np.linalg.det(q))  # |det| = 1 already, rotate to det = 1
    return q


def random_symplectic(m: int, seed: int, convention: Convention = "interleaved") -> np.ndarray:
    """Random element of Sp(m) in SU(2m), deterministic per seed.

    Columns are built in J-paired blocks: draw one Gaussian column, complex
    Gram-Schmidt against everything so far, then pair it with J conj(v). The
    pairing stays orthogonal because <J conj(v), u> = -omega(v, u) vanishes for
    u in the span already orthogonalized against (J times earlier pairs).
    """
    if m < 1:
        raise ValueError("m must be positive")
    rng = np.random.default_rng(seed)
    j = j_matrix(m, "interleaved")
    cols: list[np.ndarray] = []
    for _ in range(m):
        v = rng.standard_normal(2 * m) + 1j * rng.standard_normal(2 * m)
        for _pass in range(2):  # re-orthogonalize once for numerical safety
            for c in cols:
                v = v - c * (c.conj() @ v)
        v = v / np.linalg.norm(v)
        cols.append(v)
        cols.append(j @ v.conj())
    a = np.column_stack(cols)
    if convention == "split":
        p = shuffle_permutation(m)
        a = p.T @ a @ p
    return a

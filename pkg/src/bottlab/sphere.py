"""Unit spheres: points and coordinate views, seeded sampling, oriented
tangent frames, the suspension chart, and stereographic charts.

Coordinates are always real ambient vectors. A complex slot occupies two
consecutive coordinates (re, im); views only describe how a map reads them.

Sampling is chunked: point i of a stream is produced by a counter-based
generator keyed on (seed, i // CHUNK), so sample i is the same no matter how
many points are requested or how work is split across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

CHUNK = 8192  # stream block size; fixed, part of the determinism contract

_UNIT_TOL = 1e-9
_POLE_TOL = 1e-6


@dataclass(frozen=True)
class View:
    """How a map reads ambient coordinates.

    complex(n): d = 2n, slots (Re z1, Im z1, ..., Re zn, Im zn).
    real_complex(n): d = 2n+1, slots (y, Re z1, Im z1, ..., Re zn, Im zn).
    plain: d free, no complex structure.
    """

    kind: Literal["plain", "complex", "real_complex"]
    n: int = 0

    def ambient_dim(self, d: int | None = None) -> int:
        if self.kind == "complex":
            return 2 * self.n
        if self.kind == "real_complex":
            return 2 * self.n + 1
        if d is None:
            raise ValueError("plain view has no intrinsic dimension")
        return d

    def conjugate_coords(self, coords: np.ndarray) -> np.ndarray:
        """Coordinates of the componentwise conjugate point."""
        out = np.array(coords, dtype=float)
        if self.kind == "complex":
            out[..., 1::2] = -out[..., 1::2]
        elif self.kind == "real_complex":
            out[..., 2::2] = -out[..., 2::2]
        else:
            raise ValueError("plain view has no conjugation")
        return out

    def describe(self) -> str:
        if self.kind == "complex":
            return ", ".join(f"Re z{i+1}, Im z{i+1}" for i in range(self.n))
        if self.kind == "real_complex":
            return "y, " + ", ".join(f"Re z{i+1}, Im z{i+1}" for i in range(self.n))
        return "plain real coordinates"


PLAIN = View("plain")


def check_unit(coords: np.ndarray, tol: float = _UNIT_TOL) -> None:
    r = float(np.linalg.norm(coords))
    if abs(r - 1.0) > tol:
        raise ValueError(f"not a unit vector: |x| = {r!r}")


@dataclass(frozen=True)
class SpherePoint:
    """A unit vector plus the view its coordinates are meant to be read in."""

    coords: np.ndarray
    view: View = PLAIN

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float).reshape(-1)
        check_unit(c)
        if self.view.kind != "plain" and self.view.ambient_dim() != c.size:
            raise ValueError(
                f"view {self.view} wants {self.view.ambient_dim()} coordinates, got {c.size}"
            )
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def sphere_dim(self) -> int:
        return self.coords.size - 1

    @classmethod
    def from_complex(cls, z) -> "SpherePoint":
        z = np.asarray(z, dtype=np.complex128).reshape(-1)
        c = np.empty(2 * z.size)
        c[0::2], c[1::2] = z.real, z.imag
        return cls(c, View("complex", z.size))

    @classmethod
    def from_real_complex(cls, y: float, z) -> "SpherePoint":
        z = np.asarray(z, dtype=np.complex128).reshape(-1)
        c = np.empty(1 + 2 * z.size)
        c[0] = y
        c[1::2], c[2::2] = z.real, z.imag
        return cls(c, View("real_complex", z.size))

    def complex_view(self) -> np.ndarray:
        if self.view.kind != "complex":
            raise ValueError(f"point carries view {self.view.kind}, not complex")
        return self.coords[0::2] + 1j * self.coords[1::2]

    def real_complex_view(self) -> tuple[float, np.ndarray]:
        if self.view.kind != "real_complex":
            raise ValueError(f"point carries view {self.view.kind}, not real_complex")
        return float(self.coords[0]), self.coords[1::2] + 1j * self.coords[2::2]


def coords_of(x) -> np.ndarray:
    """Accept a SpherePoint or a raw coordinate vector."""
    if isinstance(x, SpherePoint):
        return np.asarray(x.coords, dtype=float)
    return np.asarray(x, dtype=float).reshape(-1)


# ---------------------------------------------------------------- sampling

def _stream_chunk(m: int, seed: int, chunk: int, normalize: bool = True) -> np.ndarray:
    """One CHUNK of the (seed)-stream of uniform points on S^m."""
    key = np.array([seed % (1 << 64), chunk % (1 << 64)], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    g = rng.standard_normal((CHUNK, m + 1))
    if not normalize:
        return g
    r = np.linalg.norm(g, axis=1)
    r[r == 0.0] = 1.0  # never observed; keeps the stream total
    return g / r[:, None]


def sample_uniform(m: int, count: int, seed: int) -> np.ndarray:
    """(count, m+1) array of uniform points on S^m, deterministic per (seed, index)."""
    if m < 1:
        raise ValueError("sphere dimension must be >= 1")
    if count < 1:
        raise ValueError("count must be positive")
    out = np.empty((count, m + 1))
    for c in range((count + CHUNK - 1) // CHUNK):
        lo = c * CHUNK
        take = min(CHUNK, count - lo)
        out[lo : lo + take] = _stream_chunk(m, seed, c)[:take]
    return out


def _normalize_rows(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


# ---------------------------------------------------------- tangent frames

def tangent_frames(coords: np.ndarray) -> np.ndarray:
    """Oriented orthonormal tangent frames at each row of `coords`.

    Returns (N, d, m) with m = d-1. Frame: Gram-Schmidt the canonical basis
    against x, skipping the basis vector most parallel to x; one vector is
    flipped so that det[v_1 ... v_m x] = +1 (frame plus outward normal is
    positively oriented). The determinant sign is known analytically on each
    region of constant skip index, so no determinants are computed.
    """
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    n, d = coords.shape
    m = d - 1
    skip = np.argmax(np.abs(coords), axis=1)  # (N,)
    mask = np.arange(d)[None, :] == skip[:, None]
    cols = np.argsort(mask, axis=1, kind="stable")[:, :m]  # ascending j != skip

    v = np.zeros((n, d, m))
    rows = np.arange(n)
    for i in range(m):
        ci = cols[:, i]
        e = np.zeros((n, d))
        e[rows, ci] = 1.0
        e -= coords * coords[rows, ci][:, None]
        for j in range(i):
            e -= v[:, :, j] * np.einsum("nd,nd->n", v[:, :, j], e)[:, None]
        e /= np.linalg.norm(e, axis=1)[:, None]
        v[:, :, i] = e

    # det[v_1 .. v_m x] = (-1)^(d-1-skip) * sign(x_skip) on each region
    sign = np.where((d - 1 - skip) % 2 == 0, 1.0, -1.0) * np.sign(coords[rows, skip])
    v[:, :, m - 1] *= sign[:, None]
    return v


def tangent_frame(x) -> np.ndarray:
    """(d, m) oriented orthonormal tangent frame at a single point."""
    return tangent_frames(coords_of(x)[None, :])[0]


# ----------------------------------------------------------------- charts

def suspension_chart(n: int, t: float, z) -> SpherePoint:
    """(t, z) on [0, 2pi/n] x S^{2n-1} -> (y, z sqrt(1-y^2)) in S^{2n}, y = tn/pi - 1."""
    t_max = 2.0 * np.pi / n
    if not 0.0 <= t <= t_max + 1e-12:
        raise ValueError(f"t = {t!r} outside [0, {t_max!r}]")
    zc = coords_of(z)
    if zc.size != 2 * n:
        raise ValueError(f"equator point must lie on S^{2*n-1}")
    y = t * n / np.pi - 1.0
    s = np.sqrt(max(0.0, 1.0 - y * y))
    c = np.empty(2 * n + 1)
    c[0] = y
    c[1:] = zc * s
    c /= np.linalg.norm(c)
    return SpherePoint(c, View("real_complex", n))


def _householder_to_last(pole: np.ndarray) -> np.ndarray:
    """Orthogonal H (reflection) with H @ pole = e_d."""
    d = pole.size
    e = np.zeros(d)
    e[-1] = 1.0
    u = pole - e
    nn = float(u @ u)
    if nn < 1e-30:
        return np.eye(d)
    return np.eye(d) - (2.0 / nn) * np.outer(u, u)


def chart_project(x, pole) -> np.ndarray:
    """Stereographic coordinates of x in the chart centered opposite `pole`."""
    xc, pc = coords_of(x), coords_of(pole)
    if xc.size != pc.size:
        raise ValueError("point and pole live on different spheres")
    if np.linalg.norm(xc - pc) < _POLE_TOL:
        raise ValueError("point is within 1e-6 of the chart pole")
    h = _householder_to_last(pc)
    y = h @ xc
    return y[:-1] / (1.0 - y[-1])


def chart_lift(u, pole) -> np.ndarray:
    """Inverse of chart_project; the origin lifts to the antipode of `pole`."""
    uc = np.asarray(u, dtype=float).reshape(-1)
    pc = coords_of(pole)
    if uc.size != pc.size - 1:
        raise ValueError("chart vector has wrong dimension")
    s = float(uc @ uc)
    y = np.empty(pc.size)
    y[:-1] = 2.0 * uc / (s + 1.0)
    y[-1] = (s - 1.0) / (s + 1.0)
    return _householder_to_last(pc) @ y  # H is an involution

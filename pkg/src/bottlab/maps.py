"""Sphere-to-unitary-group maps: the periodicity construction, corner
reductions, the cross-product embedding, suspension families, symplectic
families, pointwise combinators, and the named-map registry.

Every map carries a vectorized evaluator `eval_batch_fn` taking an (N, d)
array of unit ambient coordinates and returning an (N, n, n) complex array.
Evaluators assume unit rows and never validate per call; the public
`__call__` validates. Complex slots follow the View convention of
`bottlab.sphere` (consecutive (re, im) pairs).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg
from .sphere import CHUNK, SpherePoint, View, coords_of, sample_uniform

CORNER_TOL = 1e-9
PROBE_SEED = 1729
PROBE_COUNT = 256


class CornerError(ValueError):
    """Corner entry expected to vanish did not."""

    def __init__(self, magnitude: float, context: str = ""):
        self.magnitude = magnitude
        msg = f"corner entry has magnitude {magnitude:.3e} (tolerance {CORNER_TOL})"
        if context:
            msg += f"; {context}"
        super().__init__(msg)


class EndpointError(ValueError):
    """Cylinder endpoint expected to be constant varies with z."""

    def __init__(self, residual: float, which: str):
        self.residual = residual
        super().__init__(
            f"cylinder endpoint {which} varies over the sphere (residual {residual:.3e})"
        )


# ------------------------------------------------------------------ types

@dataclass(frozen=True)
class UnitarySphereMap:
    """A continuous map S^m -> U(n) with metadata and a batch evaluator."""

    name: str
    domain_dim: int
    target_size: int
    target_group: str  # "U" | "SU" | "Sp"
    domain_view: View
    provenance: str
    eval_batch_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    @property
    def special(self) -> bool:
        return self.target_group != "U"

    def display_target(self) -> str:
        if self.target_group == "Sp":
            return f"Sp({self.target_size // 2})"
        return f"{self.target_group}({self.target_size})"

    def eval_batch(self, coords: np.ndarray) -> np.ndarray:
        coords = np.atleast_2d(np.asarray(coords, dtype=float))
        if coords.shape[1] != self.domain_dim + 1:
            raise ValueError(
                f"{self.name} wants {self.domain_dim + 1} coordinates, got {coords.shape[1]}"
            )
        return self.eval_batch_fn(coords)

    def __call__(self, x) -> np.ndarray:
        c = coords_of(x)
        r = np.linalg.norm(c)
        if abs(r - 1.0) > 1e-9:
            raise ValueError(f"{self.name} is defined on the unit sphere; |x| = {r!r}")
        return self.eval_batch(c[None, :])[0]


@dataclass(frozen=True)
class CylinderMap:
    """A family [0, t_max] x S^q -> U(n), vectorized over (t, z) pairs."""

    name: str
    target_size: int
    t_max: float
    domain_dim: int  # q, the z-sphere dimension
    domain_view: View
    provenance: str
    eval_batch_fn: Callable[[np.ndarray, np.ndarray], np.ndarray] = field(repr=False)

    def eval_batch(self, t: np.ndarray, zc: np.ndarray) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        zc = np.atleast_2d(np.asarray(zc, dtype=float))
        if zc.shape[1] != self.domain_dim + 1:
            raise ValueError(
                f"{self.name} wants {self.domain_dim + 1} z-coordinates, got {zc.shape[1]}"
            )
        return self.eval_batch_fn(t, zc)

    def __call__(self, t: float, z) -> np.ndarray:
        if not -1e-12 <= t <= self.t_max + 1e-12:
            raise ValueError(f"t = {t!r} outside [0, {self.t_max!r}]")
        return self.eval_batch(np.array([t]), coords_of(z)[None, :])[0]


@dataclass(frozen=True)
class SphereValuedMap:
    """A map S^m -> S^p given in ambient coordinates; self-map when m == p."""

    name: str
    domain_dim: int
    target_dim: int
    eval_batch_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    @property
    def is_self(self) -> bool:
        return self.domain_dim == self.target_dim

    def eval_batch(self, coords: np.ndarray) -> np.ndarray:
        coords = np.atleast_2d(np.asarray(coords, dtype=float))
        if coords.shape[1] != self.domain_dim + 1:
            raise ValueError(
                f"{self.name} wants {self.domain_dim + 1} coordinates, got {coords.shape[1]}"
            )
        return self.eval_batch_fn(coords)

    def __call__(self, x) -> np.ndarray:
        return self.eval_batch(coords_of(x)[None, :])[0]


# --------------------------------------------------- periodicity and zeta

def _complex_slots(c: np.ndarray) -> np.ndarray:
    return c[:, 0::2] + 1j * c[:, 1::2]


def bott(theta: UnitarySphereMap, name: str | None = None) -> UnitarySphereMap:
    """One explicit periodicity step: S^m -> U(n) to S^{m+2} -> SU(2n).

    B(theta)(w, x) = [[w I, -|x| conj(theta(x/|x|))^T], [|x| theta(x/|x|), conj(w) I]]
    on the unit sphere in C x R^{m+1}, extended by w-diagonal at x = 0.
    """
    n = theta.target_size
    inner = theta.eval_batch_fn

    def ev(c: np.ndarray) -> np.ndarray:
        w = c[:, 0] + 1j * c[:, 1]
        x = c[:, 2:]
        r = np.linalg.norm(x, axis=1)
        safe = np.where(r > 0.0, r, 1.0)
        b = inner(x / safe[:, None]) * r[:, None, None]
        out = np.zeros((c.shape[0], 2 * n, 2 * n), dtype=np.complex128)
        out[:, n:, :n] = b
        out[:, :n, n:] = -np.conj(np.swapaxes(b, 1, 2))
        k = np.arange(n)
        out[:, k, k] = w[:, None]
        out[:, n + k, n + k] = np.conj(w)[:, None]
        return out

    if theta.domain_view.kind == "complex":
        view = View("complex", theta.domain_view.n + 1)
    else:
        view = View("plain")
    return UnitarySphereMap(
        name=name or f"bott({theta.name})",
        domain_dim=theta.domain_dim + 2,
        target_size=2 * n,
        target_group="SU",
        domain_view=view,
        provenance=f"bott({theta.name})",
        eval_batch_fn=ev,
    )


def _zeta1_eval(c: np.ndarray) -> np.ndarray:
    return (c[:, 0] + 1j * c[:, 1]).reshape(-1, 1, 1)


@functools.lru_cache(maxsize=None)
def zeta(k: int) -> UnitarySphereMap:
    """The iterated-periodicity generator zeta_k: S^{2k-1} -> U(2^{k-1})."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return UnitarySphereMap(
            name="zeta1",
            domain_dim=1,
            target_size=1,
            target_group="U",
            domain_view=View("complex", 1),
            provenance="z -> [z] on the unit circle",
            eval_batch_fn=_zeta1_eval,
        )
    return bott(zeta(k - 1), name=f"zeta{k}")


# ------------------------------------------------------- corner reduction

def _corner_check(vals: np.ndarray, tol: float, context: str) -> None:
    mag = float(np.max(np.abs(vals))) if vals.size else 0.0
    if mag > tol:
        raise CornerError(mag, context)


def reduce_corner(m, tol: float = CORNER_TOL) -> np.ndarray:
    """[[A, b], [c, 0]] -> A - b c (one size down); corner must vanish."""
    m = linalg.as_square(m)
    _corner_check(m[-1:, -1:], tol, "reduce_corner input")
    return m[:-1, :-1] - np.outer(m[:-1, -1], m[-1, :-1])


def deform_step(m, t: float, tol: float = CORNER_TOL) -> np.ndarray:
    """Path from [[A, b],[c, 0]] (t=0) to [[A - b c, 0],[0, 1]] (t=pi/2)."""
    m = linalg.as_square(m)
    _corner_check(m[-1:, -1:], tol, "deform_step input")
    a, b, c = m[:-1, :-1], m[:-1, -1], m[-1, :-1]
    st, ct = np.sin(t), np.cos(t)
    out = np.empty_like(m)
    out[:-1, :-1] = a - np.outer(b, c) * st
    out[:-1, -1] = b * ct
    out[-1, :-1] = c * ct
    out[-1, -1] = st
    return out


def exchange_rotation(n: int, t: float) -> np.ndarray:
    """Identity except a rotation by t in the last two coordinates."""
    if n < 2:
        raise ValueError("need size >= 2")
    e = np.eye(n)
    ct, st = np.cos(t), np.sin(t)
    e[-2, -2] = ct
    e[-2, -1] = -st
    e[-1, -2] = st
    e[-1, -1] = ct
    return e


def _lundell_step_batch(m: np.ndarray, tol: float, context: str) -> np.ndarray:
    """reduce_corner(exchange_rotation(n, pi/2) @ m) fused, batched.

    Left-multiplying by the quarter-turn exchange moves row n-2 into the last
    row, so the corner that must vanish is m[n-2, n-1].
    """
    n = m.shape[1]
    _corner_check(m[:, -2, -1], tol, context)
    a = np.empty((m.shape[0], n - 1, n - 1), dtype=np.complex128)
    a[:, : n - 2, :] = m[:, : n - 2, : n - 1]
    a[:, n - 2, :] = -m[:, n - 1, : n - 1]
    b = np.empty((m.shape[0], n - 1), dtype=np.complex128)
    b[:, : n - 2] = m[:, : n - 2, n - 1]
    b[:, n - 2] = -m[:, n - 1, n - 1]
    a -= b[:, :, None] * m[:, n - 2, : n - 1][:, None, :]
    return a


@dataclass(frozen=True)
class LundellStep:
    """The two homotopies realizing one reduction step, for endpoint tests.

    exchange_path(0, x) is the source value; deform_path(pi/2, x) embeds the
    reduced value as the upper block of a block-diagonal with trailing 1.
    """

    index: int
    source: UnitarySphereMap

    def exchange_path(self, t: float, x) -> np.ndarray:
        return exchange_rotation(self.source.target_size, t) @ self.source(x)

    def deform_path(self, t: float, x) -> np.ndarray:
        n = self.source.target_size
        return deform_step(exchange_rotation(n, np.pi / 2.0) @ self.source(x), t)


def lundell_reduce(
    theta: UnitarySphereMap,
    steps: int,
    name: str | None = None,
    provenance: str | None = None,
) -> UnitarySphereMap:
    """Iterate the exchange-then-reduce-corner step `steps` times.

    Each step lowers the target size by one. At construction the corner
    condition is probed on PROBE_COUNT seeded domain points and a CornerError
    is raised (naming the probe) if any corner exceeds CORNER_TOL, so an
    inapplicable reduction fails loudly rather than producing garbage.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if theta.target_size - steps < 1:
        raise ValueError(
            f"cannot reduce size {theta.target_size} by {steps} steps"
        )

    def ev(c: np.ndarray) -> np.ndarray:
        m = theta.eval_batch_fn(c)
        for s in range(steps):
            m = _lundell_step_batch(m, CORNER_TOL, f"reduction step {s + 1}")
        return m

    if steps > 0:
        probes = sample_uniform(theta.domain_dim, PROBE_COUNT, PROBE_SEED)
        m = theta.eval_batch_fn(probes)
        for s in range(steps):
            corner = m[:, -2, -1]
            worst = int(np.argmax(np.abs(corner)))
            _corner_check(
                corner,
                CORNER_TOL,
                f"probe point index {worst} at reduction step {s + 1} of {theta.name}",
            )
            m = _lundell_step_batch(m, np.inf, "")

    return UnitarySphereMap(
        name=name or f"lundell_reduce({theta.name}, {steps})",
        domain_dim=theta.domain_dim,
        target_size=theta.target_size - steps,
        target_group="SU",
        domain_view=theta.domain_view,
        provenance=provenance or f"lundell_reduce({theta.name}, steps={steps})",
        eval_batch_fn=ev,
    )


def lundell_steps(theta: UnitarySphereMap, steps: int) -> list[LundellStep]:
    """The intermediate deformation paths behind lundell_reduce."""
    out = []
    current = theta
    for s in range(steps):
        out.append(LundellStep(index=s + 1, source=current))
        current = lundell_reduce(current, 1, name=f"{theta.name}.step{s + 1}")
    return out


@functools.lru_cache(maxsize=None)
def eta_n(n: int) -> UnitarySphereMap:
    """Reduced generators eta_n: S^{2n-1} -> SU(n); eta_1, eta_2 coincide with
    zeta_1, zeta_2, and eta_{n} is bott(eta_{n-1}) reduced from size 2(n-1)
    down to size n (n-2 steps)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return zeta(1)
    b = bott(eta_n(n - 1), name=f"bott(eta{n - 1})")
    if n == 2:
        provenance = "bott(zeta1), already size 2"
    else:
        provenance = f"lundell_reduce(bott(eta{n - 1}), steps={n - 2})"
    return lundell_reduce(b, n - 2, name=f"eta{n}", provenance=provenance)


def eta3_closed() -> UnitarySphereMap:
    """Closed form of eta_3, kept independent of the reduction pipeline so the
    two construction routes can be cross-checked against each other."""

    def ev(c: np.ndarray) -> np.ndarray:
        z = _complex_slots(c)
        z1, z2, z3 = z[:, 0], z[:, 1], z[:, 2]
        c1, c2, c3 = np.conj(z1), np.conj(z2), np.conj(z3)
        out = np.empty((c.shape[0], 3, 3), dtype=np.complex128)
        out[:, 0, 0] = z1 + c3 * z2
        out[:, 0, 1] = -(c3 * c3)
        out[:, 0, 2] = -c2 + c3 * c1
        out[:, 1, 0] = z2 * z2
        out[:, 1, 1] = z1 - z2 * c3
        out[:, 1, 2] = z3 + z2 * c1
        out[:, 2, 0] = -z3 + c1 * z2
        out[:, 2, 1] = -c2 - c1 * c3
        out[:, 2, 2] = c1 * c1
        return out

    return UnitarySphereMap(
        name="eta3_closed",
        domain_dim=5,
        target_size=3,
        target_group="SU",
        domain_view=View("complex", 3),
        provenance="closed form of the one-step reduction S^5 -> SU(3)",
        eval_batch_fn=ev,
    )


# ------------------------------------------------- cross-product embedding

#: Row/column rotations carrying eta3 (with slots 1 and 3 conjugated) to the
#: cross-product map: L @ eta3(conj_13(z)) @ R = eta_cross(z).
ETA3_TO_ETA_LEFT = np.array([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
ETA3_TO_ETA_RIGHT = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, -1.0], [1.0, 0.0, 0.0]])


def eta_cross() -> UnitarySphereMap:
    """eta(z) = z z^T + skew(conj z): S^5 -> SU(3), columns of degree 2.

    skew(v) = [[0, -v3, v2], [v3, 0, -v1], [-v2, v1, 0]], so the columns are
    (z z_j + conj(z) x e_j) and eta(z) @ conj(z) = z.
    """

    def ev(c: np.ndarray) -> np.ndarray:
        z = _complex_slots(c)
        zc = np.conj(z)
        out = z[:, :, None] * z[:, None, :]
        out[:, 0, 1] -= zc[:, 2]
        out[:, 0, 2] += zc[:, 1]
        out[:, 1, 0] += zc[:, 2]
        out[:, 1, 2] -= zc[:, 0]
        out[:, 2, 0] -= zc[:, 1]
        out[:, 2, 1] += zc[:, 0]
        return out

    return UnitarySphereMap(
        name="eta_cross",
        domain_dim=5,
        target_size=3,
        target_group="SU",
        domain_view=View("complex", 3),
        provenance="z z^T plus the conjugate cross-product skew form",
        eval_batch_fn=ev,
    )


def geodesic_c(t: float) -> np.ndarray:
    """Rotation by t in the last two real coordinates of C^3 = R^3 + iR^3 sense:
    the geodesic with c(0) = I and c(pi/2) = eta_cross(e_1)."""
    ct, st = np.cos(t), np.sin(t)
    return np.array([[1.0, 0.0, 0.0], [0.0, ct, -st], [0.0, st, ct]])


def cartan_cp2() -> UnitarySphereMap:
    """z -> 2 z conj(z)^T - I, the projective-plane embedding; equals
    eta_cross(z) @ conj(eta_cross(z)) pointwise and has null-homotopic columns."""

    def ev(c: np.ndarray) -> np.ndarray:
        z = _complex_slots(c)
        out = 2.0 * z[:, :, None] * np.conj(z)[:, None, :]
        k = np.arange(3)
        out[:, k, k] -= 1.0
        return out

    return UnitarySphereMap(
        name="cartan_cp2",
        domain_dim=5,
        target_size=3,
        target_group="SU",
        domain_view=View("complex", 3),
        provenance="2 z conj(z)^T - I",
        eval_batch_fn=ev,
    )


# ----------------------------------------------------- suspension families

def phi_hat(n: int) -> CylinderMap:
    """phi_hat(t, z) = e^{-it} (I + z (e^{int} - 1) conj(z)^T), t in [0, 2pi/n].

    Endpoints are I and e^{-2pi i/n} I, both central, so the family suspends.
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    def ev(t: np.ndarray, zc: np.ndarray) -> np.ndarray:
        z = _complex_slots(zc)
        out = (np.exp(1j * n * t) - 1.0)[:, None, None] * (
            z[:, :, None] * np.conj(z)[:, None, :]
        )
        k = np.arange(n)
        out[:, k, k] += 1.0
        out *= np.exp(-1j * t)[:, None, None]
        return out

    return CylinderMap(
        name=f"phi_hat.n={n}",
        target_size=n,
        t_max=2.0 * np.pi / n,
        domain_dim=2 * n - 1,
        domain_view=View("complex", n),
        provenance="rank-one conjugation family on the cylinder",
        eval_batch_fn=ev,
    )


def _phi_eval(n: int):
    def ev(c: np.ndarray) -> np.ndarray:
        y = c[:, 0]
        z = c[:, 1::2] + 1j * c[:, 2::2]
        r = np.linalg.norm(z, axis=1)
        zh = z / np.where(r > 0.0, r, 1.0)[:, None]
        out = -(1.0 + np.exp(1j * np.pi * y))[:, None, None] * (
            zh[:, :, None] * np.conj(zh)[:, None, :]
        )
        k = np.arange(n)
        out[:, k, k] += 1.0
        out *= np.exp(-1j * np.pi * (y + 1.0) / n)[:, None, None]
        return out

    return ev


def phi(n: int) -> UnitarySphereMap:
    """phi(y, z) = e^{-i pi (y+1)/n} (I - (z/|z|)(1 + e^{i pi y})(conj(z)^T/|z|))
    on S^{2n} in R x C^n; at the poles the rank-one term vanishes and the
    value is the pure phase (I at y = -1, e^{-2pi i/n} I at y = +1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return UnitarySphereMap(
        name=f"phi.n={n}",
        domain_dim=2 * n,
        target_size=n,
        target_group="SU",
        domain_view=View("real_complex", n),
        provenance="closed form of the suspended rank-one conjugation family",
        eval_batch_fn=_phi_eval(n),
    )


def phi_steenrod(n: int) -> UnitarySphereMap:
    """(y, z) -> I - 2 z (1 - iy)^{-2} conj(z)^T with z unnormalized.

    Values are unitary with |det| = 1 but not det = 1; membership checks use
    unitarity only.
    """
    if n < 2:
        raise ValueError("n must be >= 2")

    def ev(c: np.ndarray) -> np.ndarray:
        y = c[:, 0]
        z = c[:, 1::2] + 1j * c[:, 2::2]
        f = 2.0 / (1.0 - 1j * y) ** 2
        out = -f[:, None, None] * (z[:, :, None] * np.conj(z)[:, None, :])
        k = np.arange(n)
        out[:, k, k] += 1.0
        return out

    return UnitarySphereMap(
        name=f"phi_steenrod.n={n}",
        domain_dim=2 * n,
        target_size=n,
        target_group="U",
        domain_view=View("real_complex", n),
        provenance="rational suspension form (unitary, det not pinned to 1)",
        eval_batch_fn=ev,
    )


def psi(n: int, j: int, g: UnitarySphereMap) -> CylinderMap:
    """psi_j(t, z) = g(z) D_j(t) g(z)^{-1} with D_j = diag(e^{-it}, ...,
    e^{i(n-1)t} in slot j, ..., e^{-it}); the product over j is constant I."""
    if not 1 <= j <= n:
        raise ValueError(f"slot j = {j} outside 1..{n}")
    if g.domain_dim != 2 * n - 1 or g.target_size != n:
        raise ValueError(f"g must map S^{2 * n - 1} into U({n})")

    def ev(t: np.ndarray, zc: np.ndarray) -> np.ndarray:
        gm = g.eval_batch_fn(zc)
        ph = np.repeat(np.exp(-1j * t)[:, None], n, axis=1)
        ph[:, j - 1] = np.exp(1j * (n - 1) * t)
        return (gm * ph[:, None, :]) @ np.conj(np.swapaxes(gm, 1, 2))

    return CylinderMap(
        name=f"psi.n={n}.j={j}[{g.name}]",
        target_size=n,
        t_max=2.0 * np.pi / n,
        domain_dim=2 * n - 1,
        domain_view=g.domain_view,
        provenance=f"conjugated one-slot diagonal family over {g.name}",
        eval_batch_fn=ev,
    )


def psi_homotopy(n: int, g: UnitarySphereMap, s: float) -> CylinderMap:
    """g(z) R(s) D_1(t) R(s)^T g(z)^{-1} with R(s) rotating slots 1,2; the
    family joins psi_1 (s = 0) to psi_2 (s = pi/2)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if g.domain_dim != 2 * n - 1 or g.target_size != n:
        raise ValueError(f"g must map S^{2 * n - 1} into U({n})")
    cs, sn = np.cos(s), np.sin(s)

    def ev(t: np.ndarray, zc: np.ndarray) -> np.ndarray:
        gm = g.eval_batch_fn(zc)
        a = np.exp(1j * (n - 1) * t)
        b = np.exp(-1j * t)
        d = np.zeros((t.size, n, n), dtype=np.complex128)
        k = np.arange(n)
        d[:, k, k] = b[:, None]
        d[:, 0, 0] = a * cs * cs + b * sn * sn
        d[:, 1, 1] = a * sn * sn + b * cs * cs
        d[:, 0, 1] = (a - b) * cs * sn
        d[:, 1, 0] = (a - b) * cs * sn
        return gm @ d @ np.conj(np.swapaxes(gm, 1, 2))

    return CylinderMap(
        name=f"psi_homotopy.n={n}.s={s:.6g}[{g.name}]",
        target_size=n,
        t_max=2.0 * np.pi / n,
        domain_dim=2 * n - 1,
        domain_view=g.domain_view,
        provenance="rotation homotopy between the first two slot families",
        eval_batch_fn=ev,
    )


def induced_sphere_map(
    cyl: CylinderMap,
    name: str | None = None,
    target_group: str = "SU",
) -> UnitarySphereMap:
    """Collapse a cylinder with central constant endpoints to a sphere map via
    the suspension chart: (y, u) -> cyl(t_max (y+1)/2, u/|u|).

    Endpoint constancy is probed at construction (EndpointError otherwise).
    """
    probes = sample_uniform(cyl.domain_dim, 64, PROBE_SEED)
    for which, t in (("t=0", 0.0), (f"t={cyl.t_max:.6g}", cyl.t_max)):
        vals = cyl.eval_batch_fn(np.full(64, t), probes)
        res = float(np.max(np.abs(vals - vals[0])))
        if res > 1e-9:
            raise EndpointError(res, which)

    def ev(c: np.ndarray) -> np.ndarray:
        y = np.clip(c[:, 0], -1.0, 1.0)
        u = c[:, 1:]
        r = np.linalg.norm(u, axis=1)
        zh = u / np.where(r > 0.0, r, 1.0)[:, None]
        zh[r == 0.0, 0] = 1.0  # endpoints are constant; any unit point works
        t = cyl.t_max * (y + 1.0) / 2.0
        return cyl.eval_batch_fn(t, zh)

    if cyl.domain_view.kind == "complex":
        view = View("real_complex", cyl.domain_view.n)
    else:
        view = View("plain")
    return UnitarySphereMap(
        name=name or f"induced({cyl.name})",
        domain_dim=cyl.domain_dim + 1,
        target_size=cyl.target_size,
        target_group=target_group,
        domain_view=view,
        provenance=f"suspension of {cyl.name}",
        eval_batch_fn=ev,
    )


# ------------------------------------------------------ symplectic family

def _paired_projector(z: np.ndarray, jm: np.ndarray) -> np.ndarray:
    """z conj(z)^T - J conj(z) z^T J = z conj(z)^T + u conj(u)^T, u = J conj(z)."""
    u = np.conj(z) @ jm.T
    return z[:, :, None] * np.conj(z)[:, None, :] + u[:, :, None] * np.conj(u)[:, None, :]


def phi12_prime(m: int) -> CylinderMap:
    """phi'_12(t, z) = e^{-2it} (I + (e^{2mit} - 1)(z conj(z)^T - J conj(z) z^T J))
    on [0, pi/m] x S^{4m-1}; equals A diag(e^{i(2m-2)t}, e^{i(2m-2)t},
    e^{-2it}, ...) A^{-1} for any A in Sp(m) whose first column is z."""
    if m < 1:
        raise ValueError("m must be >= 1")
    jm = linalg.j_matrix(m, "interleaved")

    def ev(t: np.ndarray, zc: np.ndarray) -> np.ndarray:
        z = _complex_slots(zc)
        out = (np.exp(2j * m * t) - 1.0)[:, None, None] * _paired_projector(z, jm)
        k = np.arange(2 * m)
        out[:, k, k] += 1.0
        out *= np.exp(-2j * t)[:, None, None]
        return out

    return CylinderMap(
        name=f"phi12_prime.m={m}",
        target_size=2 * m,
        t_max=np.pi / m,
        domain_dim=4 * m - 1,
        domain_view=View("complex", 2 * m),
        provenance="paired-slot conjugation family over the symplectic group",
        eval_batch_fn=ev,
    )


def phi2(m: int) -> UnitarySphereMap:
    """Closed form of the suspended symplectic family on S^{4m}:
    e^{-i pi (y+1)/m} (I - (1 + e^{i pi y}) (zh conj(zh)^T - J conj(zh) zh^T J)),
    zh = z/|z|; the (2,1) entry vanishes identically."""
    if m < 1:
        raise ValueError("m must be >= 1")
    jm = linalg.j_matrix(m, "interleaved")

    def ev(c: np.ndarray) -> np.ndarray:
        y = c[:, 0]
        z = c[:, 1::2] + 1j * c[:, 2::2]
        r = np.linalg.norm(z, axis=1)
        zh = z / np.where(r > 0.0, r, 1.0)[:, None]
        out = -(1.0 + np.exp(1j * np.pi * y))[:, None, None] * _paired_projector(zh, jm)
        k = np.arange(2 * m)
        out[:, k, k] += 1.0
        out *= np.exp(-1j * np.pi * (y + 1.0) / m)[:, None, None]
        return out

    return UnitarySphereMap(
        name=f"phi2.m={m}",
        domain_dim=4 * m,
        target_size=2 * m,
        target_group="SU",
        domain_view=View("real_complex", 2 * m),
        provenance="closed form of the suspended symplectic conjugation family",
        eval_batch_fn=ev,
    )


def phi2_closed(m: int) -> tuple[UnitarySphereMap, UnitarySphereMap]:
    """The suspended symplectic family in both printed forms: the SU(2m)
    closed form and the homotopic rational U(2m) form."""
    return phi2(m), phi2_rational(m)


def phi2_rational(m: int) -> UnitarySphereMap:
    """(y, z) -> I - 2 (1 - iy)^{-2} (z conj(z)^T - J conj(z) z^T J), z raw;
    unitary with |det| = 1, checked for unitarity only."""
    if m < 1:
        raise ValueError("m must be >= 1")
    jm = linalg.j_matrix(m, "interleaved")

    def ev(c: np.ndarray) -> np.ndarray:
        y = c[:, 0]
        z = c[:, 1::2] + 1j * c[:, 2::2]
        f = 2.0 / (1.0 - 1j * y) ** 2
        out = -f[:, None, None] * _paired_projector(z, jm)
        k = np.arange(2 * m)
        out[:, k, k] += 1.0
        return out

    return UnitarySphereMap(
        name=f"phi2_rational.m={m}",
        domain_dim=4 * m,
        target_size=2 * m,
        target_group="U",
        domain_view=View("real_complex", 2 * m),
        provenance="rational symplectic suspension form",
        eval_batch_fn=ev,
    )


def _reduction_permutations(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Signed permutations (P, Q) with det P det Q = 1, (P M Q)[-1, -1] = M[1, 0],
    and P I Q = diag(I_{2m-2}, [[0, -1], [1, 0]]), so the z-free pole reduces to
    the identity."""
    n = 2 * m
    p = np.zeros((n, n))
    q = np.zeros((n, n))
    for i in range(n - 2):
        p[i, i + 2] = 1.0
        q[i + 2, i] = 1.0
    p[n - 2, 0] = -1.0
    p[n - 1, 1] = 1.0
    q[1, n - 2] = 1.0
    q[0, n - 1] = 1.0
    return p, q


def phi2_reduced(m: int) -> UnitarySphereMap:
    """Move the identically-vanishing (2,1) entry of phi2 to the corner by the
    fixed signed permutations and reduce: S^{4m} -> SU(2m-1). m = 1 collapses
    to the constant [1]."""
    base = phi2(m)
    p, q = _reduction_permutations(m)

    def ev(c: np.ndarray) -> np.ndarray:
        vals = p @ base.eval_batch_fn(c) @ q
        n = vals.shape[1]
        _corner_check(vals[:, -1, -1], CORNER_TOL, "phi2 corner")
        a = vals[:, :-1, :-1].copy()
        a -= vals[:, :-1, -1][:, :, None] * vals[:, -1, :-1][:, None, :]
        return a

    return UnitarySphereMap(
        name=f"phi2_reduced.m={m}",
        domain_dim=4 * m,
        target_size=2 * m - 1,
        target_group="SU",
        domain_view=View("real_complex", 2 * m),
        provenance="corner reduction of phi2 after signed permutation",
        eval_batch_fn=ev,
    )


def psi_prime(m: int, k: int, g: UnitarySphereMap) -> CylinderMap:
    """psi'_k(t, z) = g(z) D_k(t) g(z)^{-1}, D_k = e^{i(2m-2)t} on slots
    2k-1, 2k and e^{-2it} elsewhere; requires symplectic-valued g (probed)."""
    if not 1 <= k <= m:
        raise ValueError(f"pair k = {k} outside 1..{m}")
    if g.domain_dim != 4 * m - 1 or g.target_size != 2 * m:
        raise ValueError(f"g must map S^{4 * m - 1} into Sp({m}) in SU({2 * m})")
    probes = sample_uniform(g.domain_dim, PROBE_COUNT, PROBE_SEED)
    vals = g.eval_batch_fn(probes)
    worst = 0.0
    for i in range(vals.shape[0]):
        worst = max(worst, linalg.is_symplectic(vals[i], "interleaved", 1e-9).residual)
    if worst > 1e-9:
        raise ValueError(
            f"g = {g.name} is not symplectic on probe points (residual {worst:.3e})"
        )

    def ev(t: np.ndarray, zc: np.ndarray) -> np.ndarray:
        gm = g.eval_batch_fn(zc)
        ph = np.repeat(np.exp(-2j * t)[:, None], 2 * m, axis=1)
        hi = np.exp(1j * (2 * m - 2) * t)
        ph[:, 2 * k - 2] = hi
        ph[:, 2 * k - 1] = hi
        return (gm * ph[:, None, :]) @ np.conj(np.swapaxes(gm, 1, 2))

    return CylinderMap(
        name=f"psi_prime.m={m}.k={k}[{g.name}]",
        target_size=2 * m,
        t_max=np.pi / m,
        domain_dim=4 * m - 1,
        domain_view=g.domain_view,
        provenance=f"conjugated paired-slot diagonal family over {g.name}",
        eval_batch_fn=ev,
    )


def symplectic_frame(m: int) -> UnitarySphereMap:
    """Pointwise symplectic completion z -> [z, J conj(z), v, J conj(v), ...]
    with v Gram-Schmidt from the first sufficiently independent basis vector.

    Pointwise every value lies in Sp(m); the selection is deterministic. Used
    as a generic valid g input for the paired-slot families.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    jm = linalg.j_matrix(m, "interleaved")

    def ev(c: np.ndarray) -> np.ndarray:
        z = _complex_slots(c)
        nn = 2 * m
        cols = np.empty((c.shape[0], nn, nn), dtype=np.complex128)
        cols[:, :, 0] = z
        cols[:, :, 1] = np.conj(z) @ jm.T
        for pair in range(1, m):
            have = 2 * pair
            # residual norm of every canonical basis vector against the span
            proj = np.abs(np.swapaxes(np.conj(cols[:, :, :have]), 1, 2)) ** 2
            resid = 1.0 - np.sum(proj, axis=1)  # (N, nn): 1 - sum_j |<c_j, e_i>|^2
            pick = np.argmax(resid, axis=1)
            v = np.zeros_like(z)
            v[np.arange(c.shape[0]), pick] = 1.0
            for _pass in range(2):
                for jcol in range(have):
                    cj = cols[:, :, jcol]
                    v = v - cj * np.einsum("ni,ni->n", np.conj(cj), v)[:, None]
            v = v / np.linalg.norm(v, axis=1)[:, None]
            cols[:, :, have] = v
            cols[:, :, have + 1] = np.conj(v) @ jm.T
        return cols

    return UnitarySphereMap(
        name=f"symplectic_frame.m={m}",
        domain_dim=4 * m - 1,
        target_size=2 * m,
        target_group="Sp",
        domain_view=View("complex", 2 * m),
        provenance="deterministic symplectic frame completion of the first column",
        eval_batch_fn=ev,
    )


# -------------------------------------------- symmetrization / Sp lifting

def cartan_symmetrize(theta: UnitarySphereMap) -> UnitarySphereMap:
    """x -> theta(x) theta(x)^T, always symmetric-valued."""

    def ev(c: np.ndarray) -> np.ndarray:
        t = theta.eval_batch_fn(c)
        return t @ np.swapaxes(t, 1, 2)

    return UnitarySphereMap(
        name=f"cartan_symmetrize({theta.name})",
        domain_dim=theta.domain_dim,
        target_size=theta.target_size,
        target_group="SU" if theta.special else "U",
        domain_view=theta.domain_view,
        provenance=f"{theta.name} times its own transpose",
        eval_batch_fn=ev,
    )


def sp_candidate(k: int, n: int, theta: UnitarySphereMap) -> UnitarySphereMap:
    """bott(theta theta^T) for odd k = 2m+1 <= n: S^{2k+1} -> Sp(n) in the
    split convention (block form [[A, -conj(B)], [B, conj(A)]]).

    Symplectic membership is probed at construction; a failure would mean the
    symmetrization hypothesis broke and raises immediately.
    """
    if k % 2 != 1:
        raise ValueError("k must be odd (k = 2m+1)")
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    if theta.domain_dim != 2 * k - 1 or theta.target_size != n:
        raise ValueError(f"theta must map S^{2 * k - 1} into U({n})")
    b = bott(cartan_symmetrize(theta), name=f"sp_candidate.{theta.name}")
    probes = sample_uniform(b.domain_dim, PROBE_COUNT, PROBE_SEED)
    vals = b.eval_batch_fn(probes)
    worst = 0.0
    for i in range(vals.shape[0]):
        worst = max(worst, linalg.is_symplectic(vals[i], "split", 1e-9).residual)
    if worst > 1e-9:
        raise ValueError(
            f"bott({theta.name} {theta.name}^T) failed split-symplectic probes "
            f"(residual {worst:.3e})"
        )
    return UnitarySphereMap(
        name=f"sp_candidate.{theta.name}",
        domain_dim=b.domain_dim,
        target_size=b.target_size,
        target_group="Sp",
        domain_view=b.domain_view,
        provenance=f"bott({theta.name} {theta.name}^T), split convention",
        eval_batch_fn=b.eval_batch_fn,
    )


# ------------------------------------------------------------ combinators

def pointwise_product(f: UnitarySphereMap, g: UnitarySphereMap) -> UnitarySphereMap:
    if f.domain_dim != g.domain_dim or f.target_size != g.target_size:
        raise ValueError(
            f"cannot multiply {f.name} ({f.domain_dim}, {f.target_size}) with "
            f"{g.name} ({g.domain_dim}, {g.target_size})"
        )
    group = "SU" if (f.special and g.special) else "U"

    def ev(c: np.ndarray) -> np.ndarray:
        return f.eval_batch_fn(c) @ g.eval_batch_fn(c)

    return UnitarySphereMap(
        name=f"{f.name}*{g.name}",
        domain_dim=f.domain_dim,
        target_size=f.target_size,
        target_group=group,
        domain_view=f.domain_view,
        provenance=f"pointwise product of {f.name} and {g.name}",
        eval_batch_fn=ev,
    )


def _derived(f: UnitarySphereMap, tag: str, op, group: str | None = None) -> UnitarySphereMap:
    def ev(c: np.ndarray) -> np.ndarray:
        return op(f.eval_batch_fn(c))

    return UnitarySphereMap(
        name=f"{tag}({f.name})",
        domain_dim=f.domain_dim,
        target_size=f.target_size,
        target_group=group or f.target_group,
        domain_view=f.domain_view,
        provenance=f"{tag} of {f.name}",
        eval_batch_fn=ev,
    )


def conjugate(f: UnitarySphereMap) -> UnitarySphereMap:
    """x -> conj(f(x)) entrywise."""
    return _derived(f, "conjugate", np.conj)


def transpose(f: UnitarySphereMap) -> UnitarySphereMap:
    """x -> f(x)^T."""
    return _derived(f, "transpose", lambda v: np.swapaxes(v, 1, 2))


def adjoint_inverse(f: UnitarySphereMap) -> UnitarySphereMap:
    """x -> f(x)^* (= f(x)^{-1} on unitary values)."""
    return _derived(f, "adjoint_inverse", lambda v: np.conj(np.swapaxes(v, 1, 2)))


def column(f: UnitarySphereMap, j: int) -> SphereValuedMap:
    """Column j (1-based) of f as a map into S^{2n-1}; a self-map when
    f.domain_dim == 2n - 1."""
    n = f.target_size
    if not 1 <= j <= n:
        raise ValueError(f"column j = {j} outside 1..{n}")

    def ev(c: np.ndarray) -> np.ndarray:
        col = f.eval_batch_fn(c)[:, :, j - 1]
        out = np.empty((c.shape[0], 2 * n))
        out[:, 0::2] = col.real
        out[:, 1::2] = col.imag
        return out

    return SphereValuedMap(
        name=f"column({f.name}, {j})",
        domain_dim=f.domain_dim,
        target_dim=2 * n - 1,
        eval_batch_fn=ev,
    )


# ------------------------------------------------------- simple self-maps

def identity_map(m: int) -> SphereValuedMap:
    return SphereValuedMap("identity", m, m, lambda c: c.copy())


def antipodal_map(m: int) -> SphereValuedMap:
    return SphereValuedMap("antipodal", m, m, lambda c: -c)


def conjugation_map(k: int) -> SphereValuedMap:
    """Componentwise conjugation on S^{2k-1} in C^k (degree (-1)^k)."""

    def ev(c: np.ndarray) -> np.ndarray:
        out = c.copy()
        out[:, 1::2] = -out[:, 1::2]
        return out

    return SphereValuedMap("conjugation", 2 * k - 1, 2 * k - 1, ev)


def constant_map(m: int, value: np.ndarray, name: str = "constant") -> UnitarySphereMap:
    value = linalg.as_square(value)
    n = value.shape[0]

    def ev(c: np.ndarray) -> np.ndarray:
        return np.broadcast_to(value, (c.shape[0], n, n)).copy()

    return UnitarySphereMap(
        name=name,
        domain_dim=m,
        target_size=n,
        target_group="U",
        domain_view=View("plain"),
        provenance="constant",
        eval_batch_fn=ev,
    )


# --------------------------------------------------------------- registry

@functools.lru_cache(maxsize=1)
def registry() -> dict[str, UnitarySphereMap]:
    """All named maps, keyed by stable strings."""
    maps: dict[str, UnitarySphereMap] = {}
    for k in (1, 2, 3, 4):
        maps[f"zeta{k}"] = zeta(k)
    for n in (2, 3, 4):
        maps[f"eta{n}"] = eta_n(n)
    maps["eta_cross"] = eta_cross()
    maps["cartan_cp2"] = cartan_cp2()
    for n in range(2, 6):
        maps[f"phi.n={n}"] = phi(n)
        maps[f"phi_steenrod.n={n}"] = phi_steenrod(n)
    for m in (1, 2):
        maps[f"phi2.m={m}"] = phi2(m)
        maps[f"phi2_rational.m={m}"] = phi2_rational(m)
        maps[f"phi2_reduced.m={m}"] = phi2_reduced(m)
    maps["sp_candidate.eta3"] = sp_candidate(3, 3, eta_n(3))
    return maps


def get_map(name: str) -> UnitarySphereMap:
    reg = registry()
    if name not in reg:
        raise KeyError(
            f"unknown map {name!r}; known: {', '.join(sorted(reg))}"
        )
    return reg[name]

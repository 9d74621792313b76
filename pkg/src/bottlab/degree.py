"""Numerical Brouwer degree of sphere self-maps.

Two independent methods:

* `degree_mc` — the degree as the sphere-average of the oriented Jacobian
  determinant, estimated by seeded Monte Carlo. Deterministic per
  (seed, samples, h) and bit-identical for every thread count: the sample
  stream is generated in fixed chunks keyed by (seed, chunk index), each
  chunk is reduced with numpy's pairwise summation, and chunk sums are
  combined in index order.
* `degree_preimage` — Newton root finding for f(x) = target in stereographic
  charts, summing Jacobian signs over the distinct roots, cross-checked on a
  second target.

`certify_generator` evaluates a matrix map once per sample point and reuses
the values for every column, which is bit-identical to running `degree_mc`
per column (the column densities are computed from the same floats in the
same operation order).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import multiprocessing
import numpy as np

from .maps import SphereValuedMap, UnitarySphereMap, column
from . import linalg
from .sphere import (
    CHUNK,
    _householder_to_last,
    _normalize_rows,
    _stream_chunk,
    check_unit,
    coords_of,
    sample_uniform,
    tangent_frames,
)

GATE_ABS = 0.2  # an integer estimate is only claimable within this gap
STDERR_FLOOR = 1e-6
RICHARDSON_TOL = 1e-3
NONFINITE_LIMIT = 1e-4  # fraction of samples allowed to be non-finite


class DegreeError(RuntimeError):
    """The Monte Carlo engine cannot produce a trustworthy estimate."""


class NonRegularTargetError(DegreeError):
    """A located preimage has near-singular Jacobian; pick another target."""


class InsufficientStartsError(DegreeError):
    """Signed root counts disagree between the two verification targets."""


@dataclass(frozen=True)
class DegreeEstimate:
    """One Monte Carlo degree estimate.

    `certified` means the integer is statistically resolvable — the 3-sigma
    band (with stderr floored at 1e-6) fits inside the absolute 0.2 gate —
    and the raw mean lies within that band of `rounded`. Reduced budgets
    therefore yield uncertified estimates, never a confidently wrong integer.
    """

    map_name: str
    raw: float
    stderr: float
    samples: int
    rounded: int
    certified: bool
    method: str
    seed: int
    h: float
    flagged: bool
    nonfinite: int


@dataclass(frozen=True, eq=False)
class PreimageCount:
    """Signed preimage count with per-target diagnostics."""

    map_name: str
    value: int
    root_counts: tuple[int, int]
    targets: tuple[np.ndarray, np.ndarray]
    starts: int
    seed: int
    method: str = "preimage"


@dataclass(frozen=True)
class GeneratorCertificate:
    """Column-degree certification of a sphere-to-group map."""

    map_name: str
    expected: int
    columns: tuple[DegreeEstimate, ...]
    verdict: str  # PASS | FAIL | INCONCLUSIVE
    sign: int | None
    samples: int
    seed: int


# ------------------------------------------------------------- density core

def _check_h(h: float) -> None:
    if not 1e-7 <= h <= 1e-3:
        raise ValueError(f"finite-difference step h = {h!r} outside [1e-7, 1e-3]")


def _point_sets(coords: np.ndarray, frames: np.ndarray, h: float) -> list[np.ndarray]:
    """[x, x+h v_1, x-h v_1, ..., x+h v_m, x-h v_m], renormalized."""
    sets = [coords]
    m = frames.shape[2]
    for i in range(m):
        sets.append(_normalize_rows(coords + h * frames[:, :, i]))
        sets.append(_normalize_rows(coords - h * frames[:, :, i]))
    return sets


def _density_from_values(vals: Sequence[np.ndarray], h: float) -> np.ndarray:
    """Oriented Jacobian determinants from evaluated point sets."""
    y0 = vals[0]
    n, d = y0.shape
    m = d - 1
    target_frames = tangent_frames(y0)
    diff = np.empty((n, m, d))
    for i in range(m):
        diff[:, i, :] = (vals[2 * i + 1] - vals[2 * i + 2]) / (2.0 * h)
    mat = np.einsum("nid,ndj->nij", diff, target_frames)
    return np.linalg.det(mat)


def _pack_columns(mat: np.ndarray, j: int) -> np.ndarray:
    """Column j (1-based) of a (N, n, n) stack as (N, 2n) sphere coordinates."""
    col = mat[:, :, j - 1]
    out = np.empty((col.shape[0], 2 * col.shape[1]))
    out[:, 0::2] = col.real
    out[:, 1::2] = col.imag
    return out


def jacobian_sign_density(f: SphereValuedMap, x, h: float = 1e-5) -> float:
    """Oriented Jacobian determinant of a sphere self-map at one point."""
    _check_h(h)
    if not f.is_self:
        raise ValueError(f"{f.name} is not a self-map; degree is undefined")
    coords = np.atleast_2d(coords_of(x))
    frames = tangent_frames(coords)
    sets = _point_sets(coords, frames, h)
    vals = [f.eval_batch_fn(s) for s in sets]
    return float(_density_from_values(vals, h)[0])


# ----------------------------------------------------- chunked Monte Carlo

#: Work description handed to forked workers via module global (the map
#: evaluators close over numpy arrays and are not picklable).
_ACTIVE: dict = {}


def _chunk_stats(chunk: int):
    """Per-chunk reduction: sums, sum of squares, finite/non-finite counts,
    and the worst Richardson (h vs h/2) discrepancy on the leading 1%."""
    mode = _ACTIVE["mode"]
    ev: Callable[[np.ndarray], np.ndarray] = _ACTIVE["eval"]
    m: int = _ACTIVE["m"]
    h: float = _ACTIVE["h"]
    seed: int = _ACTIVE["seed"]
    samples: int = _ACTIVE["samples"]

    take = min(CHUNK, samples - chunk * CHUNK)
    pts = _stream_chunk(m, seed, chunk)[:take]
    frames = tangent_frames(pts)
    sets = _point_sets(pts, frames, h)
    k = max(1, take // 100)
    sets_half = _point_sets(pts[:k], frames[:k], h / 2.0)

    if mode == "self":
        dens = _density_from_values([ev(s) for s in sets], h)
        dens_half = _density_from_values([ev(s) for s in sets_half], h / 2.0)
        return chunk, _reduce_chunk(dens), _richardson(dens[:k], dens_half)

    cols: Sequence[int] = _ACTIVE["columns"]
    mats = [ev(s) for s in sets]
    mats_half = [ev(s) for s in sets_half]
    stats = np.empty((len(cols), 4))
    rich = np.empty(len(cols))
    for idx, j in enumerate(cols):
        dens = _density_from_values([_pack_columns(v, j) for v in mats], h)
        dens_half = _density_from_values(
            [_pack_columns(v, j) for v in mats_half], h / 2.0
        )
        stats[idx] = _reduce_chunk(dens)
        rich[idx] = _richardson(dens[:k], dens_half)
    return chunk, stats, rich


def _reduce_chunk(dens: np.ndarray) -> np.ndarray:
    finite = np.isfinite(dens)
    good = dens[finite]
    return np.array(
        [np.sum(good), np.sum(good * good), float(good.size), float(dens.size - good.size)]
    )


def _richardson(dens_h: np.ndarray, dens_half: np.ndarray) -> float:
    delta = np.abs(dens_h - dens_half)
    delta = delta[np.isfinite(delta)]
    return float(np.max(delta)) if delta.size else np.inf


def _run_chunks(threads: int, nchunks: int) -> list:
    if threads <= 1:
        return [_chunk_stats(c) for c in range(nchunks)]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=threads, mp_context=ctx) as pool:
        return list(pool.map(_chunk_stats, range(nchunks)))


def _estimate_from_totals(
    name: str,
    totals: np.ndarray,
    rich_max: float,
    samples: int,
    seed: int,
    h: float,
) -> DegreeEstimate:
    s, ss, nf, nonf = totals
    if samples and nonf / samples > NONFINITE_LIMIT:
        raise DegreeError(
            f"{name}: non-finite density at {int(nonf)} of {samples} samples; "
            "map is not smooth enough for this engine"
        )
    raw = s / nf
    var = max(ss / nf - raw * raw, 0.0)
    stderr = math.sqrt(var / nf)
    rounded = int(round(raw))
    band = 3.0 * max(stderr, STDERR_FLOOR)
    certified = band <= GATE_ABS and abs(raw - rounded) < band
    return DegreeEstimate(
        map_name=name,
        raw=float(raw),
        stderr=float(stderr),
        samples=samples,
        rounded=rounded,
        certified=bool(certified),
        method="mc",
        seed=seed,
        h=h,
        flagged=bool(rich_max > RICHARDSON_TOL),
        nonfinite=int(nonf),
    )


def degree_mc(
    f: SphereValuedMap,
    samples: int = 100_000,
    seed: int = 0,
    h: float = 1e-5,
    threads: int = 1,
) -> DegreeEstimate:
    """Monte Carlo degree of a sphere self-map."""
    _check_h(h)
    if samples < 10_000:
        raise ValueError("degree_mc needs at least 10_000 samples")
    if not f.is_self:
        raise ValueError(f"{f.name} is not a self-map; degree is undefined")
    nchunks = (samples + CHUNK - 1) // CHUNK
    _ACTIVE.clear()
    _ACTIVE.update(
        mode="self", eval=f.eval_batch_fn, m=f.domain_dim, h=h, seed=seed, samples=samples
    )
    results = _run_chunks(threads, nchunks)
    results.sort(key=lambda r: r[0])
    per_chunk = np.stack([r[1] for r in results])
    totals = np.sum(per_chunk, axis=0)
    rich = float(np.max([r[2] for r in results]))
    return _estimate_from_totals(f.name, totals, rich, samples, seed, h)


def column_estimates(
    theta: UnitarySphereMap,
    columns: Sequence[int],
    samples: int,
    seed: int = 0,
    h: float = 1e-5,
    threads: int = 1,
) -> list[DegreeEstimate]:
    """degree_mc of column(theta, j) for several j, sharing the map
    evaluations; results are bit-identical to the per-column runs."""
    _check_h(h)
    if samples < 10_000:
        raise ValueError("degree_mc needs at least 10_000 samples")
    n = theta.target_size
    if theta.domain_dim != 2 * n - 1:
        raise ValueError(
            f"columns of {theta.name} map S^{theta.domain_dim} to S^{2 * n - 1}; "
            "degree needs a self-map"
        )
    for j in columns:
        if not 1 <= j <= n:
            raise ValueError(f"column {j} outside 1..{n}")
    nchunks = (samples + CHUNK - 1) // CHUNK
    _ACTIVE.clear()
    _ACTIVE.update(
        mode="columns",
        eval=theta.eval_batch_fn,
        m=theta.domain_dim,
        h=h,
        seed=seed,
        samples=samples,
        columns=tuple(columns),
    )
    results = _run_chunks(threads, nchunks)
    results.sort(key=lambda r: r[0])
    per_chunk = np.stack([r[1] for r in results])  # (chunks, ncols, 4)
    totals = np.sum(per_chunk, axis=0)
    rich = np.max(np.stack([r[2] for r in results]), axis=0)
    return [
        _estimate_from_totals(
            column(theta, j).name, totals[idx], float(rich[idx]), samples, seed, h
        )
        for idx, j in enumerate(columns)
    ]


# ------------------------------------------------------------ certification

def _certify(
    theta: UnitarySphereMap,
    expected: int,
    samples: int,
    seed: int,
    h: float,
    threads: int,
) -> GeneratorCertificate:
    n = theta.target_size
    ests = column_estimates(theta, range(1, n + 1), samples, seed, h, threads)
    if all(e.certified for e in ests):
        values = {e.rounded for e in ests}
        if len(values) == 1 and abs(ests[0].rounded) == expected:
            verdict, sign = "PASS", int(np.sign(ests[0].rounded)) if expected else 0
        else:
            verdict, sign = "FAIL", None
    else:
        verdict, sign = "INCONCLUSIVE", None
    return GeneratorCertificate(
        map_name=theta.name,
        expected=expected,
        columns=tuple(ests),
        verdict=verdict,
        sign=sign,
        samples=samples,
        seed=seed,
    )


def certify_generator(
    theta: UnitarySphereMap,
    samples: int = 1_000_000,
    seed: int = 0,
    h: float = 1e-5,
    threads: int = 1,
) -> GeneratorCertificate:
    """PASS iff every column of theta: S^{2n-1} -> U(n) certifies the same
    signed degree with magnitude (n-1)!."""
    n = theta.target_size
    if theta.domain_dim != 2 * n - 1:
        raise ValueError(f"{theta.name} does not map S^{2 * n - 1} into U({n})")
    return _certify(theta, math.factorial(n - 1), samples, seed, h, threads)


def certify_sp_generator(
    g: UnitarySphereMap,
    samples: int = 1_000_000,
    seed: int = 0,
    h: float = 1e-5,
    threads: int = 1,
) -> GeneratorCertificate:
    """PASS iff every column of symplectic-valued g: S^{4m-1} -> Sp(m)
    certifies one signed degree of magnitude (2m-1)! (odd m) or
    2 (2m-1)! (even m)."""
    if g.target_size % 2 != 0:
        raise ValueError(f"{g.name} has odd target size; not symplectic")
    m = g.target_size // 2
    if g.domain_dim != 4 * m - 1:
        raise ValueError(f"{g.name} does not map S^{4 * m - 1} into Sp({m})")
    probes = sample_uniform(g.domain_dim, 256, 1729)
    vals = g.eval_batch_fn(probes)
    worst = 0.0
    for i in range(vals.shape[0]):
        worst = max(worst, linalg.is_symplectic(vals[i], "interleaved", 1e-9).residual)
    if worst > 1e-9:
        raise ValueError(
            f"{g.name} is not symplectic on probe points (residual {worst:.3e})"
        )
    expected = math.factorial(2 * m - 1) * (1 if m % 2 == 1 else 2)
    return _certify(g, expected, samples, seed, h, threads)


# -------------------------------------------------------- preimage counting

def _chart_project_batch(x: np.ndarray, house: np.ndarray) -> np.ndarray:
    y = x @ house  # house is symmetric
    return y[:, :-1] / (1.0 - y[:, -1])[:, None]


def _chart_lift_batch(u: np.ndarray, house: np.ndarray) -> np.ndarray:
    s = np.sum(u * u, axis=1)
    y = np.empty((u.shape[0], u.shape[1] + 1))
    y[:, :-1] = 2.0 * u / (s + 1.0)[:, None]
    y[:, -1] = (s - 1.0) / (s + 1.0)
    return y @ house


def _chart_map_batch(
    f_eval: Callable[[np.ndarray], np.ndarray],
    u: np.ndarray,
    house: np.ndarray,
    u_target: np.ndarray,
) -> np.ndarray:
    x = _chart_lift_batch(u, house)
    return _chart_project_batch(f_eval(x), house) - u_target


def _chart_jacobians(f_eval, u: np.ndarray, house, u_target) -> np.ndarray:
    s, m = u.shape
    hs = 1e-6 * np.maximum(1.0, np.linalg.norm(u, axis=1))
    jac = np.empty((s, m, m))
    for i in range(m):
        du = np.zeros_like(u)
        du[:, i] = hs
        gp = _chart_map_batch(f_eval, u + du, house, u_target)
        gm = _chart_map_batch(f_eval, u - du, house, u_target)
        jac[:, :, i] = (gp - gm) / (2.0 * hs)[:, None]
    return jac


def _roots_in_chart(
    f_eval, pole: np.ndarray, target: np.ndarray, starts: np.ndarray, tol: float
) -> list[np.ndarray]:
    """Newton runs from all starts in the chart opposite `pole`; returns the
    converged, deduplicated roots as sphere points."""
    house = _householder_to_last(pole)
    u_target = _chart_project_batch(target[None, :], house)[0]
    u = _chart_project_batch(starts, house)
    alive = np.linalg.norm(u, axis=1) < 1e3
    u = u[alive]
    for _ in range(60):
        if u.shape[0] == 0:
            break
        g = _chart_map_batch(f_eval, u, house, u_target)
        res = np.linalg.norm(g, axis=1)
        jac = _chart_jacobians(f_eval, u, house, u_target)
        dets = np.linalg.det(jac)
        ok = np.isfinite(res) & (np.abs(dets) > 1e-300)
        jac[~ok] = np.eye(u.shape[1])
        step = np.linalg.solve(jac, g[:, :, None])[:, :, 0]
        step_len = np.linalg.norm(step, axis=1)
        step[step_len > 1.0] /= step_len[step_len > 1.0][:, None]  # damped far out
        u = u - np.where((res > tol)[:, None], step, 0.0)
        keep = ok & (np.linalg.norm(u, axis=1) < 1e3)
        u = u[keep]
    if u.shape[0] == 0:
        return []
    g = _chart_map_batch(f_eval, u, house, u_target)
    conv = np.linalg.norm(g, axis=1) < tol
    roots = _chart_lift_batch(u[conv], house)
    out: list[np.ndarray] = []
    for r in roots:
        if all(np.linalg.norm(r - q) > 1e-6 for q in out):
            out.append(r)
    return out


def _signed_count(
    f: SphereValuedMap, target: np.ndarray, starts: np.ndarray, tol: float
) -> tuple[int, int]:
    """(signed count, root count) for one target, using two opposite chart
    poles orthogonal to the target so every root is interior to some chart."""
    d = target.size
    q = np.zeros(d)
    q[int(np.argmin(np.abs(target)))] = 1.0
    q -= target * float(target @ q)
    q /= np.linalg.norm(q)
    roots: list[np.ndarray] = []
    for pole in (q, -q):
        for r in _roots_in_chart(f.eval_batch_fn, pole, target, starts, tol):
            if all(np.linalg.norm(r - p) > 1e-6 for p in roots):
                roots.append(r)
    total = 0
    for r in roots:
        # evaluate the sign in the chart where the root sits most centrally
        pole = q if np.linalg.norm(r - q) > np.linalg.norm(r + q) else -q
        house = _householder_to_last(pole)
        u_target = _chart_project_batch(target[None, :], house)[0]
        u = _chart_project_batch(r[None, :], house)
        jac = _chart_jacobians(f.eval_batch_fn, u, house, u_target)[0]
        det = float(np.linalg.det(jac))
        if abs(det) < 1e-6:
            raise NonRegularTargetError(
                f"{f.name}: preimage Jacobian {det:.3e} at a root; pick another target"
            )
        total += 1 if det > 0 else -1
    return total, len(roots)


def degree_preimage(
    f: SphereValuedMap,
    target=None,
    starts: int = 128,
    seed: int = 0,
    newton_tol: float = 1e-10,
) -> PreimageCount:
    """Signed preimage count of a self-map over two targets (they must agree)."""
    if not f.is_self:
        raise ValueError(f"{f.name} is not a self-map; degree is undefined")
    m = f.domain_dim
    drawn = sample_uniform(m, 2, seed + 1_000_003)
    if target is not None:
        t0 = coords_of(target)
        if t0.shape != (m + 1,):
            raise ValueError(f"target must lie on S^{m} ({m + 1} coordinates)")
        check_unit(t0)
        targets = (t0, drawn[0])
    else:
        targets = (drawn[0], drawn[1])
    start_pts = sample_uniform(m, starts, seed)
    counts, nroots = [], []
    for t in targets:
        c, k = _signed_count(f, t, start_pts, newton_tol)
        counts.append(c)
        nroots.append(k)
    if counts[0] != counts[1]:
        raise InsufficientStartsError(
            f"{f.name}: signed counts {counts[0]} and {counts[1]} disagree between "
            "targets; increase starts"
        )
    return PreimageCount(
        map_name=f.name,
        value=counts[0],
        root_counts=(nroots[0], nroots[1]),
        targets=(targets[0], targets[1]),
        starts=starts,
        seed=seed,
    )

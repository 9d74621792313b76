"""Named verification suites.

Each suite binds a family of matrix identities (or degree claims) to seeded,
reproducible residual measurements and aggregates them into a report whose
serialization is byte-stable: identical (suite, config, seed) always produce
identical report files, independent of thread count.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

import numpy as np

from . import degree, linalg, maps
from ._version import __version__
from .sphere import sample_uniform, suspension_chart

SCHEMA = "bottlab-report/1"
DEFAULT_SAMPLES = 10_000  # pointwise identity checks
DEFAULT_H = 1e-5
DEFAULT_N_RANGE = (2, 5)

_STATUS_ORDER = {"PASS": 0, "INCONCLUSIVE": 1, "FAIL": 2, "ERROR": 3}


# ------------------------------------------------------------ result types

@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check.

    `anchor` states the identity or degree claim being measured; `details`
    is a single human-readable line (estimates, residual breakdowns, or the
    reason a hypothesis was unmet).
    """

    name: str
    status: str  # PASS | FAIL | INCONCLUSIVE | ERROR
    max_residual: float | None
    samples: int | None
    seed: int | None
    anchor: str
    details: str = ""

    def __post_init__(self):
        if self.status not in _STATUS_ORDER:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by all suites.

    `threads` and `out` steer execution only and are never echoed into
    reports, so reports stay byte-identical across thread counts.
    """

    seed: int = 0
    samples: int | None = None
    h: float = DEFAULT_H
    tolerances: dict[str, float] = field(default_factory=dict)
    threads: int = 1
    out: str | None = None
    n_range: tuple[int, int] = DEFAULT_N_RANGE


@dataclass(frozen=True)
class Report:
    suite: str
    version: str
    command: str
    config: RunConfig
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> str:
        if not self.checks:
            return "PASS"
        return max((c.status for c in self.checks), key=_STATUS_ORDER.__getitem__)


def canonical_command(suite: str, config: RunConfig) -> str:
    """The normalized command line reproducing a run (execution-only knobs
    such as --threads and --out excluded)."""
    parts = ["bottlab", "verify", suite, "--seed", str(config.seed)]
    if config.samples is not None:
        parts += ["--samples", str(config.samples)]
    if config.h != DEFAULT_H:
        parts += ["--h", repr(config.h)]
    for name in sorted(config.tolerances):
        parts += ["--tol", f"{name}={config.tolerances[name]!r}"]
    if config.n_range != DEFAULT_N_RANGE:
        parts += ["--n", f"{config.n_range[0]}..{config.n_range[1]}"]
    return " ".join(parts)


# ---------------------------------------------------------- serialization

def _fmt_opt(v) -> str:
    return "-" if v is None else repr(v) if isinstance(v, float) else str(v)


def _one_line(s: str) -> str:
    return " ; ".join(s.splitlines()) if "\n" in s else s


def serialize_report(report: Report) -> str:
    cfg = report.config
    tol = (
        ",".join(f"{k}={cfg.tolerances[k]!r}" for k in sorted(cfg.tolerances))
        if cfg.tolerances
        else "-"
    )
    lines = [
        SCHEMA,
        f"suite: {report.suite}",
        f"version: {report.version}",
        f"command: {report.command}",
        f"config.seed: {cfg.seed}",
        f"config.samples: {_fmt_opt(cfg.samples)}",
        f"config.h: {cfg.h!r}",
        f"config.n_range: {cfg.n_range[0]}..{cfg.n_range[1]}",
        f"config.tolerances: {tol}",
        f"checks: {len(report.checks)}",
        f"overall: {report.overall}",
    ]
    for c in report.checks:
        lines.append("--")
        lines.append(f"name: {c.name}")
        lines.append(f"anchor: {_one_line(c.anchor)}")
        lines.append(f"status: {c.status}")
        lines.append(f"max_residual: {_fmt_opt(c.max_residual)}")
        lines.append(f"samples: {_fmt_opt(c.samples)}")
        lines.append(f"seed: {_fmt_opt(c.seed)}")
        lines.append(f"details: {_one_line(c.details) or '-'}")
    return "\n".join(lines) + "\n"


def _field(line: str, key: str) -> str:
    prefix = key + ":"
    if not line.startswith(prefix):
        raise ValueError(f"malformed report line {line!r}, expected {key!r}")
    return line[len(prefix):].strip()


def parse_report(text: str) -> Report:
    """Inverse of serialize_report (modulo the execution-only config knobs,
    which are not persisted)."""
    blocks = text.rstrip("\n").split("\n--\n")
    head = blocks[0].split("\n")
    if head[0] != SCHEMA:
        raise ValueError(f"unknown report schema {head[0]!r}")
    suite = _field(head[1], "suite")
    version = _field(head[2], "version")
    command = _field(head[3], "command")
    seed = int(_field(head[4], "config.seed"))
    samples_s = _field(head[5], "config.samples")
    h = float(_field(head[6], "config.h"))
    lo, hi = _field(head[7], "config.n_range").split("..")
    tol_s = _field(head[8], "config.tolerances")
    tolerances = {}
    if tol_s != "-":
        for item in tol_s.split(","):
            k, v = item.rsplit("=", 1)
            tolerances[k] = float(v)
    count = int(_field(head[9], "checks"))
    config = RunConfig(
        seed=seed,
        samples=None if samples_s == "-" else int(samples_s),
        h=h,
        tolerances=tolerances,
        n_range=(int(lo), int(hi)),
    )
    checks = []
    for block in blocks[1:]:
        rows = block.split("\n")
        resid_s = _field(rows[3], "max_residual")
        samp_s = _field(rows[4], "samples")
        seed_s = _field(rows[5], "seed")
        details = _field(rows[6], "details")
        checks.append(
            CheckResult(
                name=_field(rows[0], "name"),
                anchor=_field(rows[1], "anchor"),
                status=_field(rows[2], "status"),
                max_residual=None if resid_s == "-" else float(resid_s),
                samples=None if samp_s == "-" else int(samp_s),
                seed=None if seed_s == "-" else int(seed_s),
                details="" if details == "-" else details,
            )
        )
    if len(checks) != count:
        raise ValueError(f"report announces {count} checks, found {len(checks)}")
    return Report(suite, version, command, config, tuple(checks))


# ------------------------------------------------------------ check engine

def _pack(zc: np.ndarray) -> np.ndarray:
    out = np.empty(zc.shape[:-1] + (2 * zc.shape[-1],))
    out[..., 0::2], out[..., 1::2] = zc.real, zc.imag
    return out


def _unpack(c: np.ndarray) -> np.ndarray:
    return c[..., 0::2] + 1j * c[..., 1::2]


def _fro_max(a: np.ndarray) -> float:
    """Max Frobenius norm over the leading axis of a stack of matrices."""
    return float(np.sqrt(np.abs(a * a.conj()).sum(axis=(-2, -1))).max())


def _residual_status(resid: float, tol: float) -> str:
    return "PASS" if resid <= tol else "FAIL"


def check_pointwise_identity(
    f: maps.UnitarySphereMap,
    g: maps.UnitarySphereMap,
    samples: int,
    tol: float,
    seed: int = 0,
    name: str | None = None,
    anchor: str = "",
) -> CheckResult:
    """Max over seeded sphere samples of ||f(x) - g(x)||_F against tol."""
    name = name or f"{f.name}-vs-{g.name}"
    if f.domain_dim != g.domain_dim or f.target_size != g.target_size:
        return CheckResult(
            name,
            "ERROR",
            None,
            None,
            seed,
            anchor,
            details=(
                f"domain mismatch: {f.name} maps S^{f.domain_dim} into "
                f"U({f.target_size}), {g.name} maps S^{g.domain_dim} into "
                f"U({g.target_size})"
            ),
        )
    coords = sample_uniform(f.domain_dim, samples, seed)
    resid = _fro_max(f.eval_batch(coords) - g.eval_batch(coords))
    return CheckResult(name, _residual_status(resid, tol), resid, samples, seed, anchor)


def check_symmetric_to_sp(
    theta: maps.UnitarySphereMap,
    samples: int,
    tol: float,
    seed: int = 0,
    name: str = "symmetric-to-sp",
    anchor: str = "",
) -> CheckResult:
    """theta must take symmetric values; then bott(theta) must take values
    in the split-form symplectic group."""
    coords = sample_uniform(theta.domain_dim, samples, seed)
    vals = theta.eval_batch(coords)
    sym = _fro_max(vals - np.swapaxes(vals, -2, -1))
    if sym > tol:
        return CheckResult(
            name,
            "FAIL",
            sym,
            samples,
            seed,
            anchor,
            details=f"hypothesis unmet: values are not symmetric (residual {sym:.3e})",
        )
    b = maps.bott(theta)
    bvals = b.eval_batch(sample_uniform(b.domain_dim, samples, seed + 1))
    j = linalg.j_matrix(theta.target_size, "split")
    sp = _fro_max(np.swapaxes(bvals, -2, -1) @ j @ bvals - j)
    un = _fro_max(np.swapaxes(bvals.conj(), -2, -1) @ bvals - np.eye(b.target_size))
    resid = max(sym, sp, un)
    return CheckResult(
        name,
        _residual_status(resid, tol),
        resid,
        samples,
        seed,
        anchor,
        details=f"symmetry {sym:.3e}, split form {sp:.3e}, unitarity {un:.3e}",
    )


# ----------------------------------------------------------- suite pieces

@dataclass(frozen=True)
class _CheckDef:
    name: str
    anchor: str
    tol: float
    samples: int
    kind: str  # "identity" | "degree"
    run: Callable[[int, float, int], CheckResult] = field(repr=False)


def _residual_check(name, anchor, tol, samples, fn, details_fn=None):
    """fn(samples, seed) -> residual (or (residual, details))."""

    def run(n: int, t: float, seed: int) -> CheckResult:
        out = fn(n, seed)
        resid, details = out if isinstance(out, tuple) else (out, "")
        return CheckResult(name, _residual_status(resid, t), resid, n, seed, anchor, details)

    return _CheckDef(name, anchor, tol, samples, "identity", run)


def _uniform(seed: int, count: int, lo: float, hi: float) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed))
    return lo + (hi - lo) * rng.random(count)


def _rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q = q[:, [1, 0, 2]]
    return q


def _estimate_line(ests: Iterable[degree.DegreeEstimate]) -> str:
    ests = list(ests)
    raw = ", ".join(f"{e.raw:.6f}" for e in ests)
    err = ", ".join(f"{e.stderr:.2e}" for e in ests)
    rnd = ", ".join(str(e.rounded) for e in ests)
    crt = ", ".join("yes" if e.certified else "no" for e in ests)
    return f"raw [{raw}] stderr [{err}] rounded [{rnd}] certified [{crt}]"


def _generator_check(name, anchor, samples, map_fn):
    def run(n: int, _tol: float, seed: int) -> CheckResult:
        threads = _RUN_THREADS.get()
        cert = degree.certify_generator(
            map_fn(), samples=n, seed=seed, h=_RUN_H.get(), threads=threads
        )
        resid = max(abs(e.raw - e.rounded) for e in cert.columns)
        return CheckResult(
            name, cert.verdict, resid, n, seed, anchor, _estimate_line(cert.columns)
        )

    return _CheckDef(name, anchor, 0.0, samples, "degree", run)


def _integer_check(name, anchor, samples, self_map_fns, expected):
    """Each self-map must certify the matching expected integer."""

    def run(n: int, _tol: float, seed: int) -> CheckResult:
        ests = [
            degree.degree_mc(
                fn(), samples=n, seed=seed + i, h=_RUN_H.get(), threads=_RUN_THREADS.get()
            )
            for i, fn in enumerate(self_map_fns)
        ]
        if all(e.certified for e in ests):
            ok = all(e.rounded == want for e, want in zip(ests, expected))
            status = "PASS" if ok else "FAIL"
        else:
            status = "INCONCLUSIVE"
        resid = max(abs(e.raw - e.rounded) for e in ests)
        return CheckResult(name, status, resid, n, seed, anchor, _estimate_line(ests))

    return _CheckDef(name, anchor, 0.0, samples, "degree", run)


class _Slot:
    """A module-level slot for per-run execution knobs (threads, h) so check
    closures stay picklable-free and signature-stable."""

    def __init__(self, default):
        self.default = default
        self.value = default

    def get(self):
        return self.value

    def set(self, value):
        self.value = value


_RUN_THREADS = _Slot(1)
_RUN_H = _Slot(DEFAULT_H)


# ------------------------------------------------------------- the suites

def _checks_stable() -> list[_CheckDef]:
    def zeta_unitarity(n, seed):
        worst = 0.0
        for k in (1, 2, 3, 4):
            vals = maps.zeta(k).eval_batch(sample_uniform(2 * k - 1, n, seed + k))
            eye = np.eye(2 ** (k - 1))
            worst = max(worst, _fro_max(np.swapaxes(vals.conj(), 1, 2) @ vals - eye))
            if k >= 2:
                worst = max(worst, float(np.abs(np.linalg.det(vals) - 1.0).max()))
        return worst

    def eta3_to_eta(n, seed):
        coords = sample_uniform(5, n, seed)
        flipped = coords.copy()
        flipped[:, [1, 5]] *= -1.0  # conjugate the first and third complex slots
        lhs = maps.ETA3_TO_ETA_LEFT @ maps.eta_n(3).eval_batch(flipped) @ maps.ETA3_TO_ETA_RIGHT
        return _fro_max(lhs - maps.eta_cross().eval_batch(coords))

    def deform_endpoints(n, seed):
        src = maps.zeta(3)
        reduced = maps.lundell_reduce(src, 1)
        step = maps.lundell_steps(src, 1)[0]
        coords = sample_uniform(5, min(n, 256), seed)
        worst = 0.0
        for x in coords:
            exchanged = step.exchange_path(np.pi / 2.0, x)
            top = np.zeros((4, 4), dtype=complex)
            top[:3, :3] = reduced(x)
            top[3, 3] = 1.0
            worst = max(
                worst,
                linalg.frobenius(step.exchange_path(0.0, x) - src(x)),
                linalg.frobenius(step.deform_path(0.0, x) - exchanged),
                linalg.frobenius(step.deform_path(np.pi / 2.0, x) - top),
            )
        return worst

    return [
        _residual_check(
            "zeta-unitarity",
            "each bott iterate zeta_k takes unitary values, with det = 1 once k >= 2",
            1e-10,
            DEFAULT_SAMPLES,
            zeta_unitarity,
        ),
        _residual_check(
            "bott-base-case",
            "bott applied to z -> [z] is (w, z) -> [[w, -conj z], [z, conj w]]",
            1e-12,
            DEFAULT_SAMPLES,
            lambda n, seed: _fro_max(
                maps.bott(maps.zeta(1)).eval_batch(c := sample_uniform(3, n, seed))
                - maps.zeta(2).eval_batch(c)
            ),
        ),
        _residual_check(
            "lundell-eta3",
            "one reduction step of bott(zeta2) equals the closed-form S^5 -> SU(3) map",
            1e-12,
            DEFAULT_SAMPLES,
            lambda n, seed: _fro_max(
                maps.lundell_reduce(maps.zeta(3), 1).eval_batch(c := sample_uniform(5, n, seed))
                - maps.eta3_closed().eval_batch(c)
            ),
        ),
        _residual_check(
            "eta3-to-eta",
            "fixed unitaries L, R carry eta3 (slots 1 and 3 conjugated) onto the "
            "cross-product map",
            1e-12,
            DEFAULT_SAMPLES,
            eta3_to_eta,
        ),
        _residual_check(
            "deform-endpoints",
            "the exchange and corner paths start at the source map and end at the "
            "reduced map plus a trailing 1",
            1e-12,
            256,
            deform_endpoints,
        ),
    ]


def _checks_eta_cross() -> list[_CheckDef]:
    def fixed_column(n, seed):
        coords = sample_uniform(5, n, seed)
        zc = _unpack(coords)
        vals = maps.eta_cross().eval_batch(coords)
        return float(
            np.abs(np.einsum("nij,nj->ni", vals, zc.conj()) - zc).max()
        )

    def equivariance(n, seed):
        rng = np.random.Generator(np.random.Philox(seed))
        zc = _unpack(sample_uniform(5, n, seed + 1))
        eta = maps.eta_cross()
        worst = 0.0
        for i in range(n):
            b = _rotation(rng)
            lhs = eta.eval_batch(_pack((b @ zc[i])[None, :]))[0]
            rhs = b @ eta.eval_batch(_pack(zc[i][None, :]))[0] @ b.T
            worst = max(worst, linalg.frobenius(lhs - rhs))
        return worst

    return [
        _residual_check(
            "eta-fixed-column",
            "eta(z) conj(z) = z: each value carries conj(z) back to the base point",
            1e-12,
            DEFAULT_SAMPLES,
            fixed_column,
        ),
        _residual_check(
            "eta-equivariance",
            "eta(Bz) = B eta(z) B^T for every real rotation B of C^3",
            1e-10,
            100,
            equivariance,
        ),
        _residual_check(
            "eta-geodesic-value",
            "eta(e1) equals the quarter-turn geodesic value c(pi/2)",
            1e-12,
            1,
            lambda n, seed: linalg.frobenius(
                maps.eta_cross()([1.0, 0, 0, 0, 0, 0]) - maps.geodesic_c(np.pi / 2.0)
            ),
        ),
        _residual_check(
            "eta-cartan",
            "eta(z) conj(eta(z)) = 2 z conj(z)^T - I, the symmetric-space "
            "embedding of CP^2",
            1e-12,
            DEFAULT_SAMPLES,
            lambda n, seed: _fro_max(
                maps.pointwise_product(maps.eta_cross(), maps.conjugate(maps.eta_cross()))
                .eval_batch(c := sample_uniform(5, n, seed))
                - maps.cartan_cp2().eval_batch(c)
            ),
        ),
        _generator_check(
            "eta-generates",
            "every column of the cross-product map has mapping degree 2 with a "
            "column-independent sign",
            4_000_000,
            maps.eta_cross,
        ),
    ]


def _checks_phi_psi(n_range: tuple[int, int]) -> list[_CheckDef]:
    checks: list[_CheckDef] = []
    for n in range(n_range[0], n_range[1] + 1):
        t_max = 2.0 * np.pi / n

        def hat_endpoints(count, seed, n=n, t_max=t_max):
            zc = sample_uniform(2 * n - 1, count, seed)
            hat = maps.phi_hat(n)
            eye = np.eye(n)
            start = _fro_max(hat.eval_batch(np.zeros(count), zc) - eye)
            end = _fro_max(
                hat.eval_batch(np.full(count, t_max), zc) - np.exp(-1j * t_max) * eye
            )
            return max(start, end), f"t=0 residual {start:.3e}, t=2pi/n residual {end:.3e}"

        def factorization(count, seed, n=n, t_max=t_max):
            ts = _uniform(seed, count, 0.0, t_max)
            zc = sample_uniform(2 * n - 1, count, seed + 1)
            hat_vals = maps.phi_hat(n).eval_batch(ts, zc)
            ph = maps.phi(n)
            coords = np.stack(
                [suspension_chart(n, t, z).coords for t, z in zip(ts, zc)]
            )
            return _fro_max(ph.eval_batch(coords) - hat_vals)

        def conjugation_form(count, seed, n=n, t_max=t_max):
            ts = _uniform(seed, count, 0.0, t_max)
            hat = maps.phi_hat(n)
            worst = 0.0
            for i in range(count):
                a = linalg.random_special_unitary(n, seed + i)
                d = np.full(n, np.exp(-1j * ts[i]), dtype=complex)
                d[0] = np.exp(1j * (n - 1) * ts[i])
                rhs = (a * d) @ a.conj().T
                lhs = hat.eval_batch(ts[i : i + 1], _pack(a[:, 0][None, :]))[0]
                worst = max(worst, linalg.frobenius(lhs - rhs))
            return worst

        def steenrod(count, seed, n=n):
            vals = maps.phi_steenrod(n).eval_batch(sample_uniform(2 * n, count, seed))
            return _fro_max(np.swapaxes(vals.conj(), 1, 2) @ vals - np.eye(n))

        def psi_product(count, seed, n=n, t_max=t_max):
            g = maps.eta_n(n)
            ts = _uniform(seed, count, 0.0, t_max)
            zc = sample_uniform(2 * n - 1, count, seed + 1)
            prod = np.broadcast_to(np.eye(n, dtype=complex), (count, n, n)).copy()
            for j in range(1, n + 1):
                prod = prod @ maps.psi(n, j, g).eval_batch(ts, zc)
            return _fro_max(prod - np.eye(n))

        def psi_commute(count, seed, n=n, t_max=t_max):
            g = maps.eta_n(n)
            ts = _uniform(seed, count, 0.0, t_max)
            zc = sample_uniform(2 * n - 1, count, seed + 1)
            worst = 0.0
            for j, k in {(1, 2), (1, n), (2, n)}:
                if j == k:
                    continue
                a = maps.psi(n, j, g).eval_batch(ts, zc)
                b = maps.psi(n, k, g).eval_batch(ts, zc)
                worst = max(worst, _fro_max(a @ b - b @ a))
            return worst

        def homotopy_endpoints(count, seed, n=n, t_max=t_max):
            g = maps.eta_n(n)
            ts = _uniform(seed, count, 0.0, t_max)
            zc = sample_uniform(2 * n - 1, count, seed + 1)
            start = _fro_max(
                maps.psi_homotopy(n, g, 0.0).eval_batch(ts, zc)
                - maps.psi(n, 1, g).eval_batch(ts, zc)
            )
            end = _fro_max(
                maps.psi_homotopy(n, g, np.pi / 2.0).eval_batch(ts, zc)
                - maps.psi(n, 2, g).eval_batch(ts, zc)
            )
            return max(start, end), f"s=0 residual {start:.3e}, s=pi/2 residual {end:.3e}"

        checks += [
            _residual_check(
                f"phi-hat-endpoints.n={n}",
                "the cylinder family is the identity at t = 0 and the central "
                "element exp(-2 pi i/n) I at t = 2 pi/n",
                1e-12,
                DEFAULT_SAMPLES,
                hat_endpoints,
            ),
            _residual_check(
                f"phi-factorization.n={n}",
                "the sphere map composed with the suspension chart reproduces the "
                "cylinder family",
                1e-12,
                DEFAULT_SAMPLES,
                factorization,
            ),
            _residual_check(
                f"phi-conjugation-form.n={n}",
                "phi_hat(t, z) = A diag(e^{i(n-1)t}, e^{-it}, ...) A* whenever the "
                "first column of A in SU(n) is z",
                1e-10,
                100,
                conjugation_form,
            ),
            _residual_check(
                f"steenrod-unitary.n={n}",
                "the rational suspension form takes unitary values everywhere on "
                "the even sphere",
                1e-10,
                DEFAULT_SAMPLES,
                steenrod,
            ),
            _residual_check(
                f"psi-product.n={n}",
                "the n slot families multiply to the constant identity",
                1e-10,
                DEFAULT_SAMPLES,
                psi_product,
            ),
            _residual_check(
                f"psi-commute.n={n}",
                "the slot families commute pointwise",
                1e-10,
                DEFAULT_SAMPLES,
                psi_commute,
            ),
            _residual_check(
                f"psi-homotopy-endpoints.n={n}",
                "the rotation homotopy equals the first slot family at s = 0 and "
                "the second at s = pi/2",
                1e-12,
                DEFAULT_SAMPLES,
                homotopy_endpoints,
            ),
        ]
    return checks


def _checks_symplectic() -> list[_CheckDef]:
    def j_conventions(n, seed):
        worst = 0.0
        for m in (1, 2, 3):
            ji = linalg.j_matrix(m, "interleaved")
            js = linalg.j_matrix(m, "split")
            p = linalg.shuffle_permutation(m)
            eye = np.eye(2 * m)
            worst = max(
                worst,
                linalg.frobenius(p @ js @ p.T - ji),
                linalg.frobenius(ji @ ji + eye),
                linalg.frobenius(js @ js + eye),
            )
        return worst

    def phi12_vs_conjugation(n, seed):
        m = 2
        cyl = maps.phi12_prime(m)
        ts = _uniform(seed, n, 0.0, np.pi / m)
        worst = 0.0
        for i in range(n):
            a = linalg.random_symplectic(m, seed + i, "interleaved")
            d = np.full(2 * m, np.exp(-2j * ts[i]), dtype=complex)
            d[:2] = np.exp(1j * (2 * m - 2) * ts[i])
            rhs = (a * d) @ a.conj().T
            lhs = cyl.eval_batch(ts[i : i + 1], _pack(a[:, 0][None, :]))[0]
            worst = max(worst, linalg.frobenius(lhs - rhs))
        return worst

    def corner_vanishes(n, seed):
        worst = 0.0
        for m in (1, 2):
            vals = maps.phi2(m).eval_batch(sample_uniform(4 * m, n, seed + m))
            worst = max(worst, float(np.abs(vals[:, 1, 0]).max()))
        return worst

    def reduction_membership(n, seed):
        worst = 0.0
        for m in (1, 2):
            red = maps.phi2_reduced(m)
            coords = sample_uniform(4 * m, n, seed + m)
            poles = np.zeros((2, 4 * m + 1))
            poles[0, 0], poles[1, 0] = 1.0, -1.0
            vals = red.eval_batch(np.vstack([coords, poles]))
            k = red.target_size
            worst = max(
                worst,
                _fro_max(np.swapaxes(vals.conj(), 1, 2) @ vals - np.eye(k)),
                float(np.abs(np.linalg.det(vals) - 1.0).max()),
            )
        return worst

    def factorization(n, seed):
        worst = 0.0
        for m in (1, 2):
            coords = sample_uniform(4 * m, n, seed + m)
            ind = maps.induced_sphere_map(maps.phi12_prime(m))
            worst = max(
                worst, _fro_max(maps.phi2(m).eval_batch(coords) - ind.eval_batch(coords))
            )
        return worst

    def psi_prime_product(n, seed):
        m = 2
        g = maps.symplectic_frame(m)
        ts = _uniform(seed, n, 0.0, np.pi / m)
        zc = sample_uniform(4 * m - 1, n, seed + 1)
        prod = np.broadcast_to(np.eye(2 * m, dtype=complex), (n, 2 * m, 2 * m)).copy()
        for k in range(1, m + 1):
            prod = prod @ maps.psi_prime(m, k, g).eval_batch(ts, zc)
        return _fro_max(prod - np.eye(2 * m))

    def psi_prime_commute(n, seed):
        m = 2
        g = maps.symplectic_frame(m)
        ts = _uniform(seed, n, 0.0, np.pi / m)
        zc = sample_uniform(4 * m - 1, n, seed + 1)
        a = maps.psi_prime(m, 1, g).eval_batch(ts, zc)
        b = maps.psi_prime(m, 2, g).eval_batch(ts, zc)
        return _fro_max(a @ b - b @ a)

    def m1_constancy(n, seed):
        coords = sample_uniform(4, n, seed)
        ts = _uniform(seed + 1, n, 0.0, np.pi)
        zc = sample_uniform(3, n, seed + 2)
        return max(
            _fro_max(maps.phi12_prime(1).eval_batch(ts, zc) - np.eye(2)),
            _fro_max(maps.phi2(1).eval_batch(coords) - np.eye(2)),
            _fro_max(maps.phi2_reduced(1).eval_batch(coords) - np.eye(1)),
        )

    return [
        _residual_check(
            "j-conventions",
            "the interleaved and split skew forms square to -I and are conjugate "
            "by the perfect shuffle",
            1e-12,
            3,
            j_conventions,
        ),
        _residual_check(
            "phi12-closed-vs-conjugation",
            "e^{-2it}(I + (e^{2mit}-1)(z conj(z)^T + u conj(u)^T)) = A D(t) A* for "
            "A in Sp(m) with first column z and u = J conj(z)",
            1e-11,
            1000,
            phi12_vs_conjugation,
        ),
        _residual_check(
            "phi2-corner-vanishes",
            "the (2,1) entry of the suspended symplectic family vanishes identically",
            1e-12,
            DEFAULT_SAMPLES,
            corner_vanishes,
        ),
        _residual_check(
            "phi2-reduction-membership",
            "after the signed permutations the corner reduction lands in SU(2m-1), "
            "poles included",
            1e-10,
            DEFAULT_SAMPLES,
            reduction_membership,
        ),
        _residual_check(
            "phi2-factorization",
            "the even-sphere symplectic map is the suspension of the paired-slot "
            "cylinder family",
            1e-12,
            DEFAULT_SAMPLES,
            factorization,
        ),
        _residual_check(
            "psi-prime-product",
            "the m paired-slot families multiply to the constant identity",
            1e-10,
            DEFAULT_SAMPLES,
            psi_prime_product,
        ),
        _residual_check(
            "psi-prime-commute",
            "the paired-slot families commute pointwise",
            1e-10,
            DEFAULT_SAMPLES,
            psi_prime_commute,
        ),
        _residual_check(
            "m1-constancy",
            "for m = 1 the paired-slot family, its suspension, and the reduction "
            "are constant at the identity",
            1e-12,
            DEFAULT_SAMPLES,
            m1_constancy,
        ),
    ]


def _checks_conjugation() -> list[_CheckDef]:
    def zeta_conjugation(n, seed):
        worst = 0.0
        for k in (1, 2, 3, 4):
            coords = sample_uniform(2 * k - 1, n, seed + k)
            flipped = coords.copy()
            flipped[:, 1::2] *= -1.0
            z = maps.zeta(k)
            worst = max(worst, _fro_max(z.eval_batch(flipped) - z.eval_batch(coords).conj()))
        return worst

    def symmetric_values(n, seed):
        vals = maps.cartan_symmetrize(maps.eta_n(3)).eval_batch(sample_uniform(5, n, seed))
        return _fro_max(vals - np.swapaxes(vals, 1, 2))

    def candidate_membership(n, seed):
        sp = maps.sp_candidate(3, 3, maps.eta_n(3))
        vals = sp.eval_batch(sample_uniform(7, n, seed))
        j = linalg.j_matrix(3, "split")
        worst = max(
            _fro_max(np.swapaxes(vals, 1, 2) @ j @ vals - j),
            _fro_max(np.swapaxes(vals.conj(), 1, 2) @ vals - np.eye(6)),
            _fro_max(vals[:, 3:, 3:] - vals[:, :3, :3].conj()),
            _fro_max(vals[:, :3, 3:] + vals[:, 3:, :3].conj()),
        )
        north = np.zeros(8)
        north[0] = 1.0
        return max(worst, linalg.frobenius(sp(north) - np.eye(6)))

    base_anchor = "bott of a pointwise-symmetric map takes values in the split-form Sp"
    return [
        _residual_check(
            "zeta-conjugation",
            "zeta_k(conj z) = conj(zeta_k(z)) for k <= 4",
            1e-12,
            DEFAULT_SAMPLES,
            zeta_conjugation,
        ),
        _residual_check(
            "symmetric-values",
            "theta theta^T takes symmetric values",
            1e-12,
            DEFAULT_SAMPLES,
            symmetric_values,
        ),
        _CheckDef(
            "symmetric-to-sp-eta3",
            base_anchor,
            1e-10,
            DEFAULT_SAMPLES,
            "identity",
            lambda n, t, seed: check_symmetric_to_sp(
                maps.cartan_symmetrize(maps.eta_n(3)),
                n,
                t,
                seed,
                name="symmetric-to-sp-eta3",
                anchor=base_anchor,
            ),
        ),
        _CheckDef(
            "symmetric-to-sp-constant",
            base_anchor,
            1e-10,
            DEFAULT_SAMPLES,
            "identity",
            lambda n, t, seed: check_symmetric_to_sp(
                maps.constant_map(5, np.eye(3), "constant-identity"),
                n,
                t,
                seed,
                name="symmetric-to-sp-constant",
                anchor=base_anchor,
            ),
        ),
        _residual_check(
            "sp-candidate-membership",
            "the candidate lands in split Sp with block shape "
            "[[A, -conj B], [B, conj A]] and equals I at the base point",
            1e-10,
            DEFAULT_SAMPLES,
            candidate_membership,
        ),
    ]


def _checks_degrees() -> list[_CheckDef]:
    return [
        _generator_check(
            "generator-zeta2",
            "every column of zeta2 has mapping degree of magnitude (2-1)! = 1 "
            "with a column-independent sign",
            200_000,
            lambda: maps.zeta(2),
        ),
        _generator_check(
            "generator-eta-cross",
            "every column of the cross-product map has mapping degree of "
            "magnitude 2 with a column-independent sign",
            4_000_000,
            maps.eta_cross,
        ),
        _generator_check(
            "generator-eta4",
            "every column of eta4 has mapping degree of magnitude 3! = 6 with a "
            "column-independent sign",
            20_000_000,
            lambda: maps.eta_n(4),
        ),
        _integer_check(
            "degree-additivity",
            "column degree adds under pointwise products: the first column of "
            "eta*eta has degree 4",
            4_000_000,
            [
                lambda: maps.column(
                    maps.pointwise_product(maps.eta_cross(), maps.eta_cross()), 1
                )
            ],
            [4],
        ),
        _integer_check(
            "cartan-null",
            "the symmetric-space embedding of CP^2 is null-homotopic: its first "
            "column has degree 0",
            400_000,
            [lambda: maps.column(maps.cartan_cp2(), 1)],
            [0],
        ),
        _integer_check(
            "conjugation-degrees",
            "coordinate conjugation on S^{2k-1} has degree (-1)^k",
            100_000,
            [lambda k=k: maps.conjugation_map(k) for k in (1, 2, 3)],
            [-1, 1, -1],
        ),
    ]


def suite_names() -> list[str]:
    return ["stable", "eta-cross", "phi-psi", "symplectic", "conjugation-symmetry", "degrees"]


def _suite_checks(name: str, config: RunConfig) -> list[_CheckDef]:
    if name == "stable":
        return _checks_stable()
    if name == "eta-cross":
        return _checks_eta_cross()
    if name == "phi-psi":
        return _checks_phi_psi(config.n_range)
    if name == "symplectic":
        return _checks_symplectic()
    if name == "conjugation-symmetry":
        return _checks_conjugation()
    if name == "degrees":
        return _checks_degrees()
    raise KeyError(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")


def _lookup_tol(config: RunConfig, name: str, default: float) -> float:
    if name in config.tolerances:
        return config.tolerances[name]
    base = name.split(".", 1)[0]
    return config.tolerances.get(base, default)


def run_suite(name: str, config: RunConfig | None = None) -> Report:
    """Execute a named suite; exceptions inside a check become ERROR results."""
    config = config or RunConfig()
    defs = _suite_checks(name, config)
    _RUN_THREADS.set(max(1, config.threads))
    _RUN_H.set(config.h)
    results = []
    try:
        for index, cd in enumerate(defs):
            seed = config.seed + 101 * index
            tol = _lookup_tol(config, cd.name, cd.tol)
            if cd.kind == "degree":
                samples = max(10_000, config.samples) if config.samples else cd.samples
            else:
                samples = config.samples if config.samples else cd.samples
            try:
                results.append(cd.run(samples, tol, seed))
            except Exception as exc:  # noqa: BLE001 - suites must not abort
                results.append(
                    CheckResult(
                        cd.name,
                        "ERROR",
                        None,
                        samples,
                        seed,
                        cd.anchor,
                        details=_one_line(f"{type(exc).__name__}: {exc}"),
                    )
                )
    finally:
        _RUN_THREADS.set(_RUN_THREADS.default)
        _RUN_H.set(_RUN_H.default)
    return Report(
        suite=name,
        version=__version__,
        command=canonical_command(name, config),
        config=config,
        checks=tuple(results),
    )

"""Acceptance suite: one test per release criterion, so `pytest -v` prints a
single pass/fail line for each. Budgets, tolerances, and runtime bounds are
pinned here on purpose — do not tune them to make a failing criterion pass."""

import filecmp
import time
from pathlib import Path

import numpy as np

from bottlab import cli, linalg, maps, table
from bottlab.degree import (
    certify_generator,
    column_estimates,
    degree_mc,
    degree_preimage,
)
from bottlab.sphere import sample_uniform

DATA_DIR = Path(__file__).parent / "data"


def max_fro(stack):
    return float(np.sqrt((np.abs(stack) ** 2).sum(axis=(-2, -1))).max())


def residual_between(f, g, samples, seed):
    coords = sample_uniform(f.domain_dim, samples, seed)
    return max_fro(f.eval_batch(coords) - g.eval_batch(coords))


def test_criterion_01_eta_cross_columns_certify_degree_two():
    t0 = time.perf_counter()
    ests = column_estimates(
        maps.eta_cross(), [1, 2, 3], samples=4_000_000, seed=0, threads=8
    )
    wall = time.perf_counter() - t0
    for est in ests:
        assert est.certified, est
        assert est.rounded == 2
        assert abs(est.raw - 2.0) < 0.05
    assert wall < 120.0


def test_criterion_02_factorial_degrees_for_zeta2_and_eta4():
    t0 = time.perf_counter()
    for est in column_estimates(maps.zeta(2), [1, 2], samples=200_000, seed=0, threads=8):
        assert est.certified and est.rounded == 1
    cert = certify_generator(maps.eta_n(4), samples=20_000_000, seed=0, threads=8)
    wall = time.perf_counter() - t0
    assert cert.expected == 6
    assert cert.verdict == "PASS"
    assert cert.sign in (-1, 1)
    assert all(e.rounded == cert.sign * 6 for e in cert.columns)
    assert wall < 900.0


def test_criterion_03_psi_families_multiply_to_identity():
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(2, 6):
        g = maps.eta_n(n)
        rng = np.random.default_rng(n)
        ts = rng.uniform(0.0, 2.0 * np.pi / n, 10_000)
        zc = sample_uniform(2 * n - 1, 10_000, n)
        prod = np.broadcast_to(np.eye(n, dtype=complex), (10_000, n, n)).copy()
        for j in range(1, n + 1):
            prod = prod @ maps.psi(n, j, g).eval_batch(ts, zc)
        worst = max(worst, max_fro(prod - np.eye(n)))
    wall = time.perf_counter() - t0
    assert worst < 1e-10
    assert wall < 30.0


def test_criterion_04_psi_homotopy_interpolates_first_two_slots():
    for n in range(2, 6):
        g = maps.eta_n(n)
        rng = np.random.default_rng(10 + n)
        ts = rng.uniform(0.0, 2.0 * np.pi / n, 2_000)
        zc = sample_uniform(2 * n - 1, 2_000, 10 + n)
        ends = (
            maps.psi_homotopy(n, g, 0.0).eval_batch(ts, zc),
            maps.psi_homotopy(n, g, np.pi / 2.0).eval_batch(ts, zc),
        )
        assert max_fro(ends[0] - maps.psi(n, 1, g).eval_batch(ts, zc)) < 1e-12
        assert max_fro(ends[1] - maps.psi(n, 2, g).eval_batch(ts, zc)) < 1e-12


def test_criterion_05_eta_times_conjugate_is_projective_embedding():
    left = maps.pointwise_product(maps.eta_cross(), maps.conjugate(maps.eta_cross()))
    assert residual_between(left, maps.cartan_cp2(), 10_000, 5) < 1e-12


def test_criterion_06_corner_reduction_reproduces_eta3_and_transforms_to_eta():
    reduced = maps.lundell_reduce(maps.zeta(3), 1)
    assert residual_between(reduced, maps.eta3_closed(), 10_000, 6) < 1e-12
    coords = sample_uniform(5, 10_000, 66)
    flipped = coords.copy()
    flipped[:, [1, 5]] *= -1.0
    carried = (
        maps.ETA3_TO_ETA_LEFT
        @ maps.eta_n(3).eval_batch(flipped)
        @ maps.ETA3_TO_ETA_RIGHT
    )
    assert max_fro(carried - maps.eta_cross().eval_batch(coords)) < 1e-12


def test_criterion_07_first_doubling_reproduces_zeta2():
    assert residual_between(maps.bott(maps.zeta(1)), maps.zeta(2), 10_000, 7) < 1e-12


def test_criterion_08_symplectic_family_closed_form_and_reduction():
    cyl = maps.phi12_prime(2)
    rng = np.random.default_rng(8)
    worst = 0.0
    for i in range(1_000):
        a = linalg.random_symplectic(2, 1_000 + i, "interleaved")
        t = float(rng.uniform(0.0, np.pi / 2.0))
        d = np.full(4, np.exp(-2j * t), dtype=complex)
        d[:2] = np.exp(2j * t)
        z = np.empty(8)
        z[0::2], z[1::2] = a[:, 0].real, a[:, 0].imag
        worst = max(worst, linalg.frobenius(cyl(t, z) - (a * d) @ a.conj().T))
    assert worst < 1e-11
    for m in (1, 2):
        vals = maps.phi2(m).eval_batch(sample_uniform(4 * m, 10_000, m))
        assert np.abs(vals[:, 1, 0]).max() < 1e-12
    red = maps.phi2_reduced(2).eval_batch(sample_uniform(8, 10_000, 88))
    assert max_fro(np.swapaxes(red.conj(), 1, 2) @ red - np.eye(3)) < 1e-10
    assert np.abs(np.linalg.det(red) - 1.0).max() < 1e-10
    coords4 = sample_uniform(4, 10_000, 888)
    assert max_fro(maps.phi2(1).eval_batch(coords4) - np.eye(2)) < 1e-12
    assert max_fro(maps.phi2_reduced(1).eval_batch(coords4) - np.eye(1)) < 1e-12


def test_criterion_09_symmetrized_eta3_doubles_to_split_symplectic():
    sp = maps.sp_candidate(3, 3, maps.eta_n(3))
    vals = sp.eval_batch(sample_uniform(7, 10_000, 9))
    j = linalg.j_matrix(3, "split")
    assert max_fro(np.swapaxes(vals, 1, 2) @ j @ vals - j) < 1e-10


def test_criterion_10_zeta_commutes_with_conjugation():
    for k in (1, 2, 3, 4):
        coords = sample_uniform(2 * k - 1, 10_000, k)
        flipped = coords.copy()
        flipped[:, 1::2] *= -1.0
        z = maps.zeta(k)
        assert max_fro(z.eval_batch(flipped) - z.eval_batch(coords).conj()) < 1e-12


def test_criterion_11_degree_arithmetic_on_columns():
    squared = maps.pointwise_product(maps.eta_cross(), maps.eta_cross())
    (est,) = column_estimates(squared, [1], samples=4_000_000, seed=0, threads=8)
    assert est.certified and est.rounded == 4
    (null,) = column_estimates(maps.cartan_cp2(), [1], samples=400_000, seed=0, threads=8)
    assert null.certified and null.rounded == 0
    for k in (1, 2, 3):
        est = degree_mc(maps.conjugation_map(k), samples=100_000, seed=0, threads=8)
        assert est.certified and est.rounded == (-1) ** k


def test_criterion_12_preimage_counts_agree_with_monte_carlo():
    cases = [
        (maps.identity_map(5), 10_000),
        (maps.antipodal_map(5), 10_000),
        (maps.antipodal_map(2), 10_000),
        (maps.conjugation_map(1), 100_000),
        (maps.conjugation_map(2), 100_000),
        (maps.conjugation_map(3), 100_000),
        (maps.column(maps.eta_cross(), 1), 400_000),
        (maps.column(maps.eta_cross(), 2), 400_000),
        (maps.column(maps.eta_cross(), 3), 400_000),
    ]
    for f, budget in cases:
        mc = degree_mc(f, samples=budget, seed=0, threads=8)
        pc = degree_preimage(f, seed=0)
        assert mc.certified, f.name
        assert mc.rounded == pc.value, f.name
        assert np.sign(mc.raw) == np.sign(pc.value) or pc.value == 0


def test_criterion_13_printed_table_matches_shipped_fixture(capsys):
    assert cli.main(["table", "--format", "data"]) == 0
    out = capsys.readouterr().out
    fixture = (DATA_DIR / "table.golden").read_text()
    assert out == fixture
    assert len(fixture.splitlines()) == 60
    assert out == table.render_data()


def test_criterion_14_reports_are_thread_count_invariant(tmp_path):
    paths = []
    codes = []
    for threads in ("1", "4"):
        dest = tmp_path / f"report-{threads}.txt"
        codes.append(
            cli.main(
                [
                    "verify", "degrees",
                    "--samples", "20000",
                    "--seed", "9",
                    "--threads", threads,
                    "--out", str(dest),
                ]
            )
        )
        paths.append(dest)
    assert codes[0] == codes[1]
    assert filecmp.cmp(paths[0], paths[1], shallow=False)
    assert paths[0].read_bytes() == paths[1].read_bytes()

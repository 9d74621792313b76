"""Unit tests for the two degree engines: the Monte Carlo density integrator
with its certification gate, and the preimage-counting Newton solver. Keeping
both routes independent is the point — each one cross-checks the other."""

import numpy as np
import pytest

from bottlab import degree, maps
from bottlab.degree import (
    InsufficientStartsError,
    NonRegularTargetError,
    certify_generator,
    certify_sp_generator,
    column_estimates,
    degree_mc,
    degree_preimage,
    jacobian_sign_density,
)
from bottlab.maps import SphereValuedMap
from bottlab.sphere import sample_uniform


def flat_root_circle():
    """Degree-one circle map g(theta) = theta - sin(theta): its only root of
    g is theta = 0, where g'(0) = 0, so the preimage of (1, 0) is singular."""

    def ev(c):
        g = np.arctan2(c[:, 1], c[:, 0])
        g = g - np.sin(g)
        return np.stack([np.cos(g), np.sin(g)], axis=1)

    return SphereValuedMap("flat-root-circle", 1, 1, ev)


# ----------------------------------------------------------- density values

def test_jacobian_sign_density_of_identity_is_one():
    x = sample_uniform(3, 1, 0)[0]
    assert abs(jacobian_sign_density(maps.identity_map(3), x) - 1.0) < 1e-4


def test_jacobian_sign_density_of_linear_maps():
    x = sample_uniform(2, 1, 1)[0]
    assert abs(jacobian_sign_density(maps.antipodal_map(2), x) + 1.0) < 1e-4
    y = sample_uniform(3, 1, 2)[0]
    assert abs(jacobian_sign_density(maps.conjugation_map(2), y) - 1.0) < 1e-4


@pytest.mark.parametrize("m", [2, 3, 5, 7])
def test_degree_mc_identity_anchors_orientation(m):
    est = degree_mc(maps.identity_map(m), samples=10_000, seed=0)
    assert est.rounded == 1 and est.certified


def test_degree_mc_identity_and_antipodal_low_dim():
    est = degree_mc(maps.identity_map(2), samples=10_000, seed=0)
    assert est.rounded == 1 and est.certified
    assert est.stderr < 1e-8
    est = degree_mc(maps.antipodal_map(2), samples=10_000, seed=0)
    assert est.rounded == -1 and est.certified


def test_degree_mc_odd_dimension_antipodal_is_orientation_preserving():
    est = degree_mc(maps.antipodal_map(5), samples=10_000, seed=1)
    assert est.rounded == 1 and est.certified
    assert est.stderr == 0.0  # constant density, no spread


@pytest.mark.parametrize("k,expected", [(1, -1), (2, 1), (3, -1)])
def test_degree_mc_conjugation_alternates(k, expected):
    est = degree_mc(maps.conjugation_map(k), samples=10_000, seed=2)
    assert est.certified and est.rounded == expected


def test_degree_mc_input_validation():
    with pytest.raises(ValueError):
        degree_mc(maps.identity_map(2), samples=5_000)
    with pytest.raises(ValueError):
        degree_mc(maps.column(maps.phi(2), 1), samples=10_000)  # S4 -> S3
    with pytest.raises(ValueError):
        degree_mc(maps.identity_map(2), samples=10_000, h=1e-8)
    with pytest.raises(ValueError):
        degree_mc(maps.identity_map(2), samples=10_000, h=1e-2)


def test_degree_mc_estimate_metadata():
    est = degree_mc(maps.identity_map(2), samples=10_000, seed=7, h=2e-5)
    assert est.map_name == "identity"
    assert est.method == "mc" and est.samples == 10_000
    assert est.seed == 7 and est.h == 2e-5
    assert est.nonfinite == 0
    assert est.flagged == 0  # Richardson probe agrees on smooth closed forms


# ------------------------------------------------------------- determinism

def test_degree_mc_is_deterministic():
    a = degree_mc(maps.column(maps.zeta(2), 1), samples=20_000, seed=3)
    b = degree_mc(maps.column(maps.zeta(2), 1), samples=20_000, seed=3)
    assert a.raw == b.raw and a.stderr == b.stderr


def test_degree_mc_thread_count_does_not_change_bits():
    f = maps.column(maps.eta_cross(), 2)
    a = degree_mc(f, samples=20_000, seed=4, threads=1)
    b = degree_mc(f, samples=20_000, seed=4, threads=2)
    assert a.raw == b.raw and a.stderr == b.stderr


def test_column_estimates_match_single_column_runs():
    theta = maps.zeta(2)
    ests = column_estimates(theta, [1, 2], samples=20_000, seed=5)
    assert [e.map_name for e in ests] == ["column(zeta2, 1)", "column(zeta2, 2)"]
    single = degree_mc(maps.column(theta, 2), samples=20_000, seed=5)
    assert ests[1].raw == single.raw and ests[1].stderr == single.stderr


def test_column_estimates_selects_one_column():
    (est,) = column_estimates(maps.eta_cross(), [2], samples=20_000, seed=0)
    assert est.rounded == 2 and est.certified


# ------------------------------------------------------ certification gate

def test_small_budget_leaves_large_degree_uncertified():
    (est,) = column_estimates(maps.eta_n(4), [1], samples=10_000, seed=0)
    assert not est.certified
    assert est.stderr * 3.0 > 0.2  # unresolvable at this budget


def test_certify_generator_accepts_zeta2():
    cert = certify_generator(maps.zeta(2), samples=20_000, seed=0)
    assert cert.verdict == "PASS" and cert.sign == 1
    assert cert.expected == 1
    assert all(e.certified for e in cert.columns)


def test_certify_generator_rejects_null_map():
    cert = certify_generator(maps.cartan_cp2(), samples=20_000, seed=0)
    assert cert.verdict == "FAIL"
    assert [e.rounded for e in cert.columns] == [0, 0, 0]
    assert all(e.certified for e in cert.columns)


def test_certify_generator_requires_self_map_columns():
    with pytest.raises(ValueError):
        certify_generator(maps.phi(2), samples=20_000)


def test_certify_sp_generator_accepts_zeta2():
    cert = certify_sp_generator(maps.zeta(2), samples=20_000, seed=0)
    assert cert.verdict == "PASS" and cert.expected == 1


def test_certify_sp_generator_rejects_constant():
    cert = certify_sp_generator(
        maps.constant_map(7, np.eye(4), "const4"), samples=20_000, seed=0
    )
    assert cert.verdict == "FAIL" and cert.expected == 12
    assert [e.rounded for e in cert.columns] == [0, 0, 0, 0]


def test_certify_sp_generator_validates_shape_and_membership():
    with pytest.raises(ValueError):
        certify_sp_generator(maps.eta_cross(), samples=20_000)  # odd size
    with pytest.raises(ValueError):
        certify_sp_generator(
            maps.constant_map(3, np.diag([1j, 1.0]), "skewed"), samples=20_000
        )


# ----------------------------------------------------------- preimage route

def test_preimage_identity_and_antipodal():
    pc = degree_preimage(maps.identity_map(2), seed=0)
    assert pc.value == 1 and pc.root_counts == (1, 1)
    assert pc.method == "preimage"
    pc = degree_preimage(maps.antipodal_map(2), seed=0)
    assert pc.value == -1 and pc.root_counts == (1, 1)
    e3 = np.array([0.0, 0.0, 1.0])
    pinned = degree_preimage(maps.antipodal_map(2), target=e3, seed=0)
    assert pinned.value == -1 and pinned.root_counts == (1, 1)
    assert degree_preimage(maps.identity_map(5), seed=0).value == 1
    assert degree_preimage(maps.antipodal_map(5), seed=0).value == 1


@pytest.mark.parametrize("k,expected", [(1, -1), (2, 1), (3, -1)])
def test_preimage_conjugation_alternates(k, expected):
    assert degree_preimage(maps.conjugation_map(k), seed=0).value == expected


def test_preimage_counts_eta_cross_column():
    pc = degree_preimage(maps.column(maps.eta_cross(), 1), seed=0)
    assert pc.value == 2 and pc.root_counts == (2, 2)


def test_preimage_of_measure_zero_image_is_null():
    col = maps.column(maps.cartan_cp2(), 1)
    pc = degree_preimage(col, seed=0)
    assert pc.value == 0 and pc.root_counts == (0, 0)
    e1 = np.zeros(6)
    e1[0] = 1.0
    assert degree_preimage(col, target=e1, seed=0).value == 0


def test_preimage_rejects_singular_target():
    f = flat_root_circle()
    assert degree_preimage(f, seed=0).value == 1
    with pytest.raises(NonRegularTargetError):
        degree_preimage(f, target=np.array([1.0, 0.0]), seed=0)


def test_preimage_requires_enough_starts():
    with pytest.raises(InsufficientStartsError):
        degree_preimage(maps.column(maps.eta_cross(), 1), starts=2, seed=0)


def test_preimage_validates_input():
    with pytest.raises(ValueError):
        degree_preimage(maps.column(maps.phi(2), 1))  # S4 -> S3
    with pytest.raises(ValueError):
        degree_preimage(maps.identity_map(2), target=np.zeros(3))

import numpy as np
import pytest

from src.cocycles.mickelsson_faddeev import C2
from src.core.errors import DegreeError, GridMismatchError
from src.geometry.fields import (
    boundary_vanishing_factor, default_features, quaternion_map, random_field, random_group_map,
)
from src.geometry.forms import LieForm, trace_integral
from src.geometry.grids import sphere3_grid
from src.geometry.group_maps import GroupMap, maurer_cartan
from src.topology.chern_simons import (
    AffineConnection4, NormalizationTable, cs3, cs5, dcs_identity_check, normalization_constant,
    transgression_sides, transgression_stokes,
)
from src.topology.monopole import chern1_monopole, field_strength_residual, monopole_patches, transition_residual
from src.topology.winding import (
    additivity_residual, homotopy_residual, winding_3, winding_factor_residual, winding_report,
)


@pytest.fixture(scope='module')
def sphere():
    return sphere3_grid(16)


# ========== Chern-Simons ==========

def test_normalization_constants():
    table = NormalizationTable()
    assert table.c1_residual() < 1e-15
    assert winding_factor_residual() < 1e-15
    assert set(table.as_dict()) == {0, 1, 2, 3, 4}
    assert normalization_constant(1) == pytest.approx((1j / (2 * np.pi)) ** 3 / (6 * 5) * -1)


def test_cs3_of_zero_connection(s3_grid):
    zero = LieForm(grid=s3_grid, degree=1, samples=np.zeros((s3_grid.size, 3, 2, 2), dtype=complex),
                   evaluator=lambda q: np.zeros((q.shape[0], 3, 2, 2), dtype=complex))
    assert np.max(np.abs(cs3(zero).samples)) == 0.0


def test_cs3_of_pure_gauge_is_minus_winding(sphere):
    g = quaternion_map(sphere)
    total = trace_integral(cs3(maurer_cartan(g)))
    assert total == pytest.approx(-winding_3(g), abs=1e-7)


def test_cs_degree_errors(s3_grid):
    g = quaternion_map(s3_grid)
    with pytest.raises(DegreeError):
        cs5(maurer_cartan(g))
    with pytest.raises(DegreeError):
        cs3(LieForm.constant(s3_grid, np.eye(2)))


@pytest.mark.parametrize('seed', range(5))
def test_dcs_identity(su2, seed):
    rng = np.random.default_rng(seed)
    conn = AffineConnection4.random(su2.generators, rng)
    assert dcs_identity_check(conn) < 1e-12


def test_dcs_identity_abelian():
    rng = np.random.default_rng(7)
    conn = AffineConnection4.random(np.ones((1, 1, 1)), rng)
    assert dcs_identity_check(conn) < 1e-12


def test_transgression_stokes(b3_grid, su3, rng):
    u, v, w = (random_field(rng, su3.generators, default_features(b3_grid), scale=0.5).on(b3_grid)
               for _ in range(3))
    assert transgression_stokes(u, v, w, C2) < 1e-6


def test_transgression_vanishing_on_boundary(b3_grid, su3, rng):
    factor = boundary_vanishing_factor()
    u, v, w = (random_field(rng, su3.generators, default_features(b3_grid)).times_scalar(factor).on(b3_grid)
               for _ in range(3))
    boundary, bulk = transgression_sides(u, v, w, C2)
    assert abs(boundary) < 1e-12
    assert abs(bulk) < 1e-6


def test_transgression_requires_ball(s3_grid, su2):
    u = LieForm.constant(s3_grid, 1j * su2.generators[0])
    with pytest.raises(DegreeError):
        transgression_sides(u, u, u, C2)


# ========== Degré ==========

@pytest.mark.parametrize('degree', [1, 2, -1])
def test_quaternion_map_degree(sphere, degree):
    report = winding_report(quaternion_map(sphere, degree))
    assert abs(report.nearest) == abs(degree)
    assert report.distance < 1e-5


def test_constant_map_has_degree_zero(sphere):
    assert abs(winding_3(GroupMap.identity(sphere, 2))) < 1e-14


def test_winding_inverse_and_additivity(sphere):
    g = quaternion_map(sphere)
    assert abs(winding_3(g) + winding_3(g.inverse())) < 1e-8
    assert additivity_residual(g, g) < 1e-5


def test_winding_homotopy_invariance(sphere, su2, rng):
    g = quaternion_map(sphere)
    perturbation = random_group_map(sphere, su2.generators, rng, scale=0.05, special=True)
    assert homotopy_residual(g, perturbation) < 1e-5


def test_winding_requires_sphere(b3_grid):
    with pytest.raises(GridMismatchError):
        winding_3(GroupMap.identity(b3_grid, 2))


# ========== Monopôle ==========

@pytest.mark.parametrize('n', [-2, 0, 1, 3])
def test_monopole_chern_number(n):
    assert chern1_monopole(n, order=16) == pytest.approx(n, abs=1e-8)


def test_monopole_field_strength_and_transition():
    assert field_strength_residual(2, order=16) < 1e-10
    assert transition_residual(2, order=16) < 1e-12


def test_transition_detects_patch_errors():
    north, south = monopole_patches(2, order=16)
    # signe inversé sur la carte nord : A_N − A_S = 0 au lieu de 2i dφ
    assert transition_residual(2, order=16, patches=(north.scale(-1.0), south)) == pytest.approx(2.0)
    # carte sud d'une autre charge
    _, wrong_south = monopole_patches(3, order=16)
    assert transition_residual(2, order=16, patches=(north, wrong_south)) == pytest.approx(0.5)

import numpy as np
import pytest

from src.algebra.finite_groups import FiniteGroup, permutation_sign
from src.algebra.liealg import build_gauge_basis
from src.cocycles.cech import (
    CechCochainTable, CechCover, all_orderings_consistent, cech_coboundary, constant_cochain,
    multiplicative_cocycle_check, random_cech_cochain,
)
from src.cocycles.group_cohomology import (
    CyclicModule, FiniteModule, GroupCochainTable, coboundary_squared_residual, cochain_from_function, count_normalized,
    extension_from_cocycle, group_coboundary, h2_brute_force, is_cyclic, orders, random_cochain,
)
from src.cocycles.kac_moody import kac_moody, km_antisymmetry_residual, km_cocycle_residual
from src.cocycles.mickelsson_faddeev import (
    DEFAULT_CONVENTION, MFContext, action_on_connection, boundary_term, calibrate_invariance, invariance_residual,
    lie_coboundary_2, lambda_cochain, mf_antisymmetry_residual, mickelsson_faddeev, transformed_cocycle,
)
from src.core.errors import (
    ConventionError, DegreeError, GridMismatchError, InvariantViolationError, SizeGuardError, StructuralError,
    UndeclaredIntersectionError,
)
from src.core.numerics import make_rng
from src.geometry.fields import random_group_map
from src.geometry.forms import LieForm, commutator_0, restrict_to_boundary
from src.geometry.grids import circle_grid, sphere3_grid
from src.geometry.group_maps import GroupMap
from src.suites.samples import cos_sin_loops, random_algebra_element, random_connection, random_zero_form


@pytest.fixture(scope='module')
def circle():
    return circle_grid(16)


# ========== Kac-Moody ==========

def test_kac_moody_closed_form(circle, su2, rng):
    x, y = random_algebra_element(su2, rng), random_algebra_element(su2, rng)
    u, v = cos_sin_loops(circle, x, y)
    assert kac_moody(u, v, 2.0) == pytest.approx(2.0 * np.pi * np.trace(x @ y), abs=1e-10)
    assert abs(kac_moody(u, LieForm.constant(circle, y))) < 1e-12


def test_kac_moody_cocycle(circle, su3, rng):
    u, v, w = (random_zero_form(circle, su3.generators, rng) for _ in range(3))
    assert abs(km_antisymmetry_residual(u, v)) < 1e-8
    assert abs(km_cocycle_residual(u, v, w)) < 1e-6


def test_kac_moody_requires_circle(s3_grid, su2):
    u = LieForm.constant(s3_grid, 1j * su2.generators[0])
    with pytest.raises(GridMismatchError):
        kac_moody(u, u)


# ========== Mickelsson-Faddeev ==========

def _mf_data(grid, basis, rng, count=3):
    A = random_connection(grid, basis.generators, rng)
    return MFContext(A), [random_zero_form(grid, basis.generators, rng) for _ in range(count)]


def test_mf_basic_properties(s3_grid, su3, rng):
    ctx, (x, y, _) = _mf_data(s3_grid, su3, rng)
    value = mickelsson_faddeev(ctx, x, y)
    assert abs(value.real) < 1e-8
    assert abs(mf_antisymmetry_residual(ctx, x, y)) < 1e-8
    const = LieForm.constant(s3_grid, random_algebra_element(su3, rng))
    assert abs(mickelsson_faddeev(ctx, const, y)) < 1e-12


def test_mf_closed_on_sphere(s3_grid, su3, rng):
    ctx, forms = _mf_data(s3_grid, su3, rng)
    assert abs(lie_coboundary_2(ctx, *forms)) < 1e-6


def test_mf_coboundary_sign_convention(s3_grid, su3, rng):
    ctx, (u, v, w) = _mf_data(s3_grid, su3, rng)
    A = ctx.A

    def theta(B, a, b):
        return mickelsson_faddeev(ctx.with_connection(B), a, b)

    # arguments (w, u) permutés dans le deuxième et le cinquième terme
    permuted = (theta(action_on_connection(A, u), v, w)
                - theta(action_on_connection(A, v), w, u)
                + theta(action_on_connection(A, w), u, v)
                - theta(A, commutator_0(u, v), w)
                + theta(A, commutator_0(w, u), v)
                - theta(A, commutator_0(v, w), u))
    standard = lie_coboundary_2(ctx, u, v, w)
    assert abs(standard) < 1e-6
    assert abs(permuted) > 1e-6
    assert abs(permuted) > 100 * abs(standard)


def test_mf_ball_matches_boundary_term(b3_grid, su3, rng):
    ctx, forms = _mf_data(b3_grid, su3, rng)
    bulk = lie_coboundary_2(ctx, *forms)
    boundary = boundary_term(*(restrict_to_boundary(f) for f in forms), c2=ctx.c2)
    assert abs(bulk - boundary) < 1e-6
    assert abs(boundary) > 1e-8


def test_mf_input_validation(s3_grid, su2, rng):
    ctx, (x, _, _) = _mf_data(s3_grid, su2, rng)
    with pytest.raises(DegreeError):
        MFContext(x)
    with pytest.raises(DegreeError):
        mickelsson_faddeev(ctx, ctx.A, x)
    other = LieForm.constant(sphere3_grid(8), np.eye(2))
    with pytest.raises(GridMismatchError):
        mickelsson_faddeev(ctx, x, other)
    g = GroupMap.identity(s3_grid, 2)
    with pytest.raises(ConventionError):
        transformed_cocycle(ctx, x, x, g, transform='rotation')


@pytest.fixture(scope='module')
def invariance_data():
    grid = sphere3_grid(16)
    basis = build_gauge_basis(3)
    rng = make_rng(3, 'invariance')
    A = random_connection(grid, basis.generators, rng)
    x, y = (random_zero_form(grid, basis.generators, rng) for _ in range(2))
    g = random_group_map(grid, basis.generators, rng, scale=0.5)
    return MFContext(A), x, y, g


def test_invariance_calibration_selects_default(invariance_data):
    calibration = calibrate_invariance(*invariance_data, tolerance=1e-5)
    assert len(calibration.residuals) == 8
    assert calibration.selected == DEFAULT_CONVENTION
    assert abs(invariance_residual(*invariance_data)) < 1e-5


def test_invariance_identity_map(invariance_data):
    ctx, x, y, _ = invariance_data
    identity = GroupMap.identity(ctx.A.grid, 3)
    assert abs(invariance_residual(ctx, x, y, identity)) < 1e-12


def test_lambda_cochain_vanishes_at_identity_and_is_linear(invariance_data):
    ctx, x, _, g = invariance_data
    assert abs(lambda_cochain(ctx, GroupMap.identity(ctx.A.grid, 3), x)) < 1e-12
    # x.scale perd les dérivées analytiques : dérivée par différences finies
    assert lambda_cochain(ctx, g, x.scale(2.0)) == pytest.approx(2 * lambda_cochain(ctx, g, x), rel=1e-4)


# ========== Cohomologie des groupes ==========

@pytest.mark.parametrize('n, m, expected', [(2, 2, 2), (2, 3, 1), (3, 3, 3), (4, 2, 2)])
def test_h2_cyclic(n, m, expected):
    group = FiniteGroup.cyclic(n)
    assert h2_brute_force(group, CyclicModule.trivial(group, m)) == expected


def test_h2_klein_and_trivial():
    z2 = FiniteGroup.cyclic(2)
    klein = FiniteGroup.direct_product(z2, z2)
    assert h2_brute_force(klein, CyclicModule.trivial(klein, 2)) == 8
    trivial = FiniteGroup.trivial()
    assert h2_brute_force(trivial, CyclicModule.trivial(trivial, 2)) == 1


def test_h2_finite_modules():
    z2 = FiniteGroup.cyclic(2)
    pair = FiniteModule.direct_sum(z2, CyclicModule.trivial(z2, 2), CyclicModule.trivial(z2, 2))
    pair.validate(z2)
    assert pair.order == 4
    assert h2_brute_force(z2, pair) == 4
    assert h2_brute_force(z2, CyclicModule.trivial(z2, 4)) == 2

    # ℤ₂ permute les deux facteurs : module libre, H² trivial
    swapped = FiniteModule(pair.addition, np.array([[0, 1, 2, 3], [0, 2, 1, 3]]), pair.labels)
    swapped.validate(z2)
    assert h2_brute_force(z2, swapped) == 1

    extension = extension_from_cocycle(GroupCochainTable.zero(z2, pair, 2))
    assert extension.order == 8 and not is_cyclic(extension)
    assert orders(extension) == [1, 2, 2, 2, 2, 2, 2, 2]


def test_finite_module_validation():
    z2 = FiniteGroup.cyclic(2)
    z4 = FiniteModule.direct_sum(z2, CyclicModule.trivial(z2, 4))
    z4.validate(z2)
    with pytest.raises(StructuralError):
        FiniteModule(z4.addition, np.array([[0, 1, 2, 3], [0, 2, 1, 3]])).validate(z2)
    with pytest.raises(StructuralError):
        FiniteModule(z4.addition, np.array([[0, 3, 2, 1], [0, 1, 2, 3]])).validate(z2)


def test_coboundary_squared_finite_module(rng):
    sym = FiniteGroup.symmetric(3)
    signed = CyclicModule(m=4, action=tuple(permutation_sign(p) % 4 for p in sym.labels))
    module = FiniteModule.direct_sum(sym, CyclicModule.trivial(sym, 2), signed)
    module.validate(sym)
    for p in (1, 2):
        assert coboundary_squared_residual(random_cochain(sym, module, p, rng))


def test_size_guard():
    sym = FiniteGroup.symmetric(3)
    with pytest.raises(SizeGuardError):
        h2_brute_force(sym, CyclicModule.trivial(sym, 8))
    assert count_normalized(sym, CyclicModule.trivial(sym, 2), 2) == 2 ** 25


def test_twisted_module():
    sym = FiniteGroup.symmetric(3)
    module = CyclicModule(m=4, action=tuple(permutation_sign(p) % 4 for p in sym.labels))
    module.validate(sym)
    with pytest.raises(StructuralError):
        CyclicModule(m=4, action=(2,) * 6).validate(sym)


def test_coboundary_squared(rng):
    sym = FiniteGroup.symmetric(3)
    module = CyclicModule(m=4, action=tuple(permutation_sign(p) % 4 for p in sym.labels))
    for p in (1, 2):
        assert coboundary_squared_residual(random_cochain(sym, module, p, rng))


def test_degree_one_coboundary_formula(rng):
    group = FiniteGroup.cyclic(4)
    module = CyclicModule(m=5, action=(1, 4, 1, 4))
    module.validate(group)
    f = random_cochain(group, module, 1, rng)
    d = group_coboundary(f).values
    for g1 in group.elements():
        for g2 in group.elements():
            expected = (module.act(g1, f.values[g2]) - f.values[group.mul(g1, g2)] + f.values[g1]) % 5
            assert d[g1, g2] == expected


def test_non_normalized_cochain_is_rejected():
    z2 = FiniteGroup.cyclic(2)
    with pytest.raises(InvariantViolationError):
        GroupCochainTable(z2, CyclicModule.trivial(z2, 2), 1, np.array([1, 0]))


def test_extensions():
    z2 = FiniteGroup.cyclic(2)
    module = CyclicModule.trivial(z2, 2)
    cyclic = extension_from_cocycle(cochain_from_function(z2, module, 2, lambda g, h: g * h))
    assert is_cyclic(cyclic)
    assert orders(cyclic) == [1, 2, 4, 4]
    split = extension_from_cocycle(cochain_from_function(z2, module, 2, lambda g, h: 0))
    assert orders(split) == [1, 2, 2, 2]

    z3 = FiniteGroup.cyclic(3)
    not_closed = cochain_from_function(z3, CyclicModule.trivial(z3, 3), 2, lambda g, h: int(g == 1 and h == 1))
    with pytest.raises(InvariantViolationError):
        extension_from_cocycle(not_closed)


# ========== Čech ==========

def test_cech_constant_and_squared(rng):
    cover = CechCover.complete(4)
    assert cech_coboundary(constant_cochain(cover, 5, 3)).is_zero()
    for p in (0, 1):
        t = random_cech_cochain(cover, p, 5, rng)
        assert cech_coboundary(cech_coboundary(t)).is_zero()


def test_cech_partial_nerve(rng):
    cover = CechCover.from_maximal(5, [(0, 1, 2), (1, 2, 3, 4), (0, 4)])
    assert cover.simplices(2) == ((0, 1, 2), (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))
    assert not cover.is_declared((0, 3))
    t = random_cech_cochain(cover, 1, 7, rng)
    assert cech_coboundary(cech_coboundary(t)).is_zero()


def test_cech_alternation(rng):
    t = random_cech_cochain(CechCover.complete(4), 2, 5, rng)
    assert all_orderings_consistent(t)
    v = t.values[(0, 1, 2)]
    assert t.value((1, 0, 2)) == (-v) % 5
    assert t.value((0, 0, 2)) == 0


def test_cech_multiplicative_check(rng):
    cover = CechCover.complete(3)
    transitions = dict(cech_coboundary(random_cech_cochain(cover, 0, 5, rng)).values)
    assert multiplicative_cocycle_check(transitions, cover, 5) == {}
    transitions[(0, 1)] = (transitions[(0, 1)] + 1) % 5
    assert list(multiplicative_cocycle_check(transitions, cover, 5)) == [(0, 1, 2)]


def test_cech_undeclared_intersection():
    cover = CechCover.from_maximal(3, [(0, 1), (1, 2)])
    with pytest.raises(UndeclaredIntersectionError):
        CechCochainTable(cover, 1, 5, {(0, 2): 1})
    table = CechCochainTable(cover, 1, 5, {(0, 1): 1})
    with pytest.raises(UndeclaredIntersectionError):
        table.value((2, 0))


def test_mf_vanishes_for_su2(s3_grid, su2, rng):
    """su(2) : {τ^a, τ^b} ∝ I et tr A = 0"""
    ctx, (x, y, _) = _mf_data(s3_grid, su2, rng)
    assert abs(mickelsson_faddeev(ctx, x, y)) < 1e-12

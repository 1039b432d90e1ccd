import numpy as np
import pytest

from src.algebra.liealg import build_gauge_basis
from src.core.errors import InvalidDimensionError, SupportViolationError
from src.geometry.fields import SmoothField
from src.geometry.grids import torus3_grid
from src.geometry.group_maps import curvature
from src.schwinger.currents import (
    CurrentCase, SchwingerInputs, case_for, classic_gauge_term, default_support, hand_expanded_coefficient,
    mf_cross_check, naive_case_commutator, naive_identity_residual, ratio_to_classic, schwinger_local_coefficient,
    schwinger_smeared, tensor_potential_from_gauge,
)
from src.suites.samples import gauge_only_inputs, schwinger_inputs

CASES = {1: (0, 0), 2: (0, 2), 3: (1, 2)}


@pytest.fixture(scope='module')
def torus():
    return torus3_grid(24)


@pytest.fixture(scope='module')
def u2():
    return build_gauge_basis(2, 'u')


def test_case_classification():
    assert case_for(2, 2).case_id == 1
    assert case_for(0, 3).case_id == 2
    assert case_for(3, 1).case_id == 3
    with pytest.raises(InvalidDimensionError):
        case_for(1, 0)
    with pytest.raises(InvalidDimensionError):
        case_for(0, 4)
    with pytest.raises(InvalidDimensionError):
        CurrentCase(2, 1, 1)


@pytest.mark.parametrize('kind, p', [('su', 2), ('u', 2), ('su', 3), ('u', 3)])
def test_naive_identities(kind, p):
    assert naive_identity_residual(build_gauge_basis(p, kind)) < 1e-12


def test_case1_su2_structure_constant(su2):
    expansion = naive_case_commutator(case_for(0, 0), 0, 1, su2)
    assert expansion.phase == 1j
    assert expansion.terms == [(1.0 + 0j, 0, 2)]


def test_case3_su2_is_empty(su2):
    assert naive_case_commutator(case_for(1, 2), 0, 1, su2).terms == []


def test_case3_su3_identity_component(su3):
    expansion = naive_case_commutator(case_for(1, 2), 4, 4, su3)
    assert expansion.identity_terms == [(1j / 3, 3)]
    assert expansion.residual < 1e-12


def test_gauge_index_out_of_range(su2):
    with pytest.raises(InvalidDimensionError):
        naive_case_commutator(case_for(0, 0), 0, 3, su2)


def test_su2_local_coefficients_vanish(torus, su2, rng):
    inp = schwinger_inputs(torus, su2, rng)
    for case_id in (1, 2):
        coeff = schwinger_local_coefficient(case_for(*CASES[case_id]), inp.A, 0, 1, su2)
        assert np.max(np.abs(coeff)) < 1e-12


@pytest.mark.parametrize('case_id', [1, 2, 3])
def test_hand_expansion_matches(torus, u2, rng, case_id):
    inp = schwinger_inputs(torus, u2, rng)
    case = case_for(*CASES[case_id])
    node = torus.size // 3
    vectorized = schwinger_local_coefficient(case, inp.A, 1, 2, u2)[node]
    explicit = hand_expanded_coefficient(case, inp.A, 1, 2, u2, node)
    np.testing.assert_allclose(vectorized, explicit, atol=1e-12)


@pytest.mark.parametrize('case_id', [1, 2, 3])
def test_mf_cross_check(torus, u2, case_id):
    rng = np.random.default_rng(100 + case_id)
    inp = schwinger_inputs(torus, u2, rng)
    assert mf_cross_check(case_for(*CASES[case_id]), inp, 1, 3) < 1e-5


@pytest.mark.parametrize('case_id, a, b', [(1, 0, 1), (1, 1, 1), (2, 0, 1)])
def test_smeared_antisymmetric(torus, u2, rng, case_id, a, b):
    inp = schwinger_inputs(torus, u2, rng)
    case = case_for(*CASES[case_id])
    value = schwinger_smeared(case, inp, a, b)
    assert abs(value) > 1e-8
    assert abs(value + schwinger_smeared(case, inp.swapped(), b, a)) < 1e-8


def test_smeared_bilinear(torus, u2, rng):
    inp = schwinger_inputs(torus, u2, rng)
    case = case_for(*CASES[3])
    value = schwinger_smeared(case, inp, 1, 2)
    assert abs(value) > 1e-8
    doubled = SchwingerInputs(inp.A, inp.f.scale(2.0), inp.h, inp.basis, inp.center, inp.radius)
    assert abs(schwinger_smeared(case, doubled, 1, 2) - 2 * value) < 1e-12


def test_smeared_matches_one_sided_integral(torus, u2, rng):
    inp = schwinger_inputs(torus, u2, rng)
    case = case_for(*CASES[1])
    X = torus.embedded_nodes()
    coeff = schwinger_local_coefficient(case, inp.A, 1, 1, u2)
    one_sided = np.sum(torus.weights * torus.jacobian * inp.f.f(X) * np.sum(coeff * inp.h.grad(X), axis=1))
    assert schwinger_smeared(case, inp, 1, 1) == pytest.approx(one_sided, rel=1e-3, abs=1e-6)


def test_pure_gauge_data_is_flat(torus, u2, rng):
    inp = schwinger_inputs(torus, u2, rng)
    assert np.max(np.abs(curvature(inp.A).samples)) < 1e-6
    generic = schwinger_inputs(torus, u2, rng, pure_gauge=False)
    assert np.max(np.abs(curvature(generic.A).samples)) > 1e-3


@pytest.mark.parametrize('case_id', [1, 2, 3])
def test_mf_cross_check_generic_connection(torus, u2, case_id):
    inp = schwinger_inputs(torus, u2, np.random.default_rng(200 + case_id), pure_gauge=False)
    assert mf_cross_check(case_for(*CASES[case_id]), inp, 1, 3) < 1e-5


def test_support_is_enforced(torus, u2, rng):
    inp = schwinger_inputs(torus, u2, rng)
    loose = SchwingerInputs(inp.A, SmoothField.constant(1.0), inp.h, inp.basis, inp.center, inp.radius)
    with pytest.raises(SupportViolationError):
        schwinger_smeared(case_for(0, 0), loose, 0, 0)


def test_classic_term(torus, su2):
    rng = np.random.default_rng(5)
    A, f, h = gauge_only_inputs(torus, su2, rng)
    assert abs(classic_gauge_term(A, f, h, 0, 1, su2)) < 1e-12

    u3 = build_gauge_basis(3, 'u')
    ratios = []
    for seed in range(3):
        A, f, h = gauge_only_inputs(torus, u3, np.random.default_rng(seed))
        center, radius = default_support(torus)
        inp = SchwingerInputs(tensor_potential_from_gauge(A), f, h, u3, center, radius)
        ratios.append(ratio_to_classic(schwinger_smeared(case_for(0, 0), inp, 1, 1),
                                       classic_gauge_term(A, f, h, 1, 1, u3)))
    assert all(r == pytest.approx(ratios[0], rel=1e-8) for r in ratios)
    assert ratio_to_classic(1.0, 0.0) is None

import numpy as np
import pytest

from src.algebra.finite_groups import (
    FiniteGroup, alternating_subgroup, permutation_sign, so3_group, so3_section, su2_group, su2_to_so3,
)
from src.algebra.liealg import (
    SIGMA, TensorElement, anticommutator_closure_residual, build_gauge_basis, gell_mann, jacobi_residual,
    levi_civita, spin_product_residual, structure_constants, tensor_commutator, tensor_round_trip_residual,
    to_anti_hermitian,
)
from src.core.errors import InconsistentBasisError, InvalidDimensionError


@pytest.mark.parametrize('p', [2, 3, 4])
@pytest.mark.parametrize('kind', ['su', 'u'])
def test_basis_is_normalized(p, kind):
    basis = build_gauge_basis(p, kind)
    assert basis.dim == (p * p - 1 if kind == 'su' else p * p)
    assert basis.normalization_residual() < 1e-12
    assert basis.reconstruction_residual() < 1e-10
    assert jacobi_residual(basis) < 1e-10


def test_invalid_dimension():
    with pytest.raises(InvalidDimensionError):
        build_gauge_basis(1)
    with pytest.raises(InvalidDimensionError):
        build_gauge_basis(2, 'so')
    with pytest.raises(InvalidDimensionError):
        gell_mann(0)


def test_anti_hermitian_convention(su3):
    t = to_anti_hermitian(su3.generators)
    np.testing.assert_allclose(np.swapaxes(t.conj(), -1, -2), -t, atol=1e-14)
    # [iτ^a, iτ^b] = −λ^{ab}_c (iτ^c)
    lhs = t[0] @ t[1] - t[1] @ t[0]
    rhs = -np.einsum('c,cij->ij', su3.lam[0, 1], t)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_su2_structure_constants_are_levi_civita(su2):
    for a in range(3):
        for b in range(3):
            for c in range(3):
                assert su2.lam[a, b, c] == pytest.approx(levi_civita(a, b, c), abs=1e-12)


def test_su3_known_values(su3):
    assert su3.lam[0, 1, 2] == pytest.approx(1.0)
    assert su3.lam[3, 4, 7] == pytest.approx(np.sqrt(3) / 2)
    assert su3.dsym[0, 0, 7] == pytest.approx(1 / np.sqrt(3))
    # su(2) : d-symboles nuls
    assert np.max(np.abs(build_gauge_basis(2).dsym)) < 1e-12


def test_structure_constants_reject_anti_hermitian_generators():
    with pytest.raises(InconsistentBasisError):
        structure_constants(1j * SIGMA[1:] / 2)


def test_anticommutator_closes_in_u_p():
    assert anticommutator_closure_residual(build_gauge_basis(3, 'u')) < 1e-12
    assert anticommutator_closure_residual(build_gauge_basis(3, 'su')) > 0.1


def test_decompose_element(su3, rng):
    coeffs = rng.normal(size=su3.dim)
    np.testing.assert_allclose(su3.decompose(su3.element(coeffs)).real, coeffs, atol=1e-12)
    assert su3.spans(su3.element(coeffs))
    assert not su3.spans(np.eye(3, dtype=complex))


def test_spin_algebra():
    assert spin_product_residual() < 1e-15
    assert SIGMA.shape == (4, 2, 2)


def test_tensor_elements(rng):
    basis = build_gauge_basis(2, 'u')
    coeffs = rng.normal(size=(4, basis.dim)) + 1j * rng.normal(size=(4, basis.dim))
    assert tensor_round_trip_residual(coeffs, basis) < 1e-12

    x = TensorElement(coeffs=rng.normal(size=(4, basis.dim)).astype(complex), basis=basis)
    y = TensorElement(coeffs=rng.normal(size=(4, basis.dim)).astype(complex), basis=basis)
    z = tensor_commutator(x, y)
    X, Y = x.realized, y.realized
    np.testing.assert_allclose(z.realized, X @ Y - Y @ X, atol=1e-10)


def test_tensor_commutator_identity_component(su2):
    x, y = TensorElement.unit(su2, 1, 0), TensorElement.unit(su2, 2, 0)
    z = tensor_commutator(x, y)
    # [σ₁⊗τ¹, σ₂⊗τ¹] = 2i σ₃ ⊗ (τ¹)² = (i/2) σ₃ ⊗ I
    assert z.has_identity
    np.testing.assert_allclose(z.identity_part, [0, 0, 0, 0.5j], atol=1e-12)
    np.testing.assert_allclose(z.coeffs, 0, atol=1e-12)
    np.testing.assert_allclose(z.realized, x.realized @ y.realized - y.realized @ x.realized, atol=1e-12)


def test_tensor_commutator_with_identity_inputs(su3, rng):
    x = TensorElement(coeffs=rng.normal(size=(4, su3.dim)).astype(complex), basis=su3,
                      identity=rng.normal(size=4).astype(complex))
    y = TensorElement(coeffs=rng.normal(size=(4, su3.dim)).astype(complex), basis=su3)
    z = tensor_commutator(x, y)
    np.testing.assert_allclose(z.realized, x.realized @ y.realized - y.realized @ x.realized, atol=1e-10)


def test_tensor_outside_su_basis_is_rejected(su2):
    identity_gauge = np.kron(SIGMA[1], np.eye(2))
    with pytest.raises(InconsistentBasisError):
        TensorElement.from_matrix(identity_gauge, su2)


def test_finite_groups():
    s3 = FiniteGroup.symmetric(3)
    assert s3.order == 6
    assert not s3.is_abelian()
    assert FiniteGroup.cyclic(4).is_abelian()
    assert FiniteGroup.cyclic(4).element_order(1) == 4
    assert FiniteGroup.trivial().order == 1
    for g in s3.elements():
        assert s3.mul(g, s3.inv(g)) == s3.identity

    a3 = alternating_subgroup(s3)
    assert a3.order == 3
    assert a3.is_abelian()

    product = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    assert product.order == 4
    assert all(product.element_order(g) <= 2 for g in product.elements())


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


def test_su2_double_cover(rng):
    for u in su2_group().sample(rng, 5):
        rot = su2_to_so3(u)
        np.testing.assert_allclose(rot @ rot.T, np.eye(3), atol=1e-12)
        lift = so3_section(rot)
        np.testing.assert_allclose(su2_to_so3(lift), rot, atol=1e-10)
        assert min(np.linalg.norm(lift - u), np.linalg.norm(lift + u)) < 1e-10

    group = so3_group()
    assert not group.finite
    assert group.eq(group.identity, np.eye(3))

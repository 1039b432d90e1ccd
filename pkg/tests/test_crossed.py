import numpy as np
import pytest

from src.algebra.finite_groups import FiniteGroup
from src.core.errors import ExtensionError, StructuralError
from src.crossed.crossed_module import (
    CrossedModuleData, alternating_in_symmetric, check_axioms, from_central_extension, identity_module,
    non_central_extension, quotient_module, sabotaged_module, spin3_extension, trivial_extension, z2_z4_z2,
)


@pytest.mark.parametrize('build', [
    lambda: identity_module(FiniteGroup.symmetric(3)),
    lambda: alternating_in_symmetric(3),
    lambda: quotient_module(6, 3),
    lambda: from_central_extension(z2_z4_z2()),
    lambda: from_central_extension(trivial_extension(FiniteGroup.cyclic(3), FiniteGroup.symmetric(3))),
], ids=['id:S3', 'A3<S3', 'Z6->Z3', 'Z2->Z4->Z2', 'Z3xS3'])
def test_finite_modules_pass(build):
    report = check_axioms(build())
    assert report.passed
    assert report.checked == report.samples_h ** 2 + report.samples_h * report.samples_g


def test_spin3_on_samples():
    rng = np.random.default_rng(0)
    module = from_central_extension(spin3_extension(), rng, 20)
    report = check_axioms(module, rng, 20)
    assert report.passed
    assert report.samples_h == 20


def test_matrix_group_requires_rng():
    with pytest.raises(StructuralError):
        from_central_extension(spin3_extension())


def test_sabotage_is_detected():
    report = check_axioms(sabotaged_module(FiniteGroup.symmetric(3)))
    assert not report.passed
    axiom, witness = report.first_witness()
    assert axiom == 'h^δ(h′) = h′⁻¹hh′'
    assert len(witness) == 2


def test_non_central_extension_is_rejected():
    with pytest.raises(ExtensionError) as excinfo:
        from_central_extension(non_central_extension())
    assert excinfo.value.witness is not None


def test_broken_morphism_raises_with_witness():
    z4 = FiniteGroup.cyclic(4)
    broken = CrossedModuleData(name='broken', H=z4, G=z4, delta=lambda h: (h * h) % 4, act=lambda h, g: h)
    with pytest.raises(StructuralError) as excinfo:
        check_axioms(broken)
    assert excinfo.value.witness is not None

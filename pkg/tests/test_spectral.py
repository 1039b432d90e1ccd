import numpy as np
import pytest

from src.core.errors import GapResolutionError, InvariantViolationError, SpectrumHitError
from src.spectral.dirac import (
    Loop, assemble, constant_potential, det_dimension_cocycle, gap_midpoints, gauge_covariance_check,
    shifted_constant_path, smooth_random_potential, spectral_flow, spectral_slice, truncation_convergence,
    window_dimension, winding_of_loop, winding_path,
)


def test_free_operator_spectrum():
    op = assemble(constant_potential(0.0), 2)
    assert op.size == 5
    np.testing.assert_allclose(op.eigenvalues(), np.arange(-2, 3), atol=1e-12)


def test_constant_shift():
    op = assemble(constant_potential(0.3 * np.eye(2)), 4)
    expected = np.repeat(np.arange(-4, 5) + 0.3, 2)
    np.testing.assert_allclose(op.eigenvalues(), expected, atol=1e-12)
    # |n + 0.3| ≤ 2 pour n = −2..1
    assert len(op.central_window(0.5)) == 8


def test_assembly_errors():
    with pytest.raises(InvariantViolationError):
        assemble(constant_potential(np.array([[0.0, 1.0], [0.0, 0.0]])), 4)
    with pytest.raises(InvariantViolationError):
        assemble(constant_potential(0.0), 20, samples=40)


def test_gauge_covariance():
    rng = np.random.default_rng(0)
    op = assemble(smooth_random_potential(rng, scale=0.2), 32)
    assert gauge_covariance_check(op, Loop.identity()) < 1e-12
    phase = Loop.phase(lambda t: 0.4 * np.sin(t), lambda t: 0.4 * np.cos(t))
    assert gauge_covariance_check(op, phase) < 1e-6
    constant = assemble(constant_potential(0.3), 32)
    assert gauge_covariance_check(constant, Loop.winding(1)) < 1e-8


def test_truncation_convergence():
    rng = np.random.default_rng(1)
    assert truncation_convergence(smooth_random_potential(rng), 32) < 1e-8


def test_winding_of_loop():
    assert winding_of_loop(Loop.winding(2)) == 2
    assert winding_of_loop(Loop.winding(-3, p=2)) == -6
    assert winding_of_loop(Loop.identity()) == 0


# ========== Dimensions ==========

def test_det_dimensions_free_operator():
    op = assemble(constant_potential(0.0), 8)
    report = det_dimension_cocycle(op, -0.5, 0.5, 1.5)
    assert report.dims == (1, 1, 2)
    assert report.additive
    assert det_dimension_cocycle(op, 0.5, 0.5, 2.5).dims[0] == 0


def test_det_dimension_errors():
    op = assemble(constant_potential(0.0), 4)
    with pytest.raises(SpectrumHitError):
        det_dimension_cocycle(op, -0.5, 1.0, 1.5)
    with pytest.raises(InvariantViolationError):
        det_dimension_cocycle(op, 1.5, 0.5, 2.5)


def test_det_dimensions_random_triples():
    rng = np.random.default_rng(2)
    op = assemble(smooth_random_potential(rng, scale=0.5), 32)
    mids = gap_midpoints(op.eigenvalues(), window=16)
    for _ in range(20):
        lam, eta, mu = np.sort(rng.choice(mids, size=3, replace=False))
        assert det_dimension_cocycle(op, lam, eta, mu).additive


def test_spectral_slice_and_window():
    op = assemble(constant_potential(0.0), 3)
    assert spectral_slice(op, 0.5).dims == (4, 3)
    assert window_dimension(op.eigenvalues(), -1.5, 1.5) == 3
    with pytest.raises(SpectrumHitError):
        spectral_slice(op, 1.0)


def test_gap_midpoints():
    np.testing.assert_allclose(gap_midpoints(np.array([0.0, 1.0, 3.0]), window=5), [0.5, 2.0])
    np.testing.assert_allclose(gap_midpoints(np.array([0.0, 0.0, 1.0]), window=5), [0.5])
    np.testing.assert_allclose(gap_midpoints(np.array([0.0, 1.0, 3.0]), window=5, count=1), [2.0])
    assert len(gap_midpoints(np.array([0.0]), window=5)) == 0


# ========== Flot spectral ==========

def test_constant_path_has_zero_flow():
    assert spectral_flow(shifted_constant_path(0.3, 0.0), 0.5, 4, 16).flow == 0


def test_unit_shift_has_unit_flow():
    result = spectral_flow(shifted_constant_path(0.0, 1.0), 0.5, 4, 16)
    assert result.flow == 1
    assert sum(delta for _, delta in result.crossings) == 1


def _reference(A, N):
    mids = gap_midpoints(assemble(A, N).eigenvalues(), window=2.0)
    return float(mids[np.argmin(np.abs(mids))])


@pytest.mark.parametrize('n', [-2, 1, 3])
def test_winding_path_flow(n):
    A = smooth_random_potential(np.random.default_rng(10 + n), scale=0.2)
    assert spectral_flow(winding_path(A, n), _reference(A, 64), 16, 64).flow == n


def test_flow_is_independent_of_discretization():
    rng = np.random.default_rng(4)
    A = smooth_random_potential(rng, scale=0.2)
    reference = _reference(A, 32)
    coarse = spectral_flow(winding_path(A, 2), reference, 8, 32)
    fine = spectral_flow(winding_path(A, 2), reference, 40, 32)
    assert coarse.flow == fine.flow == 2
    assert coarse.refinements >= 0


def test_unresolved_gap_raises():
    with pytest.raises(GapResolutionError) as excinfo:
        spectral_flow(shifted_constant_path(0.0, 1.0), 0.5, 1, 8, max_refinement=0)
    assert excinfo.value.interval == (0.0, 1.0)
    with pytest.raises(InvariantViolationError):
        spectral_flow(shifted_constant_path(0.0, 1.0), 0.5, 0, 8)

"""
Suite spectrale : opérateurs de Dirac sur S¹, flot spectral et dimensions
"""

from typing import List

import numpy as np

from ..spectral.dirac import (
    Loop, assemble, constant_potential, det_dimension_cocycle, gap_midpoints, gauge_covariance_check,
    shifted_constant_path, smooth_random_potential, spectral_flow, truncation_convergence, winding_of_loop,
    winding_path,
)
from .base_suite import BaseSuite, Check, raised

FLOW_N = 64
FLOW_WINDINGS = (-2, -1, 1, 2, 3)
FLOW_STEPS = 16
DET_TRIPLES = 20


class SpectralFlowSuite(BaseSuite):
    scenario = 'spectral-flow'
    title = 'Flot spectral et opérateurs de Dirac sur S¹'

    def collect_checks(self) -> List[Check]:
        checks = [
            Check('opérateur libre N=2', self._free, provenance='trivial', tolerance=1e-10),
            Check('A ≡ 0.3 : valeurs n + 0.3', self._constant_shift, provenance='derived', tolerance=1e-10),
            Check('A = a + b cos θ ~ a', self._cosine_gauge, provenance='derived', tolerance=1e-8),
            Check('convergence en troncature', self._truncation, provenance='derived', tolerance=1e-8),
            Check('chemin constant → flot 0', lambda: spectral_flow(shifted_constant_path(0.3, 0.0), 0.5, 4, 16).flow,
                  expected=0, provenance='trivial', tolerance=0),
            Check('A_t ≡ t, λ = 0.5 → flot 1', lambda: spectral_flow(shifted_constant_path(0.0, 1.0), 0.5, 4, 16).flow,
                  expected=1, provenance='derived', tolerance=0),
        ]
        for n in FLOW_WINDINGS:
            checks.append(Check(f'flot = enroulement n={n}', lambda n=n: self._winding_flow(n, FLOW_STEPS),
                                expected=n, provenance='paper', tolerance=0))
        checks += [
            Check('invariance par discrétisation', self._discretization, expected=True,
                  provenance='derived', tolerance=0),
            Check('enroulement de e^{2iθ}', lambda: winding_of_loop(Loop.winding(2)), expected=2,
                  provenance='trivial', tolerance=0),
            Check('Det : opérateur libre 1 + 1 = 2', self._det_free, expected=[1, 1, 2],
                  provenance='derived', tolerance=0),
            Check('Det : fenêtre dégénérée η = λ', self._det_degenerate, expected=0,
                  provenance='trivial', tolerance=0),
            Check(f'Det : additivité sur {DET_TRIPLES} triplets', self._det_random, expected=True,
                  provenance='paper', tolerance=0),
            Check('référence sur le spectre', self._spectrum_hit, expected='SpectrumHitError',
                  provenance='trivial', tolerance=0),
            Check('covariance : g = identité', self._covariance_identity, provenance='trivial', tolerance=1e-12),
            Check('covariance : g d\'enroulement 0', self._covariance_winding_zero, provenance='derived', tolerance=1e-6),
            Check('covariance : g = e^{iθ} sur A ≡ a', self._covariance_winding_one, provenance='derived', tolerance=1e-8),
        ]
        return checks

    def _free(self):
        eigs = assemble(constant_potential(0.0), 2).eigenvalues()
        return float(np.max(np.abs(eigs - np.arange(-2, 3))))

    def _constant_shift(self):
        eigs = assemble(constant_potential(0.3), 8).eigenvalues()
        return float(np.max(np.abs(eigs - (np.arange(-8, 9) + 0.3))))

    def _cosine_gauge(self):
        op = assemble(lambda t: 0.3 + 0.7 * np.cos(t), 32)
        reference = assemble(constant_potential(0.3), 32)
        window = 16
        a = op.eigenvalues()
        b = reference.eigenvalues()
        a, b = a[np.abs(a) <= window], b[np.abs(b) <= window]
        if len(a) != len(b):
            return float('inf')
        return float(np.max(np.abs(np.sort(a) - np.sort(b))))

    def _truncation(self):
        return truncation_convergence(smooth_random_potential(self.rng('troncature')), 32)

    def _base_potential(self, stream: str):
        return smooth_random_potential(self.rng(stream), scale=0.2)

    def _reference(self, potential, N: int) -> float:
        eigs = assemble(potential, N).eigenvalues()
        mids = gap_midpoints(eigs, window=2.0)
        return float(mids[np.argmin(np.abs(mids))])

    def _winding_flow(self, n: int, steps: int) -> int:
        A = self._base_potential(f'flot/{n}')
        return spectral_flow(winding_path(A, n), self._reference(A, FLOW_N), steps, FLOW_N).flow

    def _discretization(self):
        return self._winding_flow(2, 8) == self._winding_flow(2, 40)

    def _det_free(self):
        report = det_dimension_cocycle(assemble(constant_potential(0.0), 8), -0.5, 0.5, 1.5)
        return list(report.dims)

    def _det_degenerate(self):
        report = det_dimension_cocycle(assemble(constant_potential(0.0), 8), 0.5, 0.5, 2.5)
        return report.dims[0]

    def _det_random(self):
        rng = self.rng('det')
        op = assemble(smooth_random_potential(rng, scale=0.5), 32)
        mids = gap_midpoints(op.eigenvalues(), window=16)
        for _ in range(DET_TRIPLES):
            lam, eta, mu = np.sort(rng.choice(mids, size=3, replace=False))
            if not det_dimension_cocycle(op, lam, eta, mu).additive:
                return False
        return True

    def _spectrum_hit(self):
        op = assemble(constant_potential(0.0), 4)
        return raised(lambda: det_dimension_cocycle(op, -0.5, 1.0, 1.5))

    def _covariance_identity(self):
        op = assemble(self._base_potential('covariance/identite'), 32)
        return gauge_covariance_check(op, Loop.identity())

    def _covariance_winding_zero(self):
        op = assemble(self._base_potential('covariance/zero'), 32)
        loop = Loop.phase(lambda t: 0.4 * np.sin(t), lambda t: 0.4 * np.cos(t))
        return gauge_covariance_check(op, loop)

    def _covariance_winding_one(self):
        op = assemble(constant_potential(0.3), 32)
        return gauge_covariance_check(op, Loop.winding(1))

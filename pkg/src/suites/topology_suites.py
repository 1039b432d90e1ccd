"""
Suites topologiques : formes de Chern-Simons, degré des applications S³ → SU(2),
monopôle à deux cartes
"""

from functools import cached_property
from typing import List

import numpy as np

from ..algebra.liealg import build_gauge_basis
from ..cocycles.mickelsson_faddeev import C2
from ..geometry.fields import (
    boundary_vanishing_factor, default_features, quaternion_map, random_field, random_group_map,
)
from ..geometry.forms import LieForm, pointwise_residual
from ..geometry.grids import ball3_grid, product_grid, sphere2_grid, sphere3_grid
from ..geometry.group_maps import GroupMap
from ..topology.chern_simons import (
    AffineConnection4, NormalizationTable, cs3, cs5_pure_gauge_sides, dcs_identity_check,
    transgression_sides, transgression_stokes,
)
from ..topology.monopole import chern1_monopole, field_strength_residual, transition_residual
from ..topology.winding import (
    additivity_residual, homotopy_residual, winding_3, winding_factor_residual,
)
from .base_suite import BaseSuite, Check
from .samples import diagonal_generators, random_zero_form

CS5_ORDER = 6
MONOPOLE_CHARGES = range(-5, 6)


class ChernSimonsSuite(BaseSuite):
    scenario = 'chern-simons'
    title = 'Formes de Chern-Simons'

    @cached_property
    def su2(self):
        return build_gauge_basis(2)

    @cached_property
    def ball(self):
        return ball3_grid(self.cfg.quad_order)

    def collect_checks(self) -> List[Check]:
        table = NormalizationTable()
        checks = [
            Check('c₁ = 1/(24π²)', table.c1_residual, provenance='paper', tolerance=1e-15),
            Check('table c_{2k+1}', table.as_dict, expected=None, tolerance=None),
            Check('CS₃(0) = 0', self._cs3_zero, provenance='trivial', tolerance=0),
            Check('CS₅ jauge pure = c₃ ∫ tr(g⁻¹dg)⁵', self._cs5_pure_gauge, provenance='derived', tolerance=1e-4),
            Check('d(CS₃) = tr F∧F, A constant', lambda: self._dcs_constant(), provenance='trivial', tolerance=1e-12),
            Check('d(CS₃) = tr F∧F, A abélien', lambda: self._dcs_abelian(), provenance='trivial', tolerance=1e-12),
        ]
        for i in range(20):
            checks.append(Check(f'd(CS₃) = tr F∧F #{i}', lambda i=i: self._dcs_random(i),
                                provenance='paper', tolerance=1e-12))
        for i in range(3):
            checks.append(Check(f'transgression de Stokes sur B³ #{i}', lambda i=i: self._stokes(i),
                                provenance='paper', tolerance=1e-5))
        checks.append(Check('w constante → deux membres nuls', self._stokes_constant,
                            provenance='trivial', tolerance=1e-10))
        checks.append(Check('données nulles au bord → membre de bord nul', self._stokes_vanishing,
                            provenance='trivial', tolerance=1e-5))
        return checks

    def _cs3_zero(self):
        grid = sphere3_grid(8)
        return pointwise_residual(cs3(_zero_connection(grid, 2)))

    def _cs5_pure_gauge(self):
        grid = product_grid(sphere3_grid(CS5_ORDER), sphere2_grid(CS5_ORDER))
        su3 = build_gauge_basis(3)
        g = random_group_map(grid, su3.generators, self.rng('cs5'), scale=0.5)
        lhs, rhs = cs5_pure_gauge_sides(g)
        return abs(lhs - rhs)

    def _dcs_random(self, i: int):
        conn = AffineConnection4.random(self.su2.generators, self.rng(f'dcs/{i}'))
        return dcs_identity_check(conn)

    def _dcs_constant(self):
        conn = AffineConnection4.random(self.su2.generators, self.rng('dcs/constante'))
        return dcs_identity_check(AffineConnection4(M=conn.M, N=np.zeros_like(conn.N)))

    def _dcs_abelian(self):
        gens = diagonal_generators(self.su2)
        return dcs_identity_check(AffineConnection4.random(gens, self.rng('dcs/abelien')))

    def _fields(self, stream: str):
        rng = self.rng(stream)
        return [random_zero_form(self.ball, self.su2.generators, rng) for _ in range(3)]

    def _stokes(self, i: int):
        return transgression_stokes(*self._fields(f'stokes/{i}'), C2)

    def _stokes_constant(self):
        u, v, _ = self._fields('stokes/constante')
        w = LieForm.constant(self.ball, 1j * self.su2.generators[0])
        return max(abs(side) for side in transgression_sides(u, v, w, C2))

    def _stokes_vanishing(self):
        rng = self.rng('stokes/bord')
        factor = boundary_vanishing_factor()
        forms = [random_field(rng, self.su2.generators, default_features(self.ball)).times_scalar(factor).on(self.ball)
                 for _ in range(3)]
        boundary, bulk = transgression_sides(*forms, C2)
        return max(abs(boundary), abs(bulk))


class WindingSuite(BaseSuite):
    scenario = 'winding'
    title = 'Degré des applications S³ → SU(2)'

    @cached_property
    def grid(self):
        return sphere3_grid(self.cfg.quad_order)

    def collect_checks(self) -> List[Check]:
        degree = {d: (lambda d=d: quaternion_map(self.grid, d)) for d in (-1, 1, 2)}
        return [
            Check('constante → 0', lambda: winding_3(GroupMap.identity(self.grid, 2)),
                  provenance='trivial', tolerance=1e-12),
            Check('degree-1 map', lambda: abs(winding_3(degree[1]())), expected=1.0,
                  provenance='derived', tolerance=1e-6),
            Check('degree-2 map', lambda: abs(winding_3(degree[2]())), expected=2.0,
                  provenance='derived', tolerance=1e-6),
            Check('inverse : deg(g⁻¹) = −deg(g)', lambda: winding_3(degree[-1]()) + winding_3(degree[1]()),
                  provenance='derived', tolerance=2e-6),
            Check('additivité deg(g·h) = deg g + deg h', self._additivity, provenance='derived', tolerance=2e-6),
            Check('invariance par homotopie', self._homotopy, provenance='derived', tolerance=1e-6),
            Check('application aléatoire : distance à ℤ', self._random_integrality,
                  provenance='derived', tolerance=1e-6),
            Check('facteur 1/(24π²) = c₁', winding_factor_residual, provenance='paper', tolerance=1e-15),
        ]

    def _additivity(self):
        g = quaternion_map(self.grid, 1)
        h = random_group_map(self.grid, build_gauge_basis(2).generators, self.rng('additivite'), scale=0.5)
        return additivity_residual(g, h)

    def _homotopy(self):
        g = quaternion_map(self.grid, 1)
        eps = random_group_map(self.grid, build_gauge_basis(2).generators, self.rng('homotopie'), scale=0.05)
        return homotopy_residual(g, eps)

    def _random_integrality(self):
        g = random_group_map(self.grid, build_gauge_basis(2).generators, self.rng('aleatoire'), scale=1.0)
        value = winding_3(g)
        return abs(value - round(value.real))


class MonopoleSuite(BaseSuite):
    scenario = 'monopole'
    title = 'Monopôle et premier nombre de Chern'

    def collect_checks(self) -> List[Check]:
        order = self.cfg.quad_order
        checks = [
            Check(f'c₁(n={n})', lambda n=n: chern1_monopole(n, order), expected=float(n),
                  provenance='paper' if n else 'trivial', tolerance=1e-8)
            for n in MONOPOLE_CHARGES
        ]
        checks.append(Check('courbure (in/2) sin θ dθ∧dφ', lambda: field_strength_residual(3, order),
                            provenance='derived', tolerance=1e-10))
        checks.append(Check('transition A_N − A_S = g⁻¹dg', lambda: transition_residual(3, order),
                            provenance='derived', tolerance=1e-12))
        return checks


def _zero_connection(grid, p: int) -> LieForm:
    def evaluator(q):
        return np.zeros((q.shape[0], grid.dim, p, p), dtype=np.complex128)

    def partials(q):
        return np.zeros((q.shape[0], grid.dim, grid.dim, p, p), dtype=np.complex128)

    return LieForm.from_evaluator(grid, 1, evaluator, partials)

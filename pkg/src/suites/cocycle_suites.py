"""
Suites des cocycles : Kac-Moody, Mickelsson-Faddeev, invariance de jauge,
cohomologie des groupes finis et cohomologie de Čech
"""

from functools import cached_property
from typing import List

import numpy as np

from ..algebra.finite_groups import FiniteGroup, permutation_sign
from ..algebra.liealg import build_gauge_basis
from ..cocycles.cech import (
    CechCover, all_orderings_consistent, cech_coboundary, constant_cochain, multiplicative_cocycle_check,
    random_cech_cochain,
)
from ..cocycles.group_cohomology import (
    CyclicModule, FiniteModule, coboundary_squared_residual, cochain_from_function, extension_from_cocycle,
    group_coboundary, h2_brute_force, is_cyclic, orders, random_cochain,
)
from ..cocycles.kac_moody import kac_moody, km_antisymmetry_residual, km_cocycle_residual
from ..cocycles.mickelsson_faddeev import (
    DEFAULT_CONVENTION, MFContext, boundary_term, calibrate_invariance, invariance_residual, lie_coboundary_2,
    mf_antisymmetry_residual, mickelsson_faddeev,
)
from ..geometry.fields import random_group_map
from ..geometry.forms import LieForm, restrict_to_boundary
from ..geometry.grids import ball3_grid, circle_grid, sphere3_grid
from ..geometry.group_maps import GroupMap
from .base_suite import BaseSuite, Check, raised
from .samples import (
    cos_sin_loops, diagonal_generators, random_algebra_element, random_connection, random_zero_form,
)

SEEDS = 10
# su(2) : d-symboles nuls, θ ≡ 0. Les suites θ travaillent en su(3) au minimum.
MIN_COCYCLE_P = 3


class KacMoodySuite(BaseSuite):
    scenario = 'kac-moody'
    title = 'Cocycle de Kac-Moody sur S¹'
    LEVEL = 1.0

    @cached_property
    def grid(self):
        return circle_grid(self.cfg.quad_order)

    @cached_property
    def basis(self):
        return build_gauge_basis(self.cfg.gauge_p)

    def loops(self, stream: str, count: int = 3) -> List[LieForm]:
        rng = self.rng(stream)
        return [random_zero_form(self.grid, self.basis.generators, rng) for _ in range(count)]

    def collect_checks(self) -> List[Check]:
        k = self.LEVEL
        rng = self.rng('forme close')
        x, y = random_algebra_element(self.basis, rng), random_algebra_element(self.basis, rng)
        u, v = cos_sin_loops(self.grid, x, y)
        const = LieForm.constant(self.grid, y)

        checks = [
            Check('forme close kπ tr(xy)', lambda: kac_moody(u, v, k),
                  expected=k * np.pi * np.trace(x @ y), provenance='derived', tolerance=1e-8),
            Check('v constante → 0', lambda: kac_moody(u, const, k), provenance='trivial', tolerance=1e-12),
        ]
        for i in range(3):
            checks.append(Check(f'antisymétrie κ(u,v)+κ(v,u) #{i}',
                                lambda i=i: km_antisymmetry_residual(*self.loops(f'anti{i}', 2), k),
                                provenance='trivial', tolerance=1e-8))
            checks.append(Check(f'identité de cocycle #{i}',
                                lambda i=i: km_cocycle_residual(*self.loops(f'cocycle{i}'), k),
                                provenance='derived', tolerance=1e-6))
        checks.append(Check('identité de cocycle, arguments égaux',
                            lambda: self._equal_arguments(k), provenance='trivial', tolerance=1e-6))
        checks.append(Check('identité de cocycle, données constantes',
                            lambda: self._constant_arguments(k), provenance='trivial', tolerance=1e-12))
        return checks

    def _equal_arguments(self, k):
        u, w = self.loops('egaux', 2)
        return km_cocycle_residual(u, u, w, k)

    def _constant_arguments(self, k):
        rng = self.rng('constantes')
        forms = [LieForm.constant(self.grid, random_algebra_element(self.basis, rng)) for _ in range(3)]
        return km_cocycle_residual(*forms, k)


class MickelssonFaddeevSuite(BaseSuite):
    scenario = 'mickelsson-faddeev'
    title = 'Cocycle de Mickelsson-Faddeev'

    @cached_property
    def sphere(self):
        return sphere3_grid(self.cfg.quad_order)

    @cached_property
    def ball(self):
        return ball3_grid(self.cfg.quad_order)

    @cached_property
    def basis(self):
        return build_gauge_basis(max(self.cfg.gauge_p, MIN_COCYCLE_P))

    def data(self, grid, stream: str, count: int = 3):
        rng = self.rng(stream)
        gens = self.basis.generators
        A = random_connection(grid, gens, rng)
        return MFContext(A), [random_zero_form(grid, gens, rng) for _ in range(count)]

    def collect_checks(self) -> List[Check]:
        checks = [
            Check('x constant → 0', self._constant_x, provenance='trivial', tolerance=1e-12),
            Check('antisymétrie θ(A;x,y) = −θ(A;y,x)', self._antisymmetry, provenance='trivial', tolerance=1e-8),
            Check('valeur imaginaire pure', self._real_part, provenance='derived', tolerance=1e-8),
            Check('linéarité en A', self._linearity, provenance='derived', tolerance=1e-8),
            Check('δθ données constantes → 0', self._constant_coboundary, provenance='trivial', tolerance=1e-12),
        ]
        for i in range(SEEDS):
            checks.append(Check(f'δθ = 0 sur S³ #{i}', lambda i=i: self._closed(i),
                                provenance='derived', tolerance=1e-6))
        for i in range(3):
            checks.append(Check(f'δθ sur B³ = terme de bord #{i}', lambda i=i: self._ball(i),
                                provenance='paper', tolerance=1e-5))
        return checks

    def _constant_x(self):
        ctx, (_, y, _) = self.data(self.sphere, 'constante')
        x = LieForm.constant(self.sphere, random_algebra_element(self.basis, self.rng('constante/x')))
        return mickelsson_faddeev(ctx, x, y)

    def _antisymmetry(self):
        ctx, (x, y, _) = self.data(self.sphere, 'antisymetrie')
        return mf_antisymmetry_residual(ctx, x, y)

    def _real_part(self):
        ctx, (x, y, _) = self.data(self.sphere, 'imaginaire')
        return abs(mickelsson_faddeev(ctx, x, y).real)

    def _linearity(self):
        ctx, (x, y, _) = self.data(self.sphere, 'linearite')
        B = random_connection(self.sphere, self.basis.generators, self.rng('linearite/B'))
        total = mickelsson_faddeev(ctx.with_connection(ctx.A + B), x, y)
        return abs(total - mickelsson_faddeev(ctx, x, y) - mickelsson_faddeev(ctx.with_connection(B), x, y))

    def _constant_coboundary(self):
        ctx, _ = self.data(self.sphere, 'cobord constant', 0)
        rng = self.rng('cobord constant/valeurs')
        forms = [LieForm.constant(self.sphere, random_algebra_element(self.basis, rng)) for _ in range(3)]
        return lie_coboundary_2(ctx, *forms)

    def _closed(self, i: int):
        ctx, forms = self.data(self.sphere, f'S3/{i}')
        return lie_coboundary_2(ctx, *forms)

    def _ball(self, i: int):
        ctx, forms = self.data(self.ball, f'B3/{i}')
        bulk = lie_coboundary_2(ctx, *forms)
        boundary = boundary_term(*(restrict_to_boundary(f) for f in forms), c2=ctx.c2)
        return abs(bulk - boundary)


class InvarianceSuite(BaseSuite):
    scenario = 'invariance'
    title = 'Invariance cohomologique sous la jauge'

    @cached_property
    def grid(self):
        return sphere3_grid(self.cfg.quad_order)

    @cached_property
    def basis(self):
        return build_gauge_basis(max(self.cfg.gauge_p, MIN_COCYCLE_P))

    def data(self, stream: str, generators=None):
        rng = self.rng(stream)
        gens = self.basis.generators if generators is None else generators
        A = random_connection(self.grid, gens, rng)
        x, y = (random_zero_form(self.grid, gens, rng) for _ in range(2))
        g = random_group_map(self.grid, gens, rng, scale=0.5)
        return MFContext(A), x, y, g

    @cached_property
    def calibration(self):
        ctx, x, y, g = self.data('calibration')
        return calibrate_invariance(ctx, x, y, g, tolerance=self.effective_tolerance(1e-5))

    def collect_checks(self) -> List[Check]:
        checks = [
            Check('calibration : convention retenue', lambda: self.calibration.selected.label,
                  expected=DEFAULT_CONVENTION.label, provenance='derived', tolerance=0),
            Check('calibration : conventions annulant le résidu', lambda: len(self.calibration.vanishing),
                  expected=1, provenance='derived', tolerance=0),
            Check('calibration : résidus', self._calibration_table, expected=None, tolerance=None),
            Check('g = identité → 0', self._identity, provenance='trivial', tolerance=1e-12),
            Check('groupe abélien → 0', self._abelian, provenance='trivial', tolerance=1e-8),
        ]
        for i in range(SEEDS):
            checks.append(Check(f'θ^g − θ + δλ = 0 #{i}', lambda i=i: self._residual(i),
                                provenance='paper', tolerance=1e-5))
        return checks

    def _calibration_table(self):
        return {c.label: abs(r) for c, r in self.calibration.residuals}

    def _identity(self):
        ctx, x, y, _ = self.data('identite')
        return invariance_residual(ctx, x, y, GroupMap.identity(self.grid, self.basis.p), self.calibration.selected)

    def _abelian(self):
        ctx, x, y, g = self.data('abelien', diagonal_generators(self.basis))
        return invariance_residual(ctx, x, y, g, self.calibration.selected)

    def _residual(self, i: int):
        ctx, x, y, g = self.data(f'residu/{i}')
        return invariance_residual(ctx, x, y, g, self.calibration.selected)


class GroupCohomologySuite(BaseSuite):
    scenario = 'group-cohomology'
    title = 'Cohomologie des groupes finis'

    def collect_checks(self) -> List[Check]:
        z2, z3 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)
        klein = FiniteGroup.direct_product(z2, z2)
        trivial = FiniteGroup.trivial()
        pair = FiniteModule.direct_sum(z2, CyclicModule.trivial(z2, 2), CyclicModule.trivial(z2, 2))
        checks = [
            Check('H²(ℤ₂,ℤ₂) order = 2', lambda: h2_brute_force(z2, CyclicModule.trivial(z2, 2)),
                  expected=2, provenance='derived', tolerance=0),
            Check('H²(ℤ₂,ℤ₃) order = 1', lambda: h2_brute_force(z2, CyclicModule.trivial(z2, 3)),
                  expected=1, provenance='derived', tolerance=0),
            Check('H²(1,ℤ₂) order = 1', lambda: h2_brute_force(trivial, CyclicModule.trivial(trivial, 2)),
                  expected=1, provenance='trivial', tolerance=0),
            Check('H²(ℤ₃,ℤ₃) order = 3', lambda: h2_brute_force(z3, CyclicModule.trivial(z3, 3)),
                  expected=3, provenance='derived', tolerance=0),
            Check('H²(ℤ₂×ℤ₂,ℤ₂) order = 8', lambda: h2_brute_force(klein, CyclicModule.trivial(klein, 2)),
                  expected=8, provenance='derived', tolerance=0),
            Check('H²(ℤ₂,ℤ₂⊕ℤ₂) order = 4', lambda: h2_brute_force(z2, pair),
                  expected=4, provenance='derived', tolerance=0),
            Check('δf ≡ 0 pour f ≡ 0 (p=1)', self._zero_coboundary, expected=True, provenance='trivial', tolerance=0),
            Check('formule p=1 : g₁f(g₂) − f(g₁g₂) + f(g₁)', self._degree_one_formula,
                  expected=True, provenance='paper', tolerance=0),
            Check('δδ = 0 sur S₃ à coefficients ℤ₄ tordus', self._squared,
                  expected=True, provenance='derived', tolerance=0),
            Check('extension non triviale de ℤ₂ par ℤ₂ cyclique', self._nontrivial_extension,
                  expected=[1, 2, 4, 4], provenance='derived', tolerance=0),
            Check('extension triviale = ℤ₂ × ℤ₂', self._trivial_extension,
                  expected=[1, 2, 2, 2], provenance='derived', tolerance=0),
            Check('garde de taille', self._guard, expected='SizeGuardError', provenance='trivial', tolerance=0),
        ]
        return checks

    @staticmethod
    def _sign_module(sym: FiniteGroup) -> CyclicModule:
        return CyclicModule(m=4, action=tuple(permutation_sign(perm) % 4 for perm in sym.labels))

    def _zero_coboundary(self):
        z2 = FiniteGroup.cyclic(2)
        module = CyclicModule.trivial(z2, 2)
        f = cochain_from_function(z2, module, 1, lambda g: 0)
        return group_coboundary(f).is_zero()

    def _degree_one_formula(self):
        sym = FiniteGroup.symmetric(3)
        module = self._sign_module(sym)
        f = random_cochain(sym, module, 1, self.rng('formule p=1'))
        d = group_coboundary(f).values
        for g1 in sym.elements():
            for g2 in sym.elements():
                expected = (module.act(g1, f.values[g2]) - f.values[sym.mul(g1, g2)] + f.values[g1]) % module.m
                if d[g1, g2] % module.m != expected:
                    return False
        return True

    def _squared(self):
        sym = FiniteGroup.symmetric(3)
        module = self._sign_module(sym)
        module.validate(sym)
        rng = self.rng('delta carre')
        return all(coboundary_squared_residual(random_cochain(sym, module, p, rng))
                   for p in (1, 2) for _ in range(10))

    def _nontrivial_extension(self):
        z2 = FiniteGroup.cyclic(2)
        f = cochain_from_function(z2, CyclicModule.trivial(z2, 2), 2, lambda g, h: g * h)
        ext = extension_from_cocycle(f)
        return orders(ext) if is_cyclic(ext) else []

    def _trivial_extension(self):
        z2 = FiniteGroup.cyclic(2)
        f = cochain_from_function(z2, CyclicModule.trivial(z2, 2), 2, lambda g, h: 0)
        return orders(extension_from_cocycle(f))

    def _guard(self):
        sym = FiniteGroup.symmetric(3)
        return raised(lambda: h2_brute_force(sym, CyclicModule.trivial(sym, 8)))


class CechSuite(BaseSuite):
    scenario = 'cech'
    title = 'Cohomologie de Čech'
    MODULUS = 5

    def collect_checks(self) -> List[Check]:
        m = self.MODULUS
        return [
            Check('0-cochaîne constante → δ = 0', lambda: cech_coboundary(constant_cochain(CechCover.complete(3), m, 2)).is_zero(),
                  expected=True, provenance='trivial', tolerance=0),
            Check('δδ = 0 sur un recouvrement à 4 ouverts', self._squared, expected=True,
                  provenance='derived', tolerance=0),
            Check('δδ = 0 sur un nerf partiel', self._squared_partial, expected=True,
                  provenance='derived', tolerance=0),
            Check('c_ij c_jk c_ki = 1 pour des transitions cobords', self._multiplicative,
                  expected=0, provenance='paper', tolerance=0),
            Check('transition altérée détectée', self._tampered, expected=1, provenance='trivial', tolerance=0),
            Check('alternance sur toutes les permutations', self._alternation, expected=True,
                  provenance='trivial', tolerance=0),
            Check('intersection non déclarée', self._undeclared, expected='UndeclaredIntersectionError',
                  provenance='trivial', tolerance=0),
        ]

    def _squared(self):
        cover = CechCover.complete(4)
        rng = self.rng('delta carre')
        return all(cech_coboundary(cech_coboundary(random_cech_cochain(cover, p, self.MODULUS, rng))).is_zero()
                   for p in (0, 1) for _ in range(20))

    def _squared_partial(self):
        cover = CechCover.from_maximal(5, [(0, 1, 2), (1, 2, 3, 4), (0, 4)])
        rng = self.rng('nerf partiel')
        return all(cech_coboundary(cech_coboundary(random_cech_cochain(cover, p, self.MODULUS, rng))).is_zero()
                   for p in (0, 1) for _ in range(20))

    def _transitions(self, cover: CechCover):
        h = random_cech_cochain(cover, 0, self.MODULUS, self.rng('transitions'))
        return dict(cech_coboundary(h).values)

    def _multiplicative(self):
        cover = CechCover.complete(4)
        return len(multiplicative_cocycle_check(self._transitions(cover), cover, self.MODULUS))

    def _tampered(self):
        cover = CechCover.complete(3)
        transitions = self._transitions(cover)
        transitions[(0, 1)] = (transitions[(0, 1)] + 1) % self.MODULUS
        return len(multiplicative_cocycle_check(transitions, cover, self.MODULUS))

    def _alternation(self):
        cover = CechCover.complete(4)
        rng = self.rng('alternance')
        return all(all_orderings_consistent(random_cech_cochain(cover, p, self.MODULUS, rng)) for p in (1, 2))

    def _undeclared(self):
        cover = CechCover.from_maximal(3, [(0, 1), (1, 2)])
        table = random_cech_cochain(cover, 1, self.MODULUS, self.rng('non declaree'))
        return raised(lambda: table.value((0, 2)))

"""
Cocycle de Mickelsson-Faddeev, cobord de Lie, cochaîne λ et invariance de jauge

Conventions
  - θ(A; x, y) = c₂ ∫ tr A ∧ [dx, dy] avec [dx, dy] = dx∧dy − dy∧dx
    (commutateur matriciel des 1-formes).
  - Action sur l'argument connexion : L_u A = [A, u] + du. θ étant linéaire
    en A, L_u θ(A; v, w) = θ(L_u A; v, w).
  - Cobord de Chevalley-Eilenberg :
      δθ(u,v,w) = L_uθ(v,w) − L_vθ(u,w) + L_wθ(u,v)
                  − θ([u,v],w) + θ([u,w],v) − θ([v,w],u)
  - λ(A; z) = c₂ ∫ tr(Aω[ω,z] + [ω,A]dz + s·ω³z), ω = dg g⁻¹, s = cubic_sign.
  - θ^g(A; x, y) = θ(A^g; g⁻¹xg, g⁻¹yg), A^g = g⁻¹Ag + g⁻¹dg (transform 'gauge')
    ou g⁻¹Ag (transform 'adjoint').
"""

from dataclasses import dataclass, replace
from itertools import product
from typing import List, Tuple

import numpy as np

from ..core.errors import ConventionError, DegreeError, GridMismatchError
from ..geometry.forms import (
    LieForm, commutator_0, exterior_d, matrix_commutator_wedge, product_wedge, trace_integral,
)
from ..geometry.group_maps import GroupMap, adjoint_transform, gauge_transform, maurer_cartan

C2 = 1j / (24 * np.pi ** 2)


@dataclass(frozen=True)
class MFContext:
    """Connexion A et constante c₂"""
    A: LieForm
    c2: complex = C2

    def __post_init__(self):
        if self.A.degree != 1:
            raise DegreeError(f"A doit être une 1-forme (degré {self.A.degree})")

    def with_connection(self, A: LieForm) -> 'MFContext':
        return replace(self, A=A)


@dataclass(frozen=True)
class InvarianceConvention:
    transform: str = 'gauge'      # 'gauge' ou 'adjoint'
    coboundary_sign: int = 1      # signe devant δλ
    cubic_sign: int = -1          # signe du terme ω³z de λ

    @property
    def label(self) -> str:
        return f"{self.transform}/δλ{self.coboundary_sign:+d}/ω³{self.cubic_sign:+d}"


DEFAULT_CONVENTION = InvarianceConvention()


def _check_inputs(A: LieForm, *zero_forms: LieForm):
    for f in zero_forms:
        if f.degree != 0:
            raise DegreeError(f"Argument de degré {f.degree}, 0 attendu")
        if f.grid is not A.grid:
            raise GridMismatchError("Arguments sur une grille différente de celle de A")


def action_on_connection(A: LieForm, u: LieForm) -> LieForm:
    """L_u A = [A, u] + du"""
    return matrix_commutator_wedge(A, u) + exterior_d(u)


def mickelsson_faddeev(ctx: MFContext, x: LieForm, y: LieForm) -> complex:
    """θ(A; x, y) = c₂ ∫ tr A ∧ [dx, dy]"""
    _check_inputs(ctx.A, x, y)
    bracket = matrix_commutator_wedge(exterior_d(x), exterior_d(y))
    return ctx.c2 * trace_integral(product_wedge(ctx.A, bracket))


def mf_antisymmetry_residual(ctx: MFContext, x: LieForm, y: LieForm) -> complex:
    return mickelsson_faddeev(ctx, x, y) + mickelsson_faddeev(ctx, y, x)


def lie_coboundary_2(ctx: MFContext, u: LieForm, v: LieForm, w: LieForm) -> complex:
    """
    δθ(A; u, v, w), formule de Chevalley-Eilenberg à six termes :
    L_uθ(v,w) − L_vθ(u,w) + L_wθ(u,v) − θ([u,v],w) + θ([u,w],v) − θ([v,w],u)
    """
    _check_inputs(ctx.A, u, v, w)
    A = ctx.A

    def theta(B: LieForm, a: LieForm, b: LieForm) -> complex:
        return mickelsson_faddeev(ctx.with_connection(B), a, b)

    return (theta(action_on_connection(A, u), v, w)
            - theta(action_on_connection(A, v), u, w)
            + theta(action_on_connection(A, w), u, v)
            - theta(A, commutator_0(u, v), w)
            + theta(A, commutator_0(u, w), v)
            - theta(A, commutator_0(v, w), u))


def boundary_term(u: LieForm, v: LieForm, w: LieForm, c2: complex = C2) -> complex:
    """
    c₂ ∫_{S²} tr(u[dv,dw] + v[dw,du] + w[du,dv]), 0-formes restreintes au bord.

    Égal à δθ sur B³ : les termes linéaires en A s'annulent point par point et
    il reste l'intégrale d'une forme exacte.
    """
    du, dv, dw = exterior_d(u), exterior_d(v), exterior_d(w)
    total = (product_wedge(u, matrix_commutator_wedge(dv, dw))
             + product_wedge(v, matrix_commutator_wedge(dw, du))
             + product_wedge(w, matrix_commutator_wedge(du, dv)))
    return c2 * trace_integral(total)


def _lambda_terms(A: LieForm, omega: LieForm, z: LieForm) -> Tuple[LieForm, LieForm]:
    """(Aω[ω,z] + [ω,A]dz, ω³z) : partie linéaire en A et partie cubique"""
    linear = (product_wedge(product_wedge(A, omega), matrix_commutator_wedge(omega, z))
              + product_wedge(matrix_commutator_wedge(omega, A), exterior_d(z)))
    cubic = product_wedge(product_wedge(product_wedge(omega, omega), omega), z)
    return linear, cubic


def lambda_cochain(ctx: MFContext, g: GroupMap, z: LieForm, cubic_sign: int = -1) -> complex:
    """λ(A; z) = c₂ ∫ tr(Aω[ω,z] + [ω,A]dz + s·ω³z), ω = dg g⁻¹"""
    _check_inputs(ctx.A, z)
    omega = maurer_cartan(g, 'right')
    linear, cubic = _lambda_terms(ctx.A, omega, z)
    return ctx.c2 * (trace_integral(linear) + cubic_sign * trace_integral(cubic))


def _lambda_linear(ctx: MFContext, B: LieForm, omega: LieForm, z: LieForm) -> complex:
    linear, _ = _lambda_terms(B, omega, z)
    return ctx.c2 * trace_integral(linear)


def lambda_coboundary(ctx: MFContext, g: GroupMap, x: LieForm, y: LieForm, cubic_sign: int = -1) -> complex:
    """δλ(A; x, y) = λ₁(L_x A; y) − λ₁(L_y A; x) − λ(A; [x, y]), λ₁ partie linéaire en A"""
    omega = maurer_cartan(g, 'right')
    A = ctx.A
    return (_lambda_linear(ctx, action_on_connection(A, x), omega, y)
            - _lambda_linear(ctx, action_on_connection(A, y), omega, x)
            - lambda_cochain(ctx, g, commutator_0(x, y), cubic_sign))


def transformed_cocycle(ctx: MFContext, x: LieForm, y: LieForm, g: GroupMap, transform: str = 'gauge') -> complex:
    """θ^g(A; x, y) = θ(A^g; g⁻¹xg, g⁻¹yg)"""
    if transform == 'gauge':
        A_g = gauge_transform(ctx.A, g)
    elif transform == 'adjoint':
        A_g = adjoint_transform(ctx.A, g)
    else:
        raise ConventionError(f"Transformation inconnue: {transform}")
    return mickelsson_faddeev(ctx.with_connection(A_g), x.conjugate_by(g), y.conjugate_by(g))


def invariance_residual(ctx: MFContext, x: LieForm, y: LieForm, g: GroupMap,
                        convention: InvarianceConvention = DEFAULT_CONVENTION) -> complex:
    """θ^g − θ + s·δλ sous la convention donnée"""
    _check_inputs(ctx.A, x, y)
    theta_g = transformed_cocycle(ctx, x, y, g, convention.transform)
    theta = mickelsson_faddeev(ctx, x, y)
    d_lambda = lambda_coboundary(ctx, g, x, y, convention.cubic_sign)
    return theta_g - theta + convention.coboundary_sign * d_lambda


@dataclass(frozen=True)
class CalibrationResult:
    residuals: List[Tuple[InvarianceConvention, complex]]
    tolerance: float

    @property
    def vanishing(self) -> List[InvarianceConvention]:
        return [c for c, r in self.residuals if abs(r) <= self.tolerance]

    @property
    def selected(self) -> InvarianceConvention:
        return min(self.residuals, key=lambda item: abs(item[1]))[0]

    @property
    def unique(self) -> bool:
        return len(self.vanishing) == 1


def calibrate_invariance(ctx: MFContext, x: LieForm, y: LieForm, g: GroupMap,
                         tolerance: float = 1e-5) -> CalibrationResult:
    """
    Évalue le résidu pour les 8 conventions
    {gauge, adjoint} × {±δλ} × {±ω³z} ; une seule doit s'annuler.
    """
    residuals = []
    for transform, sign, cubic in product(('gauge', 'adjoint'), (1, -1), (1, -1)):
        convention = InvarianceConvention(transform, sign, cubic)
        residuals.append((convention, invariance_residual(ctx, x, y, g, convention)))
    return CalibrationResult(residuals=residuals, tolerance=tolerance)

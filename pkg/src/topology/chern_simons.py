"""
Formes de Chern-Simons CS₃ / CS₅, identité d(CS) = tr F∧F, constantes c_{2k+1}
et transgression de Stokes sur B³
"""

from dataclasses import dataclass
from math import factorial
from typing import Dict, Tuple

import numpy as np

from ..core.errors import DegreeError, InvalidDimensionError
from ..geometry.forms import (
    LieForm, d_from_partials, exterior_d, matrix_commutator_wedge, product_wedge,
    restrict_to_boundary, trace_integral, wedge_arrays,
)
from ..geometry.group_maps import GroupMap, maurer_cartan


def normalization_constant(k: int) -> complex:
    """c_{2k+1} = −(i/2π)^{k+2} / ((k+2)! (2k+3))"""
    return -(1j / (2 * np.pi)) ** (k + 2) / (factorial(k + 2) * (2 * k + 3))


@dataclass(frozen=True)
class NormalizationTable:
    """k ↦ c_{2k+1}"""
    max_k: int = 4

    def as_dict(self) -> Dict[int, complex]:
        return {k: normalization_constant(k) for k in range(self.max_k + 1)}

    def __getitem__(self, k: int) -> complex:
        return normalization_constant(k)

    def c1_residual(self) -> float:
        """|c₁ − 1/(24π²)|"""
        return abs(self[0] - 1 / (24 * np.pi ** 2))


def _power(A: LieForm, n: int) -> LieForm:
    out = A
    for _ in range(n - 1):
        out = product_wedge(out, A)
    return out


def cs3(A: LieForm) -> LieForm:
    """(1/8π²) tr(A∧dA + ⅔ A∧A∧A)"""
    if A.degree != 1:
        raise DegreeError(f"cs3 attend une 1-forme (degré {A.degree})")
    if A.grid.dim < 3:
        raise DegreeError(f"cs3 sur une variété de dimension {A.grid.dim}")
    form = product_wedge(A, exterior_d(A)) + _power(A, 3).scale(2 / 3)
    return form.trace().scale(1 / (8 * np.pi ** 2)) if form.is_matrix else form.scale(1 / (8 * np.pi ** 2))


def cs5(A: LieForm) -> LieForm:
    """(i/24π³) tr(A(dA)² + 3/2 A³dA + 3/5 A⁵)"""
    if A.degree != 1:
        raise DegreeError(f"cs5 attend une 1-forme (degré {A.degree})")
    if A.grid.dim < 5:
        raise DegreeError(f"cs5 exige une dimension ≥ 5 (reçu {A.grid.dim})")
    dA = exterior_d(A)
    form = (product_wedge(product_wedge(A, dA), dA)
            + product_wedge(_power(A, 3), dA).scale(1.5)
            + _power(A, 5).scale(0.6))
    factor = 1j / (24 * np.pi ** 3)
    return form.trace().scale(factor) if form.is_matrix else form.scale(factor)


def cs5_pure_gauge_sides(g: GroupMap) -> Tuple[complex, complex]:
    """
    (∫ CS₅(g⁻¹dg), c₃ ∫ tr(g⁻¹dg)⁵) ; égaux car dA = −A² pour une jauge pure
    """
    A = maurer_cartan(g, 'left')
    lhs = trace_integral(cs5(A))
    rhs = normalization_constant(1) * trace_integral(_power(A, 5))
    return lhs, rhs


def winding_integrand(A: LieForm) -> LieForm:
    """tr (A∧A∧A)"""
    return _power(A, 3).trace()


# ========== Identité exacte d(CS₃) = tr F∧F ==========

@dataclass(frozen=True)
class AffineConnection4:
    """A = Σ_i (M_i + N_ij x^j) dx^i sur ℝ⁴ ; ∂_j A_i = N_ij"""
    M: np.ndarray   # (4, p, p)
    N: np.ndarray   # (4, 4, p, p)

    def __post_init__(self):
        if self.M.ndim != 3 or self.M.shape[0] != 4 or self.M.shape[1] != self.M.shape[2]:
            raise InvalidDimensionError(f"M de forme {self.M.shape}, attendu (4, p, p)")
        if self.N.shape != (4, 4) + self.M.shape[1:]:
            raise InvalidDimensionError(f"N de forme {self.N.shape}, attendu (4, 4) + {self.M.shape[1:]}")

    @classmethod
    def random(cls, generators: np.ndarray, rng: np.random.Generator, scale: float = 1.0) -> 'AffineConnection4':
        """Coefficients aléatoires dans i·vect(générateurs)"""
        K = generators.shape[0]
        M = 1j * np.tensordot(scale * rng.normal(size=(4, K)), generators, axes=([1], [0]))
        N = 1j * np.tensordot(scale * rng.normal(size=(4, 4, K)), generators, axes=([2], [0]))
        return cls(M=M, N=N)


def dcs_identity_check(conn: AffineConnection4) -> float:
    """
    max |d tr(AdA + ⅔A³) − tr F∧F| à l'origine, en algèbre multilinéaire exacte.

    A étant affine, ses dérivées sont les N_ij et dA est constant.
    """
    dim = 4
    A = conn.M[None]                                  # (1, 4, p, p)
    partial_A = np.swapaxes(conn.N, 0, 1)[None]       # (1, l, i, p, p) = ∂_l A_i
    dA = d_from_partials(partial_A, dim, 1)           # (1, 6, p, p)

    def w(a, b, k, l):
        return wedge_arrays(a, b, dim, k, l)

    # ∂_l de la 3-forme tr(A∧dA + ⅔A∧A∧A), dA constant
    partial_cs = []
    for l in range(dim):
        dl = partial_A[:, l]
        cubic = w(w(dl, A, 1, 1), A, 2, 1) + w(w(A, dl, 1, 1), A, 2, 1) + w(w(A, A, 1, 1), dl, 2, 1)
        partial_cs.append(w(dl, dA, 1, 2) + (2 / 3) * cubic)
    partial_cs = np.trace(np.stack(partial_cs, axis=1), axis1=-2, axis2=-1)   # (1, 4, 4)
    lhs = d_from_partials(partial_cs, dim, 3)

    F = dA + w(A, A, 1, 1)
    rhs = np.trace(w(F, F, 2, 2), axis1=-2, axis2=-1)
    return float(np.max(np.abs(lhs - rhs)))


# ========== Transgression sur B³ ==========

def transgression_sides(u: LieForm, v: LieForm, w: LieForm, c2: complex) -> Tuple[complex, complex]:
    """(c₂∫_{S²} tr u[dv,dw], c₂∫_{B³} tr du∧[dv,dw]) pour des 0-formes sur B³"""
    for f in (u, v, w):
        if f.degree != 0 or f.grid.manifold != 'B3':
            raise DegreeError("transgression_stokes attend des 0-formes sur B³")
    ub, vb, wb = (restrict_to_boundary(f) for f in (u, v, w))
    boundary = c2 * trace_integral(product_wedge(ub, matrix_commutator_wedge(exterior_d(vb), exterior_d(wb))))
    bulk = c2 * trace_integral(product_wedge(exterior_d(u), matrix_commutator_wedge(exterior_d(v), exterior_d(w))))
    return boundary, bulk


def transgression_stokes(u: LieForm, v: LieForm, w: LieForm, c2: complex) -> float:
    boundary, bulk = transgression_sides(u, v, w, c2)
    return abs(boundary - bulk)

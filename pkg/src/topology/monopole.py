"""
Monopôle abélien à deux cartes sur S² et premier nombre de Chern

Carte nord θ ∈ [0, π/2] : A_N = (in/2)(1 − cos θ) dφ
Carte sud  θ ∈ [π/2, π] : A_S = −(in/2)(1 + cos θ) dφ
Sur l'équateur A_N − A_S = in dφ = g⁻¹dg avec g = e^{inφ}.
"""

from typing import Optional, Tuple

import numpy as np

from ..geometry.forms import LieForm, exterior_d, integrate_top
from ..geometry.grids import circle_grid, sphere2_grid
from ..geometry.group_maps import GroupMap, curvature, maurer_cartan

MONOPOLE_ORDER = 32


def _patch_connection(n: int, hemisphere: str, order: int) -> LieForm:
    if hemisphere == 'north':
        grid = sphere2_grid(order, (0.0, np.pi / 2))
        sign = -1.0
        prefactor = 0.5j * n
    else:
        grid = sphere2_grid(order, (np.pi / 2, np.pi))
        sign = 1.0
        prefactor = -0.5j * n

    def evaluator(q):
        out = np.zeros((q.shape[0], 2), dtype=np.complex128)
        out[:, 1] = prefactor * (1 + sign * np.cos(q[:, 0]))
        return out

    def partials(q):
        out = np.zeros((q.shape[0], 2, 2), dtype=np.complex128)
        out[:, 0, 1] = -prefactor * sign * np.sin(q[:, 0])
        return out

    return LieForm.from_evaluator(grid, 1, evaluator, partials)


def monopole_patches(n: int, order: int = MONOPOLE_ORDER) -> Tuple[LieForm, LieForm]:
    return _patch_connection(n, 'north', order), _patch_connection(n, 'south', order)


def chern1_monopole(n: int, order: int = MONOPOLE_ORDER) -> complex:
    """(1/2πi)(∫_N dA_N + ∫_S dA_S)"""
    north, south = monopole_patches(n, order)
    total = integrate_top(exterior_d(north)) + integrate_top(exterior_d(south))
    return total / (2j * np.pi)


def field_strength_residual(n: int, order: int = MONOPOLE_ORDER) -> float:
    """max |F(A) − (in/2) sin θ dθ∧dφ| sur les deux cartes"""
    worst = 0.0
    for patch in monopole_patches(n, order):
        F = curvature(patch)
        expected = 0.5j * n * np.sin(patch.grid.nodes[:, 0])
        worst = max(worst, float(np.max(np.abs(F.samples[:, 0] - expected))))
    return worst


def transition_residual(n: int, order: int = MONOPOLE_ORDER,
                        patches: Optional[Tuple[LieForm, LieForm]] = None) -> float:
    """
    max |(A_N − A_S)_φ − (g⁻¹dg)_φ| sur l'équateur, g = e^{inφ}

    Les deux cartes sont évaluées en θ = π/2 par leurs propres évaluateurs.
    """
    north, south = patches or monopole_patches(n, order)
    equator = circle_grid(order)

    def evaluator(q):
        return np.exp(1j * n * q[:, 0])[:, None, None]

    def partials(q):
        return (1j * n * np.exp(1j * n * q[:, 0]))[:, None, None, None]

    g = GroupMap(equator, evaluator, partials)
    mc = maurer_cartan(g, 'left').samples[:, 0, 0, 0]
    q = np.column_stack([np.full(equator.size, np.pi / 2), equator.nodes[:, 0]])
    difference = north.evaluator(q)[:, 1] - south.evaluator(q)[:, 1]
    return float(np.max(np.abs(mc - difference)))

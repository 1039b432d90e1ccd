"""
Degré d'une application S³ → SU(p) : (1/24π²) ∫ tr (g⁻¹dg)³
"""

from dataclasses import dataclass

import numpy as np

from ..core.errors import GridMismatchError
from ..core.numerics import nearest_integer_distance
from ..geometry.forms import trace_integral
from ..geometry.group_maps import GroupMap, maurer_cartan
from .chern_simons import normalization_constant, winding_integrand

WINDING_FACTOR = 1 / (24 * np.pi ** 2)


@dataclass(frozen=True)
class WindingResult:
    value: complex
    nearest: int
    distance: float


def winding_3(g: GroupMap) -> complex:
    if g.grid.manifold != 'S3':
        raise GridMismatchError(f"winding_3 attend une application sur S³ (reçu {g.grid.manifold})")
    A = maurer_cartan(g, 'left')
    return WINDING_FACTOR * trace_integral(winding_integrand(A))


def winding_report(g: GroupMap) -> WindingResult:
    value = winding_3(g)
    nearest, distance = nearest_integer_distance(value)
    return WindingResult(value=value, nearest=nearest, distance=distance)


def winding_factor_residual() -> float:
    """|c₁ − 1/(24π²)| : la constante du degré est celle de la table c_{2k+1}"""
    return abs(normalization_constant(0) - WINDING_FACTOR)


def additivity_residual(g: GroupMap, h: GroupMap) -> float:
    """|deg(g·h) − deg g − deg h|"""
    return abs(winding_3(g @ h) - winding_3(g) - winding_3(h))


def homotopy_residual(g: GroupMap, perturbation: GroupMap) -> float:
    """|deg(g·exp(εh)) − deg g| pour une petite perturbation lisse"""
    return abs(winding_3(g @ perturbation) - winding_3(g))

"""
Jeux de données seedés communs aux suites
"""

from typing import Tuple

import numpy as np

from ..algebra.liealg import GaugeBasis, tensor_generators
from ..geometry.fields import (
    SmoothField, bump_field, default_features, random_field, random_one_form, random_pure_gauge, random_scalar_field,
)
from ..geometry.forms import LieForm
from ..geometry.grids import ManifoldGrid
from ..geometry.group_maps import maurer_cartan
from ..schwinger.currents import SchwingerInputs, default_support

DATA_SCALE = 0.5


def diagonal_generators(basis: GaugeBasis) -> np.ndarray:
    """Générateurs diagonaux (sous-algèbre de Cartan, commutative)"""
    gens = [g for g in basis.generators if np.allclose(g, np.diag(np.diag(g)))]
    return np.array(gens)


def random_zero_form(grid: ManifoldGrid, generators: np.ndarray, rng: np.random.Generator,
                     scale: float = DATA_SCALE) -> LieForm:
    """0-forme lisse à valeurs dans i·vect(générateurs)"""
    return random_field(rng, generators, default_features(grid), scale=scale).on(grid)


def random_connection(grid: ManifoldGrid, generators: np.ndarray, rng: np.random.Generator,
                      scale: float = DATA_SCALE) -> LieForm:
    """1-forme lisse, tirée de l'espace ambiant puis tirée en arrière"""
    return random_one_form(rng, generators, default_features(grid), grid.ambient_dim, scale=scale).on(grid)


def pure_gauge_connection(grid: ManifoldGrid, generators: np.ndarray, rng: np.random.Generator,
                          scale: float = DATA_SCALE) -> LieForm:
    """A = g⁻¹dg pour g seedé, produit d'exponentielles non commutantes"""
    return maurer_cartan(random_pure_gauge(grid, generators, rng, scale=scale))


def cos_sin_loops(grid: ManifoldGrid, x: np.ndarray, y: np.ndarray) -> Tuple[LieForm, LieForm]:
    """u = x cos θ, v = y sin θ sur le cercle"""
    def along(axis: int, matrix: np.ndarray) -> SmoothField:
        def f(X):
            return X[:, axis][:, None, None] * matrix

        def grad(X):
            out = np.zeros((X.shape[0], X.shape[1]) + matrix.shape, dtype=np.complex128)
            out[:, axis] = matrix
            return out

        return SmoothField(f, grad)

    return along(0, x).on(grid), along(1, y).on(grid)


def random_algebra_element(basis: GaugeBasis, rng: np.random.Generator) -> np.ndarray:
    """Élément constant i Σ c_a τ^a"""
    return 1j * basis.element(rng.normal(size=basis.dim))


def schwinger_inputs(grid: ManifoldGrid, basis: GaugeBasis, rng: np.random.Generator,
                     scale: float = DATA_SCALE, pure_gauge: bool = True) -> SchwingerInputs:
    """
    A = g⁻¹dg, g seedé à valeurs dans exp(i·vect(σ_η ⊗ τ^c)) sur la carte T³,
    profils f, h en fonctions plateau modulées, supportés dans la boule par
    défaut. pure_gauge=False tire une connexion générique à la place.
    """
    gens = tensor_generators(basis)
    gens = gens.reshape((-1,) + gens.shape[2:])
    build = pure_gauge_connection if pure_gauge else random_connection
    A = build(grid, gens, rng, scale)
    center, radius = default_support(grid)
    features = default_features(grid)
    bump = bump_field(center, radius)
    f = random_scalar_field(rng, features)
    h = random_scalar_field(rng, features)
    return SchwingerInputs(A=A, f=f.times_scalar(bump), h=h.times_scalar(bump),
                           basis=basis, center=center, radius=radius)


def gauge_only_inputs(grid: ManifoldGrid, basis: GaugeBasis, rng: np.random.Generator,
                      scale: float = DATA_SCALE) -> Tuple[LieForm, SmoothField, SmoothField]:
    """Potentiel g⁻¹dg sans facteur de spin et deux profils supportés"""
    A = pure_gauge_connection(grid, basis.generators, rng, scale)
    center, radius = default_support(grid)
    features = default_features(grid)
    bump = bump_field(center, radius)
    f = random_scalar_field(rng, features).times_scalar(bump)
    h = random_scalar_field(rng, features).times_scalar(bump)
    return A, f, h

"""
Champs lisses définis sur l'espace ambiant (coordonnées plongées) et
générateurs de données aléatoires reproductibles

Un champ ambiant f(X) avec son gradient ∂f/∂X se restreint à n'importe
quelle grille : les dérivées en coordonnées s'obtiennent par la règle de
dérivation en chaîne avec la jacobienne du plongement, donc sans
différences finies.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import eigh, expm

from ..algebra.liealg import SIGMA
from ..core.errors import SupportViolationError
from .forms import LieForm, form_basis
from .grids import ManifoldGrid
from .group_maps import GroupMap

AmbientFn = Callable[[np.ndarray], np.ndarray]


# ========== Familles de fonctions de base ==========

@dataclass(frozen=True)
class FeatureSet:
    """Fonctions de base φ_f(X) et leurs gradients, X (m, E)"""
    name: str
    values: AmbientFn   # (m, E) -> (m, F)
    grads: AmbientFn    # (m, E) -> (m, F, E)
    size: int


def harmonic_features(ambient_dim: int) -> FeatureSet:
    """Polynômes harmoniques de degré ≤ 2 : X_a, X_a X_b (a<b), X_a² − X_{a+1}²"""
    E = ambient_dim
    pairs = [(a, b) for a in range(E) for b in range(a + 1, E)]
    size = E + len(pairs) + (E - 1)

    def values(X):
        cols = [X[:, a] for a in range(E)]
        cols += [X[:, a] * X[:, b] for a, b in pairs]
        cols += [X[:, a] ** 2 - X[:, a + 1] ** 2 for a in range(E - 1)]
        return np.stack(cols, axis=1)

    def grads(X):
        m = X.shape[0]
        out = np.zeros((m, size, E))
        for a in range(E):
            out[:, a, a] = 1.0
        for n, (a, b) in enumerate(pairs):
            out[:, E + n, a] = X[:, b]
            out[:, E + n, b] = X[:, a]
        offset = E + len(pairs)
        for a in range(E - 1):
            out[:, offset + a, a] = 2 * X[:, a]
            out[:, offset + a, a + 1] = -2 * X[:, a + 1]
        return out

    return FeatureSet('harmonic', values, grads, size)


def trig_features(ambient_dim: int) -> FeatureSet:
    """Polynômes trigonométriques périodiques : cos x_i, sin x_i, cos(x_i + x_j), sin(x_i − x_j)"""
    E = ambient_dim
    pairs = [(i, j) for i in range(E) for j in range(i + 1, E)]
    size = 2 * E + 2 * len(pairs)

    def values(X):
        cols = [np.cos(X[:, i]) for i in range(E)] + [np.sin(X[:, i]) for i in range(E)]
        cols += [np.cos(X[:, i] + X[:, j]) for i, j in pairs]
        cols += [np.sin(X[:, i] - X[:, j]) for i, j in pairs]
        return np.stack(cols, axis=1)

    def grads(X):
        m = X.shape[0]
        out = np.zeros((m, size, E))
        for i in range(E):
            out[:, i, i] = -np.sin(X[:, i])
            out[:, E + i, i] = np.cos(X[:, i])
        offset = 2 * E
        for n, (i, j) in enumerate(pairs):
            s = -np.sin(X[:, i] + X[:, j])
            out[:, offset + n, i] = s
            out[:, offset + n, j] = s
            c = np.cos(X[:, i] - X[:, j])
            out[:, offset + len(pairs) + n, i] = c
            out[:, offset + len(pairs) + n, j] = -c
        return out

    return FeatureSet('trig', values, grads, size)


def default_features(grid: ManifoldGrid) -> FeatureSet:
    """Trigonométrique sur T³ (coordonnées périodiques), harmonique ailleurs"""
    if grid.manifold == 'T3':
        return trig_features(grid.ambient_dim)
    return harmonic_features(grid.ambient_dim)


# ========== Champs ambiants ==========

@dataclass(frozen=True)
class SmoothField:
    """Champ f(X) à valeurs scalaires ou matricielles, gradient (m, E) + forme des valeurs"""
    f: AmbientFn
    grad: AmbientFn

    def on(self, grid: ManifoldGrid) -> LieForm:
        """0-forme sur la grille, dérivées analytiques par la règle de chaîne"""
        f, grad = self.f, self.grad

        def evaluator(q):
            return f(grid.embed(q))[:, None]

        def partials(q):
            J = grid.embed_jac(q)
            return np.einsum('med,me...->md...', J, grad(grid.embed(q)))[:, :, None]

        return LieForm.from_evaluator(grid, 0, evaluator, partials)

    def scale(self, factor: complex) -> 'SmoothField':
        f, grad = self.f, self.grad
        return SmoothField(lambda X: factor * f(X), lambda X: factor * grad(X))

    def __add__(self, other: 'SmoothField') -> 'SmoothField':
        f, g, df, dg = self.f, other.f, self.grad, other.grad
        return SmoothField(lambda X: f(X) + g(X), lambda X: df(X) + dg(X))

    def times_scalar(self, scalar: 'SmoothField') -> 'SmoothField':
        """Produit par un champ scalaire s(X), règle de Leibniz"""
        f, df, s, ds = self.f, self.grad, scalar.f, scalar.grad

        def value(X):
            v = f(X)
            return s(X).reshape((-1,) + (1,) * (v.ndim - 1)) * v

        def gradient(X):
            v, dv = f(X), df(X)
            sv = s(X).reshape((-1,) + (1,) * (v.ndim - 1))
            dsv = ds(X).reshape(ds(X).shape + (1,) * (v.ndim - 1))
            return sv[:, None] * dv + dsv * v[:, None]

        return SmoothField(value, gradient)

    @classmethod
    def constant(cls, value) -> 'SmoothField':
        value = np.asarray(value, dtype=np.complex128)

        def f(X):
            return np.broadcast_to(value, (X.shape[0],) + value.shape).copy()

        def grad(X):
            return np.zeros((X.shape[0], X.shape[1]) + value.shape, dtype=np.complex128)

        return cls(f, grad)


def linear_field(features: FeatureSet, coeffs: np.ndarray, generators: np.ndarray,
                 constant: Optional[np.ndarray] = None, phase: complex = 1.0) -> SmoothField:
    """
    f(X) = phase · (c₀_a + Σ_f c_{af} φ_f(X)) T^a

    generators : (K,) + forme des valeurs ; coeffs (K, F) ; constant (K,)
    """
    gens = np.asarray(generators, dtype=np.complex128)
    c0 = np.zeros(gens.shape[0]) if constant is None else np.asarray(constant)

    def f(X):
        amp = c0[None, :] + features.values(X) @ coeffs.T
        return phase * np.tensordot(amp, gens, axes=([1], [0]))

    def grad(X):
        amp = np.einsum('mfe,af->mea', features.grads(X), coeffs)
        return phase * np.tensordot(amp, gens, axes=([2], [0]))

    return SmoothField(f, grad)


def random_field(rng: np.random.Generator, generators: np.ndarray, features: FeatureSet,
                 anti_hermitian: bool = True, scale: float = 1.0) -> SmoothField:
    """Champ aléatoire Σ P_a(X) T^a (multiplié par i si anti_hermitian)"""
    K = np.asarray(generators).shape[0]
    coeffs = scale * rng.normal(size=(K, features.size)) / np.sqrt(features.size)
    constant = scale * rng.normal(size=K)
    return linear_field(features, coeffs, generators, constant, phase=1j if anti_hermitian else 1.0)


def random_scalar_field(rng: np.random.Generator, features: FeatureSet, scale: float = 1.0) -> SmoothField:
    return random_field(rng, np.ones(1), features, anti_hermitian=False, scale=scale)


# ========== Formes ambiantes ==========

@dataclass(frozen=True)
class AmbientOneForm:
    """a = a_e(X) dX^e, composantes (m, E) + forme des valeurs"""
    components: AmbientFn

    def on(self, grid: ManifoldGrid) -> LieForm:
        comp = self.components

        def evaluator(q):
            return np.einsum('med,me...->md...', grid.embed_jac(q), comp(grid.embed(q)))

        return LieForm.from_evaluator(grid, 1, evaluator)


@dataclass(frozen=True)
class AmbientTwoForm:
    """b = ½ b_{ef}(X) dX^e ∧ dX^f, b antisymétrique (m, E, E) + forme des valeurs"""
    components: AmbientFn

    def on(self, grid: ManifoldGrid) -> LieForm:
        comp = self.components
        combos = form_basis(grid.dim, 2)
        rows = np.array([c[0] for c in combos])
        cols = np.array([c[1] for c in combos])

        def evaluator(q):
            J = grid.embed_jac(q)
            full = np.einsum('mei,mef...,mfj->mij...', J, comp(grid.embed(q)), J)
            return full[:, rows, cols]

        return LieForm.from_evaluator(grid, 2, evaluator)


def random_one_form(rng: np.random.Generator, generators: np.ndarray, features: FeatureSet,
                    ambient_dim: int, anti_hermitian: bool = True, scale: float = 1.0) -> AmbientOneForm:
    fields = [random_field(rng, generators, features, anti_hermitian, scale) for _ in range(ambient_dim)]

    def components(X):
        return np.stack([fld.f(X) for fld in fields], axis=1)

    return AmbientOneForm(components)


# ========== Applications dans le groupe ==========

def random_group_map(grid: ManifoldGrid, generators: np.ndarray, rng: np.random.Generator,
                     scale: float = 1.0, features: Optional[FeatureSet] = None,
                     special: bool = False) -> GroupMap:
    """g = exp(i Σ P_a(X) τ^a) ; dérivées par différences finies"""
    feats = features or default_features(grid)
    herm = random_field(rng, generators, feats, anti_hermitian=False, scale=scale)

    def evaluator(q):
        return expm(1j * herm.f(grid.embed(q)))

    return GroupMap(grid, evaluator, special=special)


def exp_map(grid: ManifoldGrid, generator: np.ndarray, phase: SmoothField) -> GroupMap:
    """g = exp(i φ(X) T), T hermitien fixe ; ∂g = i ∂φ T g, sans différences finies"""
    T = np.asarray(generator, dtype=np.complex128)
    t, V = eigh(T)

    def evaluator(q):
        phi = np.real(phase.f(grid.embed(q)))
        return np.einsum('ij,mj,kj->mik', V, np.exp(1j * phi[:, None] * t[None, :]), V.conj())

    def partials(q):
        dphi = np.real(np.einsum('med,me->md', grid.embed_jac(q), phase.grad(grid.embed(q))))
        return 1j * dphi[:, :, None, None] * (T @ evaluator(q))[:, None]

    return GroupMap(grid, evaluator, partials)


def random_pure_gauge(grid: ManifoldGrid, generators: np.ndarray, rng: np.random.Generator,
                      factors: int = 2, scale: float = 1.0,
                      features: Optional[FeatureSet] = None) -> GroupMap:
    """
    Produit de `factors` exponentielles exp(i φ_k(X) T_k), T_k = Σ c_a τ^a
    de directions aléatoires : non abélien dès que factors ≥ 2.
    """
    gens = np.asarray(generators, dtype=np.complex128)
    feats = features or default_features(grid)
    g = None
    for _ in range(factors):
        T = np.tensordot(rng.normal(size=gens.shape[0]), gens, axes=1)
        T = T / max(np.linalg.norm(T, 2), 1e-12)
        factor = exp_map(grid, T, random_scalar_field(rng, feats, scale))
        g = factor if g is None else g @ factor
    return g


def quaternion_map(grid: ManifoldGrid, degree: int = 1) -> GroupMap:
    """
    S³ → SU(2) : X ↦ X₀ I + i(X₁σ₁ + X₂σ₂ + X₃σ₃), puis puissance ponctuelle.

    degree peut être négatif (inverse) ou nul (constante).
    """
    pauli = SIGMA

    def evaluator(q):
        X = grid.embed(q)
        return np.einsum('me,eij->mij', X * np.array([1, 1j, 1j, 1j]), pauli)

    def partials(q):
        J = grid.embed_jac(q)
        return np.einsum('med,e,eij->mdij', J, np.array([1, 1j, 1j, 1j]), pauli)

    base = GroupMap(grid, evaluator, partials, special=True)
    if degree == 0:
        out = GroupMap.identity(grid, 2)
        return GroupMap(grid, out.evaluator, out.partials, special=True)
    unit = base if degree > 0 else base.inverse()
    out = unit
    for _ in range(abs(degree) - 1):
        out = out @ unit
    return out


# ========== Fonctions test ==========

def bump_field(center: Sequence[float], radius: float) -> SmoothField:
    """
    Fonction plateau lisse b(X) = exp(1 − 1/(1 − s)), s = |X − c|²/R², nulle pour s ≥ 1
    """
    c = np.asarray(center, dtype=float)

    def _parts(X):
        s = np.sum((X - c) ** 2, axis=1) / radius ** 2
        inside = s < 1
        gap = np.where(inside, 1 - s, 1.0)
        b = np.where(inside, np.exp(1 - 1 / gap), 0.0)
        return s, inside, gap, b

    def f(X):
        return _parts(X)[3]

    def grad(X):
        _, inside, gap, b = _parts(X)
        db_ds = np.where(inside, -b / gap ** 2, 0.0)
        return db_ds[:, None] * 2 * (X - c) / radius ** 2

    return SmoothField(f, grad)


def check_support(values: np.ndarray, X: np.ndarray, center: Sequence[float], radius: float,
                  tol: float = 1e-12):
    """Lève SupportViolationError si une valeur hors de la boule dépasse tol"""
    outside = np.sum((X - np.asarray(center)) ** 2, axis=1) >= radius ** 2
    if not np.any(outside):
        return
    worst = float(np.max(np.abs(values[outside].reshape(int(np.sum(outside)), -1))))
    if worst > tol:
        raise SupportViolationError(f"Fonction test non nulle hors du support (max {worst:.2e})")


def boundary_vanishing_factor() -> SmoothField:
    """1 − |X|², nul sur la sphère unité"""
    return SmoothField(lambda X: 1 - np.sum(X ** 2, axis=1), lambda X: -2 * X)

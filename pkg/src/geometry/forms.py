"""
Formes différentielles à valeurs dans une algèbre de Lie, échantillonnées sur une grille

Stockage compact : une forme de degré k sur un domaine de dimension D garde
ses composantes α_I pour les multi-indices croissants I (combinaisons de k
parmi D), tableau (n, C(D,k)) + forme des valeurs (() scalaire ou (p, p)).

Une forme peut porter un évaluateur q ↦ composantes (et éventuellement des
dérivées partielles analytiques) : c'est ce qui permet de dériver. Sans
dérivées analytiques, d utilise des différences centrées d'ordre 4 en
coordonnées.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Optional, Tuple

import numpy as np

from ..core.config import Config
from ..core.errors import DegreeError, GridMismatchError, ValueShapeError
from ..core.numerics import fsum_complex
from .grids import ManifoldGrid

Evaluator = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def form_basis(dim: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(combinations(range(dim), k))


def _merge_sign(left: Tuple[int, ...], right: Tuple[int, ...]) -> int:
    """Signe de la permutation qui trie left + right (0 si indice répété)"""
    seq = list(left + right)
    if len(set(seq)) < len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def wedge_table(dim: int, k: int, l: int) -> Tuple[Tuple[int, int, int, int], ...]:
    """(i, j, K, signe) : e_I ∧ e_J = signe · e_K"""
    index = {K: n for n, K in enumerate(form_basis(dim, k + l))}
    out = []
    for i, I in enumerate(form_basis(dim, k)):
        for j, J in enumerate(form_basis(dim, l)):
            sign = _merge_sign(I, J)
            if sign:
                out.append((i, j, index[tuple(sorted(I + J))], sign))
    return tuple(out)


@lru_cache(maxsize=None)
def d_table(dim: int, k: int) -> Tuple[Tuple[int, int, int, int], ...]:
    """(K, j, reste, signe) : (dα)_K = Σ signe · ∂_j α_reste"""
    index = {I: n for n, I in enumerate(form_basis(dim, k))}
    out = []
    for K_idx, K in enumerate(form_basis(dim, k + 1)):
        for pos, j in enumerate(K):
            rest = K[:pos] + K[pos + 1:]
            out.append((K_idx, j, index[rest], (-1) ** pos))
    return tuple(out)


def _value_product(x: np.ndarray, y: np.ndarray, vx: int, vy: int) -> np.ndarray:
    """Produit des valeurs : matriciel si les deux sont matricielles, scalaire sinon"""
    if vx == 2 and vy == 2:
        return np.matmul(x, y)
    if vx == 0 and vy == 2:
        return x[..., None, None] * y
    if vx == 2 and vy == 0:
        return x * y[..., None, None]
    return x * y


def wedge_arrays(a: np.ndarray, b: np.ndarray, dim: int, k: int, l: int) -> np.ndarray:
    """Produit extérieur de tableaux de composantes (m, C(D,k)) + vs"""
    if k + l > dim:
        raise DegreeError(f"Degré {k + l} > dimension {dim}")
    va, vb = a.ndim - 2, b.ndim - 2
    m = a.shape[0]
    vshape = np.broadcast_shapes(a.shape[2:], b.shape[2:]) if va == vb else (a.shape[2:] if va else b.shape[2:])
    dtype = np.result_type(a, b, np.complex128)
    out = np.zeros((m, len(form_basis(dim, k + l))) + tuple(vshape), dtype=dtype)
    for i, j, K, sign in wedge_table(dim, k, l):
        term = _value_product(a[:, i], b[:, j], va, vb)
        if sign > 0:
            out[:, K] += term
        else:
            out[:, K] -= term
    return out


def d_from_partials(partials: np.ndarray, dim: int, k: int) -> np.ndarray:
    """partials (m, D, C(D,k)) + vs  ->  (dα) (m, C(D,k+1)) + vs"""
    m = partials.shape[0]
    out = np.zeros((m, len(form_basis(dim, k + 1))) + partials.shape[3:], dtype=np.result_type(partials, np.complex128))
    for K, j, rest, sign in d_table(dim, k):
        if sign > 0:
            out[:, K] += partials[:, j, rest]
        else:
            out[:, K] -= partials[:, j, rest]
    return out


def fd_partials(evaluator: Evaluator, q: np.ndarray, step: float) -> np.ndarray:
    """
    Dérivées partielles par différences centrées d'ordre 4.

    Retourne (m, D) + forme de sortie de l'évaluateur privée de son axe m.
    """
    q = np.asarray(q, dtype=float)
    dim = q.shape[1]
    cols = []
    for j in range(dim):
        shift = np.zeros(dim)
        shift[j] = step
        f_p1, f_m1 = evaluator(q + shift), evaluator(q - shift)
        f_p2, f_m2 = evaluator(q + 2 * shift), evaluator(q - 2 * shift)
        cols.append((8 * (f_p1 - f_m1) - (f_p2 - f_m2)) / (12 * step))
    return np.stack(cols, axis=1)


@dataclass(frozen=True, eq=False)
class LieForm:
    """Forme de degré k à valeurs matricielles (ou scalaires après trace)"""
    grid: ManifoldGrid
    degree: int
    samples: np.ndarray
    evaluator: Optional[Evaluator] = None
    partials: Optional[Evaluator] = None

    def __post_init__(self):
        if not 0 <= self.degree <= self.grid.dim:
            raise DegreeError(f"Degré {self.degree} hors de [0, {self.grid.dim}]")

    @classmethod
    def from_evaluator(cls, grid: ManifoldGrid, degree: int, evaluator: Evaluator,
                       partials: Optional[Evaluator] = None) -> 'LieForm':
        return cls(grid=grid, degree=degree, samples=evaluator(grid.nodes), evaluator=evaluator, partials=partials)

    @classmethod
    def constant(cls, grid: ManifoldGrid, value: np.ndarray) -> 'LieForm':
        """0-forme constante (dérivée nulle exacte)"""
        value = np.asarray(value, dtype=np.complex128)

        def evaluator(q):
            return np.broadcast_to(value, (q.shape[0], 1) + value.shape).copy()

        def partials(q):
            return np.zeros((q.shape[0], grid.dim, 1) + value.shape, dtype=np.complex128)

        return cls.from_evaluator(grid, 0, evaluator, partials)

    @property
    def value_rank(self) -> int:
        return self.samples.ndim - 2

    @property
    def is_matrix(self) -> bool:
        return self.value_rank == 2

    def map_values(self, fn: Callable[[np.ndarray], np.ndarray]) -> 'LieForm':
        """Applique fn aux tableaux de composantes (échantillons et évaluateur)"""
        return combine(self.degree, fn, self)

    def trace(self) -> 'LieForm':
        if not self.is_matrix:
            raise ValueShapeError("Trace d'une forme déjà scalaire")
        return self.map_values(lambda a: np.trace(a, axis1=-2, axis2=-1))

    def scale(self, factor: complex) -> 'LieForm':
        return self.map_values(lambda a: factor * a)

    def conjugate_by(self, g: 'object') -> 'LieForm':
        """g⁻¹ α g point par point (g : GroupMap)"""
        return conjugate(self, g)

    def __add__(self, other: 'LieForm') -> 'LieForm':
        _check_same_degree(self, other)
        return combine(self.degree, lambda a, b: a + b, self, other)

    def __sub__(self, other: 'LieForm') -> 'LieForm':
        _check_same_degree(self, other)
        return combine(self.degree, lambda a, b: a - b, self, other)

    def __neg__(self) -> 'LieForm':
        return self.scale(-1)


def _check_same_degree(a: LieForm, b: LieForm):
    if a.degree != b.degree:
        raise DegreeError(f"Degrés incompatibles {a.degree} et {b.degree}")


def _common_grid(forms) -> ManifoldGrid:
    grid = forms[0].grid
    for f in forms[1:]:
        if f.grid is not grid:
            raise GridMismatchError("Formes sur des grilles différentes")
    return grid


def combine(degree: int, fn: Callable[..., np.ndarray], *forms: LieForm) -> LieForm:
    """Construit une forme point par point ; l'évaluateur est composé si tous existent"""
    grid = _common_grid(forms)
    samples = fn(*[f.samples for f in forms])
    evaluator = None
    if all(f.evaluator is not None for f in forms):
        evaluators = [f.evaluator for f in forms]

        def evaluator(q):
            return fn(*[e(q) for e in evaluators])

    return LieForm(grid=grid, degree=degree, samples=samples, evaluator=evaluator)


def conjugate(form: LieForm, g) -> LieForm:
    if form.grid is not g.grid:
        raise GridMismatchError("Forme et application de groupe sur des grilles différentes")
    extra = form.samples.ndim - 3

    def fn(values, gq):
        gq = gq.reshape((gq.shape[0],) + (1,) * extra + gq.shape[1:])
        return np.swapaxes(gq.conj(), -1, -2) @ values @ gq

    samples = fn(form.samples, g.values)
    evaluator = None
    if form.evaluator is not None:
        base = form.evaluator

        def evaluator(q):
            return fn(base(q), g.evaluator(q))

    return LieForm(grid=form.grid, degree=form.degree, samples=samples, evaluator=evaluator)


# ========== Opérations du calcul extérieur ==========

def exterior_d(form: LieForm, step: Optional[float] = None) -> LieForm:
    """
    Dérivée extérieure en coordonnées.

    Dérivées analytiques si fournies, sinon différences centrées d'ordre 4
    (pas Config.FD_STEP par défaut) sur l'évaluateur.
    """
    grid, k = form.grid, form.degree
    if k + 1 > grid.dim:
        raise DegreeError(f"d d'une {k}-forme impossible en dimension {grid.dim}")
    h = Config.FD_STEP if step is None else step

    if form.partials is not None:
        partial_fn = form.partials
    elif form.evaluator is not None:
        base = form.evaluator

        def partial_fn(q):
            return fd_partials(base, q, h)
    else:
        raise DegreeError("Forme sans évaluateur : dérivation impossible")

    def evaluator(q):
        return d_from_partials(partial_fn(q), grid.dim, k)

    return LieForm.from_evaluator(grid, k + 1, evaluator)


def product_wedge(alpha: LieForm, beta: LieForm) -> LieForm:
    """α ∧ β avec le produit matriciel sur les valeurs"""
    dim, k, l = alpha.grid.dim, alpha.degree, beta.degree
    if k + l > dim:
        raise DegreeError(f"Degré {k + l} > dimension {dim}")
    return combine(k + l, lambda a, b: wedge_arrays(a, b, dim, k, l), alpha, beta)


def bracket_wedge(alpha: LieForm, beta: LieForm) -> LieForm:
    """Crochet gradué [α, β] = α∧β − (−1)^{kl} β∧α ; [α, α] = 2 α∧α pour une 1-forme"""
    sign = (-1) ** (alpha.degree * beta.degree)
    return product_wedge(alpha, beta) - product_wedge(beta, alpha).scale(sign)


def matrix_commutator_wedge(alpha: LieForm, beta: LieForm) -> LieForm:
    """
    Commutateur matriciel des formes : α∧β − β∧α.

    C'est le crochet [dx, dy] des cocycles de courant (il fait apparaître
    {τ^a, τ^b} et donc les d-symboles).
    """
    return product_wedge(alpha, beta) - product_wedge(beta, alpha)


def integrate_top(form: LieForm, trace_first: bool = False) -> complex:
    """
    ∫_M ω pour une forme de degré maximal.

    Les composantes sont en coordonnées : la densité de volume est portée par
    la composante (volume_form) et les poids sont ceux de la quadrature en
    coordonnées. Sommation compensée dans l'ordre croissant des noeuds.
    """
    grid = form.grid
    if form.degree != grid.dim:
        raise DegreeError(f"Intégration d'une {form.degree}-forme sur une variété de dimension {grid.dim}")
    values = form.samples[:, 0]
    if values.ndim == 3:
        if not trace_first:
            raise ValueShapeError("Forme matricielle : passer trace_first=True")
        values = np.trace(values, axis1=-2, axis2=-1)
    return fsum_complex(grid.weights * values)


def integrate_function(grid: ManifoldGrid, values: np.ndarray) -> complex:
    """∫_M f dvol (jacobien inclus)"""
    return fsum_complex(grid.weights * grid.jacobian * np.asarray(values))


def volume_form(grid: ManifoldGrid, scalar: complex = 1.0) -> LieForm:
    """f · vol, composante f · jacobien"""
    samples = (scalar * grid.jacobian).astype(np.complex128)[:, None]
    return LieForm(grid=grid, degree=grid.dim, samples=samples)


def restrict_to_boundary(form: LieForm) -> LieForm:
    """
    Trace sur le bord r = 1 d'une forme de B³ (composantes sans dr).

    La forme doit avoir un évaluateur ; le bord est la grille S² liée.
    """
    grid = form.grid
    if grid.boundary is None or form.evaluator is None:
        raise GridMismatchError("Pas de bord lié ou forme sans évaluateur")
    boundary = grid.boundary
    k = form.degree
    full = form_basis(grid.dim, k)
    keep = [full.index(tuple(i + 1 for i in I)) for I in form_basis(boundary.dim, k)]
    base = form.evaluator

    def evaluator(q):
        lifted = np.concatenate([np.ones((q.shape[0], 1)), q], axis=1)
        return base(lifted)[:, keep]

    return LieForm.from_evaluator(boundary, k, evaluator)


def pointwise_residual(form: LieForm) -> float:
    """max |composantes| aux noeuds"""
    return float(np.max(np.abs(form.samples))) if form.samples.size else 0.0


def commutator_0(u: LieForm, v: LieForm) -> LieForm:
    """[u, v] = uv − vu pour des 0-formes ; dérivées par Leibniz si u et v en ont"""
    if u.degree or v.degree:
        raise DegreeError("commutator_0 attend deux 0-formes")
    out = matrix_commutator_wedge(u, v)
    if u.partials is None or v.partials is None:
        return out
    eu, ev, pu, pv = u.evaluator, v.evaluator, u.partials, v.partials

    def partials(q):
        a, b = eu(q)[:, None], ev(q)[:, None]
        da, db = pu(q), pv(q)
        return da @ b + a @ db - db @ a - b @ da

    return LieForm(grid=out.grid, degree=0, samples=out.samples, evaluator=out.evaluator, partials=partials)


def trace_integral(form: LieForm) -> complex:
    """∫ tr ω (ou ∫ ω si la forme est déjà scalaire)"""
    return integrate_top(form, trace_first=form.is_matrix)

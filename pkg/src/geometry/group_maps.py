"""
Applications g : M → U(p) échantillonnées, formes de Maurer-Cartan,
transformations de jauge et courbure
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from ..core.config import Config
from ..core.errors import ConventionError, DegreeError, GridMismatchError, InvariantViolationError
from .forms import LieForm, bracket_wedge, exterior_d, fd_partials
from .grids import ManifoldGrid

UNITARY_TOL = 1e-10


def _dagger(m: np.ndarray) -> np.ndarray:
    return np.swapaxes(m.conj(), -1, -2)


@dataclass(frozen=True, eq=False)
class GroupMap:
    """
    g(q) aux noeuds, avec dérivées analytiques optionnelles.

    evaluator : q (m, D) -> (m, p, p)
    partials  : q (m, D) -> (m, D, p, p)
    """
    grid: ManifoldGrid
    evaluator: Callable[[np.ndarray], np.ndarray]
    partials: Optional[Callable[[np.ndarray], np.ndarray]] = None
    special: bool = False
    step: Optional[float] = None

    @cached_property
    def values(self) -> np.ndarray:
        return self.evaluator(self.grid.nodes)

    @property
    def p(self) -> int:
        return self.values.shape[-1]

    def derivative(self, q: np.ndarray) -> np.ndarray:
        if self.partials is not None:
            return self.partials(q)
        return fd_partials(self.evaluator, q, Config.FD_STEP if self.step is None else self.step)

    def unitarity_residual(self) -> float:
        g = self.values
        return float(np.max(np.abs(_dagger(g) @ g - np.eye(self.p))))

    def det_residual(self) -> float:
        return float(np.max(np.abs(np.linalg.det(self.values) - 1)))

    def check(self, tol: float = UNITARY_TOL):
        """Lève InvariantViolationError si g n'est pas unitaire (spécial si déclaré)"""
        residual = self.unitarity_residual()
        if residual > tol:
            raise InvariantViolationError(f"g non unitaire (résidu {residual:.2e})")
        if self.special:
            residual = self.det_residual()
            if residual > tol:
                raise InvariantViolationError(f"det g ≠ 1 (résidu {residual:.2e})")

    def inverse(self) -> 'GroupMap':
        base, deriv = self.evaluator, self.derivative

        def evaluator(q):
            return _dagger(base(q))

        def partials(q):
            return _dagger(deriv(q))

        return GroupMap(self.grid, evaluator, partials, special=self.special)

    def __matmul__(self, other: 'GroupMap') -> 'GroupMap':
        """Produit point par point (g·h)(q) = g(q) h(q), règle de Leibniz"""
        if other.grid is not self.grid:
            raise GridMismatchError("Produit d'applications sur des grilles différentes")
        f, df = self.evaluator, self.derivative
        h, dh = other.evaluator, other.derivative

        def evaluator(q):
            return f(q) @ h(q)

        def partials(q):
            return df(q) @ h(q)[:, None] + f(q)[:, None] @ dh(q)

        return GroupMap(self.grid, evaluator, partials, special=self.special and other.special)

    @classmethod
    def constant(cls, grid: ManifoldGrid, value: np.ndarray) -> 'GroupMap':
        value = np.asarray(value, dtype=np.complex128)

        def evaluator(q):
            return np.broadcast_to(value, (q.shape[0],) + value.shape).copy()

        def partials(q):
            return np.zeros((q.shape[0], grid.dim) + value.shape, dtype=np.complex128)

        return cls(grid, evaluator, partials)

    @classmethod
    def identity(cls, grid: ManifoldGrid, p: int) -> 'GroupMap':
        return cls.constant(grid, np.eye(p))


def maurer_cartan(g: GroupMap, side: str = 'left') -> LieForm:
    """g⁻¹dg (left) ou dg·g⁻¹ (right)"""
    if side not in ('left', 'right'):
        raise ConventionError(f"side doit être 'left' ou 'right' (reçu {side})")
    g.check()
    f, df = g.evaluator, g.derivative

    if side == 'left':
        def evaluator(q):
            return _dagger(f(q))[:, None] @ df(q)
    else:
        def evaluator(q):
            return df(q) @ _dagger(f(q))[:, None]

    return LieForm.from_evaluator(g.grid, 1, evaluator)


def gauge_transform(A: LieForm, g: GroupMap) -> LieForm:
    """A^g = g⁻¹Ag + g⁻¹dg"""
    if A.grid is not g.grid:
        raise GridMismatchError("Connexion et transformation de jauge sur des grilles différentes")
    if A.degree != 1:
        raise DegreeError(f"gauge_transform attend une 1-forme (degré {A.degree})")
    return A.conjugate_by(g) + maurer_cartan(g, 'left')


def adjoint_transform(A: LieForm, g: GroupMap) -> LieForm:
    """g⁻¹Ag sans terme inhomogène"""
    if A.grid is not g.grid:
        raise GridMismatchError("Connexion et transformation sur des grilles différentes")
    return A.conjugate_by(g)


def curvature(A: LieForm) -> LieForm:
    """F = dA + ½[A, A]"""
    if A.degree != 1:
        raise DegreeError(f"curvature attend une 1-forme (degré {A.degree})")
    return exterior_d(A) + bracket_wedge(A, A).scale(0.5)

"""
Groupes finis par table de multiplication et groupes matriciels échantillonnés
"""

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.linalg import expm

from ..core.errors import InvariantViolationError
from .liealg import SIGMA


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Groupe fini : éléments 0..n−1, table mul[g, h] = g·h"""
    name: str
    table: np.ndarray
    labels: Sequence = field(default=())

    def __post_init__(self):
        n = self.order
        if self.table.shape != (n, n):
            raise InvariantViolationError(f"Table de {self.name} non carrée")
        for row in self.table:
            if sorted(row.tolist()) != list(range(n)):
                raise InvariantViolationError(f"Table de {self.name} : ligne non bijective")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if np.array_equal(self.table[e], np.arange(self.order)):
                return e
        raise InvariantViolationError(f"{self.name} sans neutre")

    @property
    def finite(self) -> bool:
        return True

    def elements(self) -> List[int]:
        return list(range(self.order))

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        e = self.identity
        return int(np.nonzero(self.table[g] == e)[0][0])

    def eq(self, g: int, h: int) -> bool:
        return g == h

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def subgroup(self, members: Sequence[int], name: str) -> 'FiniteGroup':
        """Sous-groupe réindexé ; retourne aussi l'inclusion via .labels"""
        members = list(members)
        index = {g: i for i, g in enumerate(members)}
        table = np.array([[index[self.mul(g, h)] for h in members] for g in members], dtype=int)
        return FiniteGroup(name=name, table=table, labels=tuple(members))

    # ========== Constructions usuelles ==========

    @classmethod
    def trivial(cls) -> 'FiniteGroup':
        return cls(name='1', table=np.zeros((1, 1), dtype=int))

    @classmethod
    def cyclic(cls, n: int) -> 'FiniteGroup':
        idx = np.arange(n)
        return cls(name=f'Z{n}', table=(idx[:, None] + idx[None, :]) % n, labels=tuple(range(n)))

    @classmethod
    def symmetric(cls, n: int) -> 'FiniteGroup':
        """S_n ; (g·h)(i) = g(h(i)), l'identité en tête"""
        perms = sorted(permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        table = np.array([[index[tuple(g[h[i]] for i in range(n))] for h in perms] for g in perms], dtype=int)
        return cls(name=f'S{n}', table=table, labels=tuple(perms))

    @classmethod
    def direct_product(cls, a: 'FiniteGroup', b: 'FiniteGroup') -> 'FiniteGroup':
        """Éléments (x, y) codés x·|b| + y"""
        nb = b.order
        n = a.order * nb
        table = np.empty((n, n), dtype=int)
        for g in range(n):
            for h in range(n):
                table[g, h] = a.mul(g // nb, h // nb) * nb + b.mul(g % nb, h % nb)
        labels = tuple((x, y) for x in range(a.order) for y in range(nb))
        return cls(name=f'{a.name}x{b.name}', table=table, labels=labels)


def permutation_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, set()
    for start in range(len(perm)):
        if start in seen:
            continue
        length, j = 0, start
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternating_subgroup(sym: FiniteGroup) -> FiniteGroup:
    """A_n ⊴ S_n (labels = indices dans S_n)"""
    even = [g for g, perm in enumerate(sym.labels) if permutation_sign(perm) == 1]
    return sym.subgroup(even, name=sym.name.replace('S', 'A'))


@dataclass(frozen=True, eq=False)
class MatrixGroup:
    """Groupe matriciel unitaire/orthogonal connu par un échantillonneur"""
    name: str
    dim: int
    sampler: Callable[[np.random.Generator, int], List[np.ndarray]]
    tol: float = 1e-10
    identity_matrix: Optional[np.ndarray] = None

    @property
    def finite(self) -> bool:
        return False

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.complex128) if self.identity_matrix is None else self.identity_matrix

    def sample(self, rng: np.random.Generator, count: int) -> List[np.ndarray]:
        return self.sampler(rng, count)

    def mul(self, g: np.ndarray, h: np.ndarray) -> np.ndarray:
        return g @ h

    def inv(self, g: np.ndarray) -> np.ndarray:
        return g.conj().T

    def eq(self, g: np.ndarray, h: np.ndarray) -> bool:
        return float(np.linalg.norm(g - h, 2)) <= self.tol


def _random_su2(rng: np.random.Generator, count: int) -> List[np.ndarray]:
    """exp(i θ n·σ/2), θ ∈ [0, 2π), n uniforme sur S²"""
    out = []
    for _ in range(count):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        theta = rng.uniform(0, 2 * np.pi)
        out.append(expm(0.5j * theta * np.einsum('k,kij->ij', axis, SIGMA[1:])))
    return out


def su2_group() -> MatrixGroup:
    return MatrixGroup(name='SU(2)', dim=2, sampler=_random_su2)


def su2_to_so3(u: np.ndarray) -> np.ndarray:
    """Revêtement double : R_ij = ½ tr(σ_i U σ_j U†)"""
    return 0.5 * np.einsum('iab,bc,jcd,da->ij', SIGMA[1:], u, SIGMA[1:], u.conj().T).real


def so3_section(rot: np.ndarray) -> np.ndarray:
    """
    Relèvement R ↦ U ∈ SU(2) (signe arbitraire mais fixé) via le quaternion de R.

    Méthode de Shepperd : on part de la plus grande composante diagonale.
    """
    r = np.asarray(rot, dtype=float)
    trace = np.trace(r)
    candidates = [trace, r[0, 0], r[1, 1], r[2, 2]]
    k = int(np.argmax(candidates))
    if k == 0:
        w = 0.5 * np.sqrt(1 + trace)
        x = (r[2, 1] - r[1, 2]) / (4 * w)
        y = (r[0, 2] - r[2, 0]) / (4 * w)
        z = (r[1, 0] - r[0, 1]) / (4 * w)
    elif k == 1:
        x = 0.5 * np.sqrt(1 + 2 * r[0, 0] - trace)
        w = (r[2, 1] - r[1, 2]) / (4 * x)
        y = (r[0, 1] + r[1, 0]) / (4 * x)
        z = (r[0, 2] + r[2, 0]) / (4 * x)
    elif k == 2:
        y = 0.5 * np.sqrt(1 + 2 * r[1, 1] - trace)
        w = (r[0, 2] - r[2, 0]) / (4 * y)
        x = (r[0, 1] + r[1, 0]) / (4 * y)
        z = (r[1, 2] + r[2, 1]) / (4 * y)
    else:
        z = 0.5 * np.sqrt(1 + 2 * r[2, 2] - trace)
        w = (r[1, 0] - r[0, 1]) / (4 * z)
        x = (r[0, 2] + r[2, 0]) / (4 * z)
        y = (r[1, 2] + r[2, 1]) / (4 * z)
    # R est la rotation d'angle θ autour de n ; U = cos(θ/2) I − i sin(θ/2) n·σ vérifie U σ_j U† = R_ij σ_i
    return w * SIGMA[0] - 1j * (x * SIGMA[1] + y * SIGMA[2] + z * SIGMA[3])


def so3_group() -> MatrixGroup:
    def sampler(rng: np.random.Generator, count: int) -> List[np.ndarray]:
        return [su2_to_so3(u).astype(np.complex128) for u in _random_su2(rng, count)]

    return MatrixGroup(name='SO(3)', dim=3, sampler=sampler)

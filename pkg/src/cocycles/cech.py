"""
Cochaînes de Čech sur un recouvrement abstrait, valeurs dans ℤ_m

Le recouvrement déclare ses intersections non vides (ensembles d'indices).
Une p-cochaîne attache une valeur à chaque (p+1)-uplet ordonné d'indices
distincts dont l'intersection est déclarée, avec la convention alternée
α_{σ(I)} = sgn(σ) α_I.
"""

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, Tuple

import numpy as np

from ..algebra.finite_groups import permutation_sign
from ..core.errors import InvariantViolationError, UndeclaredIntersectionError

Simplex = Tuple[int, ...]


@dataclass(frozen=True)
class CechCover:
    """Indices 0..n−1 et intersections non vides déclarées (fermées par sous-ensembles)"""
    size: int
    intersections: FrozenSet[FrozenSet[int]]

    @classmethod
    def from_maximal(cls, size: int, maximal: Iterable[Iterable[int]]) -> 'CechCover':
        """Déclare toutes les sous-intersections des ensembles maximaux donnés"""
        declared = set()
        for face in maximal:
            face = sorted(set(face))
            for k in range(1, len(face) + 1):
                declared.update(frozenset(c) for c in combinations(face, k))
        declared.update(frozenset([i]) for i in range(size))
        return cls(size=size, intersections=frozenset(declared))

    @classmethod
    def complete(cls, size: int) -> 'CechCover':
        return cls.from_maximal(size, [range(size)])

    def is_declared(self, simplex: Simplex) -> bool:
        return frozenset(simplex) in self.intersections

    def simplices(self, p: int) -> Tuple[Simplex, ...]:
        """(p+1)-uplets croissants d'intersection déclarée"""
        return tuple(s for s in combinations(range(self.size), p + 1) if self.is_declared(s))


@dataclass(frozen=True, eq=False)
class CechCochainTable:
    cover: CechCover
    p: int
    m: int
    values: Dict[Simplex, int] = field(default_factory=dict)

    def __post_init__(self):
        for simplex in self.values:
            if len(simplex) != self.p + 1 or list(simplex) != sorted(simplex):
                raise InvariantViolationError(f"Uplet {simplex} invalide pour une {self.p}-cochaîne")
            if not self.cover.is_declared(simplex):
                raise UndeclaredIntersectionError(f"Intersection {simplex} non déclarée")

    def value(self, indices: Simplex) -> int:
        """Valeur sur un uplet ordonné quelconque (alternée, 0 si indice répété)"""
        if len(set(indices)) < len(indices):
            return 0
        if not self.cover.is_declared(indices):
            raise UndeclaredIntersectionError(f"Intersection {tuple(indices)} non déclarée")
        order = sorted(range(len(indices)), key=lambda i: indices[i])
        key = tuple(indices[i] for i in order)
        return (permutation_sign(order) * self.values.get(key, 0)) % self.m

    def is_zero(self) -> bool:
        return all(v % self.m == 0 for v in self.values.values())


def cech_coboundary(t: CechCochainTable) -> CechCochainTable:
    """δ(α)_{i₀…i_{p+1}} = Σ_k (−1)^k α_{i₀…î_k…i_{p+1}}"""
    out = {}
    for simplex in t.cover.simplices(t.p + 1):
        total = 0
        for k in range(len(simplex)):
            face = simplex[:k] + simplex[k + 1:]
            if not t.cover.is_declared(face):
                raise UndeclaredIntersectionError(f"Face {face} de {simplex} non déclarée")
            total += (-1) ** k * t.values.get(face, 0)
        out[simplex] = total % t.m
    return CechCochainTable(t.cover, t.p + 1, t.m, out)


def random_cech_cochain(cover: CechCover, p: int, m: int, rng: np.random.Generator) -> CechCochainTable:
    simplices = cover.simplices(p)
    draws = rng.integers(0, m, size=len(simplices))
    return CechCochainTable(cover, p, m, {s: int(v) for s, v in zip(simplices, draws)})


def constant_cochain(cover: CechCover, m: int, value: int) -> CechCochainTable:
    return CechCochainTable(cover, 0, m, {s: value % m for s in cover.simplices(0)})


def multiplicative_cocycle_check(transitions: Dict[Tuple[int, int], int], cover: CechCover, m: int) -> Dict[Simplex, int]:
    """
    Condition c_ij c_jk c_ki = 1 pour des fonctions de transition à valeurs
    dans les racines m-ièmes de l'unité, encodées par leur logarithme discret
    (c = exp(2iπ k/m) ↦ k). c_ji = c_ij⁻¹ est imposé par l'alternance.

    Retourne les violations {(i, j, k): log(c_ij c_jk c_ki)} (vide si cocycle).
    """
    for (i, j) in transitions:
        if i >= j:
            raise InvariantViolationError(f"Transition ({i}, {j}) : clés croissantes attendues")
    table = CechCochainTable(cover, 1, m, dict(transitions))
    violations = {}
    for i, j, k in cover.simplices(2):
        total = (table.value((i, j)) + table.value((j, k)) + table.value((k, i))) % m
        if total:
            violations[(i, j, k)] = total
    return violations


def all_orderings_consistent(t: CechCochainTable) -> bool:
    """Vérifie l'alternance sur toutes les permutations des uplets stockés"""
    for simplex, v in t.values.items():
        for perm in permutations(range(len(simplex))):
            reordered = tuple(simplex[i] for i in perm)
            if t.value(reordered) != (permutation_sign(perm) * v) % t.m:
                return False
    return True

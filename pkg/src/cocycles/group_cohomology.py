"""
Cohomologie de groupes finis à coefficients dans un G-module abélien fini
(arithmétique entière exacte)

Deux représentations du module : ℤ_m muni de multiplicateurs
(g·a = action[g]·a mod m), ou un groupe abélien fini quelconque donné par
ses tables d'addition et d'action, sommes directes comprises. Les éléments
sont codés 0..|A|−1, 0 étant le neutre.
Les cochaînes sont normalisées (nulles dès qu'un argument est le neutre).
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence, Tuple, Union

import numpy as np

from ..algebra.finite_groups import FiniteGroup
from ..core.errors import InvariantViolationError, SizeGuardError, StructuralError

MAX_GROUP_ORDER = 8
MAX_MODULE_ORDER = 8
MAX_ENUMERATION = 2 ** 20
CHUNK = 4096


@dataclass(frozen=True)
class CyclicModule:
    """ℤ_m avec action g·a = action[g]·a"""
    m: int
    action: Tuple[int, ...]

    @classmethod
    def trivial(cls, group: FiniteGroup, m: int) -> 'CyclicModule':
        return cls(m=m, action=(1,) * group.order)

    @property
    def order(self) -> int:
        return self.m

    def act(self, g, a):
        return (np.asarray(self.action)[g] * a) % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def reduce(self, values):
        return np.asarray(values) % self.m

    def validate(self, group: FiniteGroup):
        """L'action doit être un morphisme G → Aut(ℤ_m)"""
        if len(self.action) != group.order:
            raise StructuralError("Action de longueur différente de |G|")
        for g in group.elements():
            if np.gcd(self.action[g], self.m) != 1:
                raise StructuralError(f"action[{g}] non inversible mod {self.m}", witness=(g,))
            for h in group.elements():
                lhs = self.action[group.mul(g, h)] % self.m
                rhs = (self.action[g] * self.action[h]) % self.m
                if lhs != rhs:
                    raise StructuralError("L'action n'est pas un morphisme", witness=(g, h))


@dataclass(frozen=True, eq=False)
class FiniteModule:
    """
    Groupe abélien fini par tables : addition[a, b] = a + b, action[g, a] = g·a.

    Le code 0 est le neutre ; labels décrit les éléments (composantes d'une
    somme directe par exemple).
    """
    addition: np.ndarray = field(repr=False)
    action: np.ndarray = field(repr=False)
    labels: Tuple = ()

    @property
    def order(self) -> int:
        return self.addition.shape[0]

    @cached_property
    def negation(self) -> np.ndarray:
        return np.argmax(self.addition == 0, axis=1)

    def act(self, g, a):
        return self.action[g, a]

    def add(self, a, b):
        return self.addition[a, b]

    def neg(self, a):
        return self.negation[a]

    def reduce(self, values):
        return np.asarray(values) % self.order

    @classmethod
    def direct_sum(cls, group: FiniteGroup, *modules: 'GModule') -> 'FiniteModule':
        """A₁ ⊕ … ⊕ A_k, action composante par composante, codage en base mixte"""
        sizes = [mod.order for mod in modules]
        labels = tuple(product(*(range(s) for s in sizes)))
        size = len(labels)
        strides = np.cumprod([1] + sizes[:0:-1])[::-1]

        def encode(parts):
            return int(np.dot(parts, strides))

        addition = np.empty((size, size), dtype=np.int64)
        action = np.empty((group.order, size), dtype=np.int64)
        for x, a in enumerate(labels):
            for y, b in enumerate(labels):
                addition[x, y] = encode([int(mod.add(ai, bi)) for mod, ai, bi in zip(modules, a, b)])
            for g in group.elements():
                action[g, x] = encode([int(mod.act(g, ai)) for mod, ai in zip(modules, a)])
        return cls(addition, action, labels)

    def validate(self, group: FiniteGroup):
        """Groupe abélien de neutre 0 et action G → Aut(A) par morphismes"""
        n = self.order
        codes = np.arange(n)
        if self.addition.shape != (n, n) or self.action.shape != (group.order, n):
            raise StructuralError(f"Tables de forme {self.addition.shape}, {self.action.shape}")
        if not np.array_equal(self.addition[0], codes):
            raise StructuralError("0 n'est pas le neutre de l'addition")
        if not np.array_equal(self.addition, self.addition.T):
            raise StructuralError("Addition non commutative")
        for row in self.addition:
            if not np.array_equal(np.sort(row), codes):
                raise StructuralError("Ligne d'addition non bijective")
        left = self.addition[self.addition[:, :, None], codes[None, None, :]]
        right = self.addition[codes[:, None, None], self.addition[None, :, :]]
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise StructuralError("Addition non associative", witness=(int(a), int(b), int(c)))
        if not np.array_equal(self.action[group.identity], codes):
            raise StructuralError("Le neutre de G n'agit pas trivialement")
        for g in group.elements():
            image = self.action[g]
            if not np.array_equal(image[self.addition], self.addition[image[:, None], image[None, :]]):
                raise StructuralError(f"action[{g}] n'est pas additive", witness=(g,))
            for h in group.elements():
                if not np.array_equal(self.action[group.mul(g, h)], image[self.action[h]]):
                    raise StructuralError("L'action n'est pas un morphisme", witness=(g, h))


GModule = Union[CyclicModule, FiniteModule]


@dataclass(frozen=True, eq=False)
class GroupCochainTable:
    """c : G^p → A, tableau de codes entiers de forme (|G|,)*p"""
    group: FiniteGroup
    module: GModule
    p: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.group.order
        if self.values.shape != (n,) * self.p:
            raise InvariantViolationError(f"Table de forme {self.values.shape}, attendu {(n,) * self.p}")
        e = self.group.identity
        for axis in range(self.p):
            if np.any(self.module.reduce(np.take(self.values, e, axis=axis))):
                raise InvariantViolationError("Cochaîne non normalisée")

    def is_zero(self) -> bool:
        return not np.any(self.module.reduce(self.values))

    @classmethod
    def zero(cls, group: FiniteGroup, module: GModule, p: int) -> 'GroupCochainTable':
        return cls(group, module, p, np.zeros((group.order,) * p, dtype=np.int64))


def normalize(values: np.ndarray, group: FiniteGroup) -> np.ndarray:
    out = np.array(values, dtype=np.int64)
    e = group.identity
    for axis in range(out.ndim):
        index = [slice(None)] * out.ndim
        index[axis] = e
        out[tuple(index)] = 0
    return out


def random_cochain(group: FiniteGroup, module: GModule, p: int, rng: np.random.Generator) -> GroupCochainTable:
    raw = rng.integers(0, module.order, size=(group.order,) * p)
    return GroupCochainTable(group, module, p, normalize(raw, group))


def _coboundary_values(values: np.ndarray, group: FiniteGroup, module: GModule, p: int) -> np.ndarray:
    """
    (δf)(g₁,…,g_{p+1}) = g₁·f(g₂,…) + Σ_{i=1}^{p} (−1)^i f(…, g_i g_{i+1}, …) + (−1)^{p+1} f(g₁,…,g_p)

    values peut porter un axe de lot en tête : (N,) + (|G|,)*p.
    """
    n = group.order
    table = group.table
    batch = values.ndim - p
    grids = list(np.meshgrid(*([np.arange(n)] * (p + 1)), indexing='ij'))
    lead = (slice(None),) * batch

    out = np.asarray(module.act(grids[0], values[lead + tuple(grids[1:])]))
    for i in range(1, p + 1):
        args = grids[:i - 1] + [table[grids[i - 1], grids[i]]] + grids[i + 1:]
        term = values[lead + tuple(args)]
        out = module.add(out, term if i % 2 == 0 else module.neg(term))
    last = values[lead + tuple(grids[:p])]
    out = module.add(out, last if p % 2 == 1 else module.neg(last))
    return module.reduce(out)


def group_coboundary(t: GroupCochainTable) -> GroupCochainTable:
    values = _coboundary_values(t.values, t.group, t.module, t.p)
    return GroupCochainTable(t.group, t.module, t.p + 1, values)


def _guard(group: FiniteGroup, module: GModule, count: int):
    if group.order > MAX_GROUP_ORDER or module.order > MAX_MODULE_ORDER:
        raise SizeGuardError(f"|G|={group.order}, |A|={module.order} : limite {MAX_GROUP_ORDER}/{MAX_MODULE_ORDER}")
    if count > MAX_ENUMERATION:
        raise SizeGuardError(f"{count} cochaînes à énumérer (limite {MAX_ENUMERATION})")


def _enumerate_normalized(group: FiniteGroup, module: GModule, p: int, start: int, stop: int) -> np.ndarray:
    """Cochaînes normalisées d'indices [start, stop) en base m sur les entrées libres"""
    n, m = group.order, module.order
    e = group.identity
    free = [idx for idx in product(range(n), repeat=p) if e not in idx]
    codes = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((stop - start,) + (n,) * p, dtype=np.int64)
    for position, idx in enumerate(free):
        out[(slice(None),) + idx] = (codes // m ** position) % m
    return out


def count_normalized(group: FiniteGroup, module: GModule, p: int) -> int:
    free = (group.order - 1) ** p
    return module.order ** free


def h2_brute_force(group: FiniteGroup, module: GModule) -> int:
    """|H²(G, A)| = |Z²| / |B²| par énumération exhaustive des cochaînes normalisées"""
    module.validate(group)
    total_2 = count_normalized(group, module, 2)
    _guard(group, module, total_2)

    cocycles = 0
    for start in range(0, total_2, CHUNK):
        batch = _enumerate_normalized(group, module, 2, start, min(start + CHUNK, total_2))
        d = _coboundary_values(batch, group, module, 2)
        cocycles += int(np.sum(~np.any(d.reshape(d.shape[0], -1), axis=1)))

    total_1 = count_normalized(group, module, 1)
    images = set()
    for start in range(0, total_1, CHUNK):
        batch = _enumerate_normalized(group, module, 1, start, min(start + CHUNK, total_1))
        d = _coboundary_values(batch, group, module, 1)
        images.update(row.tobytes() for row in d.reshape(d.shape[0], -1))

    if cocycles % len(images):
        raise InvariantViolationError(f"|Z²|={cocycles} non divisible par |B²|={len(images)}")
    return cocycles // len(images)


def extension_from_cocycle(f: GroupCochainTable, name: str = '') -> FiniteGroup:
    """
    Groupe A ×_f G : (a, g)(b, h) = (a + g·b + f(g, h), gh), codé g·|A| + a.

    Le 2-cocycle doit être fermé ; la classe triviale donne A ⋊ G.
    """
    if f.p != 2:
        raise InvariantViolationError("extension_from_cocycle attend un 2-cocycle")
    if not group_coboundary(f).is_zero():
        raise InvariantViolationError("f n'est pas un 2-cocycle")
    group, module = f.group, f.module
    n, m = group.order, module.order
    size = n * m
    table = np.empty((size, size), dtype=np.int64)
    for x in range(size):
        g, a = divmod(x, m)
        for y in range(size):
            h, b = divmod(y, m)
            c = module.add(module.add(a, module.act(g, b)), f.values[g, h])
            table[x, y] = group.mul(g, h) * m + int(c)
    labels = tuple((a, g) for g in range(n) for a in range(m))
    prefix = 'Z' if isinstance(module, CyclicModule) else 'A'
    return FiniteGroup(name=name or f'{prefix}{m}x_f{group.name}', table=table, labels=labels)


def coboundary_squared_residual(t: GroupCochainTable) -> bool:
    """True si δδt = 0 exactement"""
    return group_coboundary(group_coboundary(t)).is_zero()


def cochain_from_function(group: FiniteGroup, module: GModule, p: int, fn) -> GroupCochainTable:
    values = np.zeros((group.order,) * p, dtype=np.int64)
    for idx in product(range(group.order), repeat=p):
        values[idx] = module.reduce(fn(*idx))
    return GroupCochainTable(group, module, p, normalize(values, group))


def is_cyclic(group: FiniteGroup) -> bool:
    return any(group.element_order(g) == group.order for g in group.elements())


def orders(group: FiniteGroup) -> Sequence[int]:
    return sorted(group.element_order(g) for g in group.elements())

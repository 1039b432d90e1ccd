"""
Modules croisés (H, G, δ, action) : vérification des deux axiomes et
construction à partir d'extensions centrales

Action à droite h ↦ h^g. Axiomes :
  (1) h^{δ(h')} = h'⁻¹ h h'
  (2) δ(h^g) = g⁻¹ δ(h) g
Groupes finis : vérification exhaustive et exacte. Groupes matriciels :
échantillons tirés d'un générateur seedé, égalité en norme d'opérateur.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.finite_groups import (
    FiniteGroup, MatrixGroup, alternating_subgroup, permutation_sign, so3_group, so3_section, su2_group,
    su2_to_so3,
)
from ..core.errors import ExtensionError, StructuralError

Group = Union[FiniteGroup, MatrixGroup]

# sous-échantillon pour les contrôles de structure (coût cubique)
STRUCTURE_SAMPLES = 10


@dataclass(frozen=True)
class CrossedModuleData:
    name: str
    H: Group
    G: Group
    delta: Callable[[Any], Any]
    act: Callable[[Any, Any], Any]     # act(h, g) = h^g


@dataclass
class AxiomReport:
    name: str
    samples_h: int = 0
    samples_g: int = 0
    checked: int = 0
    violations: List[Tuple[str, Tuple]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def first_witness(self) -> Optional[Tuple[str, Tuple]]:
        return self.violations[0] if self.violations else None


def _elements(group: Group, rng: Optional[np.random.Generator], count: int) -> Sequence:
    if group.finite:
        return group.elements()
    if rng is None:
        raise StructuralError(f"{group.name} est infini : un générateur aléatoire est requis")
    return group.sample(rng, count)


def check_structure(cm: CrossedModuleData, hs: Sequence, gs: Sequence):
    """δ morphisme et h ↦ h^g automorphisme ; StructuralError avec témoin sinon"""
    H, G = cm.H, cm.G
    for h1, h2 in product(hs, hs):
        if not G.eq(cm.delta(H.mul(h1, h2)), G.mul(cm.delta(h1), cm.delta(h2))):
            raise StructuralError(f"{cm.name} : δ n'est pas un morphisme", witness=(h1, h2))
    for g in gs:
        for h1, h2 in product(hs, hs):
            if not H.eq(cm.act(H.mul(h1, h2), g), H.mul(cm.act(h1, g), cm.act(h2, g))):
                raise StructuralError(f"{cm.name} : l'action n'est pas un automorphisme", witness=(h1, h2, g))


def check_axioms(cm: CrossedModuleData, rng: Optional[np.random.Generator] = None,
                 samples: int = 100) -> AxiomReport:
    """
    Vérifie les deux axiomes sur tous les éléments (groupes finis) ou sur
    des échantillons (groupes matriciels). La structure est contrôlée d'abord.
    """
    H, G = cm.H, cm.G
    hs = _elements(H, rng, samples)
    gs = _elements(G, rng, samples)
    check_structure(
        cm,
        hs if H.finite else hs[:STRUCTURE_SAMPLES],
        gs if G.finite else gs[:STRUCTURE_SAMPLES],
    )

    report = AxiomReport(name=cm.name, samples_h=len(hs), samples_g=len(gs))
    for h, h2 in product(hs, hs):
        lhs = cm.act(h, cm.delta(h2))
        rhs = H.mul(H.mul(H.inv(h2), h), h2)
        report.checked += 1
        if not H.eq(lhs, rhs):
            report.violations.append(('h^δ(h′) = h′⁻¹hh′', (h, h2)))
    for h, g in product(hs, gs):
        lhs = cm.delta(cm.act(h, g))
        rhs = G.mul(G.mul(G.inv(g), cm.delta(h)), g)
        report.checked += 1
        if not G.eq(lhs, rhs):
            report.violations.append(('δ(h^g) = g⁻¹δ(h)g', (h, g)))
    return report


# ========== Exemples finis ==========

def identity_module(group: FiniteGroup) -> CrossedModuleData:
    """H = G, δ = id, action par conjugaison"""
    return CrossedModuleData(
        name=f'id:{group.name}',
        H=group, G=group,
        delta=lambda h: h,
        act=lambda h, g: group.mul(group.mul(group.inv(g), h), g),
    )


def normal_subgroup_module(group: FiniteGroup, sub: FiniteGroup) -> CrossedModuleData:
    """N ⊴ G, δ l'inclusion (sub.labels), action par conjugaison dans G"""
    index = {g: i for i, g in enumerate(sub.labels)}

    def act(h, g):
        x = sub.labels[h]
        return index[group.mul(group.mul(group.inv(g), x), g)]

    return CrossedModuleData(name=f'{sub.name}<{group.name}', H=sub, G=group, delta=lambda h: sub.labels[h], act=act)


def alternating_in_symmetric(n: int = 3) -> CrossedModuleData:
    sym = FiniteGroup.symmetric(n)
    return normal_subgroup_module(sym, alternating_subgroup(sym))


def quotient_module(n: int, k: int) -> CrossedModuleData:
    """ℤ_n → ℤ_k (k | n), réduction modulo k, action triviale"""
    H, G = FiniteGroup.cyclic(n), FiniteGroup.cyclic(k)
    return CrossedModuleData(name=f'Z{n}->Z{k}', H=H, G=G, delta=lambda h: h % k, act=lambda h, g: h)


def sabotaged_module(group: FiniteGroup) -> CrossedModuleData:
    """δ = id mais action triviale : l'axiome 1 échoue dès que G n'est pas abélien"""
    return CrossedModuleData(name=f'sabotage:{group.name}', H=group, G=group, delta=lambda h: h, act=lambda h, g: h)


# ========== Extensions centrales ==========

@dataclass(frozen=True)
class CentralExtension:
    """A → H → G : inclusion, projection et section ensembliste s : G → H"""
    name: str
    A: Group
    H: Group
    G: Group
    include: Callable[[Any], Any]
    project: Callable[[Any], Any]
    section: Callable[[Any], Any]


def _check_central(ext: CentralExtension, hs: Sequence, as_: Sequence):
    H = ext.H
    for a in as_:
        x = ext.include(a)
        for h in hs:
            if not H.eq(H.mul(x, h), H.mul(h, x)):
                raise ExtensionError(f"{ext.name} : A n'est pas central", witness=(a, h))


def from_central_extension(ext: CentralExtension, rng: Optional[np.random.Generator] = None,
                           samples: int = 100) -> CrossedModuleData:
    """
    δ = projection, h^g = s(g)⁻¹ h s(g).

    L'action ne dépend pas du choix de la section car A est central.
    """
    hs = _elements(ext.H, rng, samples)
    as_ = _elements(ext.A, rng, samples) if ext.A.finite else []
    _check_central(ext, hs, as_)
    H = ext.H

    def act(h, g):
        s = ext.section(g)
        return H.mul(H.mul(H.inv(s), h), s)

    return CrossedModuleData(name=f'ext:{ext.name}', H=H, G=ext.G, delta=ext.project, act=act)


def z2_z4_z2() -> CentralExtension:
    """ℤ₂ → ℤ₄ → ℤ₂ : a ↦ 2a, h ↦ h mod 2, section g ↦ g"""
    return CentralExtension(
        name='Z2->Z4->Z2',
        A=FiniteGroup.cyclic(2), H=FiniteGroup.cyclic(4), G=FiniteGroup.cyclic(2),
        include=lambda a: 2 * a, project=lambda h: h % 2, section=lambda g: g,
    )


def trivial_extension(A: FiniteGroup, G: FiniteGroup) -> CentralExtension:
    """A → A × G → G (produit direct, code x·|G| + y)"""
    H = FiniteGroup.direct_product(A, G)
    n = G.order
    return CentralExtension(
        name=f'{A.name}x{G.name}', A=A, H=H, G=G,
        include=lambda a: a * n, project=lambda h: h % n, section=lambda g: g,
    )


def non_central_extension() -> CentralExtension:
    """A₃ → S₃ → ℤ₂ : A₃ n'est pas central (rejet attendu)"""
    sym = FiniteGroup.symmetric(3)
    alt = alternating_subgroup(sym)
    odd = next(g for g, perm in enumerate(sym.labels) if permutation_sign(perm) == -1)
    return CentralExtension(
        name='A3->S3->Z2', A=alt, H=sym, G=FiniteGroup.cyclic(2),
        include=lambda a: alt.labels[a],
        project=lambda h: 0 if permutation_sign(sym.labels[h]) == 1 else 1,
        section=lambda g: sym.identity if g == 0 else odd,
    )


def spin3_extension() -> CentralExtension:
    """ℤ₂ → SU(2) → SO(3), section par quaternions"""
    su2 = su2_group()
    z2 = FiniteGroup.cyclic(2)
    return CentralExtension(
        name='Z2->SU(2)->SO(3)', A=z2, H=su2, G=so3_group(),
        include=lambda a: (1 - 2 * a) * np.eye(2, dtype=np.complex128),
        project=lambda u: su2_to_so3(u).astype(np.complex128),
        section=lambda r: so3_section(np.real(r)),
    )

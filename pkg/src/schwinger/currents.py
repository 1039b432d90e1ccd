"""
Commutateurs de courants spin ⊗ jauge et leurs termes de Schwinger

Les courants portent des indices de spin μ ∈ {0,1,2,3} et de jauge a. Trois
cas selon (μ, ν) : μ = ν, μ = 0 ≠ ν, μ ≠ ν non nuls. Le commutateur naïf
est une identité matricielle ; le terme de Schwinger est une distribution
Σ_k C_k(x) ∂_k δ(x − y) dont on calcule le champ de coefficients C_k et la
version lissée ∫ u(x) C_k(x) ∂_k v(x) contre des fonctions test.

Indices : spin 0..3, jauge 0..dim−1, coordonnées 0..2 ; ε sur les indices
de spin non nuls.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..algebra.liealg import (
    SIGMA, GaugeBasis, TensorElement, levi_civita, tensor_commutator, tensor_generators,
)
from ..cocycles.mickelsson_faddeev import C2, MFContext, mickelsson_faddeev
from ..core.errors import DegreeError, InvalidDimensionError, InvariantViolationError
from ..core.numerics import fsum_complex
from ..geometry.fields import SmoothField, check_support
from ..geometry.forms import LieForm, exterior_d
from ..geometry.grids import ManifoldGrid

NAIVE_TOL = 1e-12

# (i, j) tels que ε_{ijk} ∂_i A_j = (dA)_{ij} pour k = 0, 1, 2 ; signe du réordonnement
CURL_COMPONENTS = ((1, 2, 1), (0, 2, -1), (0, 1, 1))


@dataclass(frozen=True)
class CurrentCase:
    case_id: int
    mu: int
    nu: int

    def __post_init__(self):
        if _classify(self.mu, self.nu) != self.case_id:
            raise InvalidDimensionError(f"Cas {self.case_id} incompatible avec (μ, ν) = ({self.mu}, {self.nu})")


def _classify(mu: int, nu: int) -> int:
    """1 : μ = ν ; 2 : μ = 0, ν ≠ 0 ; 3 : μ ≠ ν non nuls"""
    if not (0 <= mu <= 3 and 0 <= nu <= 3):
        raise InvalidDimensionError(f"Indices de spin hors de 0..3 : ({mu}, {nu})")
    if mu == nu:
        case_id = 1
    elif mu == 0:
        case_id = 2
    elif nu != 0:
        case_id = 3
    else:
        raise InvalidDimensionError(f"Combinaison (μ, ν) = ({mu}, {nu}) hors des trois cas (échanger les arguments)")
    return case_id


def case_for(mu: int, nu: int) -> CurrentCase:
    return CurrentCase(_classify(mu, nu), mu, nu)


def _epsilon(mu: int, nu: int, eta: int) -> int:
    if 0 in (mu, nu, eta):
        return 0
    return levi_civita(mu - 1, nu - 1, eta - 1)


def _check_indices(basis: GaugeBasis, a: int, b: int):
    if not (0 <= a < basis.dim and 0 <= b < basis.dim):
        raise InvalidDimensionError(f"Indices de jauge ({a}, {b}) hors de 0..{basis.dim - 1}")


def trace_anticommutator(basis: GaugeBasis) -> np.ndarray:
    """tr({τ^a, τ^b} τ^c)"""
    g = basis.generators
    prod = np.einsum('aij,bjk,cki->abc', g, g, g)
    return prod + np.swapaxes(prod, 0, 1)


def trace_commutator(basis: GaugeBasis) -> np.ndarray:
    """tr([τ^a, τ^b] τ^c)"""
    g = basis.generators
    prod = np.einsum('aij,bjk,cki->abc', g, g, g)
    return prod - np.swapaxes(prod, 0, 1)


# ========== Commutateurs naïfs ==========

@dataclass(frozen=True)
class NaiveExpansion:
    """
    [σ_μ⊗τ^a, σ_ν⊗τ^b] = phase · Σ coeff (σ_η ⊗ τ^c) + identity_coefficient (σ_η₀ ⊗ I)

    terms : (coefficient, η, c). Pour su(p) le cas 3 avec a = b fait apparaître
    une composante σ_η ⊗ I hors de la base.
    """
    case: CurrentCase
    a: int
    b: int
    phase: complex
    terms: List[Tuple[complex, int, int]] = field(default_factory=list)
    identity_terms: List[Tuple[complex, int]] = field(default_factory=list)
    residual: float = 0.0


def naive_case_commutator(case: CurrentCase, a: int, b: int, basis: GaugeBasis) -> NaiveExpansion:
    _check_indices(basis, a, b)
    mu, nu = case.mu, case.nu
    terms, identity_terms = [], []

    if case.case_id in (1, 2):
        phase = 1j
        eta = 0 if case.case_id == 1 else nu
        for c in range(basis.dim):
            coeff = basis.lam[a, b, c]
            if abs(coeff) > NAIVE_TOL:
                terms.append((complex(coeff), eta, c))
    else:
        phase = 1.0
        for eta in range(1, 4):
            eps = _epsilon(mu, nu, eta)
            if not eps:
                continue
            for c in range(basis.dim):
                coeff = 1j * eps * basis.dsym[a, b, c]
                if abs(coeff) > NAIVE_TOL:
                    terms.append((complex(coeff), eta, c))
            if basis.kind == 'su' and a == b:
                identity_terms.append((1j * eps / basis.p, eta))

    X, Y = TensorElement.unit(basis, mu, a), TensorElement.unit(basis, nu, b)
    direct = X.realized @ Y.realized - Y.realized @ X.realized
    gens = tensor_generators(basis)
    rebuilt = np.zeros_like(direct)
    for coeff, eta, c in terms:
        rebuilt = rebuilt + phase * coeff * gens[eta, c]
    for coeff, eta in identity_terms:
        rebuilt = rebuilt + coeff * np.kron(SIGMA[eta], np.eye(basis.p))
    residual = float(np.max(np.abs(direct - rebuilt)))
    # la forme scindée lève si elle diverge du produit direct
    split_identity = tensor_commutator(X, Y).identity_part
    expected_identity = np.zeros(4, dtype=np.complex128)
    for coeff, eta in identity_terms:
        expected_identity[eta] += coeff
    residual = max(residual, float(np.max(np.abs(split_identity - expected_identity))))
    if residual > 1e-10:
        raise InvariantViolationError(f"Commutateur naïf cas {case.case_id} : résidu {residual:.2e}")
    return NaiveExpansion(case, a, b, phase, terms, identity_terms, residual)


def naive_identity_residual(basis: GaugeBasis) -> float:
    """max des résidus sur tous les (μ, ν, a, b) admissibles"""
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            if mu != 0 and nu == 0:
                continue
            case = case_for(mu, nu)
            for a in range(basis.dim):
                for b in range(basis.dim):
                    worst = max(worst, naive_case_commutator(case, a, b, basis).residual)
    return worst


# ========== Données des termes de Schwinger ==========

@dataclass(frozen=True)
class SchwingerInputs:
    """
    A : 1-forme tensorielle sur la carte ; f, h : profils scalaires à support
    compact dans la boule (center, radius) ; u = f (σ_μ⊗τ^a), v = h (σ_ν⊗τ^b).
    """
    A: LieForm
    f: SmoothField
    h: SmoothField
    basis: GaugeBasis
    center: Tuple[float, ...]
    radius: float
    c2: complex = C2

    @property
    def grid(self) -> ManifoldGrid:
        return self.A.grid

    def current(self, profile: SmoothField, mu: int, a: int) -> LieForm:
        gen = tensor_generators(self.basis)[mu, a]
        return _matrix_times_scalar(profile, gen).on(self.grid)

    def swapped(self) -> 'SchwingerInputs':
        return SchwingerInputs(self.A, self.h, self.f, self.basis, self.center, self.radius, self.c2)

    def check_support(self):
        X = self.grid.embedded_nodes()
        for profile in (self.f, self.h):
            check_support(profile.f(X), X, self.center, self.radius)


def _matrix_times_scalar(profile: SmoothField, matrix: np.ndarray) -> SmoothField:
    return SmoothField(
        lambda X: profile.f(X)[:, None, None] * matrix,
        lambda X: profile.grad(X)[:, :, None, None] * matrix,
    )


def tensor_components(form: LieForm, basis: GaugeBasis) -> np.ndarray:
    """X^η_{I,c} = tr((σ_η⊗τ^c) X_I), tableau (m, C, 4, dim)"""
    return np.einsum('maij,nkji->nkma', tensor_generators(basis), form.samples)


def curl_components(A: LieForm, basis: GaugeBasis) -> np.ndarray:
    """ε_{ijk} ∂_i A^η_{j,c}, tableau (m, 3, 4, dim)"""
    if A.degree != 1 or A.grid.dim != 3:
        raise DegreeError("Potentiel tensoriel : 1-forme sur une carte de dimension 3 attendue")
    dA = tensor_components(exterior_d(A), basis)   # composantes (01), (02), (12)
    index = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
    return np.stack([sign * dA[:, index[(i, j)]] for i, j, sign in CURL_COMPONENTS], axis=1)


def schwinger_local_coefficient(case: CurrentCase, A: LieForm, a: int, b: int,
                                basis: GaugeBasis, c2: complex = C2) -> np.ndarray:
    """
    C_k(x), coefficient de ∂_k δ(x − y), tableau (m, 3)

    cas 1 : 2c₂ ε_{ijk} tr({τ^a,τ^b}τ^c) ∂_i A⁰_{j,c}
    cas 2 : idem avec A^ν
    cas 3 : 2ic₂ ε_{μνη} ε_{ijk} tr([τ^a,τ^b]τ^c) ∂_i A^η_{j,c}
    """
    _check_indices(basis, a, b)
    curl = curl_components(A, basis)
    if case.case_id in (1, 2):
        eta = 0 if case.case_id == 1 else case.nu
        weights = trace_anticommutator(basis)[a, b]
        return 2 * c2 * np.einsum('mkc,c->mk', curl[:, :, eta], weights)
    weights = trace_commutator(basis)[a, b]
    eps = np.array([_epsilon(case.mu, case.nu, eta) for eta in range(4)], dtype=float)
    return 2j * c2 * np.einsum('mkec,e,c->mk', curl, eps, weights)


def hand_expanded_coefficient(case: CurrentCase, A: LieForm, a: int, b: int, basis: GaugeBasis,
                              node: int, c2: complex = C2) -> np.ndarray:
    """Même coefficient en un noeud, par boucles explicites sur i, j, k, η, c"""
    comps = tensor_components(exterior_d(A), basis)[node]   # (3, 4, dim)
    index = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
    anti, comm = trace_anticommutator(basis), trace_commutator(basis)
    out = np.zeros(3, dtype=np.complex128)
    for k in range(3):
        for i in range(3):
            for j in range(3):
                eps_ijk = levi_civita(i, j, k)
                if not eps_ijk or i == j:
                    continue
                lo, hi = min(i, j), max(i, j)
                d_ij = comps[index[(lo, hi)]] * (1 if i < j else -1)   # ∂_iA_j − ∂_jA_i
                # ε_{ijk} ∂_i A_j = ½ ε_{ijk} (∂_iA_j − ∂_jA_i)
                for c in range(basis.dim):
                    if case.case_id in (1, 2):
                        eta = 0 if case.case_id == 1 else case.nu
                        out[k] += c2 * eps_ijk * anti[a, b, c] * d_ij[eta, c]
                    else:
                        for eta in range(1, 4):
                            out[k] += 1j * c2 * _epsilon(case.mu, case.nu, eta) * eps_ijk * comm[a, b, c] * d_ij[eta, c]
    return out


def _antisymmetrized_integral(grid: ManifoldGrid, coeff: np.ndarray, f: SmoothField, h: SmoothField) -> complex:
    """½ ∫ (f C·∇h − h C·∇f), C (m, 3) aux noeuds"""
    X = grid.embedded_nodes()
    J = grid.embed_jac(grid.nodes)
    grad_f = np.einsum('med,me->md', J, f.grad(X))
    grad_h = np.einsum('med,me->md', J, h.grad(X))
    integrand = 0.5 * (f.f(X) * np.sum(coeff * grad_h, axis=1) - h.f(X) * np.sum(coeff * grad_f, axis=1))
    return fsum_complex(grid.weights * grid.jacobian * integrand)


def schwinger_smeared(case: CurrentCase, inp: SchwingerInputs, a: int, b: int) -> complex:
    """
    ∫ f(x) C_k(x) ∂_k h(x) d³x (∂_k δ reporté sur la fonction test par parties)

    ∂_k C_k = 0 et f, h sont à support compact : on intègre la forme
    ½ ∫ (f C·∇h − h C·∇f), antisymétrique en (f, a) ↔ (h, b) noeud par noeud.
    """
    inp.check_support()
    coeff = schwinger_local_coefficient(case, inp.A, a, b, inp.basis, inp.c2)
    return _antisymmetrized_integral(inp.grid, coeff, inp.f, inp.h)


def mf_value(case: CurrentCase, inp: SchwingerInputs, a: int, b: int) -> complex:
    """θ₂(A; u, v) par le cocycle, u = f(σ_μ⊗τ^a), v = h(σ_ν⊗τ^b)"""
    u = inp.current(inp.f, case.mu, a)
    v = inp.current(inp.h, case.nu, b)
    return mickelsson_faddeev(MFContext(inp.A, inp.c2), u, v)


def mf_cross_check(case: CurrentCase, inp: SchwingerInputs, a: int, b: int) -> float:
    return abs(mf_value(case, inp, a, b) - schwinger_smeared(case, inp, a, b))


# ========== Terme classique (jauge seule) ==========

def gauge_components(A: LieForm, basis: GaugeBasis) -> np.ndarray:
    """A_{I,c} = 2 tr(τ^c A_I)"""
    return 2 * np.einsum('cij,nkji->nkc', basis.generators, A.samples)


def classic_gauge_term(A: LieForm, f: SmoothField, h: SmoothField, a: int, b: int,
                       basis: GaugeBasis, c2: complex = C2) -> complex:
    """c₂ ∫ f tr({τ^a,τ^b}τ^c) ε_{ijk} ∂_i A^c_j ∂_k h, intégré comme schwinger_smeared"""
    _check_indices(basis, a, b)
    grid = A.grid
    dA = gauge_components(exterior_d(A), basis)
    index = {(0, 1): 0, (0, 2): 1, (1, 2): 2}
    curl = np.stack([sign * dA[:, index[(i, j)]] for i, j, sign in CURL_COMPONENTS], axis=1)
    coeff = c2 * np.einsum('mkc,c->mk', curl, trace_anticommutator(basis)[a, b])
    return _antisymmetrized_integral(grid, coeff, f, h)


def tensor_potential_from_gauge(A: LieForm) -> LieForm:
    """I ⊗ A"""
    def lift(values):
        p = values.shape[-1]
        out = np.einsum('ij,...kl->...ikjl', np.eye(2), values)
        return out.reshape(values.shape[:-2] + (2 * p, 2 * p))

    return A.map_values(lift)


def default_support(grid: ManifoldGrid) -> Tuple[Tuple[float, ...], float]:
    """Boule centrée au milieu du tore, rayon 2.8 < π"""
    return (np.pi,) * grid.dim, 2.8


def ratio_to_classic(case1_value: complex, classic_value: complex) -> Optional[complex]:
    if abs(classic_value) == 0:
        return None
    return case1_value / classic_value

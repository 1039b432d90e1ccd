"""
Algèbres de Lie matricielles - générateurs, constantes de structure, d-symboles
et algèbre tensorielle spin ⊗ jauge

Convention : générateurs hermitiens, tr(τ^a τ^b) = ½ δ^{ab},
[τ^a, τ^b] = i λ^{ab}_c τ^c. Les valeurs anti-hermitiennes s'obtiennent avec
to_anti_hermitian (multiplication explicite par i).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from ..core.errors import InconsistentBasisError, InvalidDimensionError, InvariantViolationError

HERMITIAN_TOL = 1e-12
RESIDUAL_TOL = 1e-10

# σ₀ := I puis les matrices de Pauli
SIGMA = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=np.complex128)


def levi_civita(i: int, j: int, k: int) -> int:
    """ε_{ijk} sur {0,1,2} (ou {1,2,3} décalé par l'appelant)"""
    return int((i - j) * (j - k) * (k - i) / 2)


def to_anti_hermitian(matrix: np.ndarray) -> np.ndarray:
    """x ↦ i x : passe de la convention hermitienne à la convention anti-hermitienne"""
    return 1j * np.asarray(matrix)


def gell_mann(p: int) -> np.ndarray:
    """
    Matrices de Gell-Mann généralisées (p² − 1 matrices p×p).

    Ordre : pour chaque colonne k = 1..p−1, les paires (j, k), j < k, en
    symétrique puis antisymétrique, suivies de la diagonale k. Pour p = 3 on
    retrouve λ1..λ8, pour p = 2 les matrices de Pauli.
    """
    if p < 2:
        raise InvalidDimensionError(f"p doit être >= 2 (reçu {p})")

    mats = []
    for k in range(1, p):
        for j in range(k):
            sym = np.zeros((p, p), dtype=np.complex128)
            sym[j, k] = sym[k, j] = 1
            mats.append(sym)

            anti = np.zeros((p, p), dtype=np.complex128)
            anti[j, k] = -1j
            anti[k, j] = 1j
            mats.append(anti)

        diag = np.zeros(p, dtype=np.complex128)
        diag[:k] = 1
        diag[k] = -k
        mats.append(np.sqrt(2.0 / (k * (k + 1))) * np.diag(diag))

    return np.array(mats)


def structure_constants(generators: np.ndarray) -> np.ndarray:
    """
    λ^{ab}_c = −2i tr([τ^a, τ^b] τ^c).

    Les parties imaginaires résiduelles (< 1e-10) sont vérifiées puis écartées.
    """
    comm = np.einsum('aij,bjk->abik', generators, generators) - np.einsum('bij,ajk->abik', generators, generators)
    lam = -2j * np.einsum('abij,cji->abc', comm, generators)
    residual = np.max(np.abs(lam.imag)) if lam.size else 0.0
    if residual > RESIDUAL_TOL:
        raise InconsistentBasisError(f"Constantes de structure non réelles (résidu {residual:.2e})")
    return np.ascontiguousarray(lam.real)


def d_symbols(generators: np.ndarray) -> np.ndarray:
    """
    d_{abc} = 2 tr({τ^a, τ^b} τ^c) : coefficients de {τ^a, τ^b} dans la base.

    Avec cette normalisation {τ^a, τ^b} = d_{abc} τ^c en u(p) et d_118 = 1/√3
    en su(3).
    """
    anti = np.einsum('aij,bjk->abik', generators, generators) + np.einsum('bij,ajk->abik', generators, generators)
    dsym = 2 * np.einsum('abij,cji->abc', anti, generators)
    residual = np.max(np.abs(dsym.imag)) if dsym.size else 0.0
    if residual > RESIDUAL_TOL:
        raise InconsistentBasisError(f"d-symboles non réels (résidu {residual:.2e})")
    return np.ascontiguousarray(dsym.real)


@dataclass(frozen=True, eq=False)
class GaugeBasis:
    """Base de générateurs de su(p) ou u(p) avec ses tables λ et d"""
    p: int
    kind: str  # 'su' ou 'u'
    generators: np.ndarray
    lam: np.ndarray
    dsym: np.ndarray

    @property
    def dim(self) -> int:
        return self.generators.shape[0]

    def element(self, coeffs) -> np.ndarray:
        """Σ c_a τ^a"""
        return np.tensordot(np.asarray(coeffs), self.generators, axes=([-1], [0]))

    def decompose(self, matrix: np.ndarray) -> np.ndarray:
        """c_a = 2 tr(τ^a M) ; exact pour u(p), projection sur su(p) sinon"""
        return 2 * np.einsum('aij,...ji->...a', self.generators, np.asarray(matrix))

    def spans(self, matrix: np.ndarray, tol: float = RESIDUAL_TOL) -> bool:
        rebuilt = self.element(self.decompose(matrix))
        return float(np.max(np.abs(rebuilt - matrix))) <= tol

    def normalization_residual(self) -> float:
        gram = np.einsum('aij,bji->ab', self.generators, self.generators)
        return float(np.max(np.abs(gram - 0.5 * np.eye(self.dim))))

    def reconstruction_residual(self) -> float:
        """max |[τ^a,τ^b] − i λ^{ab}_c τ^c|"""
        direct = np.einsum('aij,bjk->abik', self.generators, self.generators) \
            - np.einsum('bij,ajk->abik', self.generators, self.generators)
        rebuilt = 1j * np.einsum('abc,cij->abij', self.lam, self.generators)
        return float(np.max(np.abs(direct - rebuilt)))


@lru_cache(maxsize=None)
def build_gauge_basis(p: int, kind: str = 'su') -> GaugeBasis:
    """
    Base normalisée tr(τ^a τ^b) = ½ δ^{ab}.

    kind='su' : τ^a = λ_a / 2 (Gell-Mann). kind='u' : τ⁰ = I/√(2p) en tête.
    """
    if p < 2:
        raise InvalidDimensionError(f"p doit être >= 2 (reçu {p})")
    if kind not in ('su', 'u'):
        raise InvalidDimensionError(f"Type d'algèbre inconnu: {kind}")

    gens = gell_mann(p) / 2
    if kind == 'u':
        identity = np.eye(p, dtype=np.complex128) / np.sqrt(2 * p)
        gens = np.concatenate([identity[None], gens], axis=0)
    gens.setflags(write=False)

    basis = GaugeBasis(p=p, kind=kind, generators=gens, lam=structure_constants(gens), dsym=d_symbols(gens))

    for tau in gens:
        if np.max(np.abs(tau - tau.conj().T)) > HERMITIAN_TOL:
            raise InconsistentBasisError("Générateur non hermitien")
    if basis.normalization_residual() > HERMITIAN_TOL:
        raise InconsistentBasisError("Normalisation tr(τ^a τ^b) = ½δ violée")
    return basis


def jacobi_residual(basis: GaugeBasis) -> float:
    """max |λ^{ab}_e λ^{ec}_d + λ^{bc}_e λ^{ea}_d + λ^{ca}_e λ^{eb}_d|"""
    lam = basis.lam
    total = (np.einsum('abe,ecd->abcd', lam, lam)
             + np.einsum('bce,ead->abcd', lam, lam)
             + np.einsum('cae,ebd->abcd', lam, lam))
    return float(np.max(np.abs(total))) if total.size else 0.0


def anticommutator_closure_residual(basis: GaugeBasis) -> float:
    """max |{τ^a,τ^b} − d_{abc} τ^c| (nul pour u(p))"""
    gens = basis.generators
    anti = np.einsum('aij,bjk->abik', gens, gens) + np.einsum('bij,ajk->abik', gens, gens)
    rebuilt = np.einsum('abc,cij->abij', basis.dsym, gens)
    return float(np.max(np.abs(anti - rebuilt)))


# ========== Algèbre tensorielle σ_μ ⊗ τ^a ==========

@lru_cache(maxsize=None)
def tensor_generators(basis: GaugeBasis) -> np.ndarray:
    """σ_μ ⊗ τ^a, tableau (4, dim, 2p, 2p)"""
    out = np.einsum('mij,akl->maikjl', SIGMA, basis.generators)
    n = 2 * basis.p
    out = out.reshape(4, basis.dim, n, n)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class TensorElement:
    """
    Élément Σ x^μ_a (σ_μ ⊗ τ^a) + Σ y^μ (σ_μ ⊗ I) de l'algèbre tensorielle.

    La partie identity (y^μ) n'est non nulle que pour une base su(p) : c'est
    la composante σ_η ⊗ I qui sort de la base (cas 3 avec a = b).
    """
    coeffs: np.ndarray                      # (4, dim)
    basis: GaugeBasis
    identity: Optional[np.ndarray] = None   # (4,)

    @property
    def identity_part(self) -> np.ndarray:
        if self.identity is None:
            return np.zeros(4, dtype=np.complex128)
        return np.asarray(self.identity, dtype=np.complex128)

    @property
    def has_identity(self) -> bool:
        return bool(np.max(np.abs(self.identity_part)) > RESIDUAL_TOL)

    @property
    def realized(self) -> np.ndarray:
        inside = np.einsum('ma,maij->ij', self.coeffs, tensor_generators(self.basis))
        return inside + np.kron(np.einsum('m,mij->ij', self.identity_part, SIGMA), np.eye(self.basis.p))

    def extended(self) -> Tuple[np.ndarray, np.ndarray]:
        """Coefficients (4, dim+1) et générateurs de jauge (dim+1, p, p), I en dernier"""
        coeffs = np.concatenate([self.coeffs, self.identity_part[:, None]], axis=1)
        gens = np.concatenate([self.basis.generators, np.eye(self.basis.p)[None]], axis=0)
        return coeffs, gens

    @classmethod
    def unit(cls, basis: GaugeBasis, mu: int, a: int) -> 'TensorElement':
        coeffs = np.zeros((4, basis.dim), dtype=np.complex128)
        coeffs[mu, a] = 1
        return cls(coeffs=coeffs, basis=basis)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, basis: GaugeBasis, with_identity: bool = False) -> 'TensorElement':
        """
        Décomposition via tr((σ_μ⊗τ^a)(σ_ν⊗τ^b)) = δ_{μν} δ^{ab}.

        with_identity : pour su(p), la composante σ_μ ⊗ I est extraite
        (tr((σ_μ⊗I)(σ_ν⊗I)) = 2p δ_{μν}). Sinon InconsistentBasisError si la
        matrice sort de l'espace engendré.
        """
        matrix = np.asarray(matrix)
        identity = None
        if with_identity and basis.kind == 'su':
            spin_identity = np.einsum('mij,kl->mikjl', SIGMA, np.eye(basis.p)).reshape(4, 2 * basis.p, 2 * basis.p)
            identity = np.einsum('mij,ji->m', spin_identity, matrix) / (2 * basis.p)
        element = cls(coeffs=decompose_tensor(matrix, basis), basis=basis, identity=identity)
        residual = float(np.max(np.abs(element.realized - matrix)))
        if residual > RESIDUAL_TOL:
            raise InconsistentBasisError(
                f"Matrice hors de la base {basis.kind}({basis.p}) ⊗ spin (résidu {residual:.2e}); utiliser u(p)"
            )
        return element


def decompose_tensor(matrix: np.ndarray, basis: GaugeBasis) -> np.ndarray:
    """x^μ_a = tr((σ_μ ⊗ τ^a) M), tableau (..., 4, dim)"""
    return np.einsum('maij,...ji->...ma', tensor_generators(basis), np.asarray(matrix))


def tensor_commutator(x: TensorElement, y: TensorElement) -> TensorElement:
    """
    [X, Y] par la forme scindée :
    [x_s ⊗ x^t, y_s ⊗ y^t] = [x_s, y_s] ⊗ x^t y^t + y_s x_s ⊗ [x^t, y^t].

    Le résultat est comparé au commutateur matriciel direct (2p × 2p). Pour
    su(p), une composante σ_η ⊗ I éventuelle est rendue dans `identity`.
    """
    if x.basis is not y.basis and (x.basis.p, x.basis.kind) != (y.basis.p, y.basis.kind):
        raise InvalidDimensionError("Éléments tensoriels sur des bases différentes")
    basis = x.basis
    x_coeffs, gens = x.extended()
    y_coeffs, _ = y.extended()

    spin_comm = np.einsum('mij,njk->mnik', SIGMA, SIGMA) - np.einsum('nij,mjk->mnik', SIGMA, SIGMA)
    spin_rev = np.einsum('nij,mjk->mnik', SIGMA, SIGMA)
    gauge_prod = np.einsum('aij,bjk->abik', gens, gens)
    gauge_comm = gauge_prod - np.einsum('bij,ajk->abik', gens, gens)

    weights = np.einsum('ma,nb->mnab', x_coeffs, y_coeffs)
    split = (np.einsum('mnab,mnij,abkl->ikjl', weights, spin_comm, gauge_prod)
             + np.einsum('mnab,mnij,abkl->ikjl', weights, spin_rev, gauge_comm))
    n = 2 * basis.p
    split = split.reshape(n, n)

    X, Y = x.realized, y.realized
    direct = X @ Y - Y @ X
    residual = float(np.max(np.abs(split - direct)))
    if residual > RESIDUAL_TOL:
        raise InvariantViolationError(f"Forme scindée ≠ commutateur direct (résidu {residual:.2e})")

    return TensorElement.from_matrix(split, basis, with_identity=True)


def tensor_round_trip_residual(coeffs: np.ndarray, basis: GaugeBasis) -> float:
    element = TensorElement(coeffs=np.asarray(coeffs, dtype=np.complex128), basis=basis)
    return float(np.max(np.abs(decompose_tensor(element.realized, basis) - element.coeffs)))


def spin_product_residual() -> float:
    """σ_μ σ_ν = δ_{μν} σ₀ + i ε_{μνη} σ_η pour μ, ν ∈ {1,2,3}"""
    worst = 0.0
    for mu in range(1, 4):
        for nu in range(1, 4):
            expected = (mu == nu) * SIGMA[0] + sum(
                1j * levi_civita(mu - 1, nu - 1, eta - 1) * SIGMA[eta] for eta in range(1, 4)
            )
            worst = max(worst, float(np.max(np.abs(SIGMA[mu] @ SIGMA[nu] - expected))))
    return worst

"""
Opérateur de Dirac D_A = −i d/dθ + A(θ) sur S¹ en troncature de Fourier

Base e^{inθ}, |n| ≤ N, tensorisée par ℂ^p. Les coefficients de Fourier du
potentiel sont obtenus par FFT sur M ≥ 4N + 1 points :
    ⟨m|D_A|n⟩ = n δ_{mn} I_p + Â_{m−n}
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh

from ..core.errors import GapResolutionError, InvariantViolationError, SpectrumHitError

Potential = Callable[[np.ndarray], np.ndarray]   # θ (M,) -> (M, p, p) hermitien

HERMITIAN_TOL = 1e-12
GAP_TOL = 1e-8
DEGENERATE_SPACING = 1e-9
MAX_REFINEMENT = 12


@dataclass(frozen=True, eq=False)
class FourierDirac:
    N: int
    p: int
    potential: Potential
    matrix: np.ndarray

    @property
    def size(self) -> int:
        return (2 * self.N + 1) * self.p

    def eigenvalues(self) -> np.ndarray:
        return eigh(self.matrix, eigvals_only=True)

    def central_window(self, fraction: float = 0.5) -> np.ndarray:
        """Valeurs propres |λ| ≤ fraction·N, peu affectées par la troncature"""
        eigs = self.eigenvalues()
        return eigs[np.abs(eigs) <= fraction * self.N]


def fourier_samples(N: int) -> int:
    return max(4 * N + 1, 64)


def constant_potential(value: np.ndarray) -> Potential:
    value = np.atleast_2d(np.asarray(value, dtype=np.complex128))
    return lambda theta: np.broadcast_to(value, (len(theta),) + value.shape).copy()


def assemble(A: Potential, N: int, samples: Optional[int] = None) -> FourierDirac:
    M = samples or fourier_samples(N)
    if M < 4 * N + 1:
        raise InvariantViolationError(f"{M} points de Fourier < 4N+1 = {4 * N + 1}")
    theta = 2 * np.pi * np.arange(M) / M
    values = np.asarray(A(theta), dtype=np.complex128)
    if values.ndim == 1:
        values = values[:, None, None]
    p = values.shape[-1]
    herm = float(np.max(np.abs(values - np.swapaxes(values.conj(), -1, -2))))
    if herm > HERMITIAN_TOL:
        raise InvariantViolationError(f"Potentiel non hermitien (écart {herm:.2e})")

    coeffs = np.fft.fft(values, axis=0) / M      # Â_k à l'indice k mod M
    modes = np.arange(-N, N + 1)
    size = (2 * N + 1) * p
    matrix = np.zeros((size, size), dtype=np.complex128)
    for i, m in enumerate(modes):
        for j, n in enumerate(modes):
            block = coeffs[(m - n) % M].copy()
            if m == n:
                block = block + n * np.eye(p)
            matrix[i * p:(i + 1) * p, j * p:(j + 1) * p] = block

    asym = float(np.max(np.abs(matrix - matrix.conj().T)))
    if asym > HERMITIAN_TOL:
        raise InvariantViolationError(f"Matrice assemblée non hermitienne (écart {asym:.2e})")
    return FourierDirac(N=N, p=p, potential=A, matrix=matrix)


# ========== Jauges sur le cercle ==========

@dataclass(frozen=True)
class Loop:
    """g : S¹ → U(p) et sa dérivée g′"""
    g: Callable[[np.ndarray], np.ndarray]
    dg: Callable[[np.ndarray], np.ndarray]

    @classmethod
    def winding(cls, n: int, p: int = 1) -> 'Loop':
        """g = e^{inθ} I_p"""
        return cls(
            g=lambda t: np.exp(1j * n * t)[:, None, None] * np.eye(p),
            dg=lambda t: (1j * n * np.exp(1j * n * t))[:, None, None] * np.eye(p),
        )

    @classmethod
    def phase(cls, phi: Callable, dphi: Callable, p: int = 1) -> 'Loop':
        """g = e^{iφ(θ)} I_p"""
        return cls(
            g=lambda t: np.exp(1j * phi(t))[:, None, None] * np.eye(p),
            dg=lambda t: (1j * dphi(t) * np.exp(1j * phi(t)))[:, None, None] * np.eye(p),
        )

    @classmethod
    def identity(cls, p: int = 1) -> 'Loop':
        return cls.winding(0, p)


def pure_gauge_potential(loop: Loop) -> Potential:
    """−i g⁻¹ g′ (hermitien)"""
    def potential(theta):
        g = loop.g(theta)
        return -1j * np.swapaxes(g.conj(), -1, -2) @ loop.dg(theta)
    return potential


def gauge_transformed(A: Potential, loop: Loop) -> Potential:
    """A^g = g⁻¹Ag − i g⁻¹g′, de sorte que g⁻¹ D_A g = D_{A^g}"""
    inhomogeneous = pure_gauge_potential(loop)

    def potential(theta):
        g = loop.g(theta)
        g_inv = np.swapaxes(g.conj(), -1, -2)
        return g_inv @ A(theta) @ g + inhomogeneous(theta)
    return potential


def winding_of_loop(loop: Loop, samples: int = 512) -> int:
    """Nombre d'enroulement de det g"""
    theta = 2 * np.pi * np.arange(samples + 1) / samples
    phase = np.unwrap(np.angle(np.linalg.det(loop.g(theta))))
    return int(round((phase[-1] - phase[0]) / (2 * np.pi)))


def gauge_covariance_check(op: FourierDirac, loop: Loop, fraction: float = 0.5) -> float:
    """Distance spectrale entre D_A et D_{A^g} dans la fenêtre centrale"""
    transformed = assemble(gauge_transformed(op.potential, loop), op.N)
    window = fraction * op.N
    a = op.eigenvalues()
    b = transformed.eigenvalues()
    inner = 0.8 * window
    # chaque valeur de la fenêtre intérieure doit avoir sa partenaire dans la fenêtre élargie
    a_in, b_in = a[np.abs(a) <= inner], b[np.abs(b) <= inner]
    a_wide, b_wide = a[np.abs(a) <= window], b[np.abs(b) <= window]
    return max(set_distance_one_sided(a_in, b_wide), set_distance_one_sided(b_in, a_wide))


def set_distance_one_sided(a: np.ndarray, b: np.ndarray) -> float:
    if len(a) == 0:
        return 0.0
    if len(b) == 0:
        return float('inf')
    return float(np.abs(a[:, None] - b[None, :]).min(axis=1).max())


def truncation_convergence(A: Potential, N: int, fraction: float = 0.25) -> float:
    """Variation des valeurs propres centrales quand N double"""
    small = assemble(A, N).eigenvalues()
    large = assemble(A, 2 * N).eigenvalues()
    window = fraction * N
    return max(
        set_distance_one_sided(small[np.abs(small) <= window], large),
        set_distance_one_sided(large[np.abs(large) <= window], small),
    )


# ========== Décomposition spectrale et dimensions ==========

@dataclass(frozen=True)
class SpectralSlice:
    lambda_ref: float
    dims: Tuple[int, int]       # (en dessous, au-dessus) dans la troncature


def _check_gap(eigs: np.ndarray, value: float, gap_tol: float):
    distance = float(np.min(np.abs(eigs - value)))
    if distance < gap_tol:
        raise SpectrumHitError(f"{value} à {distance:.2e} du spectre (tolérance {gap_tol})")


def spectral_slice(op: FourierDirac, lambda_ref: float, gap_tol: float = GAP_TOL) -> SpectralSlice:
    eigs = op.eigenvalues()
    _check_gap(eigs, lambda_ref, gap_tol)
    below = int(np.sum(eigs < lambda_ref))
    return SpectralSlice(lambda_ref=lambda_ref, dims=(below, len(eigs) - below))


def window_dimension(eigs: np.ndarray, low: float, high: float) -> int:
    """dim V_{(A, low, high)} : nombre de valeurs propres dans ]low, high["""
    return int(np.sum((eigs > low) & (eigs < high)))


@dataclass(frozen=True)
class DetDimensionReport:
    references: Tuple[float, float, float]
    dims: Tuple[int, int, int]      # (λ,η), (η,μ), (λ,μ)

    @property
    def additive(self) -> bool:
        return self.dims[0] + self.dims[1] == self.dims[2]


def det_dimension_cocycle(op: FourierDirac, lam: float, eta: float, mu: float,
                          gap_tol: float = GAP_TOL) -> DetDimensionReport:
    """dim V_{λ,η} + dim V_{η,μ} = dim V_{λ,μ} par comptage"""
    if not lam <= eta <= mu:
        raise InvariantViolationError(f"Références non ordonnées : {lam}, {eta}, {mu}")
    eigs = op.eigenvalues()
    for value in (lam, eta, mu):
        _check_gap(eigs, value, gap_tol)
    dims = (window_dimension(eigs, lam, eta), window_dimension(eigs, eta, mu), window_dimension(eigs, lam, mu))
    return DetDimensionReport(references=(lam, eta, mu), dims=dims)


def gap_midpoints(eigs: np.ndarray, window: float, count: Optional[int] = None) -> np.ndarray:
    """Milieux des plus grands trous spectraux dans |λ| ≤ window, triés"""
    inside = np.sort(eigs[np.abs(eigs) <= window])
    if len(inside) < 2:
        return np.array([])
    gaps = np.diff(inside)
    mids = 0.5 * (inside[1:] + inside[:-1])
    keep = gaps > DEGENERATE_SPACING
    mids, gaps = mids[keep], gaps[keep]
    order = np.argsort(-gaps, kind='stable')
    chosen = mids[order] if count is None else mids[order[:count]]
    return np.sort(chosen)


# ========== Flot spectral ==========

PotentialPath = Callable[[float], Potential]


@dataclass
class FlowResult:
    flow: int
    steps: int
    refinements: int = 0
    crossings: List[Tuple[float, int]] = field(default_factory=list)


def _spectrum(path: PotentialPath, t: float, N: int) -> np.ndarray:
    return assemble(path(t), N).eigenvalues()


def _local_gap(eigs: np.ndarray) -> float:
    spacing = np.diff(np.sort(eigs))
    spacing = spacing[spacing > DEGENERATE_SPACING]
    return float(spacing.min()) if len(spacing) else float('inf')


def spectral_flow(path: PotentialPath, lambda_ref: float, steps: int, N: int,
                  window: Optional[float] = None, max_refinement: int = MAX_REFINEMENT) -> FlowResult:
    """
    Nombre algébrique de valeurs propres traversant lambda_ref quand t va de 0 à 1
    (+1 en montant). Appariement des spectres triés entre pas consécutifs ;
    un pas est subdivisé tant que le déplacement dépasse la moitié du trou local.
    """
    if steps < 1:
        raise InvariantViolationError("steps doit être >= 1")
    half_window = window if window is not None else 0.5 * N
    result = FlowResult(flow=0, steps=0)

    def near(eigs):
        return np.abs(eigs - lambda_ref) <= half_window

    def advance(t0: float, t1: float, e0: np.ndarray, e1: np.ndarray, depth: int):
        mask = near(e0) | near(e1)
        displacement = float(np.max(np.abs(e1[mask] - e0[mask]))) if np.any(mask) else 0.0
        gap = min(_local_gap(e0[near(e0)]), _local_gap(e1[near(e1)]))
        if displacement > 0.5 * gap:
            if depth >= max_refinement:
                raise GapResolutionError(
                    f"Déplacement {displacement:.3g} > trou/2 {0.5 * gap:.3g} après {depth} raffinements",
                    interval=(t0, t1),
                )
            mid = 0.5 * (t0 + t1)
            em = _spectrum(path, mid, N)
            result.refinements += 1
            advance(t0, mid, e0, em, depth + 1)
            advance(mid, t1, em, e1, depth + 1)
            return
        result.steps += 1
        up = int(np.sum((e0[mask] < lambda_ref) & (e1[mask] >= lambda_ref)))
        down = int(np.sum((e0[mask] >= lambda_ref) & (e1[mask] < lambda_ref)))
        if up or down:
            result.crossings.append((t1, up - down))
        result.flow += up - down

    times = np.linspace(0.0, 1.0, steps + 1)
    spectra = [_spectrum(path, t, N) for t in times]
    for i in range(steps):
        advance(float(times[i]), float(times[i + 1]), spectra[i], spectra[i + 1], 0)
    return result


def shifted_constant_path(a0: float, shift: float, p: int = 1) -> PotentialPath:
    """A_t ≡ (a0 + t·shift) I_p"""
    return lambda t: constant_potential((a0 + t * shift) * np.eye(p))


def winding_path(A: Potential, n: int, p: int = 1) -> PotentialPath:
    """A_t = A + t·(−i g⁻¹g′), g = e^{inθ}"""
    increment = pure_gauge_potential(Loop.winding(n, p))
    return lambda t: (lambda theta: A(theta) + t * increment(theta))


def smooth_random_potential(rng: np.random.Generator, p: int = 1, modes: int = 3, scale: float = 0.3) -> Potential:
    """Potentiel hermitien trigonométrique aléatoire"""
    coeffs = rng.normal(size=(modes + 1, 2, p, p)) + 1j * rng.normal(size=(modes + 1, 2, p, p))
    coeffs = scale * 0.5 * (coeffs + np.swapaxes(coeffs.conj(), -1, -2))

    def potential(theta):
        out = np.zeros((len(theta), p, p), dtype=np.complex128)
        for k in range(modes + 1):
            out += np.cos(k * theta)[:, None, None] * coeffs[k, 0]
            out += np.sin(k * theta)[:, None, None] * coeffs[k, 1]
        return out

    return potential

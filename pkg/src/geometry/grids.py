"""
Grilles de quadrature sur S¹, S², S³, B³, T³ (et produits)

Chaque grille porte ses noeuds en coordonnées (angles, rayon), les poids de
quadrature en coordonnées, la densité de volume (jacobien) et le plongement
dans un espace euclidien avec sa matrice jacobienne, ce qui permet de
construire des champs lisses à partir des coordonnées plongées.

Orientation : l'ordre des coordonnées (ψ, θ, φ) sur S³, (r, θ, φ) sur B³,
(θ, φ) sur S². Le bord de B³ hérite de l'orientation sortante.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import roots_legendre

from ..core.errors import GridMismatchError

KNOWN_VOLUMES = {
    'S1': 2 * np.pi,
    'S2': 4 * np.pi,
    'S3': 2 * np.pi ** 2,
    'B3': 4 * np.pi / 3,
    'T3': (2 * np.pi) ** 3,
}


@dataclass(frozen=True, eq=False)
class ManifoldGrid:
    """Grille de quadrature sur un domaine paramétré"""
    manifold: str
    order: int
    nodes: np.ndarray          # (n, D)
    weights: np.ndarray        # (n,) poids en coordonnées
    jacobian: np.ndarray       # (n,) densité de volume riemannienne
    embed: Callable[[np.ndarray], np.ndarray]          # q (m, D) -> X (m, E)
    embed_jac: Callable[[np.ndarray], np.ndarray]      # q (m, D) -> dX/dq (m, E, D)
    boundary: Optional['ManifoldGrid'] = None

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.embed(self.nodes[:1]).shape[1]

    def volume(self) -> float:
        return float(np.sum(self.weights * self.jacobian))

    def volume_residual(self) -> float:
        return abs(self.volume() - KNOWN_VOLUMES[self.manifold])

    def embedded_nodes(self) -> np.ndarray:
        return self.embed(self.nodes)


def _gauss(n: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def _periodic(n: int, length: float = 2 * np.pi) -> Tuple[np.ndarray, np.ndarray]:
    return np.arange(n) * (length / n), np.full(n, length / n)


def _tensor(*axes: Tuple[np.ndarray, np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    """Produit tensoriel, le dernier axe variant le plus vite"""
    mesh = np.meshgrid(*[a[0] for a in axes], indexing='ij')
    wmesh = np.meshgrid(*[a[1] for a in axes], indexing='ij')
    nodes = np.stack([m.ravel() for m in mesh], axis=1)
    weights = np.prod(np.stack([w.ravel() for w in wmesh], axis=1), axis=1)
    return nodes, weights


# ========== Plongements ==========

def _circle_embed(q):
    return np.stack([np.cos(q[:, 0]), np.sin(q[:, 0])], axis=1)


def _circle_jac(q):
    return np.stack([-np.sin(q[:, 0]), np.cos(q[:, 0])], axis=1)[:, :, None]


def _sphere2_embed(q):
    th, ph = q[:, 0], q[:, 1]
    return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=1)


def _sphere2_jac(q):
    th, ph = q[:, 0], q[:, 1]
    d_th = np.stack([np.cos(th) * np.cos(ph), np.cos(th) * np.sin(ph), -np.sin(th)], axis=1)
    d_ph = np.stack([-np.sin(th) * np.sin(ph), np.sin(th) * np.cos(ph), np.zeros_like(th)], axis=1)
    return np.stack([d_th, d_ph], axis=2)


def _sphere3_embed(q):
    ps, th, ph = q[:, 0], q[:, 1], q[:, 2]
    return np.stack([
        np.cos(ps),
        np.sin(ps) * np.cos(th),
        np.sin(ps) * np.sin(th) * np.cos(ph),
        np.sin(ps) * np.sin(th) * np.sin(ph),
    ], axis=1)


def _sphere3_jac(q):
    ps, th, ph = q[:, 0], q[:, 1], q[:, 2]
    zero = np.zeros_like(ps)
    d_ps = np.stack([-np.sin(ps), np.cos(ps) * np.cos(th),
                     np.cos(ps) * np.sin(th) * np.cos(ph), np.cos(ps) * np.sin(th) * np.sin(ph)], axis=1)
    d_th = np.stack([zero, -np.sin(ps) * np.sin(th),
                     np.sin(ps) * np.cos(th) * np.cos(ph), np.sin(ps) * np.cos(th) * np.sin(ph)], axis=1)
    d_ph = np.stack([zero, zero,
                     -np.sin(ps) * np.sin(th) * np.sin(ph), np.sin(ps) * np.sin(th) * np.cos(ph)], axis=1)
    return np.stack([d_ps, d_th, d_ph], axis=2)


def _ball_embed(q):
    return q[:, :1] * _sphere2_embed(q[:, 1:])


def _ball_jac(q):
    r = q[:, 0]
    unit = _sphere2_embed(q[:, 1:])
    angular = r[:, None, None] * _sphere2_jac(q[:, 1:])
    return np.concatenate([unit[:, :, None], angular], axis=2)


def _identity_embed(q):
    return np.array(q, dtype=float)


def _identity_jac(q):
    m, d = q.shape
    return np.broadcast_to(np.eye(d), (m, d, d)).copy()


# ========== Constructeurs ==========

def circle_grid(order: int) -> ManifoldGrid:
    """S¹ : règle des trapèzes à 2·order noeuds (spectrale pour les données périodiques)"""
    nodes, weights = _periodic(2 * order)
    return ManifoldGrid('S1', order, nodes[:, None], weights, np.ones_like(weights), _circle_embed, _circle_jac)


def sphere2_grid(order: int, theta_range: Tuple[float, float] = (0.0, np.pi)) -> ManifoldGrid:
    """
    S² : Gauss-Legendre en θ × trapèzes en φ, jacobien sin θ.

    theta_range restreint à une calotte (cartes nord/sud du monopôle).
    """
    nodes, weights = _tensor(_gauss(order, *theta_range), _periodic(2 * order))
    name = 'S2' if theta_range == (0.0, np.pi) else 'S2cap'
    return ManifoldGrid(name, order, nodes, weights, np.sin(nodes[:, 0]), _sphere2_embed, _sphere2_jac)


def sphere3_grid(order: int) -> ManifoldGrid:
    """S³ : coordonnées hypersphériques (ψ, θ, φ), jacobien sin²ψ sin θ"""
    nodes, weights = _tensor(_gauss(order, 0.0, np.pi), _gauss(order, 0.0, np.pi), _periodic(2 * order))
    jac = np.sin(nodes[:, 0]) ** 2 * np.sin(nodes[:, 1])
    return ManifoldGrid('S3', order, nodes, weights, jac, _sphere3_embed, _sphere3_jac)


def ball3_grid(order: int) -> ManifoldGrid:
    """B³ unité : rayon (Gauss) × S², bord relié à une grille S² de même ordre"""
    nodes, weights = _tensor(_gauss(order, 0.0, 1.0), _gauss(order, 0.0, np.pi), _periodic(2 * order))
    jac = nodes[:, 0] ** 2 * np.sin(nodes[:, 1])
    return ManifoldGrid('B3', order, nodes, weights, jac, _ball_embed, _ball_jac, boundary=sphere2_grid(order))


def torus3_grid(order: int) -> ManifoldGrid:
    """T³ plat [0, 2π)³, carte unique (substitut local pour les termes de Schwinger)"""
    axis = _periodic(order)
    nodes, weights = _tensor(axis, axis, axis)
    return ManifoldGrid('T3', order, nodes, weights, np.ones_like(weights), _identity_embed, _identity_jac)


def product_grid(a: ManifoldGrid, b: ManifoldGrid) -> ManifoldGrid:
    """M × N : coordonnées et plongements concaténés (ex. S³ × S² pour CS₅)"""
    na, nb = a.size, b.size
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    da = a.dim
    ea = a.ambient_dim

    def embed(q):
        return np.concatenate([a.embed(q[:, :da]), b.embed(q[:, da:])], axis=1)

    def embed_jac(q):
        ja, jb = a.embed_jac(q[:, :da]), b.embed_jac(q[:, da:])
        m = q.shape[0]
        out = np.zeros((m, ea + jb.shape[1], da + jb.shape[2]))
        out[:, :ea, :da] = ja
        out[:, ea:, da:] = jb
        return out

    return ManifoldGrid(
        manifold=f'{a.manifold}x{b.manifold}',
        order=min(a.order, b.order),
        nodes=np.concatenate([a.nodes[ia], b.nodes[ib]], axis=1),
        weights=a.weights[ia] * b.weights[ib],
        jacobian=a.jacobian[ia] * b.jacobian[ib],
        embed=embed,
        embed_jac=embed_jac,
    )


GRID_BUILDERS = {
    'S1': circle_grid,
    'S2': sphere2_grid,
    'S3': sphere3_grid,
    'B3': ball3_grid,
    'T3': torus3_grid,
}


def build_grid(manifold: str, order: int) -> ManifoldGrid:
    try:
        builder = GRID_BUILDERS[manifold]
    except KeyError:
        raise GridMismatchError(f"Variété inconnue : {manifold} (connues : {', '.join(GRID_BUILDERS)})")
    return builder(order)


def refine(grid: ManifoldGrid, factor: int = 2) -> ManifoldGrid:
    """Même variété, ordre multiplié (contrôle de convergence)"""
    return build_grid(grid.manifold, grid.order * factor)

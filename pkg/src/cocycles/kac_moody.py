"""
Cocycle de Kac-Moody sur l'algèbre des lacets : κ(u, v) = k ∫_{S¹} tr u dv
"""

from ..core.errors import GridMismatchError
from ..geometry.forms import LieForm, commutator_0, exterior_d, product_wedge, trace_integral


def _require_circle(*forms: LieForm):
    for f in forms:
        if f.grid.manifold != 'S1':
            raise GridMismatchError(f"Kac-Moody attend des lacets sur S¹ (reçu {f.grid.manifold})")


def kac_moody(u: LieForm, v: LieForm, k: complex = 1.0) -> complex:
    """k · ∫ tr(u ∧ dv)"""
    _require_circle(u, v)
    return k * trace_integral(product_wedge(u, exterior_d(v)))


def km_cocycle_residual(u: LieForm, v: LieForm, w: LieForm, k: complex = 1.0) -> complex:
    """κ([u,v],w) + κ([v,w],u) + κ([w,u],v), nul pour un 2-cocycle"""
    _require_circle(u, v, w)
    return (kac_moody(commutator_0(u, v), w, k)
            + kac_moody(commutator_0(v, w), u, k)
            + kac_moody(commutator_0(w, u), v, k))


def km_antisymmetry_residual(u: LieForm, v: LieForm, k: complex = 1.0) -> complex:
    return kac_moody(u, v, k) + kac_moody(v, u, k)

"""Schouten-van Kampen connections adapted to (H, V) = (ker eta, span xi).

For a Levi-Civita connection D of a metric m (g or g~) the adapted
connection is ``D||_x y = (D_x y^h)^h + (D_x y^v)^v``, equivalently
``D_x y - eta(y) D_x xi + (D_x eta)(y) xi``.  Both forms are computed and
compared, for the pair built from nabla and nabla~.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lie_frame import Connection, LieFrame, covariant_derivative, d_one_form, torsion
from .scalar_tensor import Tensor, TensorError, _array_equal, _normalize, is_zero
from .structure import ApaprInstance

__all__ = [
    "SvkError",
    "SvkSide",
    "SvkPair",
    "build_svk",
    "cartan_bijection",
    "lower_first",
    "hv_components",
    "svk_phi_derivative",
    "coincidence_predicates",
    "structure_preservation",
    "PhiDerivatives",
]


class SvkError(ValueError):
    pass


@dataclass(frozen=True)
class SvkSide:
    """The adapted connection of one metric together with its derived data."""

    levi_civita: Connection
    metric: Tensor
    connection: Connection
    potential: Tensor  # Q(x,y) = D||_x y - D_x y, (1,2)
    torsion: Tensor  # (1,2)
    shape: Tensor  # S(x) = -D_x xi, (1,1) as [k, x]
    shape_flat: Tensor  # S_flat(x,y) = m(S(x), y)

    def lowered(self, t: Tensor) -> Tensor:
        return lower_first(t, self.metric)


@dataclass(frozen=True)
class SvkPair:
    g_side: SvkSide
    tilde_side: SvkSide

    @property
    def nabla_par(self) -> Connection:
        return self.g_side.connection

    @property
    def nabla_tilde_par(self) -> Connection:
        return self.tilde_side.connection

    @property
    def Q_par(self) -> Tensor:
        return self.g_side.potential

    @property
    def Q_tilde_par(self) -> Tensor:
        return self.tilde_side.potential

    @property
    def T_par(self) -> Tensor:
        return self.g_side.torsion

    @property
    def T_tilde_par(self) -> Tensor:
        return self.tilde_side.torsion

    @property
    def S(self) -> Tensor:
        return self.g_side.shape

    @property
    def S_tilde(self) -> Tensor:
        return self.tilde_side.shape

    @property
    def S_flat(self) -> Tensor:
        return self.g_side.shape_flat

    @property
    def S_tilde_flat(self) -> Tensor:
        return self.tilde_side.shape_flat


def lower_first(t: Tensor, metric: Tensor) -> Tensor:
    """(1,2) -> (0,3): t(x,y,z) = metric(t(x,y), z)."""
    return Tensor(np.einsum("kxy,kz->xyz", t.components, metric.components), 0, 3)


def _side(inst: ApaprInstance, lc: Connection, metric: Tensor) -> SvkSide:
    frame = inst.frame
    G = lc.coefficients
    xi = inst.xi.components
    eta = inst.eta.components
    d_xi = np.einsum("kic,c->ki", G, xi)  # (D_{e_i} xi)^k
    d_eta = covariant_derivative(lc, inst.eta).components  # [i, j] = (D_i eta)(e_j)

    closed = G - np.einsum("j,ki->kij", eta, d_xi) + np.einsum("ij,k->kij", d_eta, xi)
    H = inst.horizontal_projector
    V = inst.vertical_projector
    projected = np.einsum("ka,aic,cj->kij", H, G, H, optimize=True) + np.einsum("ka,aic,cj->kij", V, G, V, optimize=True)
    if not _array_equal(_normalize(closed), _normalize(projected)):
        raise SvkError("projector and closed-form adapted connections differ")
    conn = Connection(closed)

    potential = Tensor(-np.einsum("j,ki->kij", eta, d_xi) + np.einsum("ij,k->kij", d_eta, xi), 1, 2)
    if not _array_equal(potential.components, (conn - lc).components):
        raise SvkError("potential formula differs from the coefficient difference")

    d_eta_form = d_one_form(frame, inst.eta).components
    t_formula = (
        np.einsum("i,kj->kij", eta, d_xi)
        - np.einsum("j,ki->kij", eta, d_xi)
        + np.einsum("ij,k->kij", d_eta_form, xi)
    )
    tor = torsion(frame, conn)
    if not _array_equal(tor.components, _normalize(t_formula)):
        raise SvkError("torsion formula differs from the definition")

    shape = Tensor(-d_xi, 1, 1)
    shape_flat = Tensor(np.einsum("kx,ky->xy", shape.components, metric.components), 0, 2)
    return SvkSide(lc, metric, conn, potential, tor, shape, shape_flat)


def build_svk(inst: ApaprInstance, nabla: Connection, nabla_tilde: Connection) -> SvkPair:
    return SvkPair(_side(inst, nabla, inst.g), _side(inst, nabla_tilde, inst.g_tilde))


def cartan_bijection(t: Tensor, direction: str) -> Tensor:
    """Torsion <-> potential of a metric connection, both as (0,3) tensors.

    ``"to_torsion"``:   T(x,y,z) = Q(x,y,z) - Q(y,x,z)
    ``"to_potential"``: 2Q(x,y,z) = T(x,y,z) - T(y,z,x) + T(z,x,y)
    """
    if t.rank != (0, 3):
        raise TensorError("cartan_bijection works on (0,3) tensors")
    c = t.components
    if direction == "to_torsion":
        return Tensor(c - c.transpose(1, 0, 2), 0, 3)
    if direction == "to_potential":
        if not _array_equal(c, -c.transpose(1, 0, 2)):
            raise TensorError("torsion must be antisymmetric in its first two arguments")
        # T(y,z,x) at [x,y,z] is c[y,z,x], i.e. c.transpose(2,0,1)
        return Tensor((c - c.transpose(2, 0, 1) + c.transpose(1, 2, 0)) * Fraction(1, 2), 0, 3)
    raise TensorError(f"direction must be 'to_torsion' or 'to_potential', got {direction!r}")


def _wedge_form_vector(alpha: np.ndarray, A: np.ndarray) -> np.ndarray:
    # (alpha ^ A)(x,y) = alpha(x) A(y) - alpha(y) A(x), as [k, x, y]
    return np.einsum("x,ky->kxy", alpha, A) - np.einsum("y,kx->kxy", alpha, A)


def hv_components(pair: SvkPair, inst: ApaprInstance, Phi_vec: Tensor, Phi: Tensor) -> dict[str, bool]:
    """Every horizontal/vertical identity for the potentials and torsions.

    Returns identity name -> holds.
    """
    H = inst.horizontal_projector
    V = inst.vertical_projector
    eta = inst.eta.components
    xi = inst.xi.components
    P = inst.phi.components
    checks: dict[str, bool] = {}

    def h(t):
        return np.einsum("ka,aij->kij", H, t.components)

    def v(t):
        return np.einsum("ka,aij->kij", V, t.components)

    for tag, side in (("", pair.g_side), ("~", pair.tilde_side)):
        S = side.shape.components
        Sf = side.shape_flat.components
        checks[f"Q{tag}||h = S{tag} (x) eta"] = _array_equal(h(side.potential), np.einsum("kx,y->kxy", S, eta))
        checks[f"Q{tag}||v = -S{tag}_flat (x) xi"] = _array_equal(v(side.potential), -np.einsum("xy,k->kxy", Sf, xi))
        checks[f"T{tag}||h = -eta ^ S{tag}"] = _array_equal(h(side.torsion), -_wedge_form_vector(eta, S))
        alt = (Sf - Sf.T) * Fraction(1, 2)
        checks[f"T{tag}||v = -2 Alt(S{tag}_flat) (x) xi"] = _array_equal(
            v(side.torsion), -2 * np.einsum("xy,k->kxy", alt, xi)
        )
        checks[f"S{tag} maps into H"] = is_zero(_normalize(eta.dot(S)))
        d_eta = covariant_derivative(side.levi_civita, inst.eta).components
        checks[f"S{tag}_flat = -nabla{tag} eta"] = _array_equal(Sf, -d_eta)

    g_side, t_side = pair.g_side, pair.tilde_side
    phi_x_xi = np.einsum("kxc,c->kx", Phi_vec.components, xi)  # Phi(x, xi)
    S, St = g_side.shape.components, t_side.shape.components
    Sf, Stf = g_side.shape_flat.components, t_side.shape_flat.components
    checks["S~(x) = S(x) - Phi(x,xi)"] = _array_equal(St, _normalize(S - phi_x_xi))
    phi_xi_x_phiy = np.einsum("xb,by->xy", np.tensordot(xi, Phi.components, axes=([0], [0])), P)
    checks["S~_flat(x,y) = S_flat(x,phi y) - Phi(xi,x,phi y)"] = _array_equal(Stf, _normalize(Sf.dot(P) - phi_xi_x_phiy))

    Qh, Qv = h(g_side.potential), v(g_side.potential)
    Th, Tv = h(g_side.torsion), v(g_side.torsion)
    tQh, tQv = h(t_side.potential), v(t_side.potential)
    tTh, tTv = h(t_side.torsion), v(t_side.torsion)
    xi_phi = np.einsum("c,kcx->kx", xi, Phi_vec.components)  # (xi _| Phi)(x) = Phi(xi, x)
    eta_phi = np.einsum("k,kxy->xy", eta, Phi_vec.components)
    checks["Q~||h = Q||h - (xi _| Phi) (x) eta"] = _array_equal(tQh, _normalize(Qh - np.einsum("kx,y->kxy", xi_phi, eta)))
    checks["Q~||v = Q||v - (eta o Phi) (x) xi"] = _array_equal(tQv, _normalize(Qv - np.einsum("xy,k->kxy", eta_phi, xi)))
    checks["T~||h = T||h + eta ^ (xi _| Phi)"] = _array_equal(tTh, _normalize(Th + _wedge_form_vector(eta, xi_phi)))
    checks["T~||v = T||v"] = _array_equal(tTv, Tv)

    dS, dSf = St - S, Stf - Sf
    # (A ^ eta)(x,y) = A(x) eta(y) - A(y) eta(x)
    a_wedge_eta = np.einsum("kx,y->kxy", dS, eta) - np.einsum("ky,x->kxy", dS, eta)
    checks["Q~|| = Q|| + (S~ - S) (x) eta - (S~_flat - S_flat) (x) xi"] = _array_equal(
        t_side.potential.components,
        _normalize(
            g_side.potential.components + np.einsum("kx,y->kxy", dS, eta) - np.einsum("xy,k->kxy", dSf, xi)
        ),
    )
    checks["T~|| = T|| + (S~ - S) ^ eta"] = _array_equal(
        t_side.torsion.components, _normalize(g_side.torsion.components + a_wedge_eta)
    )
    return checks


@dataclass(frozen=True)
class PhiDerivatives:
    """g((D||_x phi) y, z) for both adapted connections, each by two routes."""

    nabla_par_phi: Tensor
    nabla_tilde_par_phi: Tensor
    closed_form_agrees: bool
    tilde_closed_form_agrees: bool


def svk_phi_derivative(
    pair: SvkPair, inst: ApaprInstance, nabla: Connection, Phi_vec: Tensor
) -> PhiDerivatives:
    P = inst.phi.components
    eta = inst.eta.components
    xi = inst.xi.components
    g = inst.g.components
    direct = covariant_derivative(pair.nabla_par, inst.phi).components  # [a, x, y]
    direct_t = covariant_derivative(pair.nabla_tilde_par, inst.phi).components

    nphi = covariant_derivative(nabla, inst.phi).components
    d_xi = np.einsum("kic,c->ki", nabla.coefficients, xi)
    # (nabla_x phi)y + eta(y) phi nabla_x xi - eta(nabla_x phi y) xi
    nabla_phi_y = np.einsum("kxc,cy->kxy", nabla.coefficients, P)  # nabla_x (phi y)
    closed = (
        nphi
        + np.einsum("y,ka,ax->kxy", eta, P, d_xi, optimize=True)
        - np.einsum("a,axy,k->kxy", eta, nabla_phi_y, xi, optimize=True)
    )
    Ph = Phi_vec.components
    phi_x_xi = np.einsum("kxc,c->kx", Ph, xi)
    closed_t = (
        direct
        + np.einsum("kxc,cy->kxy", Ph, P)
        - np.einsum("ka,axy->kxy", P, Ph)
        + np.einsum("y,ka,ax->kxy", eta, P, phi_x_xi, optimize=True)
        - np.einsum("a,axc,cy,k->kxy", eta, Ph, P, xi, optimize=True)
    )
    return PhiDerivatives(
        nabla_par_phi=Tensor(np.einsum("axy,az->xyz", direct, g), 0, 3),
        nabla_tilde_par_phi=Tensor(np.einsum("axy,az->xyz", direct_t, g), 0, 3),
        closed_form_agrees=_array_equal(_normalize(closed), direct),
        tilde_closed_form_agrees=_array_equal(_normalize(closed_t), direct_t),
    )


def coincidence_predicates(nabla: Connection, nabla_tilde: Connection, pair: SvkPair) -> dict[str, bool]:
    """Coefficient equalities among the four connections."""
    return {
        "nabla|| = nabla": pair.nabla_par == nabla,
        "nabla~|| = nabla~": pair.nabla_tilde_par == nabla_tilde,
        "nabla~|| = nabla||": pair.nabla_tilde_par == pair.nabla_par,
        "nabla~|| = nabla": pair.nabla_tilde_par == nabla,
        "nabla|| = nabla~": pair.nabla_par == nabla_tilde,
        "nabla = nabla~": nabla == nabla_tilde,
    }


def structure_preservation(frame: LieFrame, inst: ApaprInstance, pair: SvkPair) -> dict[str, bool]:
    """xi, eta and the own metric are parallel for each adapted connection."""
    out = {}
    for tag, side in (("", pair.g_side), ("~", pair.tilde_side)):
        c = side.connection
        m = "g~" if tag else "g"
        out[f"nabla{tag}|| xi = 0"] = covariant_derivative(c, inst.xi).is_zero()
        out[f"nabla{tag}|| eta = 0"] = covariant_derivative(c, inst.eta).is_zero()
        out[f"nabla{tag}|| {m} = 0"] = covariant_derivative(c, side.metric).is_zero()
    return out

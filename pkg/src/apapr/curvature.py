"""Curvature of the four connections nabla, nabla~, nabla|| and nabla~||.

Conventions: ``R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z``,
``R(x,y,z,w) = m(R(x,y)z, w)`` with m = g or g~, ``rho(y,z) = m^{ij} R(e_i,y,z,e_j)``
and ``tau = m^{ij} rho(e_i,e_j)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lie_frame import Connection, LieFrame, covariant_derivative, divergence
from .scalar_tensor import (
    Tensor,
    TensorError,
    _array_equal,
    _normalize,
    as_scalar,
    format_scalar,
    inverse_metric,
    matrix_rank,
)
from .structure import ApaprInstance
from .svk import SvkPair

__all__ = [
    "CurvatureData",
    "SectionReport",
    "Relation",
    "riemann",
    "pi1",
    "four_curvatures",
    "svk_curvature_relations",
    "section_analysis",
    "plane_types",
]


@dataclass(frozen=True)
class CurvatureData:
    R_vec: Tensor  # (1,3): [m, x, y, z] = (R(e_x,e_y)e_z)^m
    R: Tensor  # (0,4)
    ricci: Tensor  # (0,2)
    tau: Fraction
    metric: Tensor
    pi1: np.ndarray  # pi_1 of ``metric``, cached for sectional curvatures

    def is_flat(self) -> bool:
        return self.R_vec.is_zero()


def riemann(frame: LieFrame, conn: Connection, metric: Tensor) -> CurvatureData:
    """Curvature, Ricci tensor and scalar curvature of ``conn`` lowered with ``metric``."""
    G = conn.coefficients
    C = frame.structure_constants
    if G.shape[0] != frame.dim:
        raise TensorError(f"dimension mismatch: connection {G.shape[0]}, frame {frame.dim}")
    R_vec = (
        np.einsum("mia,ajk->mijk", G, G)
        - np.einsum("mja,aik->mijk", G, G)
        - np.einsum("aij,mak->mijk", C, G)
    )
    R = np.einsum("mijk,ml->ijkl", R_vec, metric.components)
    minv = inverse_metric(metric).components
    ricci = np.einsum("il,iyzl->yz", minv, R)
    tau = as_scalar(np.einsum("yz,yz->", minv, ricci))
    return CurvatureData(Tensor(R_vec, 1, 3), Tensor(R, 0, 4), Tensor(ricci, 0, 2), tau, metric, pi1(metric))


def pi1(metric: Tensor) -> np.ndarray:
    """pi_1(x,y,z,w) = m(y,z)m(x,w) - m(x,z)m(y,w) as a 4-index array."""
    m = metric.components
    return _normalize(np.einsum("yz,xw->xyzw", m, m) - np.einsum("xz,yw->xyzw", m, m))


@dataclass(frozen=True)
class FourCurvatures:
    nabla: CurvatureData
    nabla_tilde: CurvatureData
    nabla_par: CurvatureData
    nabla_tilde_par: CurvatureData


def four_curvatures(inst: ApaprInstance, nabla: Connection, nabla_tilde: Connection, pair: SvkPair) -> FourCurvatures:
    f = inst.frame
    return FourCurvatures(
        riemann(f, nabla, inst.g),
        riemann(f, nabla_tilde, inst.g_tilde),
        riemann(f, pair.nabla_par, inst.g),
        riemann(f, pair.nabla_tilde_par, inst.g_tilde),
    )


@dataclass(frozen=True)
class Relation:
    """Both sides of an identity, evaluated independently."""

    name: str
    lhs: object
    rhs: object

    @property
    def holds(self) -> bool:
        a, b = self.lhs, self.rhs
        if isinstance(a, np.ndarray):
            return _array_equal(_normalize(a), _normalize(b))
        return a == b

    def to_dict(self) -> dict:
        out = {"name": self.name, "holds": self.holds}
        if not self.holds:
            out["lhs"] = _plain(self.lhs)
            out["rhs"] = _plain(self.rhs)
        return out


def _plain(v):
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v] if v.ndim else format_scalar(v.item())
    return format_scalar(v)


def _shape_derivative(conn: Connection, S: np.ndarray) -> np.ndarray:
    """[k, x, y] = ((nabla_x S) y)^k = nabla_x(S y) - S(nabla_x y)."""
    return covariant_derivative(conn, Tensor(S, 1, 1)).components


def _side_relations(
    inst: ApaprInstance, lc: Connection, curv: CurvatureData, par: CurvatureData, S: np.ndarray, tag: str
) -> list[Relation]:
    m = curv.metric.components
    minv = inverse_metric(curv.metric).components
    H = inst.horizontal_projector
    xi = inst.xi.components
    eta = inst.eta.components
    R = curv.R.components
    rho = curv.ricci.components
    p = curv.pi1
    rels = []

    rhs = np.einsum("xyab,az,bw->xyzw", R, H, H, optimize=True) + np.einsum("ax,by,abzw->xyzw", S, S, p, optimize=True)
    rels.append(Relation(f"R{tag}||(x,y,z,w) = R{tag}(x,y,phi^2 z,phi^2 w) + pi1{tag}(S{tag}x,S{tag}y,z,w)", par.R.components, rhs))

    trS = Fraction(np.trace(S))
    S2 = S.dot(S)
    rho_y_xi = rho.dot(xi)
    R_xi_y_z_xi = np.einsum("a,ayzb,b->yz", xi, R, xi, optimize=True)
    rhs = (
        rho
        - np.einsum("y,z->yz", rho_y_xi, eta)
        - R_xi_y_z_xi
        - np.einsum("ky,kz->yz", S2, m)
        + trS * np.einsum("ky,kz->yz", S, m)
    )
    rels.append(Relation(f"rho{tag}|| = rho{tag} - eta(z)rho{tag}(y,xi) - R{tag}(xi,y,z,xi) - S{tag}^2 + tr(S{tag}) S{tag}", par.ricci.components, rhs))

    # R(x,y)xi = -(nabla_x S)y + (nabla_y S)x
    dS = _shape_derivative(lc, S)
    R_xy_xi = np.einsum("mxyc,c->mxy", curv.R_vec.components, xi)
    rels.append(Relation(f"R{tag}(x,y)xi = -(nabla{tag}_x S{tag})y + (nabla{tag}_y S{tag})x", R_xy_xi, -dS + dS.transpose(0, 2, 1)))

    # R(xi,y,z,xi) = m((nabla_xi S)y - nabla_y(S xi) - S(S y), z)
    dS_xi = np.einsum("kxy,x->ky", dS, xi)
    S_xi = S.dot(xi)
    nabla_y_Sxi = np.einsum("kyc,c->ky", lc.coefficients, S_xi)
    rels.append(
        Relation(
            f"R{tag}(xi,y,z,xi) = (nabla{tag}_xi S{tag})y - nabla{tag}_y S{tag}(xi) - S{tag}^2 y",
            R_xi_y_z_xi,
            np.einsum("ky,kz->yz", dS_xi - nabla_y_Sxi - S2, m),
        )
    )

    rho_xi_xi = Fraction(xi.dot(rho).dot(xi))
    div_Sxi = divergence(inst.frame, lc, curv.metric, Tensor(S_xi, 1, 0))
    rels.append(
        Relation(
            f"rho{tag}(xi,xi) = tr(nabla{tag}_xi S{tag}) - div{tag}(S{tag} xi) - tr(S{tag}^2)",
            rho_xi_xi,
            Fraction(np.trace(dS_xi)) - div_Sxi - Fraction(np.trace(S2)),
        )
    )
    rels.append(
        Relation(
            f"tau{tag}|| = tau{tag} - 2 rho{tag}(xi,xi) - tr(S{tag}^2) + tr(S{tag})^2",
            par.tau,
            curv.tau - 2 * rho_xi_xi - Fraction(np.trace(S2)) + trS * trS,
        )
    )
    # trace taken with the own metric: m^{ij} m(S e_i, e_j)
    rels.append(Relation(f"tr{tag}(S{tag}) = -div(eta)", as_scalar(np.einsum("ij,ki,kj->", minv, S, m, optimize=True)), None))
    return rels


def svk_curvature_relations(
    inst: ApaprInstance, nabla: Connection, nabla_tilde: Connection, pair: SvkPair, curvs: FourCurvatures
) -> list[Relation]:
    """Every curvature relation between the adapted connections and the Levi-Civita ones."""
    g_rel = _side_relations(inst, nabla, curvs.nabla, curvs.nabla_par, pair.S.components, "")
    t_rel = _side_relations(inst, nabla_tilde, curvs.nabla_tilde, curvs.nabla_tilde_par, pair.S_tilde.components, "~")
    div_eta = divergence(inst.frame, nabla, inst.g, inst.eta)
    out = []
    for r in g_rel + t_rel:
        if r.rhs is None:
            r = Relation(r.name, r.lhs, -div_eta)
        out.append(r)

    for tag, c in (("", curvs.nabla), ("~", curvs.nabla_tilde)):
        Rv = c.R_vec.components
        out.append(Relation(f"first Bianchi identity for R{tag}", Rv + Rv.transpose(0, 2, 3, 1) + Rv.transpose(0, 3, 1, 2), np.zeros_like(Rv)))
        R = c.R.components
        out.append(Relation(f"R{tag}(x,y,z,w) = R{tag}(z,w,x,y)", R, R.transpose(2, 3, 0, 1)))
    for tag, c in (("", curvs.nabla), ("~", curvs.nabla_tilde), ("||", curvs.nabla_par), ("~||", curvs.nabla_tilde_par)):
        R = c.R.components
        out.append(Relation(f"R{tag} antisymmetric in x,y", R, -R.transpose(1, 0, 2, 3)))
        out.append(Relation(f"R{tag} antisymmetric in z,w", R, -R.transpose(0, 1, 3, 2)))
    return out


# --- sections ---------------------------------------------------------------

SECTION_TYPES = ("xi-section", "phi-holomorphic", "phi-totally-real", "generic")


def plane_types(inst: ApaprInstance, x: np.ndarray, y: np.ndarray) -> dict[str, bool]:
    """Type flags of span{x, y}; the three special types may overlap."""
    P = inst.phi.components
    g = inst.g.components
    xi = inst.xi.components
    eta = inst.eta.components
    if matrix_rank([x, y]) != 2:
        raise TensorError("plane basis vectors are linearly dependent")
    px, py = P.dot(x), P.dot(y)
    phi_g = lambda u, v: Fraction(u.dot(g).dot(P.dot(v)))  # noqa: E731  g(u, phi v)
    return {
        "xi_section": matrix_rank([x, y, xi]) == 2,
        "phi_holomorphic": matrix_rank([x, y, px]) == 2 and matrix_rank([x, y, py]) == 2 and matrix_rank([px, py]) == 2,
        "phi_totally_real": phi_g(x, x) == 0 and phi_g(x, y) == 0 and phi_g(y, y) == 0,
        "orthogonal_to_xi": Fraction(eta.dot(x)) == 0 and Fraction(eta.dot(y)) == 0,
    }


@dataclass(frozen=True)
class SectionReport:
    x: tuple
    y: tuple
    section_type: str
    flags: dict
    k: Fraction | None
    k_par: Fraction | None
    k_tilde: Fraction | None
    k_tilde_par: Fraction | None
    relations: list = field(default_factory=list)
    totally_real_orthogonal_exists: bool = True

    @property
    def consistent(self) -> bool:
        return all(r.holds for r in self.relations)

    def to_dict(self) -> dict:
        fmt = lambda v: None if v is None else format_scalar(v)  # noqa: E731
        return {
            "x": [format_scalar(v) for v in self.x],
            "y": [format_scalar(v) for v in self.y],
            "section_type": self.section_type,
            "flags": dict(self.flags),
            "k": fmt(self.k),
            "k_par": fmt(self.k_par),
            "k_tilde": fmt(self.k_tilde),
            "k_tilde_par": fmt(self.k_tilde_par),
            "totally_real_orthogonal_exists": self.totally_real_orthogonal_exists,
            "relations": [r.to_dict() for r in self.relations],
        }


def _eval4(t: np.ndarray, a, b, c, d) -> Fraction:
    """t(a, b, c, d) for a 4-index array, contracting one slot at a time."""
    return as_scalar(a.dot(t.dot(d).dot(c).dot(b)))


def _k(R: np.ndarray, p: np.ndarray, x, y):
    den = _eval4(p, x, y, y, x)
    if den == 0:
        return None, den
    return _eval4(R, x, y, y, x) / den, den


def section_analysis(inst: ApaprInstance, curvs: FourCurvatures, pair: SvkPair, x, y) -> SectionReport:
    """Sectional curvatures of span{x, y} for all four connections plus the relations
    between them; degenerate planes give ``None`` rather than an error."""
    x = _normalize(np.asarray(x.components if isinstance(x, Tensor) else x, dtype=object))
    y = _normalize(np.asarray(y.components if isinstance(y, Tensor) else y, dtype=object))
    flags = plane_types(inst, x, y)
    if flags["xi_section"]:
        kind = "xi-section"
    elif flags["phi_holomorphic"]:
        kind = "phi-holomorphic"
    elif flags["phi_totally_real"]:
        kind = "phi-totally-real"
    else:
        kind = "generic"

    eta = inst.eta.components
    xi = inst.xi.components
    ex, ey = Fraction(eta.dot(x)), Fraction(eta.dot(y))
    values = {}
    rels = []
    sides = (
        ("", curvs.nabla, curvs.nabla_par, pair.S.components),
        ("~", curvs.nabla_tilde, curvs.nabla_tilde_par, pair.S_tilde.components),
    )
    for tag, lc, par, S in sides:
        p = lc.pi1
        k, den = _k(lc.R.components, p, x, y)
        kp, _ = _k(par.R.components, p, x, y)
        values[tag] = (k, kp)
        if den == 0:
            continue
        R = lc.R.components
        sx, sy = S.dot(x), S.dot(y)
        shape_term = _eval4(p, sx, sy, y, x)
        eta_terms = ex * _eval4(R, x, y, y, xi) + ey * _eval4(R, x, y, xi, x)
        rels.append(Relation(f"k{tag}|| = k{tag} + [pi1{tag}(S{tag}x,S{tag}y,y,x) - eta terms]/pi1{tag}", kp, k + (shape_term - eta_terms) / den))
        if flags["xi_section"]:
            rels.append(Relation(f"k{tag}|| vanishes on xi-sections", kp, Fraction(0)))
        elif flags["orthogonal_to_xi"] and (flags["phi_holomorphic"] or flags["phi_totally_real"]):
            rels.append(Relation(f"k{tag}|| = k{tag} + pi1{tag}(S{tag}x,S{tag}y,y,x)/pi1{tag}", kp, k + shape_term / den))
    return SectionReport(
        x=tuple(x),
        y=tuple(y),
        section_type=kind,
        flags=flags,
        k=values[""][0],
        k_par=values[""][1],
        k_tilde=values["~"][0],
        k_tilde_par=values["~"][1],
        relations=rels,
        totally_real_orthogonal_exists=inst.n >= 2,
    )

"""The fundamental tensor F = g((nabla phi) ., .), its Lee forms, the potential
Phi between the two Levi-Civita connections, and F~ of the associated metric.

Where two independent routes exist (Phi, F~) both are computed and compared.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, TypeVar

import numpy as np

from .lie_frame import Connection, covariant_derivative, divergence
from .scalar_tensor import Tensor, _array_equal, _normalize
from .structure import ApaprInstance

__all__ = [
    "FundamentalError",
    "TwoRoute",
    "LeeForms",
    "FundamentalData",
    "compute_F",
    "check_F_identities",
    "lee_forms",
    "compute_Phi",
    "compute_F_tilde",
    "fundamental_data",
    "phi_in_slot",
    "with_xi",
]

T = TypeVar("T")


class FundamentalError(ValueError):
    pass


@dataclass(frozen=True)
class TwoRoute(Generic[T]):
    """A quantity computed two independent ways plus the agreement certificate."""

    route_a: T
    route_b: T
    agree: bool

    @property
    def value(self) -> T:
        return self.route_a


def phi_in_slot(inst: ApaprInstance, arr: np.ndarray, slot: int) -> np.ndarray:
    """Substitute phi into one covariant argument: t(.., phi x, ..)."""
    moved = np.tensordot(arr, inst.phi.components, axes=([slot], [0]))
    return np.moveaxis(moved, -1, slot)


def with_xi(inst: ApaprInstance, arr: np.ndarray, slot: int) -> np.ndarray:
    """Plug xi into one covariant argument, dropping that axis."""
    return np.tensordot(arr, inst.xi.components, axes=([slot], [0]))


def _phi_derivative(inst: ApaprInstance, conn: Connection) -> np.ndarray:
    # [a, x, y] = ((nabla_x phi) y)^a
    return covariant_derivative(conn, inst.phi).components


def compute_F(inst: ApaprInstance, nabla: Connection, metric: Tensor | None = None) -> Tensor:
    """F(x,y,z) = metric((nabla_x phi) y, z); pass g~ and its connection for F~.

    The structural identities are verified; a failure means ``nabla`` is not
    the Levi-Civita connection of ``metric``.
    """
    metric = inst.g if metric is None else metric
    F = Tensor(np.einsum("axy,az->xyz", _phi_derivative(inst, nabla), metric.components), 0, 3)
    failures = check_F_identities(inst, F, nabla)
    if failures:
        raise FundamentalError("F identities fail: " + ", ".join(failures))
    return F


def check_F_identities(inst: ApaprInstance, F: Tensor, nabla: Connection | None = None) -> list[str]:
    """Names of the violated structural identities of F (empty when all hold)."""
    f = F.components
    E = inst.eta.components
    out = []
    if not _array_equal(f, f.transpose(0, 2, 1)):
        out.append("F(x,y,z) = F(x,z,y)")
    rhs = (
        -phi_in_slot(inst, phi_in_slot(inst, f, 1), 2)
        + np.einsum("y,xz->xyz", E, with_xi(inst, f, 1))
        + np.einsum("z,xy->xyz", E, with_xi(inst, f, 2))
    )
    if not _array_equal(f, rhs):
        out.append("F(x,y,z) = -F(x,phi y,phi z) + eta(y)F(x,xi,z) + eta(z)F(x,y,xi)")
    if not all(v == 0 for v in with_xi(inst, with_xi(inst, f, 2), 1).flat):
        out.append("F(x,xi,xi) = 0")
    if nabla is not None:
        nabla_eta = covariant_derivative(nabla, inst.eta).components  # [x, y]
        if not _array_equal(nabla_eta, -with_xi(inst, phi_in_slot(inst, f, 1), 2)):
            out.append("(nabla_x eta)y = -F(x, phi y, xi)")
    return out


@dataclass(frozen=True)
class LeeForms:
    theta: Tensor
    theta_star: Tensor
    omega: Tensor


def lee_forms(inst: ApaprInstance, F: Tensor, metric: Tensor | None = None) -> LeeForms:
    """theta(z) = g^{ij}F(e_i,e_j,z), theta*(z) = g^{ij}F(e_i,phi e_j,z), omega(z) = F(xi,xi,z)."""
    metric = inst.g if metric is None else metric
    ginv = inst.inverse_of(metric).components
    f = F.components
    theta = np.einsum("ij,ijz->z", ginv, f)
    theta_star = np.einsum("ij,ijz->z", ginv, phi_in_slot(inst, f, 1))
    omega = with_xi(inst, with_xi(inst, f, 0), 0)
    return LeeForms(Tensor(theta, 0, 1), Tensor(theta_star, 0, 1), Tensor(omega, 0, 1))


def divergence_relations(inst, forms: LeeForms, nabla) -> dict[str, tuple[Fraction, Fraction]]:
    """theta(xi) against -div*(eta) and theta*(xi) against -div(eta)."""
    xi = inst.xi.components
    div_star = divergence(inst.frame, nabla, inst.g_tilde, inst.eta)
    div = divergence(inst.frame, nabla, inst.g, inst.eta)
    return {
        "theta(xi) = -div*(eta)": (Fraction(forms.theta.components.dot(xi)), -div_star),
        "theta*(xi) = -div(eta)": (Fraction(forms.theta_star.components.dot(xi)), -div),
    }


def _phi_from_F(inst: ApaprInstance, F: Tensor) -> np.ndarray:
    """2 Phi(x,y,z) expanded in F; returns Phi(x,y,z) = g(Phi(x,y), z)."""
    f = F.components
    E = inst.eta.components
    fxi = with_xi(inst, f, 2)  # F(a,b,xi)
    f_phiphi_xi = with_xi(inst, phi_in_slot(inst, phi_in_slot(inst, f, 0), 1), 2)  # F(phi a, phi b, xi)
    f_a_phib_xi = with_xi(inst, phi_in_slot(inst, f, 1), 2)  # F(a, phi b, xi)
    omega = with_xi(inst, with_xi(inst, f, 0), 0)
    omega_phi = omega.dot(inst.phi.components)  # omega(phi a)
    f_xi_ab = with_xi(inst, f, 0)  # F(xi, a, b)

    t = phi_in_slot(inst, f, 2)  # F(x,y,phi z)
    two = t + t.transpose(1, 0, 2)
    two = two - np.einsum("zxy->xyz", phi_in_slot(inst, f, 0))  # F(phi z, x, y)
    pair = fxi - f_phiphi_xi.T  # [y,z]: F(y,z,xi) - F(phi z, phi y, xi)
    two = two - np.einsum("x,yz->xyz", E, pair)
    two = two - np.einsum("y,xz->xyz", E, pair)
    tail = (
        f_xi_ab
        - fxi
        + f_a_phib_xi
        - np.multiply.outer(omega_phi, E)
        - fxi.T
        + f_a_phib_xi.T
        - np.multiply.outer(E, omega_phi)
    )  # [x,y]
    two = two - np.einsum("z,xy->xyz", E, tail)
    return _normalize(two * Fraction(1, 2))


def compute_Phi(inst: ApaprInstance, nabla: Connection, nabla_tilde: Connection, F: Tensor | None = None):
    """Phi(x,y) = nabla~_x y - nabla_x y, by Koszul difference and by the F expansion.

    Returns ``(TwoRoute of the (0,3) form, (1,2) form)``.
    """
    if F is None:
        F = compute_F(inst, nabla)
    phi_vec = nabla_tilde - nabla
    route_a = Tensor(np.einsum("kxy,kz->xyz", phi_vec.components, inst.g.components), 0, 3)
    route_b = Tensor(_phi_from_F(inst, F), 0, 3)
    return TwoRoute(route_a, route_b, route_a == route_b), phi_vec


def _F_tilde_from_F(inst: ApaprInstance, F: Tensor) -> np.ndarray:
    """2 F~(x,y,z) expanded in F."""
    f = F.components
    E = inst.eta.components
    fp0 = phi_in_slot(inst, f, 0)  # F(phi a, b, c)
    fp1 = phi_in_slot(inst, f, 1)  # F(a, phi b, c)
    fxi = with_xi(inst, f, 2)
    b = with_xi(inst, phi_in_slot(inst, fp0, 1), 2)  # F(phi a, phi b, xi)
    c = with_xi(inst, fp1, 2)  # F(a, phi b, xi)

    two = (
        np.einsum("yzx->xyz", fp0)
        - np.einsum("yzx->xyz", fp1)
        + np.einsum("zyx->xyz", fp0)
        - np.einsum("zyx->xyz", fp1)
    )
    two = two + np.einsum("x,yz->xyz", E, fxi - b.T + fxi.T - b)
    two = two + np.einsum("y,xz->xyz", E, fxi - b.T + c)
    two = two + np.einsum("z,xy->xyz", E, fxi - b.T + c)
    return _normalize(two * Fraction(1, 2))


def compute_F_tilde(inst: ApaprInstance, nabla_tilde: Connection, F: Tensor) -> TwoRoute:
    """F~(x,y,z) = g~((nabla~_x phi)y, z) directly and via the F expansion."""
    route_a = compute_F(inst, nabla_tilde, inst.g_tilde)
    route_b = Tensor(_F_tilde_from_F(inst, F), 0, 3)
    return TwoRoute(route_a, route_b, route_a == route_b)


@dataclass(frozen=True)
class FundamentalData:
    F: Tensor
    F_tilde: Tensor
    Phi: Tensor
    Phi_vec: Tensor
    theta: Tensor
    theta_star: Tensor
    omega: Tensor
    lee_tilde: LeeForms
    phi_check: TwoRoute
    F_tilde_check: TwoRoute
    divergence_checks: dict

    @property
    def lee(self) -> LeeForms:
        return LeeForms(self.theta, self.theta_star, self.omega)


def fundamental_data(inst: ApaprInstance, nabla: Connection, nabla_tilde: Connection) -> FundamentalData:
    F = compute_F(inst, nabla)
    forms = lee_forms(inst, F)
    phi_check, phi_vec = compute_Phi(inst, nabla, nabla_tilde, F)
    ft_check = compute_F_tilde(inst, nabla_tilde, F)
    return FundamentalData(
        F=F,
        F_tilde=ft_check.route_a,
        Phi=phi_check.route_a,
        Phi_vec=phi_vec,
        theta=forms.theta,
        theta_star=forms.theta_star,
        omega=forms.omega,
        lee_tilde=lee_forms(inst, ft_check.route_a, inst.g_tilde),
        phi_check=phi_check,
        F_tilde_check=ft_check,
        divergence_checks=divergence_relations(inst, forms, nabla),
    )

"""Splitting F into its basic-class components and deciding class membership.

F is cut by the horizontal/vertical type of its arguments:

* ``F(x^h, y^h, z^h)``: the F1 part plus a remainder in F2+F3 (``q23``),
* ``A(x,y) = F(x^h, y^h, xi)`` lifted by ``A(x,y)eta(z) + A(x,z)eta(y)``;
  A is split by symmetry and by phi-conjugation into the F4..F9 buckets,
* ``eta(x) F(xi, y^h, z^h)``: the F10 part,
* ``eta(x){eta(y)omega(z) + eta(z)omega(y)}``: the F11 part.

All functions take an optional ``metric`` so the same code classifies the
manifold with the associated metric g~ (feed it F~ and its Lee forms).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fundamental import LeeForms, compute_F, lee_forms, phi_in_slot, with_xi
from .lie_frame import Connection, covariant_derivative, d_one_form, koszul_levi_civita, lie_derivative_metric
from .scalar_tensor import Tensor, _normalize, cyclic_sum, is_zero
from .structure import ApaprInstance

__all__ = [
    "BASIC_CLASSES",
    "FDecomposition",
    "ClassMembership",
    "DecompositionError",
    "decompose",
    "lift",
    "basic_membership",
    "in_class",
    "composite_membership",
    "classify_instance",
    "class_name",
    "parse_class",
]

BASIC_CLASSES = tuple(f"F{i}" for i in range(1, 12))


class DecompositionError(ValueError):
    pass


def class_name(members) -> str:
    """Canonical '+'-joined name, e.g. {'F9','F4'} -> 'F4+F9'."""
    return "+".join(sorted(set(members), key=lambda s: int(s[1:])))


def parse_class(name: str) -> frozenset[str]:
    parts = frozenset(name.split("+"))
    unknown = parts - set(BASIC_CLASSES)
    if unknown:
        raise ValueError(f"unknown basic classes {sorted(unknown)} in {name!r}")
    return parts


@dataclass(frozen=True)
class FDecomposition:
    comp_F1: Tensor
    A: Tensor
    A4: Tensor
    A5: Tensor
    A6: Tensor
    A7: Tensor
    A8: Tensor
    A9: Tensor
    comp_F10: Tensor
    comp_F11: Tensor
    remainder_q23: Tensor

    def buckets(self) -> dict[str, Tensor]:
        return {"F4": self.A4, "F5": self.A5, "F6": self.A6, "F7": self.A7, "F8": self.A8, "F9": self.A9}

    def components(self, eta: Tensor) -> dict[str, Tensor]:
        """Every piece as a (0,3) tensor, keyed by class (q23 under 'F2+F3')."""
        out = {"F1": self.comp_F1, "F2+F3": self.remainder_q23}
        out.update({k: lift(v, eta) for k, v in self.buckets().items()})
        out["F10"] = self.comp_F10
        out["F11"] = self.comp_F11
        return out


def lift(A: Tensor, eta: Tensor) -> Tensor:
    """A(x,y) eta(z) + A(x,z) eta(y)."""
    a, e = A.components, eta.components
    return Tensor(np.einsum("xy,z->xyz", a, e) + np.einsum("xz,y->xyz", a, e), 0, 3)


def _bilinear_on(a, m1, m2):
    # a(m1 x, m2 y)
    return np.einsum("ab,ax,by->xy", a, m1, m2, optimize=True)


def decompose(
    inst: ApaprInstance,
    F: Tensor,
    theta: Tensor,
    theta_star: Tensor,
    omega: Tensor,
    metric: Tensor | None = None,
) -> FDecomposition:
    metric = inst.g if metric is None else metric
    ginv = inst.inverse_of(metric).components
    g = metric.components
    P = inst.phi.components
    H = inst.horizontal_projector
    E = inst.eta.components
    xi = inst.xi.components
    f = F.components
    two_n = 2 * inst.n

    hhh = np.einsum("abc,ax,by,cz->xyz", f, H, H, H, optimize=True)
    A = with_xi(inst, np.einsum("abc,ax,by->xyc", f, H, H, optimize=True), 2)
    comp_F10 = np.einsum("x,abc,a,by,cz->xyz", E, f, xi, H, H, optimize=True)
    w = omega.components
    comp_F11 = np.einsum("x,y,z->xyz", E, E, w, optimize=True) + np.einsum("x,z,y->xyz", E, E, w, optimize=True)

    # F1 uses the trace of the purely horizontal part only, so an omega
    # contribution to theta never leaks into it
    theta_h = np.einsum("ij,ijz->z", ginv, hhh)
    g_phiphi = _bilinear_on(g, P, P)  # g(phi x, phi y)
    g_x_phiy = g.dot(P)  # g(x, phi y)
    th2 = theta_h.dot(H)  # theta(phi^2 z)
    th1 = theta_h.dot(P)  # theta(phi z)
    comp_F1 = (
        np.einsum("xy,z->xyz", g_phiphi, th2)
        + np.einsum("xz,y->xyz", g_phiphi, th2)
        - np.einsum("xy,z->xyz", g_x_phiy, th1)
        - np.einsum("xz,y->xyz", g_x_phiy, th1)
    ) * Fraction(1, two_n)
    q23 = hhh - comp_F1

    conj = _bilinear_on(A, P, P)  # A(phi x, phi y)
    quarter = Fraction(1, 4)
    s_plus = (A + A.T + conj + conj.T) * quarter
    a_plus = (A - A.T + conj - conj.T) * quarter
    s_minus = (A + A.T - conj - conj.T) * quarter
    a_minus = (A - A.T - conj + conj.T) * quarter
    A4 = g_phiphi * (Fraction(theta.components.dot(xi)) / two_n)
    A5 = g_x_phiy * (Fraction(theta_star.components.dot(xi)) / two_n)
    A6 = s_plus - A4 - A5

    dec = FDecomposition(
        comp_F1=Tensor(comp_F1, 0, 3),
        A=Tensor(A, 0, 2),
        A4=Tensor(A4, 0, 2),
        A5=Tensor(A5, 0, 2),
        A6=Tensor(A6, 0, 2),
        A7=Tensor(a_plus, 0, 2),
        A8=Tensor(s_minus, 0, 2),
        A9=Tensor(a_minus, 0, 2),
        comp_F10=Tensor(comp_F10, 0, 3),
        comp_F11=Tensor(comp_F11, 0, 3),
        remainder_q23=Tensor(q23, 0, 3),
    )
    total = sum((c.components for c in dec.components(inst.eta).values()), start=np.zeros_like(f))
    if not all(x == y for x, y in zip(_normalize(total).flat, f.flat)):
        raise DecompositionError("components do not reconstruct F")
    return dec


@dataclass(frozen=True)
class ClassMembership:
    """``basic[Fi]``: F lies in Fi (every other component vanishes).

    ``classes`` lists the basic classes with a nonzero component; ``f0`` is
    F = 0 and is kept apart from "no flags".
    """

    basic: dict[str, bool]
    q23_status: str
    classes: tuple[str, ...]
    f0: bool
    composite: dict[str, dict] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return "F0" if self.f0 else class_name(self.classes)


def _q23_status(inst: ApaprInstance, q23: Tensor, metric: Tensor) -> str:
    if q23.is_zero():
        return "zero"
    ginv = inst.inverse_of(metric).components
    shifted = Tensor(phi_in_slot(inst, q23.components, 2), 0, 3)
    theta = np.einsum("ij,ijz->z", ginv, q23.components)
    f2 = cyclic_sum(shifted).is_zero() and is_zero(theta)
    f3 = cyclic_sum(q23).is_zero()
    if f2:
        return "F2_only"
    if f3:
        return "F3_only"
    return "mixed"


def nonzero_classes(dec: FDecomposition, q23_status: str) -> tuple[str, ...]:
    out = set()
    if not dec.comp_F1.is_zero():
        out.add("F1")
    out |= {"F2_only": {"F2"}, "F3_only": {"F3"}, "mixed": {"F2", "F3"}, "zero": set()}[q23_status]
    out |= {k for k, v in dec.buckets().items() if not v.is_zero()}
    if not dec.comp_F10.is_zero():
        out.add("F10")
    if not dec.comp_F11.is_zero():
        out.add("F11")
    return tuple(sorted(out, key=lambda s: int(s[1:])))


def basic_membership(dec: FDecomposition, inst: ApaprInstance, F: Tensor, metric: Tensor | None = None) -> ClassMembership:
    metric = inst.g if metric is None else metric
    status = _q23_status(inst, dec.remainder_q23, metric)
    present = nonzero_classes(dec, status)
    basic = {c: set(present) <= {c} for c in BASIC_CLASSES}
    return ClassMembership(basic=basic, q23_status=status, classes=present, f0=F.is_zero())


def in_class(membership: ClassMembership, name: str) -> bool:
    """Decomposition route: every nonzero component belongs to the named sum."""
    return set(membership.classes) <= parse_class(name)


# Composite classes paired with the analytic condition each is equivalent to.
# Keys of the tilde table are the classes as printed for the g~ manifold.
G_SIDE_CONDITIONS = {
    "F1+F2+F3+F10": "nabla xi = 0",
    "F4+F5+F6+F7+F8+F9+F11": "F(x,y,z) = F(x,y,xi)eta(z) + F(x,z,xi)eta(y)",
    "F1+F2+F3+F4+F5+F6+F9+F10": "d eta = 0",
    "F1+F2+F3+F7+F8+F10": "L_xi g = 0",
    "F3+F4+F5+F6+F7+F11": "Phi(x,phi^2 y,phi^2 z) = -Phi(x,phi y,phi z)",
}
TILDE_SIDE_CONDITIONS = {
    "F1+F2+F3+F9": "nabla~ xi = 0",
    "F1+F2+F3+F4+F5+F6+F9+F10": "d eta = 0",
    "F1+F2+F3+F7+F9": "L_xi g~ = 0",
    "F1+F2+F4+F5+F6+F7+F11": "F(phi y,phi z,x) + F(phi^2 y,phi^2 z,x) - F(phi z,phi y,x) - F(phi^2 z,phi^2 y,x) = 0",
    "F3+F4+F5+F6+F7+F11": "Phi(x,phi^2 y,phi^2 z) = -Phi(x,phi y,phi z)",
}


def analytic_conditions(
    inst: ApaprInstance,
    F: Tensor,
    nabla: Connection,
    nabla_tilde: Connection,
    Phi: Tensor,
) -> dict[str, bool]:
    """Each analytic condition, evaluated from its own definition (F is the g-side tensor)."""
    frame = inst.frame
    E = inst.eta.components
    f = F.components
    fxi = with_xi(inst, f, 2)
    vertical_only = np.einsum("xy,z->xyz", fxi, E) + np.einsum("xz,y->xyz", fxi, E)
    phi_h = np.einsum("xbc,by,cz->xyz", Phi.components, inst.horizontal_projector, inst.horizontal_projector, optimize=True)
    phi_pp = phi_in_slot(inst, phi_in_slot(inst, Phi.components, 1), 2)
    fp = phi_in_slot(inst, phi_in_slot(inst, f, 0), 1)  # F(phi a, phi b, c)
    H = inst.horizontal_projector
    fh = np.einsum("abc,ay,bz->yzc", f, H, H, optimize=True)  # F(phi^2 a, phi^2 b, c)
    tilde_nat = fp + fh - fp.transpose(1, 0, 2) - fh.transpose(1, 0, 2)  # indexed [y, z, x]
    xi = inst.xi
    return {
        "nabla xi = 0": covariant_derivative(nabla, xi).is_zero(),
        "nabla~ xi = 0": covariant_derivative(nabla_tilde, xi).is_zero(),
        "F(x,y,z) = F(x,y,xi)eta(z) + F(x,z,xi)eta(y)": is_zero(_normalize(f - vertical_only)),
        "d eta = 0": d_one_form(frame, inst.eta).is_zero(),
        "L_xi g = 0": lie_derivative_metric(frame, nabla, xi, inst.g).is_zero(),
        "L_xi g~ = 0": lie_derivative_metric(frame, nabla_tilde, xi, inst.g_tilde).is_zero(),
        "Phi(x,phi^2 y,phi^2 z) = -Phi(x,phi y,phi z)": is_zero(_normalize(phi_h + phi_pp)),
        TILDE_SIDE_CONDITIONS["F1+F2+F4+F5+F6+F7+F11"]: is_zero(_normalize(tilde_nat)),
    }


def composite_membership(
    inst: ApaprInstance,
    membership: ClassMembership,
    conditions: dict[str, bool],
    table: dict[str, str] = G_SIDE_CONDITIONS,
) -> dict[str, dict]:
    """Each named composite class by decomposition and by its analytic condition."""
    out = {}
    for name, cond in table.items():
        by_dec = in_class(membership, name)
        by_cond = conditions[cond]
        out[name] = {"condition": cond, "decomposition": by_dec, "analytic": by_cond, "agree": by_dec == by_cond}
    return out


def classify_instance(
    inst: ApaprInstance,
    nabla: Connection | None = None,
    *,
    tilde: bool = False,
    F: Tensor | None = None,
    forms: LeeForms | None = None,
) -> ClassMembership:
    """Basic membership of the g-manifold (or of the g~-manifold with ``tilde``)."""
    metric = inst.g_tilde if tilde else inst.g
    if F is None:
        nabla = nabla or koszul_levi_civita(inst.frame, metric)
        F = compute_F(inst, nabla, metric)
    forms = forms or lee_forms(inst, F, metric)
    dec = decompose(inst, F, forms.theta, forms.theta_star, forms.omega, metric)
    return basic_membership(dec, inst, F, metric)

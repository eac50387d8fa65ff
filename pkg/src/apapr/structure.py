"""Almost paracontact almost paracomplex Riemannian structures on a Lie frame."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lie_frame import LieFrame
from .scalar_tensor import (
    Tensor,
    TensorError,
    _array_equal,
    identity,
    inertia,
    inverse_metric,
    leading_minors,
)

__all__ = ["ApaprInstance", "StructureError", "build_instance", "project", "associated_metric"]


class StructureError(ValueError):
    """Raised with every violated axiom listed by name in ``violations``."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid structure: " + "; ".join(self.violations))


@dataclass(frozen=True, eq=False)
class ApaprInstance:
    frame: LieFrame
    phi: Tensor
    xi: Tensor
    eta: Tensor
    g: Tensor
    g_tilde: Tensor = field(repr=False)
    g_inv: Tensor = field(repr=False)
    g_tilde_inv: Tensor = field(repr=False)

    @property
    def n(self) -> int:
        return self.frame.n

    @property
    def dim(self) -> int:
        return self.frame.dim

    @property
    def horizontal_projector(self) -> np.ndarray:
        P = self.phi.components
        return P.dot(P)

    @property
    def vertical_projector(self) -> np.ndarray:
        return np.multiply.outer(self.xi.components, self.eta.components)

    def inverse_of(self, metric: Tensor) -> Tensor:
        if metric is self.g or metric == self.g:
            return self.g_inv
        if metric is self.g_tilde or metric == self.g_tilde:
            return self.g_tilde_inv
        return inverse_metric(metric)


def _structure_violations(frame, phi, xi, eta, g) -> list[str]:
    dim = frame.dim
    errors = []
    for name, t, rank in (("phi", phi, (1, 1)), ("xi", xi, (1, 0)), ("eta", eta, (0, 1)), ("g", g, (0, 2))):
        if t.rank != rank:
            errors.append(f"{name} must be a {rank} tensor, got {t.rank}")
        elif t.dim != dim:
            errors.append(f"{name} has dimension {t.dim}, frame has {dim}")
    if errors:
        return errors
    P, X, E, G = phi.components, xi.components, eta.components, g.components
    zero_vec = np.zeros(dim, dtype=object)
    if not _array_equal(P.dot(X), zero_vec):
        errors.append("phi xi != 0")
    if not _array_equal(P.dot(P), identity(dim) - np.multiply.outer(X, E)):
        errors.append("phi^2 != I - eta (x) xi")
    if not _array_equal(E.dot(P), zero_vec):
        errors.append("eta o phi != 0")
    if E.dot(X) != 1:
        errors.append("eta(xi) != 1")
    if np.trace(P) != 0:
        errors.append("tr phi != 0")
    if not _array_equal(G, G.T):
        errors.append("g not symmetric")
    elif not all(m > 0 for m in leading_minors(G)):
        errors.append("g not positive definite")
    if not _array_equal(P.T.dot(G).dot(P), G - np.multiply.outer(E, E)):
        errors.append("g(phi x, phi y) != g(x,y) - eta(x)eta(y)")
    if not _array_equal(G.dot(X), E):
        errors.append("g(x, xi) != eta(x)")
    return errors


def build_instance(frame: LieFrame, phi: Tensor, xi: Tensor, eta: Tensor, g: Tensor) -> ApaprInstance:
    """Validate every axiom exactly and derive ``g_tilde`` and both inverses.

    All violations are collected and raised together as a StructureError.
    """
    errors = _structure_violations(frame, phi, xi, eta, g)
    if errors:
        raise StructureError(errors)
    gt = _associated(phi, eta, g)
    n = frame.n
    pos, neg, null = inertia(gt.components)
    if null:
        raise StructureError([f"g_tilde degenerate (inertia {pos},{neg},{null})"])
    if (pos, neg) != (n + 1, n):
        raise StructureError([f"g_tilde has signature ({pos},{neg}), expected ({n + 1},{n})"])
    try:
        g_inv = inverse_metric(g)
        gt_inv = inverse_metric(gt)
    except TensorError as exc:  # unreachable for valid input
        raise StructureError([str(exc)]) from exc
    return ApaprInstance(frame, phi, xi, eta, g, gt, g_inv, gt_inv)


def _associated(phi: Tensor, eta: Tensor, g: Tensor) -> Tensor:
    E = eta.components
    return Tensor(g.components.dot(phi.components) + np.multiply.outer(E, E), 0, 2, symmetric=[(0, 1)])


def associated_metric(inst: ApaprInstance) -> Tensor:
    """g~(x,y) = g(x, phi y) + eta(x) eta(y), with its compatibility re-checked."""
    gt = _associated(inst.phi, inst.eta, inst.g)
    P, E = inst.phi.components, inst.eta.components
    if not _array_equal(P.T.dot(gt.components).dot(P), gt.components - np.multiply.outer(E, E)):
        raise StructureError(["g~(phi x, phi y) != g~(x,y) - eta(x)eta(y)"])
    return gt


def project(inst: ApaprInstance, x: Tensor, which: str) -> Tensor:
    """Horizontal part phi^2 x or vertical part eta(x) xi."""
    if x.rank != (1, 0):
        raise TensorError("project takes a vector")
    if which == "horizontal":
        return Tensor(inst.horizontal_projector.dot(x.components), 1, 0)
    if which == "vertical":
        return Tensor(inst.vertical_projector.dot(x.components), 1, 0)
    raise ValueError(f"which must be 'horizontal' or 'vertical', got {which!r}")


def vector(dim: int, index: int, value=1) -> Tensor:
    """value * E_index."""
    out = np.array([Fraction(0)] * dim, dtype=object)
    out[index] = Fraction(value)
    return Tensor(out, 1, 0)

"""Left-invariant calculus on a Lie algebra with a fixed frame ``E_0 .. E_2n``.

Every tensor field has constant components in the frame, so derivatives of
components vanish and only connection coefficients and structure constants
enter the formulas.

Conventions: ``[E_i, E_j] = C[k, i, j] E_k`` and
``nabla_{E_i} E_j = Gamma[k, i, j] E_k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from string import ascii_letters

import numpy as np

from .scalar_tensor import (
    Tensor,
    as_scalar,
    TensorError,
    _array_equal,
    _normalize,
    format_scalar,
    inverse_metric,
    is_zero,
    parse_scalar,
    zeros,
)

__all__ = [
    "LieFrame",
    "Connection",
    "FrameError",
    "bracket",
    "koszul_levi_civita",
    "covariant_derivative",
    "torsion",
    "d_one_form",
    "lie_derivative_metric",
    "divergence",
    "weitzenbock",
]


class FrameError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LieFrame:
    """Structure constants of a (2n+1)-dimensional Lie algebra, validated."""

    n: int
    structure_constants: np.ndarray

    def __post_init__(self):
        c = _normalize(self.structure_constants)
        dim = 2 * self.n + 1
        if self.n < 1:
            raise FrameError(f"n must be positive, got {self.n}")
        if c.shape != (dim, dim, dim):
            raise FrameError(f"structure constants must have shape {(dim,) * 3}, got {c.shape}")
        if not _array_equal(c, -c.transpose(0, 2, 1)):
            raise FrameError("structure constants are not antisymmetric in the lower indices")
        jac = jacobiator(c)
        if not is_zero(jac):
            bad = next(idx for idx, v in np.ndenumerate(jac) if v != 0)
            raise FrameError(f"Jacobi identity fails: component (m,i,j,l)={bad} is {format_scalar(jac[bad])}")
        c.setflags(write=False)
        object.__setattr__(self, "structure_constants", c)

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @classmethod
    def abelian(cls, n: int) -> "LieFrame":
        return cls(n, zeros(2 * n + 1, 3))

    @classmethod
    def from_triples(cls, dim: int, triples) -> "LieFrame":
        """Build from sparse ``{"i", "j", "k", "value"}`` entries with i < j,
        meaning ``[E_i, E_j]`` has ``value`` along ``E_k``."""
        if dim % 2 != 1 or dim < 3:
            raise FrameError(f"frame dimension must be odd and >= 3, got {dim}")
        c = zeros(dim, 3)
        for t in triples:
            i, j, k = int(t["i"]), int(t["j"]), int(t["k"])
            if not i < j:
                raise FrameError(f"triple needs i < j, got i={i}, j={j}")
            if not all(0 <= v < dim for v in (i, j, k)):
                raise FrameError(f"triple index out of range for dim {dim}: {(i, j, k)}")
            v = parse_scalar(t["value"])
            c[k, i, j] += v
            c[k, j, i] -= v
        return cls((dim - 1) // 2, c)

    def to_triples(self) -> list[dict]:
        c = self.structure_constants
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if c[k, i, j] != 0:
                        out.append({"i": i, "j": j, "k": k, "value": format_scalar(c[k, i, j])})
        return out


def jacobiator(c: np.ndarray) -> np.ndarray:
    """J[m,i,j,l] = m-component of [[e_i,e_j],e_l] + cyclic."""
    first = np.einsum("pij,mpl->mijl", c, c)
    return _normalize(first + first.transpose(0, 2, 3, 1) + first.transpose(0, 3, 1, 2))


@dataclass(frozen=True, eq=False)
class Connection:
    """Coefficients ``Gamma[k, i, j]`` with ``nabla_{e_i} e_j = Gamma[k,i,j] e_k``.

    Not a tensor, so it carries no variance bookkeeping.  Equality is
    coefficient equality in the fixed frame.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        g = _normalize(self.coefficients)
        if g.ndim != 3 or len(set(g.shape)) != 1:
            raise TensorError(f"connection coefficients need shape (d,d,d), got {g.shape}")
        g.setflags(write=False)
        object.__setattr__(self, "coefficients", g)

    @property
    def dim(self) -> int:
        return self.coefficients.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Connection):
            return NotImplemented
        return _array_equal(self.coefficients, other.coefficients)

    __hash__ = None

    def __add__(self, potential: Tensor) -> "Connection":
        if not isinstance(potential, Tensor) or potential.rank != (1, 2):
            return NotImplemented
        return Connection(self.coefficients + potential.components)

    def __sub__(self, other: "Connection") -> Tensor:
        """Potential of ``self`` with respect to ``other`` as a (1,2) tensor."""
        if not isinstance(other, Connection):
            return NotImplemented
        return Tensor(self.coefficients - other.coefficients, 1, 2)

    def is_zero(self) -> bool:
        return is_zero(self.coefficients)

    def apply(self, x, y) -> np.ndarray:
        """Components of nabla_x y for constant-component vectors x, y."""
        return _normalize(np.einsum("kij,i,j->k", self.coefficients, _vec(x), _vec(y), optimize=True))

    def nonzero(self) -> list[tuple[tuple[int, int, int], Fraction]]:
        return [(idx, v) for idx, v in np.ndenumerate(self.coefficients) if v != 0]


def weitzenbock(dim: int) -> Connection:
    """The flat connection of the parallelization (all coefficients zero)."""
    return Connection(zeros(dim, 3))


def _vec(x) -> np.ndarray:
    if isinstance(x, Tensor):
        return x.components
    return np.asarray(x, dtype=object)


def bracket(frame: LieFrame, x: Tensor, y: Tensor) -> Tensor:
    for v in (x, y):
        if v.rank != (1, 0):
            raise TensorError("bracket takes two vectors")
        if v.dim != frame.dim:
            raise TensorError(f"dimension mismatch: vector {v.dim}, frame {frame.dim}")
    c = frame.structure_constants
    return Tensor(np.einsum("kij,i,j->k", c, x.components, y.components, optimize=True), 1, 0)


def koszul_levi_civita(frame: LieFrame, metric: Tensor) -> Connection:
    """Levi-Civita connection of a left-invariant metric.

    2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)
    """
    ginv = inverse_metric(metric).components
    g = metric.components
    c = frame.structure_constants
    xy = np.einsum("mij,ml->ijl", c, g)  # g([e_i,e_j], e_l)
    yz = np.einsum("mjl,mi->ijl", c, g)  # g([e_j,e_l], e_i)
    zx = np.einsum("mli,mj->ijl", c, g)  # g([e_l,e_i], e_j)
    lowered = (xy - yz + zx) * Fraction(1, 2)
    return Connection(np.einsum("kl,ijl->kij", ginv, lowered))


def covariant_derivative(conn: Connection, t: Tensor) -> Tensor:
    """nabla t for a constant-component tensor.

    The derivative direction becomes the first covariant slot, so for a
    (p,q) input the result is (p, q+1) with components
    ``[a_1..a_p, i, b_1..b_q] = ((nabla_{e_i} t))^{a..}_{b..}``.
    """
    p, q = t.rank
    if t.dim != conn.dim:
        raise TensorError(f"dimension mismatch: tensor {t.dim}, connection {conn.dim}")
    G = conn.coefficients
    arr = t.components
    letters = ascii_letters[: p + q + 2]
    idx = list(letters[: p + q])
    d, s = letters[p + q], letters[p + q + 1]
    out_spec = "".join(idx[:p]) + d + "".join(idx[p:])
    total = zeros(conn.dim, p + q + 1)
    for slot in range(p):
        src = idx.copy()
        src[slot] = s
        total = total + np.einsum(f"{idx[slot]}{d}{s},{''.join(src)}->{out_spec}", G, arr)
    for slot in range(p, p + q):
        src = idx.copy()
        src[slot] = s
        total = total - np.einsum(f"{s}{d}{idx[slot]},{''.join(src)}->{out_spec}", G, arr)
    return Tensor(total, p, q + 1)


def torsion(frame: LieFrame, conn: Connection) -> Tensor:
    """T(x,y) = nabla_x y - nabla_y x - [x,y] as a (1,2) tensor."""
    G = conn.coefficients
    return Tensor(G - G.transpose(0, 2, 1) - frame.structure_constants, 1, 2)


def d_one_form(frame: LieFrame, alpha: Tensor) -> Tensor:
    """Exterior derivative of a left-invariant 1-form, ``d alpha(x,y) = -alpha([x,y])``.

    No 1/2 factor: this equals (nabla_x alpha)y - (nabla_y alpha)x for any
    torsion-free nabla.
    """
    if alpha.rank != (0, 1):
        raise TensorError("d_one_form expects a (0,1) tensor")
    out = -np.einsum("k,kij->ij", alpha.components, frame.structure_constants)
    return Tensor(out, 0, 2, antisymmetric=[(0, 1)])


def lie_derivative_metric(frame: LieFrame, conn: Connection, xi: Tensor, metric: Tensor) -> Tensor:
    """(L_xi g)(x,y) = g(nabla_x xi, y) + g(x, nabla_y xi).

    Valid when ``conn`` is the Levi-Civita connection of ``metric``.
    """
    dxi = np.einsum("kic,c->ki", conn.coefficients, xi.components)  # (nabla_{e_i} xi)^k
    g = metric.components
    half = np.einsum("ki,kj->ij", dxi, g)
    return Tensor(half + half.T, 0, 2, symmetric=[(0, 1)])


def divergence(frame: LieFrame, conn: Connection, metric: Tensor, obj: Tensor) -> Fraction:
    """Divergence of a vector field or a 1-form.

    Vector: ``g^{ij} g(nabla_{e_i} X, e_j)``, the trace of nabla X.
    1-form: ``metric^{ij} (nabla_{e_i} alpha)(e_j)``.  When ``conn`` is
    compatible with ``metric`` this is the divergence of the metric dual; with
    the g-connection and ``metric = g~`` it is the associated divergence
    div*, so that theta(xi) = -div*(eta).
    """
    if obj.rank == (0, 1):
        nabla_alpha = covariant_derivative(conn, obj).components
        return as_scalar(np.einsum("ij,ij->", inverse_metric(metric).components, nabla_alpha))
    if obj.rank != (1, 0):
        raise TensorError("divergence takes a vector or a 1-form")
    dx = np.einsum("kic,c->ki", conn.coefficients, obj.components)
    return Fraction(np.trace(dx))

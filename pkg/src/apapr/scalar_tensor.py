"""Exact rational scalars and dense tensors over a fixed frame.

Scalars are :class:`fractions.Fraction`.  A :class:`Tensor` wraps a numpy
object array of Fractions whose axes are ordered contravariant slots first,
then covariant slots, each group left to right as the arguments appear in a
formula.  So ``phi`` is stored as ``P[a, b]`` with ``phi(e_b) = P[a, b] e_a``
and a (0,3) tensor ``F(x, y, z)`` as ``F[x, y, z]``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

import numpy as np

__all__ = [
    "Scalar",
    "Tensor",
    "TensorError",
    "SingularMetricError",
    "ScalarParseError",
    "parse_scalar",
    "format_scalar",
    "frac_array",
    "zeros",
    "identity",
    "is_zero",
    "contract",
    "raise_lower",
    "sym_alt",
    "cyclic_sum",
    "determinant",
    "inverse_matrix",
    "inverse_metric",
    "leading_minors",
    "matrix_rank",
    "as_scalar",
    "inertia",
]

Scalar = Fraction

_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class TensorError(ValueError):
    pass


class SingularMetricError(TensorError):
    def __init__(self, det: Fraction, message: str = "metric is singular"):
        super().__init__(f"{message} (determinant {format_scalar(det)})")
        self.determinant = det


class ScalarParseError(ValueError):
    pass


def parse_scalar(value) -> Fraction:
    """Parse an exact scalar from an int, a Fraction or a ``"p/q"`` string.

    Floats and decimal strings are refused: a manifest must not smuggle in
    rounding.
    """
    if isinstance(value, bool):
        raise ScalarParseError(f"booleans are not scalars: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _SCALAR_RE.match(value)
        if not m:
            raise ScalarParseError(f"not an exact rational 'p/q': {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ScalarParseError(f"zero denominator: {value!r}")
        return Fraction(num, den)
    raise ScalarParseError(f"unsupported scalar {value!r} ({type(value).__name__})")


def format_scalar(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def frac_array(data) -> np.ndarray:
    """Object array of Fractions from any nested sequence / array."""
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = v if isinstance(v, Fraction) else parse_scalar(v)
    return out


def as_scalar(v) -> Fraction:
    """A full contraction as a Fraction (einsum may hand back a 0-d array)."""
    if isinstance(v, np.ndarray):
        v = v.item()
    return Fraction(v)


def _normalize(arr) -> np.ndarray:
    # einsum on object arrays may hand back plain ints (e.g. empty sums)
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v)
    return out


def zeros(dim: int, rank: int) -> np.ndarray:
    out = np.empty((dim,) * rank, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(dim: int) -> np.ndarray:
    out = zeros(dim, 2)
    for i in range(dim):
        out[i, i] = Fraction(1)
    return out


def is_zero(arr) -> bool:
    if isinstance(arr, Tensor):
        arr = arr.components
    return all(v == 0 for v in np.asarray(arr, dtype=object).flat)


class Tensor:
    """Dense exact tensor with ``contravariant_rank`` upper and
    ``covariant_rank`` lower slots.

    ``symmetric`` / ``antisymmetric`` take pairs of covariant slot indices;
    the requested symmetries are verified on construction.
    """

    __slots__ = ("components", "contravariant_rank", "covariant_rank")

    def __init__(
        self,
        components,
        contravariant_rank: int,
        covariant_rank: int,
        *,
        symmetric: Iterable[tuple[int, int]] = (),
        antisymmetric: Iterable[tuple[int, int]] = (),
    ):
        arr = _normalize(components)
        rank = contravariant_rank + covariant_rank
        if arr.ndim != rank:
            raise TensorError(
                f"component array has {arr.ndim} axes, expected {rank} "
                f"for a ({contravariant_rank},{covariant_rank}) tensor"
            )
        if rank and len(set(arr.shape)) != 1:
            raise TensorError(f"all axes must share the frame size, got {arr.shape}")
        for pair, sign in [(p, 1) for p in symmetric] + [(p, -1) for p in antisymmetric]:
            a, b = (contravariant_rank + s for s in pair)
            if not _array_equal(arr, sign * np.swapaxes(arr, a, b)):
                kind = "symmetric" if sign == 1 else "antisymmetric"
                raise TensorError(f"tensor is not {kind} in covariant slots {pair}")
        arr.setflags(write=False)
        self.components = arr
        self.contravariant_rank = contravariant_rank
        self.covariant_rank = covariant_rank

    @property
    def dim(self) -> int:
        return self.components.shape[0] if self.components.ndim else 0

    @property
    def rank(self) -> tuple[int, int]:
        return (self.contravariant_rank, self.covariant_rank)

    def _same_kind(self, other: "Tensor"):
        if not isinstance(other, Tensor):
            return NotImplemented
        if self.rank != other.rank or self.components.shape != other.components.shape:
            raise TensorError(f"tensor kinds differ: {self.rank} vs {other.rank}")

    def __add__(self, other):
        if self._same_kind(other) is NotImplemented:
            return NotImplemented
        return Tensor(self.components + other.components, *self.rank)

    def __sub__(self, other):
        if self._same_kind(other) is NotImplemented:
            return NotImplemented
        return Tensor(self.components - other.components, *self.rank)

    def __neg__(self):
        return Tensor(-self.components, *self.rank)

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return Tensor(self.components * Fraction(k), *self.rank)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.rank == other.rank and _array_equal(self.components, other.components)

    __hash__ = None

    def __getitem__(self, idx):
        return self.components[idx]

    def is_zero(self) -> bool:
        return is_zero(self.components)

    def to_nested(self):
        """Row-major nested lists of ``"p/q"`` strings (a bare string for rank 0)."""
        if self.components.ndim == 0:
            return format_scalar(self.components[()])
        return _nest(self.components)

    @classmethod
    def from_nested(cls, data, contravariant_rank: int, covariant_rank: int) -> "Tensor":
        return cls(frac_array(data), contravariant_rank, covariant_rank)

    def nonzero(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(idx, v) for idx, v in np.ndenumerate(self.components) if v != 0]

    def __repr__(self):
        return f"Tensor({self.rank}, dim={self.dim}, nonzero={len(self.nonzero())})"


def _nest(arr):
    if arr.ndim == 1:
        return [format_scalar(v) for v in arr]
    return [_nest(sub) for sub in arr]


def _array_equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def contract(t: Tensor, upper_slot: int, lower_slot: int) -> Tensor:
    """Trace contravariant slot ``upper_slot`` against covariant slot ``lower_slot``."""
    p, q = t.rank
    if not (0 <= upper_slot < p):
        raise TensorError(f"upper_slot {upper_slot} is not a contravariant slot of a {t.rank} tensor")
    if not (0 <= lower_slot < q):
        raise TensorError(f"lower_slot {lower_slot} is not a covariant slot of a {t.rank} tensor")
    out = np.trace(t.components, axis1=upper_slot, axis2=p + lower_slot)
    return Tensor(out, p - 1, q - 1)


def raise_lower(
    t: Tensor,
    slot: int,
    metric: Tensor,
    direction: str,
    position: int | None = None,
) -> Tensor:
    """Flip the variance of one slot with ``metric`` (or its exact inverse).

    ``direction="up"`` raises covariant slot ``slot``; the new contravariant
    slot goes to ``position`` among the upper slots (default: last).
    ``direction="down"`` lowers contravariant slot ``slot``; the new covariant
    slot goes to ``position`` among the lower slots (default: first).
    """
    if metric.rank != (0, 2):
        raise TensorError("metric must be a (0,2) tensor")
    if metric.dim != t.dim:
        raise TensorError(f"dimension mismatch: tensor {t.dim}, metric {metric.dim}")
    m = metric.components
    if not _array_equal(m, m.T):
        raise TensorError("metric is not symmetric")
    p, q = t.rank
    arr = t.components
    if direction == "up":
        if not (0 <= slot < q):
            raise TensorError(f"no covariant slot {slot} in a {t.rank} tensor")
        inv = inverse_metric(metric).components
        moved = np.tensordot(arr, inv, axes=([p + slot], [0]))  # new index is last axis
        pos = p if position is None else position
        out = np.moveaxis(moved, -1, pos)
        return Tensor(out, p + 1, q - 1)
    if direction == "down":
        if not (0 <= slot < p):
            raise TensorError(f"no contravariant slot {slot} in a {t.rank} tensor")
        moved = np.tensordot(arr, m, axes=([slot], [0]))
        pos = (p - 1) + (0 if position is None else position)
        out = np.moveaxis(moved, -1, pos)
        return Tensor(out, p - 1, q + 1)
    raise TensorError(f"direction must be 'up' or 'down', got {direction!r}")


def sym_alt(t: Tensor, mode: str) -> Tensor:
    if t.rank != (0, 2):
        raise TensorError("sym_alt expects a (0,2) tensor")
    c = t.components
    if mode == "symmetric":
        return Tensor((c + c.T) * Fraction(1, 2), 0, 2)
    if mode == "antisymmetric":
        return Tensor((c - c.T) * Fraction(1, 2), 0, 2)
    raise TensorError(f"mode must be 'symmetric' or 'antisymmetric', got {mode!r}")


def cyclic_sum(t: Tensor) -> Tensor:
    """t(x,y,z) + t(y,z,x) + t(z,x,y)."""
    if t.rank != (0, 3):
        raise TensorError("cyclic_sum expects a (0,3) tensor")
    c = t.components
    return Tensor(c + c.transpose(1, 2, 0) + c.transpose(2, 0, 1), 0, 3)


def _square(m) -> np.ndarray:
    m = m.components if isinstance(m, Tensor) else m
    m = _normalize(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise TensorError(f"expected a square matrix, got shape {m.shape}")
    return m


def determinant(m) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    a = _square(m).copy()
    n = a.shape[0]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r, col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det *= a[col, col]
        for r in range(col + 1, n):
            if a[r, col] != 0:
                a[r] = a[r] - a[col] * (a[r, col] / a[col, col])
    return det


def inverse_matrix(m) -> np.ndarray:
    """Exact Gauss-Jordan inverse; raises SingularMetricError if singular."""
    a = _square(m)
    n = a.shape[0]
    aug = np.hstack([a.copy(), identity(n)])
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col] != 0), None)
        if pivot is None:
            raise SingularMetricError(determinant(a), "matrix is singular")
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(n):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[col] * aug[r, col]
    return _normalize(aug[:, n:])


def inverse_metric(metric: Tensor) -> Tensor:
    """Exact inverse ``g^{ij}`` of a symmetric nondegenerate (0,2) tensor.

    Works for indefinite metrics.
    """
    if metric.rank != (0, 2):
        raise TensorError("inverse_metric expects a (0,2) tensor")
    m = metric.components
    if not _array_equal(m, m.T):
        raise TensorError("metric is not symmetric")
    det = determinant(m)
    if det == 0:
        raise SingularMetricError(det)
    return Tensor(inverse_matrix(m), 2, 0)


def matrix_rank(rows) -> int:
    """Rank of a list of row vectors (any rectangular shape)."""
    a = _normalize(np.array([list(r) for r in rows], dtype=object))
    if a.size == 0:
        return 0
    a = a.copy()
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r, col] != 0), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(rank + 1, nrows):
            if a[r, col] != 0:
                a[r] = a[r] - a[rank] * (a[r, col] / a[rank, col])
        rank += 1
        if rank == nrows:
            break
    return rank


def leading_minors(m) -> list[Fraction]:
    a = _square(m)
    return [determinant(a[:k, :k]) for k in range(1, a.shape[0] + 1)]


def inertia(m) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix.

    Symmetric Gaussian elimination by congruence; a zero diagonal pivot with a
    nonzero off-diagonal entry is repaired by adding the partner row/column.
    """
    a = _square(m).copy()
    if not _array_equal(a, a.T):
        raise TensorError("inertia needs a symmetric matrix")
    n = a.shape[0]
    pos = neg = 0
    k = 0
    while k < n:
        sub = a[k:, k:]
        if is_zero(sub):
            break
        piv = next((r for r in range(k, n) if a[r, r] != 0), None)
        if piv is None:
            # all diagonal entries zero: x -> x + y on a coupled pair makes one
            r, c = next((r, c) for r in range(k, n) for c in range(r + 1, n) if a[r, c] != 0)
            a[r] = a[r] + a[c]
            a[:, r] = a[:, r] + a[:, c]
            piv = r
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            a[:, [k, piv]] = a[:, [piv, k]]
        d = a[k, k]
        for r in range(k + 1, n):
            if a[r, k] != 0:
                f = a[r, k] / d
                a[r] = a[r] - f * a[k]
                a[:, r] = a[:, r] - f * a[:, k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos, neg, n - pos - neg


from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apapr.scalar_tensor import (
    ScalarParseError,
    SingularMetricError,
    Tensor,
    TensorError,
    contract,
    cyclic_sum,
    determinant,
    format_scalar,
    identity,
    inertia,
    inverse_metric,
    parse_scalar,
    raise_lower,
    sym_alt,
    zeros,
)
from apapr.structure import associated_metric
from apapr.fundamental import with_xi
from conftest import family, family_analysis
from oracles import g_tilde, nabla_table

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def arrays(shape):
    size = int(np.prod(shape))
    return st.lists(fractions, min_size=size, max_size=size).map(lambda xs: np.array(xs, dtype=object).reshape(shape))


# --- scalars -------------------------------------------------------------------


@pytest.mark.parametrize("text, value", [("1/2", Fraction(1, 2)), ("-3", Fraction(-3)), (" 4 / 6 ", Fraction(2, 3)), (7, Fraction(7))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["1/0", "0.5", 0.5, "abc", True, None, "1/-2"])
def test_parse_scalar_refuses(bad):
    with pytest.raises(ScalarParseError):
        parse_scalar(bad)


@given(fractions)
def test_format_parse_roundtrip(q):
    assert parse_scalar(format_scalar(q)) == q


# --- contract -------------------------------------------------------------------


def test_contract_identity_trace():
    t = contract(Tensor(identity(3), 1, 1), 0, 0)
    assert t.rank == (0, 0) and t.components.item() == 3


def test_contract_phi_trace_zero():
    assert contract(family(1, 2).phi, 0, 0).components.item() == 0


def test_trace_of_shape_operator_zero_on_family():
    an = family_analysis(1, 2)
    G = nabla_table(1, 2)
    hand = -sum(G[k, k, 0] for k in range(3))  # S = -nabla xi, summed along the diagonal
    assert contract(an.pair.S, 0, 0).components.item() == hand == 0


# --- raise / lower ----------------------------------------------------------------


def test_raise_eta_gives_xi():
    inst = family(1, 2)
    assert raise_lower(inst.eta, 0, inst.g, "up") == inst.xi


def test_raise_eta_with_g_tilde_gives_xi():
    inst = family(3, -1)
    assert raise_lower(inst.eta, 0, inst.g_tilde, "up") == inst.xi


@given(arrays((3,)))
def test_raise_lower_roundtrip(a):
    g = family(1, 2).g_tilde
    t = Tensor(a, 0, 1)
    assert raise_lower(raise_lower(t, 0, g, "up"), 0, g, "down") == t


def test_omega_raised_is_zero_on_family():
    an = family_analysis(1, 2)
    assert raise_lower(an.fund.omega, 0, an.inst.g, "up").is_zero()


# --- sym / alt -----------------------------------------------------------------


def test_sym_of_antisymmetric_is_zero():
    a = Tensor(np.array([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]], dtype=object), 0, 2)
    assert sym_alt(a, "symmetric").is_zero()


def test_alt_of_family_F_xi_slice():
    an = family_analysis(1, 0)
    A = Tensor(with_xi(an.inst, an.fund.F.components, 2), 0, 2)
    alt = sym_alt(A, "antisymmetric").components
    assert alt[1, 2] == -1 and alt[2, 1] == 1  # F_120 = -a1, F_210 = a1


def test_alt_of_metric_is_zero():
    assert sym_alt(family(1, 2).g, "antisymmetric").is_zero()


@given(arrays((4, 4)))
def test_sym_plus_alt_is_identity(a):
    t = Tensor(a, 0, 2)
    assert sym_alt(t, "symmetric") + sym_alt(t, "antisymmetric") == t


# --- cyclic sum ----------------------------------------------------------------


def test_cyclic_sum_zero():
    assert cyclic_sum(Tensor(zeros(3, 3), 0, 3)).is_zero()


def test_cyclic_sum_family_components():
    F = family_analysis(1, 0).fund.F
    c = cyclic_sum(F).components
    assert c[1, 2, 0] == 0  # -1 + 1 + 0
    assert c[1, 1, 0] == 0


def test_cyclic_sum_of_totally_symmetric():
    v = np.array([Fraction(1), Fraction(2), Fraction(-1, 3)], dtype=object)
    t = Tensor(np.einsum("i,j,k->ijk", v, v, v), 0, 3)
    assert cyclic_sum(t) == t * 3


@given(arrays((3, 3, 3)))
@settings(max_examples=40)
def test_cyclic_sum_is_cyclic(a):
    c = cyclic_sum(Tensor(a, 0, 3)).components
    assert all(c[x, y, z] == c[y, z, x] for x in range(3) for y in range(3) for z in range(3))


# --- inverse / inertia ----------------------------------------------------------


def test_inverse_of_identity():
    assert inverse_metric(family(1, 2).g).components.tolist() == identity(3).tolist()


def test_inverse_of_g_tilde_is_itself():
    gt = associated_metric(family(1, 2))
    assert gt.components.tolist() == g_tilde().tolist()
    assert inverse_metric(gt).components.tolist() == g_tilde().tolist()


def test_inverse_of_degenerate_raises():
    m = Tensor(np.diag([Fraction(1), Fraction(1), Fraction(0)]), 0, 2)
    with pytest.raises(SingularMetricError):
        inverse_metric(m)


@given(arrays((3, 3)))
def test_inverse_times_metric(a):
    m = a + a.T
    if determinant(m) == 0:
        return
    inv = inverse_metric(Tensor(m, 0, 2)).components
    assert (inv.dot(m) == identity(3)).all()


def test_inertia_of_g_tilde():
    assert inertia(g_tilde()) == (2, 1, 0)


def test_tensor_symmetry_checked_on_construction():
    with pytest.raises(TensorError):
        Tensor(np.array([[0, 1], [2, 0]], dtype=object), 0, 2, symmetric=[(0, 1)])

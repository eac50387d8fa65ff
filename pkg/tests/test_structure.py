from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apapr.family import canonical_structure, family_frame, FamilyParams
from apapr.scalar_tensor import Tensor, inertia
from apapr.structure import StructureError, associated_metric, build_instance, project
from conftest import E, family, vec
from oracles import g_tilde


def _parts(n=1):
    return family_frame(FamilyParams(n, (1, 2) if n == 1 else (1, 0, 0, 2))), *canonical_structure(n)


def test_family_data_is_valid():
    inst = build_instance(*_parts())
    assert inst.dim == 3 and inst.n == 1


def test_indefinite_g_rejected():
    frame, phi, xi, eta, _ = _parts()
    g = Tensor(np.diag([Fraction(1), Fraction(1), Fraction(-1)]), 0, 2)
    with pytest.raises(StructureError) as exc:
        build_instance(frame, phi, xi, eta, g)
    assert "g not positive definite" in exc.value.violations


def test_bad_phi_lists_both_axioms():
    frame, _, xi, eta, g = _parts()
    P = np.array([[Fraction(0)] * 3 for _ in range(3)], dtype=object)
    P[1, 1] = P[1, 2] = P[2, 1] = Fraction(1)  # phi E1 = E1, phi E2 = E1
    with pytest.raises(StructureError) as exc:
        build_instance(frame, Tensor(P, 1, 1), xi, eta, g)
    v = exc.value.violations
    assert "tr phi != 0" in v and "phi^2 != I - eta (x) xi" in v


def test_project_xi_horizontal_zero():
    inst = family(1, 2)
    assert project(inst, inst.xi, "horizontal").is_zero()


def test_project_e1_plus_3xi():
    inst = family(1, 2)
    x = Tensor(vec(3, (1, 1), (0, 3)), 1, 0)
    assert project(inst, x, "horizontal").components.tolist() == E(1).tolist()
    assert project(inst, x, "vertical").components.tolist() == vec(3, (0, 3)).tolist()


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=9), min_size=5, max_size=5))
def test_projections_sum_to_identity(xs):
    inst = family(1, 0, 0, 2)
    x = Tensor(np.array(xs, dtype=object), 1, 0)
    assert project(inst, x, "horizontal") + project(inst, x, "vertical") == x


def test_associated_metric_family():
    inst = family(1, 2)
    gt = associated_metric(inst)
    assert gt.components.tolist() == g_tilde().tolist()
    assert inertia(gt.components) == (2, 1, 0)
    assert gt.components[0, 0] == 1  # g~(xi, xi)
    assert gt.components[0, 1] == 0  # g~(xi, E1)


def test_associated_metric_signature_n2():
    inst = family(1, 0, 0, 2)
    assert inertia(inst.g_tilde.components) == (3, 2, 0)

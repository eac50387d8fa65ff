from fractions import Fraction

import numpy as np
import pytest

from apapr.classify import (
    BASIC_CLASSES,
    basic_membership,
    class_name,
    decompose,
    in_class,
    parse_class,
)
from apapr.fundamental import lee_forms
from apapr.generators import random_instance
from apapr.scalar_tensor import Tensor
from conftest import GRID, GRID_IDS, family, family_analysis


def test_family_decomposition_buckets():
    an = family_analysis(Fraction(3), Fraction(-2))
    dec = an.decomposition
    assert dec.A4.components[1, 1] == 2  # -a2
    assert dec.A9.components[1, 2] == -3  # -a1
    assert dec.A9.components[2, 1] == 3
    for name in ("A5", "A6", "A7", "A8"):
        assert getattr(dec, name).is_zero()
    for t in (dec.comp_F1, dec.comp_F10, dec.comp_F11, dec.remainder_q23):
        assert t.is_zero()


def test_decomposition_of_zero():
    an = family_analysis(0, 0)
    assert all(t.is_zero() for t in an.decomposition.components(an.inst.eta).values())


def test_pure_omega_input_is_F11():
    inst = family(1, 2)
    eta = inst.eta.components
    lam = np.array([Fraction(0), Fraction(2), Fraction(-1, 3)], dtype=object)  # horizontal 1-form
    F = Tensor(np.einsum("x,y,z->xyz", eta, eta, lam) + np.einsum("x,z,y->xyz", eta, eta, lam), 0, 3)
    forms = lee_forms(inst, F)
    dec = decompose(inst, F, forms.theta, forms.theta_star, forms.omega)
    assert dec.comp_F11 == F
    assert all(t.is_zero() for k, t in dec.components(inst.eta).items() if k != "F11")
    assert basic_membership(dec, inst, F).classes == ("F11",)


@pytest.mark.parametrize("a, classes", [((0, 1), ("F4",)), ((1, 0), ("F9",)), ((1, 1), ("F4", "F9")), ((0, 0), ())])
def test_basic_membership_family(a, classes):
    mem = family_analysis(*a).membership
    assert mem.classes == classes
    assert mem.f0 == (classes == ())


@pytest.mark.parametrize("a1, a2", GRID, ids=GRID_IDS)
def test_d_eta_class_flag_always_true_on_family(a1, a2):
    entry = family_analysis(a1, a2).composite["F1+F2+F3+F4+F5+F6+F9+F10"]
    assert entry["decomposition"] and entry["analytic"]


def test_killing_flag_false_for_para_sasakian_member():
    entry = family_analysis(0, 1).composite["F1+F2+F3+F7+F8+F10"]
    assert entry == {"condition": "L_xi g = 0", "decomposition": False, "analytic": False, "agree": True}


def test_vertical_F_flag_true_for_11():
    entry = family_analysis(1, 1).composite["F4+F5+F6+F7+F8+F9+F11"]
    assert entry["decomposition"] and entry["analytic"]


@pytest.mark.parametrize("seed", range(16))
def test_components_reconstruct_F_and_composites_agree(seed):
    from apapr import analyze

    an = analyze(random_instance(300 + seed, n=1 + seed % 2))
    comps = an.decomposition.components(an.inst.eta)
    total = sum((c.components for c in comps.values()), start=np.zeros_like(an.fund.F.components))
    assert (total == an.fund.F.components).all()
    for name in ("F1+F2+F3+F10", "F4+F5+F6+F7+F8+F9+F11", "F1+F2+F3+F4+F5+F6+F9+F10", "F1+F2+F3+F7+F8+F10"):
        assert an.composite[name]["agree"], name


def test_class_names():
    assert class_name(["F9", "F4"]) == "F4+F9"
    assert parse_class("F4+F9") == frozenset({"F4", "F9"})
    assert len(BASIC_CLASSES) == 11


def test_in_class_uses_sums():
    mem = family_analysis(1, 1).membership
    assert in_class(mem, "F4+F5+F6+F7+F8+F9+F11")
    assert not in_class(mem, "F4")

from fractions import Fraction

import numpy as np
import pytest

from apapr import analyze
from apapr.curvature import plane_types, riemann, section_analysis
from apapr.generators import random_instance
from apapr.lie_frame import LieFrame, koszul_levi_civita
from apapr.scalar_tensor import Tensor, TensorError, identity
from conftest import GRID, GRID_IDS, E, family_analysis, vec
from oracles import rho_xi_xi, tau


@pytest.mark.parametrize("a1, a2", GRID, ids=GRID_IDS)
def test_levi_civita_curvature_values(a1, a2):
    c = family_analysis(a1, a2).curvatures.nabla
    s = Fraction(a1) ** 2 + Fraction(a2) ** 2
    assert c.R.components[0, 1, 1, 0] == -s
    assert c.tau == tau(a1, a2) == -2 * s
    assert c.ricci.components[0, 0] == rho_xi_xi(a1, a2)


def test_abelian_curvature_zero():
    f = LieFrame.abelian(1)
    g = Tensor(identity(3), 0, 2)
    assert riemann(f, koszul_levi_civita(f, g), g).is_flat()


@pytest.mark.parametrize("a1, a2", GRID, ids=GRID_IDS)
def test_adapted_curvature_and_relations_family(a1, a2):
    an = family_analysis(a1, a2)
    assert an.curvatures.nabla_par.is_flat()
    assert an.curvatures.nabla_par.tau == 0
    failed = [r.name for r in an.curvature_relations if not r.holds]
    assert failed == []


def test_R_par_relation_both_routes_family_12():
    an = family_analysis(1, 2)
    rel = next(r for r in an.curvature_relations if r.name.startswith("R||("))
    assert rel.holds and all(v == 0 for v in np.asarray(rel.lhs).flat)


def test_tau_par_hand_expansion():
    # tau|| = tau - 2 rho(xi,xi) - tr(S^2) + tr(S)^2 = -2s + 4s - 2s + 0
    an = family_analysis(1, 2)
    s = 5
    S = an.pair.S.components
    trS2 = sum(S.dot(S)[k, k] for k in range(3))
    assert trS2 == 2 * s
    assert an.curvatures.nabla.tau - 2 * an.curvatures.nabla.ricci.components[0, 0] - trS2 == 0


def test_zero_parameters_all_relations_trivial():
    an = family_analysis(0, 0)
    assert all(r.holds for r in an.curvature_relations)
    assert an.curvatures.nabla.is_flat() and an.curvatures.nabla_tilde.is_flat()


@pytest.mark.parametrize("seed", range(10))
def test_curvature_relations_random(seed):
    an = analyze(random_instance(500 + seed, n=1 + seed % 2))
    assert [r.name for r in an.curvature_relations if not r.holds] == []


def test_holomorphic_plane_family_12():
    an = family_analysis(1, 2)
    rep = section_analysis(an.inst, an.curvatures, an.pair, E(1), E(2))
    assert rep.section_type == "phi-holomorphic"
    assert rep.k == 5 and rep.k_par == 0
    assert rep.consistent


def test_xi_section():
    an = family_analysis(1, 2)
    rep = section_analysis(an.inst, an.curvatures, an.pair, E(1), E(0))
    assert rep.section_type == "xi-section"
    assert rep.k_par == 0
    assert rep.k_tilde is None  # span{E1, xi} is degenerate for g~
    assert rep.consistent


def test_sampled_xi_section_for_g_tilde():
    an = family_analysis(1, 2)
    x, y = vec(3, (1, 1), (2, 2)), E(0)
    rep = section_analysis(an.inst, an.curvatures, an.pair, x, y)
    assert rep.k_tilde is not None and rep.k_tilde_par == 0 and rep.k_par == 0


def test_g_tilde_holomorphic_plane_defined():
    an = family_analysis(1, 2)
    gt = an.inst.g_tilde.components
    assert gt[2, 2] * gt[1, 1] - gt[1, 2] ** 2 == -1
    rep = section_analysis(an.inst, an.curvatures, an.pair, E(1), E(2))
    assert rep.k_tilde is not None


def test_plane_types_overlap_and_errors():
    inst = family_analysis(1, 2).inst
    flags = plane_types(inst, E(1), E(2))
    assert flags["phi_holomorphic"] and flags["orthogonal_to_xi"] and not flags["xi_section"]
    with pytest.raises(TensorError):
        plane_types(inst, E(1), E(1) * 2)


def test_totally_real_plane_n2():
    an = family_analysis(1, 0, 0, 2)
    x, y = vec(5, (1, 1)), vec(5, (2, 1))  # g(E1, phi E2) = g(E1, E4) = 0
    rep = section_analysis(an.inst, an.curvatures, an.pair, x, y)
    assert rep.flags["phi_totally_real"] and rep.section_type == "phi-totally-real"
    assert rep.consistent and rep.totally_real_orthogonal_exists

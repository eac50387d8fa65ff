"""One pass over an instance: connections, F, classes, adapted connections, curvature."""
from __future__ import annotations

from dataclasses import dataclass

from .classify import (
    G_SIDE_CONDITIONS,
    TILDE_SIDE_CONDITIONS,
    ClassMembership,
    FDecomposition,
    analytic_conditions,
    basic_membership,
    composite_membership,
    decompose,
)
from .curvature import FourCurvatures, Relation, four_curvatures, svk_curvature_relations
from .fundamental import FundamentalData, fundamental_data
from .lie_frame import Connection, koszul_levi_civita
from .structure import ApaprInstance
from .svk import (
    PhiDerivatives,
    SvkPair,
    build_svk,
    coincidence_predicates,
    hv_components,
    structure_preservation,
    svk_phi_derivative,
)

__all__ = ["Analysis", "analyze"]


@dataclass(frozen=True)
class Analysis:
    inst: ApaprInstance
    nabla: Connection
    nabla_tilde: Connection
    fund: FundamentalData
    decomposition: FDecomposition
    decomposition_tilde: FDecomposition
    membership: ClassMembership
    membership_tilde: ClassMembership
    conditions: dict
    composite: dict
    composite_tilde: dict
    pair: SvkPair
    hv: dict
    phi_derivatives: PhiDerivatives
    coincidence: dict
    preservation: dict
    curvatures: FourCurvatures
    curvature_relations: list[Relation]


def analyze(inst: ApaprInstance) -> Analysis:
    nabla = koszul_levi_civita(inst.frame, inst.g)
    nabla_tilde = koszul_levi_civita(inst.frame, inst.g_tilde)
    fund = fundamental_data(inst, nabla, nabla_tilde)

    lee, lee_t = fund.lee, fund.lee_tilde
    dec = decompose(inst, fund.F, lee.theta, lee.theta_star, lee.omega)
    dec_t = decompose(inst, fund.F_tilde, lee_t.theta, lee_t.theta_star, lee_t.omega, inst.g_tilde)
    mem = basic_membership(dec, inst, fund.F)
    mem_t = basic_membership(dec_t, inst, fund.F_tilde, inst.g_tilde)
    cond = analytic_conditions(inst, fund.F, nabla, nabla_tilde, fund.Phi)

    pair = build_svk(inst, nabla, nabla_tilde)
    curvs = four_curvatures(inst, nabla, nabla_tilde, pair)
    return Analysis(
        inst=inst,
        nabla=nabla,
        nabla_tilde=nabla_tilde,
        fund=fund,
        decomposition=dec,
        decomposition_tilde=dec_t,
        membership=mem,
        membership_tilde=mem_t,
        conditions=cond,
        composite=composite_membership(inst, mem, cond, G_SIDE_CONDITIONS),
        composite_tilde=composite_membership(inst, mem_t, cond, TILDE_SIDE_CONDITIONS),
        pair=pair,
        hv=hv_components(pair, inst, fund.Phi_vec, fund.Phi),
        phi_derivatives=svk_phi_derivative(pair, inst, nabla, fund.Phi_vec),
        coincidence=coincidence_predicates(nabla, nabla_tilde, pair),
        preservation=structure_preservation(inst.frame, inst, pair),
        curvatures=curvs,
        curvature_relations=svk_curvature_relations(inst, nabla, nabla_tilde, pair, curvs),
    )

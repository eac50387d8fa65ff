"""Executable theorem statements.

Every statement is evaluated as a list of items, each computed from its own
definition.  Two kinds exist:

* ``equivalence``: the items are claimed equivalent, so the entry is
  consistent when they are all true or all false;
* ``identity``: every item is claimed to hold, so all must be true.

Disagreement is reported data, never an exception.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np

from .analysis import Analysis
from .classify import TILDE_SIDE_CONDITIONS, in_class
from .curvature import section_analysis
from .family import FamilyParams, expected_class, family_frame
from .lie_frame import covariant_derivative, d_one_form, lie_derivative_metric, weitzenbock
from .scalar_tensor import _array_equal, _normalize, is_zero, matrix_rank
from .svk import cartan_bijection

__all__ = [
    "TheoremEntry",
    "TheoremReport",
    "THEOREM_REGISTRY",
    "theorem_suite",
    "sample_planes",
    "DEFAULT_SECTION_SEED",
]

DEFAULT_SECTION_SEED = 20240917
SAMPLED_PLANES = 6


@dataclass(frozen=True)
class TheoremEntry:
    name: str
    kind: str  # "equivalence" | "identity"
    items: list[tuple[str, bool]]
    applicable: bool = True
    details: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        if not self.applicable:
            return True
        values = [v for _, v in self.items]
        if self.kind == "identity":
            return all(values)
        return len(set(values)) <= 1

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "applicable": self.applicable,
            "consistent": self.consistent,
            "items": [{"condition": c, "value": v} for c, v in self.items],
            "details": self.details,
        }


@dataclass(frozen=True)
class TheoremReport:
    entries: list[TheoremEntry]

    @property
    def consistent(self) -> bool:
        return all(e.consistent for e in self.entries)

    @property
    def inconsistent(self) -> list[str]:
        return [e.name for e in self.entries if not e.consistent]

    def to_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "inconsistent": self.inconsistent,
            "entries": [e.to_dict() for e in self.entries],
        }


# --- small predicates --------------------------------------------------------


def _sym(a) -> bool:
    return _array_equal(_normalize(a), _normalize(a.T))


def _skew(a) -> bool:
    return _array_equal(_normalize(a), _normalize(-a.T))


def _zero(a) -> bool:
    return is_zero(_normalize(a))


def _side(an: Analysis, tilde: bool) -> dict:
    """Per-metric ingredients: Levi-Civita connection, metric, shape data, etc."""
    inst = an.inst
    side = an.pair.tilde_side if tilde else an.pair.g_side
    return {
        "lc": an.nabla_tilde if tilde else an.nabla,
        "metric": inst.g_tilde if tilde else inst.g,
        "side": side,
        "membership": an.membership_tilde if tilde else an.membership,
    }


def _equivalence_items(an: Analysis, tilde: bool) -> dict[str, dict[str, bool]]:
    """Items of the three equivalence lists for one metric (printed classes)."""
    inst = an.inst
    s = _side(an, tilde)
    lc, m, side, mem = s["lc"], s["metric"].components, s["side"], s["membership"]
    t = "~" if tilde else ""
    mname = "g~" if tilde else "g"
    nabla_eta = covariant_derivative(lc, inst.eta).components
    d_eta = d_one_form(inst.frame, inst.eta).components
    eta = inst.eta.components
    Qv = np.einsum("k,kxy->xy", eta, side.potential.components)  # eta(Q||(x,y))
    Tv = np.einsum("ka,aij->kij", inst.vertical_projector, side.torsion.components)
    S = side.shape.components
    S_flat = side.shape_flat.components
    lie = lie_derivative_metric(inst.frame, lc, inst.xi, s["metric"]).components
    adj_left = S.T.dot(m)  # m(Sx, y)
    adj_right = m.dot(S)  # m(x, Sy)
    nabla_xi = covariant_derivative(lc, inst.xi).components

    closed_cls = "F1+F2+F3+F4+F5+F6+F9+F10"
    killing_cls = "F1+F2+F3+F7+F9" if tilde else "F1+F2+F3+F7+F8+F10"
    parallel_cls = "F1+F2+F3+F9" if tilde else "F1+F2+F3+F10"
    conn_equal = an.coincidence["nabla~|| = nabla~" if tilde else "nabla|| = nabla"]
    return {
        "closed": {
            f"nabla{t} eta is symmetric": _sym(nabla_eta),
            "d eta = 0": _zero(d_eta),
            f"Q{t}||v is symmetric": _sym(Qv),
            f"T{t}||v = 0": _zero(Tv),
            f"S{t} is self-adjoint for {mname}": _array_equal(_normalize(adj_left), _normalize(adj_right)),
            f"S{t}_flat is symmetric": _sym(S_flat),
            f"{mname}-manifold in {closed_cls}": in_class(mem, closed_cls),
        },
        "killing": {
            f"nabla{t} eta is skew-symmetric": _skew(nabla_eta),
            f"L_xi {mname} = 0": _zero(lie),
            f"Q{t}||v is skew-symmetric": _skew(Qv),
            f"S{t} is anti-self-adjoint for {mname}": _array_equal(_normalize(adj_left), _normalize(-adj_right)),
            f"S{t}_flat is skew-symmetric": _skew(S_flat),
            f"{mname}-manifold in {killing_cls}": in_class(mem, killing_cls),
        },
        "parallel": {
            f"nabla{t} eta = 0": _zero(nabla_eta),
            f"d eta = 0 and L_xi {mname} = 0": _zero(d_eta) and _zero(lie),
            f"nabla{t} xi = 0": _zero(nabla_xi),
            f"S{t} = 0": _zero(S),
            f"S{t}_flat = 0": _zero(S_flat),
            f"nabla{t}|| = nabla{t}": conn_equal,
            f"{mname}-manifold in {parallel_cls}": in_class(mem, parallel_cls),
        },
    }


def _phi_vertical_form(an: Analysis) -> bool:
    """Phi(x,y) = eta(Phi(x,y)) xi + eta(y) Phi(x,xi)."""
    inst = an.inst
    Ph = an.fund.Phi_vec.components
    xi, eta = inst.xi.components, inst.eta.components
    rhs = np.einsum("a,axy,k->kxy", eta, Ph, xi, optimize=True) + np.einsum("y,kxc,c->kxy", eta, Ph, xi, optimize=True)
    return _array_equal(Ph, _normalize(rhs))


def _phi_symmetric_form(an: Analysis) -> bool:
    """Phi(x,y) = eta(Phi(x,y)) xi + eta(x)eta(y) Phi(xi,xi)."""
    inst = an.inst
    Ph = an.fund.Phi_vec.components
    xi, eta = inst.xi.components, inst.eta.components
    phi_xx = np.einsum("kab,a,b->k", Ph, xi, xi, optimize=True)
    rhs = np.einsum("a,axy,k->kxy", eta, Ph, xi, optimize=True) + np.einsum("x,y,k->kxy", eta, eta, phi_xx, optimize=True)
    return _array_equal(Ph, _normalize(rhs))


def sample_planes(inst, seed: int = DEFAULT_SECTION_SEED, count: int = SAMPLED_PLANES) -> list[tuple[list, list]]:
    """All frame 2-planes, then ``count`` seeded random rational planes and
    ``count`` seeded xi-sections."""
    d = inst.dim
    unit = lambda i: [Fraction(int(k == i)) for k in range(d)]  # noqa: E731
    planes = [(unit(i), unit(j)) for i, j in combinations(range(d), 2)]
    rng = random.Random(seed)
    xi = list(inst.xi.components)

    def rand_vec():
        return [Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(d)]

    made = 0
    while made < count:
        x, y = rand_vec(), rand_vec()
        if matrix_rank([x, y]) == 2:
            planes.append((x, y))
            made += 1
    made = 0
    while made < count:
        x = rand_vec()
        if matrix_rank([x, xi]) == 2:
            planes.append((x, list(xi)))
            made += 1
    return planes


# --- entries -------------------------------------------------------------------


def _svk_structure(an: Analysis, ctx) -> TheoremEntry:
    items = list(an.preservation.items())
    for tag, side in (("", an.pair.g_side), ("~", an.pair.tilde_side)):
        Q = side.lowered(side.potential)
        T = side.lowered(side.torsion)
        items.append((f"T{tag}|| = Q{tag}||(x,y,z) - Q{tag}||(y,x,z)", cartan_bijection(Q, "to_torsion") == T))
        items.append((f"2Q{tag}|| = T{tag}||(x,y,z) - T{tag}||(y,z,x) + T{tag}||(z,x,y)", cartan_bijection(T, "to_potential") == Q))
    return TheoremEntry("adapted connections preserve xi, eta and their metric; torsion determines them", "identity", items)


def _nabla_par_eq_nabla(an, ctx):
    return TheoremEntry(
        "nabla|| = nabla iff g-manifold in F1+F2+F3+F10",
        "equivalence",
        [("nabla|| = nabla", an.coincidence["nabla|| = nabla"]), ("g-manifold in F1+F2+F3+F10", in_class(an.membership, "F1+F2+F3+F10"))],
    )


def _tilde_par_eq_tilde(an, ctx):
    return TheoremEntry(
        "nabla~|| = nabla~ iff g~-manifold in F1+F2+F3+F9",
        "equivalence",
        [("nabla~|| = nabla~", an.coincidence["nabla~|| = nabla~"]), ("g~-manifold in F1+F2+F3+F9", in_class(an.membership_tilde, "F1+F2+F3+F9"))],
    )


def _class_transfer(an, ctx):
    return TheoremEntry(
        "g-manifold in F1+F2+F3+F10 iff g~-manifold in F1+F2+F3+F9",
        "equivalence",
        [
            ("g-manifold in F1+F2+F3+F10", in_class(an.membership, "F1+F2+F3+F10")),
            ("g~-manifold in F1+F2+F3+F9", in_class(an.membership_tilde, "F1+F2+F3+F9")),
        ],
    )


def _four_assertions(an, ctx):
    return TheoremEntry(
        "adapted connections equal their Levi-Civita connections: four equivalent assertions",
        "equivalence",
        [
            ("nabla|| = nabla", an.coincidence["nabla|| = nabla"]),
            ("nabla~|| = nabla~", an.coincidence["nabla~|| = nabla~"]),
            ("g-manifold in F1+F2+F3+F10", in_class(an.membership, "F1+F2+F3+F10")),
            ("g~-manifold in F1+F2+F3+F9", in_class(an.membership_tilde, "F1+F2+F3+F9")),
        ],
    )


def _four_coincide(an, ctx):
    c = an.coincidence
    all_four = c["nabla|| = nabla"] and c["nabla~|| = nabla~"] and c["nabla = nabla~"]
    return TheoremEntry(
        "four connections coincide iff both manifolds are in F0",
        "equivalence",
        [
            ("nabla~|| = nabla or nabla|| = nabla~", c["nabla~|| = nabla"] or c["nabla|| = nabla~"]),
            ("nabla||, nabla~||, nabla, nabla~ all equal", all_four),
            ("F = 0", an.membership.f0),
            ("F~ = 0", an.membership_tilde.f0),
        ],
    )


def _f0_characterizations(an, ctx):
    return TheoremEntry(
        "F0 characterizations: F = 0, Phi = 0, F~ = 0, nabla = nabla~",
        "equivalence",
        [
            ("F = 0", an.fund.F.is_zero()),
            ("Phi = 0", an.fund.Phi.is_zero()),
            ("F~ = 0", an.fund.F_tilde.is_zero()),
            ("nabla = nabla~", an.coincidence["nabla = nabla~"]),
        ],
    )


def _svk_coincide(an, ctx):
    return TheoremEntry(
        "nabla~|| = nabla|| iff g-manifold in F4+...+F9+F11",
        "equivalence",
        [
            ("nabla~|| = nabla||", an.coincidence["nabla~|| = nabla||"]),
            ("Phi(x,y) = eta(Phi(x,y))xi + eta(y)Phi(x,xi)", _phi_vertical_form(an)),
            ("Phi(x,y) = eta(Phi(x,y))xi + eta(x)eta(y)Phi(xi,xi)", _phi_symmetric_form(an)),
            ("F(x,y,z) = F(x,y,xi)eta(z) + F(x,z,xi)eta(y)", an.conditions["F(x,y,z) = F(x,y,xi)eta(z) + F(x,z,xi)eta(y)"]),
            ("g-manifold in F4+F5+F6+F7+F8+F9+F11", in_class(an.membership, "F4+F5+F6+F7+F8+F9+F11")),
        ],
    )


def _natural_par(an, ctx):
    return TheoremEntry(
        "nabla|| is natural iff g-manifold in F4+...+F9+F11",
        "equivalence",
        [
            ("nabla|| phi = 0", an.phi_derivatives.nabla_par_phi.is_zero()),
            ("F(x,y,z) = F(x,y,xi)eta(z) + F(x,z,xi)eta(y)", an.conditions["F(x,y,z) = F(x,y,xi)eta(z) + F(x,z,xi)eta(y)"]),
            ("g-manifold in F4+F5+F6+F7+F8+F9+F11", in_class(an.membership, "F4+F5+F6+F7+F8+F9+F11")),
        ],
    )


def _orthogonal_split(an, ctx):
    return TheoremEntry(
        "classes with nabla|| = nabla and with natural nabla|| meet only in F0",
        "equivalence",
        [
            ("nabla|| = nabla and nabla|| phi = 0", an.coincidence["nabla|| = nabla"] and an.phi_derivatives.nabla_par_phi.is_zero()),
            ("F = 0", an.membership.f0),
        ],
    )


def _phi_derivatives_coincide(an, ctx):
    cls = "F3+F4+F5+F6+F7+F11"
    pd = an.phi_derivatives
    return TheoremEntry(
        "nabla~|| phi = nabla|| phi iff both manifolds in F3+F4+F5+F6+F7+F11",
        "equivalence",
        [
            ("nabla~|| phi = nabla|| phi", pd.nabla_par_phi == pd.nabla_tilde_par_phi),
            ("Phi(x,phi^2 y,phi^2 z) = -Phi(x,phi y,phi z)", an.conditions["Phi(x,phi^2 y,phi^2 z) = -Phi(x,phi y,phi z)"]),
            (f"g- and g~-manifolds in {cls}", in_class(an.membership, cls) and in_class(an.membership_tilde, cls)),
        ],
    )


def _natural_tilde_par(an, ctx):
    cls = "F1+F2+F4+F5+F6+F7+F11"
    cond = TILDE_SIDE_CONDITIONS[cls]
    return TheoremEntry(
        "nabla~|| is natural iff g~-manifold in F1+F2+F4+F5+F6+F7+F11",
        "equivalence",
        [
            ("nabla~|| phi = 0", an.phi_derivatives.nabla_tilde_par_phi.is_zero()),
            (cond, an.conditions[cond]),
            (f"g~-manifold in {cls}", in_class(an.membership_tilde, cls)),
        ],
    )


def _both_natural(an, ctx):
    cls = "F4+F5+F6+F7+F11"
    pd = an.phi_derivatives
    return TheoremEntry(
        "nabla|| and nabla~|| both natural iff both manifolds in F4+F5+F6+F7+F11",
        "equivalence",
        [
            ("nabla|| phi = 0 and nabla~|| phi = 0", pd.nabla_par_phi.is_zero() and pd.nabla_tilde_par_phi.is_zero()),
            (f"g- and g~-manifolds in {cls}", in_class(an.membership, cls) and in_class(an.membership_tilde, cls)),
        ],
    )


def _equiv_factory(key: str, tilde: bool, title: str):
    def build(an, ctx):
        items = _equivalence_items(an, tilde)[key]
        return TheoremEntry(title, "equivalence", list(items.items()))

    return build


def _relations_entry(title: str, prefixes: tuple[str, ...]):
    def build(an, ctx):
        rels = [r for r in an.curvature_relations if r.name.startswith(prefixes)]
        return TheoremEntry(
            title,
            "identity",
            [(r.name, r.holds) for r in rels],
            details={"failures": [r.to_dict() for r in rels if not r.holds]},
        )

    return build


def _sectional(an, ctx):
    items: dict[str, bool] = {}
    failures = []
    planes = sample_planes(an.inst, ctx.get("section_seed", DEFAULT_SECTION_SEED))
    for x, y in planes:
        rep = section_analysis(an.inst, an.curvatures, an.pair, x, y)
        for r in rep.relations:
            items[r.name] = items.get(r.name, True) and r.holds
            if not r.holds:
                failures.append({"plane": rep.to_dict()["x"] + rep.to_dict()["y"], **r.to_dict()})
    return TheoremEntry(
        "sectional curvatures of adapted and Levi-Civita connections",
        "identity",
        sorted(items.items()),
        details={"section_seed": ctx.get("section_seed", DEFAULT_SECTION_SEED), "planes": len(planes), "failures": failures},
    )


def _family_table(an, ctx):
    params: FamilyParams | None = ctx.get("family")
    if params is None or params.n != 1:
        return TheoremEntry("three-dimensional family class table", "equivalence", [], applicable=False)
    expected = expected_class(*params.a)
    observed = an.membership.name
    return TheoremEntry(
        "three-dimensional family class table",
        "equivalence",
        [(f"class is {expected} (table)", True), (f"class is {expected} (classifier: {observed})", observed == expected)],
    )


def _family_weitzenbock(an, ctx):
    params: FamilyParams | None = ctx.get("family")
    if params is None:
        return TheoremEntry("family: adapted connections are the Weitzenbock connection", "identity", [], applicable=False)
    inst = an.inst
    w = weitzenbock(inst.dim)
    C = family_frame(params).structure_constants
    return TheoremEntry(
        "family: adapted connections are the Weitzenbock connection",
        "identity",
        [
            ("nabla|| = 0", an.pair.nabla_par == w),
            ("nabla~|| = 0", an.pair.nabla_tilde_par == w),
            ("R|| = 0", an.curvatures.nabla_par.is_flat()),
            ("R~|| = 0", an.curvatures.nabla_tilde_par.is_flat()),
            ("T||(x,y) = -[x,y]", _array_equal(an.pair.T_par.components, _normalize(-C))),
        ],
        details={"nabla~|| nonzero": [[list(i), str(v)] for i, v in an.pair.nabla_tilde_par.nonzero()]},
    )


_BUILDERS: tuple[Callable, ...] = (
    _svk_structure,
    _nabla_par_eq_nabla,
    _tilde_par_eq_tilde,
    _class_transfer,
    _four_assertions,
    _four_coincide,
    _f0_characterizations,
    _svk_coincide,
    _natural_par,
    _orthogonal_split,
    _phi_derivatives_coincide,
    _natural_tilde_par,
    _both_natural,
    _equiv_factory("closed", False, "closed eta: equivalent properties (g)"),
    _equiv_factory("killing", False, "Killing xi: equivalent properties (g)"),
    _equiv_factory("parallel", False, "parallel xi: equivalent properties (g)"),
    _equiv_factory("closed", True, "closed eta: equivalent properties (g~)"),
    _equiv_factory("killing", True, "Killing xi: equivalent properties (g~)"),
    _equiv_factory("parallel", True, "parallel xi: equivalent properties (g~)"),
    _relations_entry("curvature of adapted connections", ("R||(", "R~||(")),
    _relations_entry("Ricci tensors of adapted connections", ("rho|| ", "rho~|| ")),
    _relations_entry(
        "scalar curvatures of adapted connections",
        ("tau", "rho(xi", "rho~(xi", "R(x,y)xi", "R~(x,y)xi", "R(xi", "R~(xi", "tr"),
    ),
    _sectional,
    _family_table,
    _family_weitzenbock,
)

THEOREM_REGISTRY: tuple[str, ...] = (
    "adapted connections preserve xi, eta and their metric; torsion determines them",
    "nabla|| = nabla iff g-manifold in F1+F2+F3+F10",
    "nabla~|| = nabla~ iff g~-manifold in F1+F2+F3+F9",
    "g-manifold in F1+F2+F3+F10 iff g~-manifold in F1+F2+F3+F9",
    "adapted connections equal their Levi-Civita connections: four equivalent assertions",
    "four connections coincide iff both manifolds are in F0",
    "F0 characterizations: F = 0, Phi = 0, F~ = 0, nabla = nabla~",
    "nabla~|| = nabla|| iff g-manifold in F4+...+F9+F11",
    "nabla|| is natural iff g-manifold in F4+...+F9+F11",
    "classes with nabla|| = nabla and with natural nabla|| meet only in F0",
    "nabla~|| phi = nabla|| phi iff both manifolds in F3+F4+F5+F6+F7+F11",
    "nabla~|| is natural iff g~-manifold in F1+F2+F4+F5+F6+F7+F11",
    "nabla|| and nabla~|| both natural iff both manifolds in F4+F5+F6+F7+F11",
    "closed eta: equivalent properties (g)",
    "Killing xi: equivalent properties (g)",
    "parallel xi: equivalent properties (g)",
    "closed eta: equivalent properties (g~)",
    "Killing xi: equivalent properties (g~)",
    "parallel xi: equivalent properties (g~)",
    "curvature of adapted connections",
    "Ricci tensors of adapted connections",
    "scalar curvatures of adapted connections",
    "sectional curvatures of adapted and Levi-Civita connections",
    "three-dimensional family class table",
    "family: adapted connections are the Weitzenbock connection",
)


def theorem_suite(an: Analysis, *, family: FamilyParams | None = None, section_seed: int = DEFAULT_SECTION_SEED, only=None) -> TheoremReport:
    """Evaluate the registry (or the names in ``only``) on one analysed instance."""
    ctx = {"family": family, "section_seed": section_seed}
    wanted = None if only is None else set(only)
    if wanted is not None:
        unknown = wanted - set(THEOREM_REGISTRY)
        if unknown:
            raise KeyError(f"unknown theorem names: {sorted(unknown)}")
    entries = []
    for name, build in zip(THEOREM_REGISTRY, _BUILDERS):
        if wanted is not None and name not in wanted:
            continue
        entry = build(an, ctx)
        if entry.name != name:
            raise AssertionError(f"registry mismatch: {entry.name!r} != {name!r}")
        entries.append(entry)
    return TheoremReport(entries)

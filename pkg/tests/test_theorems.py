import pytest

from apapr import FamilyParams, analyze
from apapr.generators import random_instance
from apapr.theorems import THEOREM_REGISTRY, sample_planes, theorem_suite
from conftest import family_analysis


def _entry(rep, name):
    return next(e for e in rep.entries if e.name == name)


def test_registry_names_unique():
    assert len(THEOREM_REGISTRY) == len(set(THEOREM_REGISTRY)) == 25


def test_every_entry_has_two_conditions():
    rep = theorem_suite(family_analysis(1, 2), family=FamilyParams(1, (1, 2)))
    assert len(rep.entries) == len(THEOREM_REGISTRY)
    assert all(len(e.items) >= 2 for e in rep.entries if e.applicable)


def test_para_sasakian_member_adapted_pair_coincide():
    rep = theorem_suite(family_analysis(0, 1), family=FamilyParams(1, (0, 1)))
    e = _entry(rep, "nabla~|| = nabla|| iff g-manifold in F4+...+F9+F11")
    items = dict(e.items)
    assert items["nabla~|| = nabla||"] and items["g-manifold in F4+F5+F6+F7+F8+F9+F11"]
    assert e.consistent and rep.consistent


def test_zero_parameters_four_connections_and_F0():
    rep = theorem_suite(family_analysis(0, 0), family=FamilyParams(1, (0, 0)))
    for name in ("four connections coincide iff both manifolds are in F0", "F0 characterizations: F = 0, Phi = 0, F~ = 0, nabla = nabla~"):
        e = _entry(rep, name)
        assert e.consistent and all(v for _, v in e.items)
    assert rep.consistent


def test_closed_eta_items_all_true_on_10():
    e = _entry(theorem_suite(family_analysis(1, 0)), "closed eta: equivalent properties (g)")
    items = dict(e.items)
    for key in ("d eta = 0", "Q||v is symmetric", "T||v = 0", "S_flat is symmetric"):
        assert items[key]
    assert e.consistent


@pytest.mark.parametrize("seed", range(12))
def test_g_side_equivalences_random(seed):
    rep = theorem_suite(analyze(random_instance(600 + seed, n=1 + seed % 2)))
    for title in ("closed eta", "Killing xi", "parallel xi"):
        assert _entry(rep, f"{title}: equivalent properties (g)").consistent


def test_only_filter_and_unknown_name():
    an = family_analysis(1, 2)
    rep = theorem_suite(an, only=["curvature of adapted connections"])
    assert [e.name for e in rep.entries] == ["curvature of adapted connections"]
    with pytest.raises(KeyError):
        theorem_suite(an, only=["no such theorem"])


def test_family_entries_not_applicable_without_family():
    rep = theorem_suite(family_analysis(1, 2))
    assert not _entry(rep, "three-dimensional family class table").applicable


def test_sample_planes_deterministic():
    inst = family_analysis(1, 2).inst
    a = sample_planes(inst, 7)
    b = sample_planes(inst, 7)
    assert [(list(x), list(y)) for x, y in a] == [(list(x), list(y)) for x, y in b]

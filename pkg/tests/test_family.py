from fractions import Fraction

import pytest

from apapr.family import FamilyParams, build_family, expected_class, proposition_table
from apapr.lie_frame import jacobiator
from conftest import GRID, family_analysis


def test_para_sasakian_parameters_give_valid_instance():
    inst = build_family(FamilyParams(1, (0, 1)))
    assert inst.dim == 3


def test_zero_parameters_give_F_zero():
    assert family_analysis(0, 0).fund.F.is_zero()


def test_five_dimensional_instance():
    inst = build_family(FamilyParams(2, (1, 0, 0, 2)))
    assert inst.dim == 5
    assert all(v == 0 for v in jacobiator(inst.frame.structure_constants).flat)


@pytest.mark.parametrize("a, expected", [((1, 1), "F4+F9"), ((0, 0), "F0"), ((Fraction(-3, 2), 0), "F9"), ((0, -2), "F4")])
def test_proposition_table_rows(a, expected):
    [row] = proposition_table([a])
    assert row["expected"] == expected and row["observed"] == expected and row["match"]


def test_proposition_table_whole_grid():
    assert all(r["match"] for r in proposition_table(GRID))


def test_params_validation():
    with pytest.raises(ValueError):
        FamilyParams(1, (1, 2, 3))
    with pytest.raises(ValueError):
        FamilyParams(0, ())


def test_expected_class_cases():
    assert [expected_class(*a) for a in ((1, 1), (0, 1), (1, 0), (0, 0))] == ["F4+F9", "F4", "F9", "F0"]

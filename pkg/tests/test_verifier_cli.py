import io
import json

import pytest

from apapr import FamilyParams, build_family
from apapr.cli import main
from apapr.manifest import ManifestError, instance_to_manifest, load_manifest, parse_family_arg, recognize_family
from apapr.report import build_report, dumps, parse_grid, run, sweep


def _family_manifest(*a):
    return load_manifest(json.dumps({"family": {"n": len(a) // 2, "a": [str(v) for v in a]}}))


def test_report_11_classes():
    rep = run(_family_manifest(1, 1))
    assert rep["schema"] == "1"
    assert rep["classification"]["g"]["classes"] == ["F4", "F9"]


def test_report_11_all_theorem_entries_consistent():
    rep = run(_family_manifest(1, 1))
    assert rep["theorems"]["inconsistent"] == []


def test_zero_denominator_is_parse_error():
    with pytest.raises(ManifestError) as exc:
        load_manifest('{"family": {"n": 1, "a": ["1/0", "1"]}}')
    assert exc.value.field == "family.a[0]"


def test_explicit_manifest_matches_family_shortcut():
    explicit = instance_to_manifest(build_family(FamilyParams(1, (0, 1))))
    a = dumps(run(load_manifest(json.dumps(explicit))))
    b = dumps(run(_family_manifest(0, 1)))
    assert a == b


def test_report_deterministic():
    m = '{"family": {"n": 2, "a": ["1", "-1/2", "0", "2"]}}'
    assert dumps(run(load_manifest(m))) == dumps(run(load_manifest(m)))


def test_toml_front_end_matches_json():
    toml = 'schema = "1"\n[family]\nn = 1\na = ["1/2", "-3"]\n'
    assert dumps(run(load_manifest(toml))) == dumps(run(_family_manifest("1/2", "-3")))


@pytest.mark.parametrize(
    "text, field",
    [
        ('{"family": {"n": 1, "a": [0.5, 1]}}', "family.a[0]"),
        ('{"family": {"n": 1, "a": ["1"]}}', "family.a"),
        ('{"family": {"n": 1, "a": ["1", "2"]}, "dimension": 3}', None),
        ('{"dimension": 3}', None),
        ('{"family": {"n": 1, "a": ["1", "2"]}, "options": {"checks": ["nope"]}}', "options.checks"),
        ('{"family": {"n": 1, "a": ["1", "2"]}, "extra": 1}', None),
    ],
)
def test_manifest_errors(text, field):
    with pytest.raises(ManifestError) as exc:
        load_manifest(text, "json")
    assert exc.value.field == field


def test_json_syntax_error_names_line():
    with pytest.raises(ManifestError) as exc:
        load_manifest('{"family": {"n": 1,\n "a": [1, 2}}', "json")
    assert exc.value.line == 2


def test_explicit_validation_failure_names_axiom():
    m = instance_to_manifest(build_family(FamilyParams(1, (1, 2))))
    m["g"] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]
    with pytest.raises(ManifestError) as exc:
        load_manifest(json.dumps(m))
    assert "g not positive definite" in str(exc.value)


def test_nested_structure_constants_accepted():
    inst = build_family(FamilyParams(1, (2, 3)))
    m = instance_to_manifest(inst)
    m["structure_constants"] = [[[str(v) for v in row] for row in plane] for plane in inst.frame.structure_constants]
    assert recognize_family(load_manifest(json.dumps(m)).instance) == FamilyParams(1, (2, 3))


def test_parse_family_arg():
    assert parse_family_arg("n=1,a=1/2,-3") == FamilyParams(1, ("1/2", "-3"))
    with pytest.raises(ManifestError):
        parse_family_arg("a=1,2")


def test_parse_grid():
    assert len(parse_grid("-1,0,1", 2)) == 4
    assert [len(c) for c in parse_grid("0;1,2", 1)] == [1, 2]
    with pytest.raises(ManifestError):
        parse_grid("0;1;2", 1)


def test_sweep_rows():
    rep = sweep(1, parse_grid("0;0,1", 1))
    assert [r["class_g"] for r in rep["rows"]] == ["F0", "F4"]
    assert rep["summary"]["consistent"]


# --- CLI ------------------------------------------------------------------------


def _cli(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_validate_exit_zero(capsys):
    code, out, _ = _cli(capsys, "validate", "--family", "n=1,a=1/2,-3")
    assert code == 0 and json.loads(out)["schema"] == "1"


def test_cli_consistent_theorems(capsys):
    code, out, _ = _cli(capsys, "theorems", "--family", "n=1,a=0,1")
    assert code == 0 and json.loads(out)["summary"]["consistent"]


def test_cli_inconsistency_exit_two(capsys):
    code, out, _ = _cli(capsys, "theorems", "--family", "n=1,a=1,0")
    assert code == 2 and not json.loads(out)["summary"]["consistent"]


def test_cli_input_error_exit_one(capsys, monkeypatch):
    code, _, err = _cli(capsys, "classify", "--manifest", "-", stdin='{"family": {"n": 1, "a": ["1/0", "1"]}}', monkeypatch=monkeypatch)
    assert code == 1 and "family.a[0]" in err


def test_cli_usage_error_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_cli_missing_file(capsys, tmp_path):
    code, _, err = _cli(capsys, "validate", "--manifest", str(tmp_path / "missing.json"))
    assert code == 1


def test_cli_manifest_file_and_text_output(capsys, tmp_path):
    p = tmp_path / "m.toml"
    p.write_text('[family]\nn = 1\na = ["1", "2"]\n')
    code, out, _ = _cli(capsys, "sections", "--manifest", str(p), "--plane", "1,2", "--output", "text")
    assert code == 0
    assert "phi-holomorphic" in out and "k=5" in out and "k_par=0" in out


def test_cli_sweep_negative_values(capsys):
    code, out, _ = _cli(capsys, "sweep", "--n", "1", "--grid", "-1,0", "--output", "json")
    rep = json.loads(out)
    assert rep["summary"]["points"] == 4 and code == 2


@pytest.mark.parametrize("verb", ["connections", "classify", "svk", "curvature", "sections", "run"])
def test_cli_verbs_emit_sections(capsys, verb):
    code, out, _ = _cli(capsys, verb, "--family", "n=1,a=0,1")
    rep = json.loads(out)
    assert code == 0 and rep["verb"] == verb and "validation" in rep

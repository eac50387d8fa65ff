"""Full-pipeline reports: one deterministic JSON-able dict per manifest.

Every check that can disagree with itself is listed under ``summary`` by a
slash-separated path, so callers never have to walk the sections to learn
whether a run was consistent.
"""
from __future__ import annotations

import itertools
import json
from fractions import Fraction

import numpy as np

from .analysis import Analysis, analyze
from .curvature import CurvatureData, section_analysis
from .family import FamilyParams, build_family
from .fundamental import check_F_identities
from .manifest import Manifest, ManifestError, instance_to_manifest
from .scalar_tensor import Tensor, _array_equal, format_scalar, parse_scalar, ScalarParseError
from .svk import SvkSide, cartan_bijection, lower_first
from .theorems import DEFAULT_SECTION_SEED, sample_planes, theorem_suite

__all__ = [
    "SCHEMA",
    "VERBS",
    "build_report",
    "run",
    "sweep",
    "parse_grid",
    "dumps",
    "render_text",
]

SCHEMA = "1"
_ALL = ("validation", "connections", "fundamental", "classification", "svk", "curvature", "sections", "theorems")
VERBS = {
    "run": _ALL,
    "validate": ("validation",),
    "connections": ("validation", "connections"),
    "classify": ("validation", "fundamental", "classification"),
    "svk": ("validation", "svk"),
    "curvature": ("validation", "curvature"),
    "sections": ("validation", "sections"),
    "theorems": ("validation", "theorems"),
}


# --- serialization helpers ----------------------------------------------------


def _s(v) -> str:
    return format_scalar(v)


def _nested(arr):
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return _s(arr.item())
    return [_nested(x) for x in arr]


def _nonzero(t: Tensor | np.ndarray) -> list[dict]:
    arr = t.components if isinstance(t, Tensor) else np.asarray(t, dtype=object)
    return [{"index": list(idx), "value": _s(v)} for idx, v in np.ndenumerate(arr) if v != 0]


def _connection_table(conn) -> list[dict]:
    # Gamma[k, i, j]: nabla_{E_i} E_j has component ``value`` along E_k
    return [{"i": i, "j": j, "k": k, "value": _s(v)} for (k, i, j), v in conn.nonzero()]


def _family_dict(params: FamilyParams | None):
    if params is None:
        return None
    return {"n": params.n, "a": [_s(v) for v in params.a]}


class _Issues:
    def __init__(self):
        self.paths: list[str] = []

    def check(self, path: str, ok: bool) -> bool:
        if not ok:
            self.paths.append(path)
        return ok


# --- sections -----------------------------------------------------------------


def _validation(an: Analysis) -> dict:
    inst = an.inst
    return {
        "valid": True,
        "dimension": inst.dim,
        "n": inst.n,
        "axioms": [
            "Jacobi identity",
            "phi xi = 0",
            "phi^2 = I - eta (x) xi",
            "eta o phi = 0",
            "eta(xi) = 1",
            "tr phi = 0",
            "g symmetric positive definite",
            "g(phi x, phi y) = g(x,y) - eta(x)eta(y)",
            "g(x, xi) = eta(x)",
            f"g~ nondegenerate of signature ({inst.n + 1},{inst.n})",
        ],
        "g_tilde": _nested(inst.g_tilde.components),
    }


def _connections(an: Analysis) -> dict:
    return {
        "convention": "entries (i, j, k, value) mean nabla_{E_i} E_j = sum value E_k",
        "nabla": _connection_table(an.nabla),
        "nabla~": _connection_table(an.nabla_tilde),
        "nabla||": _connection_table(an.pair.nabla_par),
        "nabla~||": _connection_table(an.pair.nabla_tilde_par),
    }


def _fundamental(an: Analysis, issues: _Issues) -> dict:
    fund = an.fund
    violated = check_F_identities(an.inst, fund.F, an.nabla)
    for name in violated:
        issues.check(f"fundamental/F identities/{name}", False)
    div = {}
    for name, (lhs, rhs) in fund.divergence_checks.items():
        ok = issues.check(f"fundamental/divergence/{name}", lhs == rhs)
        div[name] = {"lhs": _s(lhs), "rhs": _s(rhs), "holds": ok}
    lt = fund.lee_tilde
    return {
        "F": _nonzero(fund.F),
        "F~": _nonzero(fund.F_tilde),
        "Phi": _nonzero(fund.Phi),
        "theta": _nested(fund.theta.components),
        "theta*": _nested(fund.theta_star.components),
        "omega": _nested(fund.omega.components),
        "theta~": _nested(lt.theta.components),
        "theta~*": _nested(lt.theta_star.components),
        "omega~": _nested(lt.omega.components),
        "two_route": {
            "Phi: Koszul difference = expansion in F": issues.check("fundamental/two_route/Phi", fund.phi_check.agree),
            "F~: g~((nabla~ phi).,.) = expansion in F": issues.check("fundamental/two_route/F~", fund.F_tilde_check.agree),
        },
        "F_identities_violated": violated,
        "divergence": div,
    }


def _membership(mem, dec, composite, tag: str, issues: _Issues, eta) -> dict:
    comps = dec.components(eta)
    for name, entry in composite.items():
        issues.check(f"classification/{tag}/composite/{name}", entry["agree"])
    return {
        "class": mem.name,
        "classes": list(mem.classes),
        "f0": mem.f0,
        "q23_status": mem.q23_status,
        "components_nonzero": {k: not v.is_zero() for k, v in comps.items()},
        "composite": composite,
    }


def _classification(an: Analysis, issues: _Issues) -> dict:
    eta = an.inst.eta
    return {
        "g": _membership(an.membership, an.decomposition, an.composite, "g", issues, eta),
        "g~": _membership(an.membership_tilde, an.decomposition_tilde, an.composite_tilde, "g~", issues, eta),
        "analytic_conditions": dict(an.conditions),
    }


def _svk_side(side: SvkSide) -> dict:
    potential = lower_first(side.potential, side.metric)
    torsion = lower_first(side.torsion, side.metric)
    return {
        "potential": _nonzero(side.potential),
        "torsion": _nonzero(side.torsion),
        "shape_operator": _nested(side.shape.components),
        "shape_operator_flat": _nested(side.shape_flat.components),
        "cartan": {
            "potential -> torsion": cartan_bijection(potential, "to_torsion") == torsion,
            "torsion -> potential": cartan_bijection(torsion, "to_potential") == potential,
        },
    }


def _svk(an: Analysis, issues: _Issues) -> dict:
    out = {"nabla||": _svk_side(an.pair.g_side), "nabla~||": _svk_side(an.pair.tilde_side)}
    for tag in out:
        for name, ok in out[tag]["cartan"].items():
            issues.check(f"svk/{tag}/cartan/{name}", ok)
    for name, ok in an.hv.items():
        issues.check(f"svk/identities/{name}", ok)
    for name, ok in an.preservation.items():
        issues.check(f"svk/preservation/{name}", ok)
    pd = an.phi_derivatives
    issues.check("svk/phi_derivatives/nabla|| phi closed form", pd.closed_form_agrees)
    issues.check("svk/phi_derivatives/nabla~|| phi closed form", pd.tilde_closed_form_agrees)
    out.update(
        identities=dict(an.hv),
        preservation=dict(an.preservation),
        phi_derivatives={
            "g((nabla||_x phi)y, z)": _nonzero(pd.nabla_par_phi),
            "g((nabla~||_x phi)y, z)": _nonzero(pd.nabla_tilde_par_phi),
            "nabla|| phi closed form agrees": pd.closed_form_agrees,
            "nabla~|| phi closed form agrees": pd.tilde_closed_form_agrees,
        },
        coincidence=dict(an.coincidence),
    )
    return out


def _curv(c: CurvatureData) -> dict:
    return {
        "R": _nonzero(c.R),
        "ricci": _nested(c.ricci.components),
        "tau": _s(c.tau),
        "flat": c.is_flat(),
    }


def _curvature(an: Analysis, issues: _Issues) -> dict:
    cv = an.curvatures
    rels = []
    for r in an.curvature_relations:
        issues.check(f"curvature/{r.name}", r.holds)
        rels.append(r.to_dict())
    return {
        "convention": "R(x,y,z,w) = m(R(x,y)z, w), R(x,y) = [D_x, D_y] - D_[x,y], m the connection's own metric",
        "nabla": _curv(cv.nabla),
        "nabla~": _curv(cv.nabla_tilde),
        "nabla||": _curv(cv.nabla_par),
        "nabla~||": _curv(cv.nabla_tilde_par),
        "relations": rels,
    }


def _frame_plane(dim: int, plane: tuple[int, int]):
    i, j = plane
    if not (0 <= i < dim and 0 <= j < dim) or i == j:
        raise ManifestError(f"plane indices must be distinct and in 0..{dim - 1}, got {i},{j}", "plane")
    x = np.array([Fraction(int(k == i)) for k in range(dim)], dtype=object)
    y = np.array([Fraction(int(k == j)) for k in range(dim)], dtype=object)
    return x, y


def _sections(an: Analysis, issues: _Issues, seed: int, plane) -> dict:
    if plane is not None:
        planes = [_frame_plane(an.inst.dim, plane)]
        source = {"plane": list(plane)}
    else:
        planes = sample_planes(an.inst, seed)
        source = {"section_seed": seed, "sampler": "all frame planes, then seeded rational planes and xi-sections"}
    out = []
    for idx, (x, y) in enumerate(planes):
        rep = section_analysis(an.inst, an.curvatures, an.pair, x, y)
        for r in rep.relations:
            issues.check(f"sections/{idx}/{r.name}", r.holds)
        out.append(rep.to_dict())
    return {**source, "undefined_marker": None, "planes": out}


def _theorems(an: Analysis, issues: _Issues, m: Manifest) -> dict:
    rep = theorem_suite(an, family=m.family, section_seed=m.section_seed, only=m.checks)
    for name in rep.inconsistent:
        issues.check(f"theorems/{name}", False)
    return rep.to_dict()


# --- entry points -------------------------------------------------------------


def build_report(m: Manifest, verb: str = "run", *, plane: tuple[int, int] | None = None, analysis: Analysis | None = None) -> dict:
    """Deterministic report for one manifest restricted to the sections of ``verb``."""
    if verb not in VERBS:
        raise ValueError(f"unknown verb {verb!r}; choose from {sorted(VERBS)}")
    an = analysis or analyze(m.instance)
    issues = _Issues()
    report = {
        "schema": SCHEMA,
        "verb": verb,
        "input": {"family": _family_dict(m.family), "instance": instance_to_manifest(m.instance)},
    }
    for section in VERBS[verb]:
        if section == "validation":
            report[section] = _validation(an)
        elif section == "connections":
            report[section] = _connections(an)
        elif section == "fundamental":
            report[section] = _fundamental(an, issues)
        elif section == "classification":
            report[section] = _classification(an, issues)
        elif section == "svk":
            report[section] = _svk(an, issues)
        elif section == "curvature":
            report[section] = _curvature(an, issues)
        elif section == "sections":
            report[section] = _sections(an, issues, m.section_seed, plane)
        elif section == "theorems":
            report[section] = _theorems(an, issues, m)
    report["summary"] = {"consistent": not issues.paths, "inconsistent": issues.paths}
    return report


def run(m: Manifest) -> dict:
    """The full report: every section."""
    return build_report(m, "run")


def parse_grid(text: str, n: int) -> list[list[Fraction]]:
    """``"-1,0,1/2"`` for every coordinate, or one ``;``-separated list per coordinate."""
    parts = text.split(";")
    if len(parts) not in (1, 2 * n):
        raise ManifestError(f"grid needs 1 or 2n = {2 * n} ';'-separated lists, got {len(parts)}", "grid")
    coords = []
    for idx, part in enumerate(parts):
        values = [v.strip() for v in part.split(",") if v.strip()]
        if not values:
            raise ManifestError("empty value list", f"grid[{idx}]")
        try:
            coords.append([parse_scalar(v) for v in values])
        except ScalarParseError as exc:
            raise ManifestError(str(exc), f"grid[{idx}]") from None
    if len(coords) == 1:
        coords = coords * (2 * n)
    return coords


def sweep(n: int, grid: list[list[Fraction]], section_seed: int = DEFAULT_SECTION_SEED) -> dict:
    """Classes and theorem-suite status at every point of a family grid."""
    if n < 1:
        raise ManifestError("n must be positive", "n")
    if len(grid) != 2 * n:
        raise ManifestError(f"grid must have 2n = {2 * n} coordinate lists", "grid")
    rows = []
    for a in itertools.product(*grid):
        params = FamilyParams(n, a)
        an = analyze(build_family(params))
        rep = theorem_suite(an, family=params, section_seed=section_seed)
        rows.append(
            {
                "a": [_s(v) for v in params.a],
                "class_g": an.membership.name,
                "class_g~": an.membership_tilde.name,
                "consistent": rep.consistent,
                "inconsistent": rep.inconsistent,
            }
        )
    bad = [r for r in rows if not r["consistent"]]
    return {
        "schema": SCHEMA,
        "verb": "sweep",
        "n": n,
        "grid": [[_s(v) for v in coord] for coord in grid],
        "section_seed": section_seed,
        "rows": rows,
        "summary": {
            "consistent": not bad,
            "points": len(rows),
            "inconsistent_points": len(bad),
            "inconsistent": [f"a=({','.join(r['a'])})/{name}" for r in bad for name in r["inconsistent"]],
        },
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


# --- text rendering -----------------------------------------------------------


def _mark(ok: bool) -> str:
    return "ok  " if ok else "FAIL"


def render_text(report: dict) -> str:
    lines = [f"apapr report (schema {report['schema']}, verb {report['verb']})"]
    if report["verb"] == "sweep":
        lines.append(f"family n={report['n']}, {report['summary']['points']} grid points, section seed {report['section_seed']}")
        for r in report["rows"]:
            tail = "" if r["consistent"] else "  inconsistent: " + "; ".join(r["inconsistent"])
            lines.append(f"  [{_mark(r['consistent'])}] a=({', '.join(r['a'])})  g: {r['class_g']}  g~: {r['class_g~']}{tail}")
    else:
        fam = report["input"]["family"]
        if fam is not None:
            lines.append(f"instance: family n={fam['n']}, a=({', '.join(fam['a'])})")
        else:
            lines.append(f"instance: explicit, dimension {report['input']['instance']['dimension']}")
        if "validation" in report:
            lines.append("validation: all structure axioms hold")
        if "connections" in report:
            for name in ("nabla", "nabla~", "nabla||", "nabla~||"):
                table = report["connections"][name]
                body = ", ".join(f"{e['i']}{e['j']}^{e['k']}={e['value']}" for e in table) or "0"
                lines.append(f"{name}: {body}")
        if "fundamental" in report:
            for name, ok in report["fundamental"]["two_route"].items():
                lines.append(f"  [{_mark(ok)}] {name}")
        if "classification" in report:
            cl = report["classification"]
            lines.append(f"class (g): {cl['g']['class']}    class (g~): {cl['g~']['class']}")
            for tag in ("g", "g~"):
                for name, e in cl[tag]["composite"].items():
                    lines.append(f"  [{_mark(e['agree'])}] {tag} in {name}: {e['decomposition']}  <->  {e['condition']}: {e['analytic']}")
        if "svk" in report:
            sv = report["svk"]
            for group in ("identities", "preservation"):
                for name, ok in sv[group].items():
                    lines.append(f"  [{_mark(ok)}] {name}")
            for name, ok in sv["coincidence"].items():
                lines.append(f"  {name}: {ok}")
        if "curvature" in report:
            cv = report["curvature"]
            lines.append("tau: " + "  ".join(f"{k}={cv[k]['tau']}" for k in ("nabla", "nabla~", "nabla||", "nabla~||")))
            for r in cv["relations"]:
                lines.append(f"  [{_mark(r['holds'])}] {r['name']}")
        if "sections" in report:
            for p in report["sections"]["planes"]:
                ks = "  ".join(f"{k}={'undefined' if p[k] is None else p[k]}" for k in ("k", "k_par", "k_tilde", "k_tilde_par"))
                ok = all(r["holds"] for r in p["relations"])
                lines.append(f"  [{_mark(ok)}] x=({', '.join(p['x'])}) y=({', '.join(p['y'])}) {p['section_type']}: {ks}")
        if "theorems" in report:
            for e in report["theorems"]["entries"]:
                status = "n/a " if not e["applicable"] else _mark(e["consistent"])
                lines.append(f"  [{status}] {e['name']}")
                if e["applicable"] and not e["consistent"]:
                    for item in e["items"]:
                        lines.append(f"           {item['value']!s:5}  {item['condition']}")
    s = report["summary"]
    if s["consistent"]:
        lines.append("summary: consistent")
    else:
        lines.append(f"summary: {len(s['inconsistent'])} inconsistent check(s)")
        lines.extend(f"  - {p}" for p in s["inconsistent"])
    return "\n".join(lines) + "\n"

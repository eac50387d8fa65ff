"""Manifests: JSON (or TOML) descriptions of one instance plus run options.

Two shapes are accepted::

    {"family": {"n": 1, "a": ["1/2", "-3"]}}

    {"dimension": 3,
     "structure_constants": [{"i": 0, "j": 1, "k": 1, "value": "-1"}, ...],
     "phi": [[...]], "xi": [...], "eta": [...], "g": [[...]]}

Scalars are integers or "p/q" strings; decimal floats are refused so that
exactness survives serialization.  ``structure_constants`` may also be a
nested ``[k][i][j]`` array.  An optional ``"options"`` table holds
``checks`` (theorem names), ``output`` and ``section_seed``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import tomli

from .family import FamilyParams, build_family, canonical_structure, family_frame
from .lie_frame import FrameError, LieFrame
from .scalar_tensor import ScalarParseError, Tensor, _array_equal, parse_scalar
from .structure import ApaprInstance, StructureError, build_instance
from .theorems import DEFAULT_SECTION_SEED, THEOREM_REGISTRY

__all__ = [
    "ManifestError",
    "Manifest",
    "load_manifest",
    "parse_manifest",
    "parse_family_arg",
    "recognize_family",
    "instance_to_manifest",
]

_EXPLICIT_KEYS = ("dimension", "structure_constants", "phi", "xi", "eta", "g")
_TOP_KEYS = {"schema", "family", "options", *_EXPLICIT_KEYS}


class ManifestError(ValueError):
    """Input error, with the offending field path and source line when known."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


@dataclass(frozen=True)
class Manifest:
    instance: ApaprInstance
    family: FamilyParams | None = None
    checks: tuple[str, ...] | None = None
    output: str = "json"
    section_seed: int = DEFAULT_SECTION_SEED
    raw: dict = field(default_factory=dict, repr=False, compare=False)


def _scalar(value, path: str):
    if isinstance(value, (_Float, float)):
        raise ManifestError(f"decimal float {value!r} refused; write it as a 'p/q' string", path)
    try:
        return parse_scalar(value)
    except ScalarParseError as exc:
        raise ManifestError(str(exc), path) from None


def _array(value, shape: tuple[int, ...], path: str) -> np.ndarray:
    if len(shape) == 0:
        return _scalar(value, path)
    if not isinstance(value, list) or len(value) != shape[0]:
        raise ManifestError(f"expected a list of length {shape[0]}", path)
    out = np.empty(shape, dtype=object)
    for i, item in enumerate(value):
        out[i] = _array(item, shape[1:], f"{path}[{i}]")
    return out


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ManifestError(f"expected an integer, got {value!r}", path)
    return value


def _family(obj, path: str = "family") -> FamilyParams:
    if not isinstance(obj, dict):
        raise ManifestError("family must be a table with 'n' and 'a'", path)
    unknown = set(obj) - {"n", "a"}
    if unknown:
        raise ManifestError(f"unknown keys {sorted(unknown)}", path)
    if "n" not in obj or "a" not in obj:
        raise ManifestError("family needs both 'n' and 'a'", path)
    n = _int(obj["n"], f"{path}.n")
    if n < 1:
        raise ManifestError("n must be positive", f"{path}.n")
    a = obj["a"]
    if not isinstance(a, list) or len(a) != 2 * n:
        raise ManifestError(f"'a' must list exactly 2n = {2 * n} scalars", f"{path}.a")
    return FamilyParams(n, tuple(_scalar(v, f"{path}.a[{i}]") for i, v in enumerate(a)))


def _frame(obj: dict, dim: int) -> LieFrame:
    sc = obj["structure_constants"]
    path = "structure_constants"
    try:
        if isinstance(sc, list) and all(isinstance(t, dict) for t in sc):
            triples = []
            for idx, t in enumerate(sc):
                p = f"{path}[{idx}]"
                if set(t) != {"i", "j", "k", "value"}:
                    raise ManifestError("each entry needs exactly i, j, k, value", p)
                triples.append({"i": _int(t["i"], p + ".i"), "j": _int(t["j"], p + ".j"), "k": _int(t["k"], p + ".k"), "value": _scalar(t["value"], p + ".value")})
            return LieFrame.from_triples(dim, triples)
        return LieFrame((dim - 1) // 2, _array(sc, (dim,) * 3, path))
    except FrameError as exc:
        raise ManifestError(str(exc), path) from None


def _explicit(obj: dict) -> ApaprInstance:
    missing = [k for k in _EXPLICIT_KEYS if k not in obj]
    if missing:
        raise ManifestError(f"explicit manifest is missing {missing}")
    dim = _int(obj["dimension"], "dimension")
    if dim < 3 or dim % 2 == 0:
        raise ManifestError("dimension must be odd and at least 3", "dimension")
    frame = _frame(obj, dim)
    phi = Tensor(_array(obj["phi"], (dim, dim), "phi"), 1, 1)
    xi = Tensor(_array(obj["xi"], (dim,), "xi"), 1, 0)
    eta = Tensor(_array(obj["eta"], (dim,), "eta"), 0, 1)
    g = Tensor(_array(obj["g"], (dim, dim), "g"), 0, 2)
    try:
        return build_instance(frame, phi, xi, eta, g)
    except StructureError as exc:
        raise ManifestError(str(exc), "structure") from None


def _options(obj) -> dict:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise ManifestError("options must be a table", "options")
    unknown = set(obj) - {"checks", "output", "section_seed"}
    if unknown:
        raise ManifestError(f"unknown keys {sorted(unknown)}", "options")
    out = {}
    if "checks" in obj:
        checks = obj["checks"]
        if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
            raise ManifestError("checks must be a list of theorem names", "options.checks")
        bad = [c for c in checks if c not in THEOREM_REGISTRY]
        if bad:
            raise ManifestError(f"unknown theorem names {bad}", "options.checks")
        out["checks"] = tuple(checks)
    if "output" in obj:
        if obj["output"] not in ("json", "text"):
            raise ManifestError("output must be 'json' or 'text'", "options.output")
        out["output"] = obj["output"]
    if "section_seed" in obj:
        out["section_seed"] = _int(obj["section_seed"], "options.section_seed")
    return out


def parse_manifest(obj) -> Manifest:
    if not isinstance(obj, dict):
        raise ManifestError("manifest must be a JSON object / TOML table")
    unknown = set(obj) - _TOP_KEYS
    if unknown:
        raise ManifestError(f"unknown top-level keys {sorted(unknown)}")
    if "schema" in obj and obj["schema"] != "1":
        raise ManifestError(f"unsupported schema {obj['schema']!r}", "schema")
    has_family = "family" in obj
    has_explicit = any(k in obj for k in _EXPLICIT_KEYS)
    if has_family == has_explicit:
        raise ManifestError("give exactly one of 'family' or the explicit structure")
    opts = _options(obj.get("options"))
    if has_family:
        params = _family(obj["family"])
        inst = build_family(params)
    else:
        inst = _explicit(obj)
        params = recognize_family(inst)
    return Manifest(instance=inst, family=params, raw=obj, **opts)


def load_manifest(text: str, fmt: str | None = None) -> Manifest:
    """Parse manifest text; ``fmt`` is "json", "toml" or None to try JSON then TOML."""
    if fmt not in (None, "json", "toml"):
        raise ManifestError(f"unknown manifest format {fmt!r}")
    if fmt in (None, "json"):
        try:
            return parse_manifest(json.loads(text, parse_float=_refuse_float))
        except json.JSONDecodeError as exc:
            if fmt == "json":
                raise ManifestError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
            json_error = exc
    try:
        obj = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        if fmt is None:
            raise ManifestError(f"neither JSON ({json_error.msg}) nor TOML ({exc})", line=json_error.lineno) from None
        raise ManifestError(f"invalid TOML: {exc}") from None
    _check_no_floats(obj, "")
    return parse_manifest(obj)


class _Float:
    """Marker for a decimal literal; rejected by the scalar parser with its path."""

    def __init__(self, text):
        self.text = text

    def __repr__(self):
        return self.text


def _refuse_float(text):
    return _Float(text)


def _check_no_floats(obj, path):
    if isinstance(obj, float):
        raise ManifestError(f"decimal float {obj!r} refused; write it as a 'p/q' string", path or None)
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_no_floats(v, f"{path}.{k}" if path else k)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _check_no_floats(v, f"{path}[{i}]")


def parse_family_arg(text: str) -> FamilyParams:
    """``n=1,a=1/2,-3`` (everything after ``a=`` is the comma-separated list)."""
    try:
        head, _, tail = text.partition("a=")
        n_part = head.strip().rstrip(",").strip()
        if not n_part.startswith("n=") or not tail:
            raise ValueError
        n = int(n_part[2:])
        values = [v.strip() for v in tail.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise ManifestError(f"--family must look like n=1,a=1/2,-3; got {text!r}", "family") from None
    return _family({"n": n, "a": values}, "family")


def recognize_family(inst: ApaprInstance) -> FamilyParams | None:
    """The family parameters if ``inst`` is literally a family instance."""
    n = inst.n
    phi, xi, eta, g = canonical_structure(n)
    if not all(a == b for a, b in ((inst.phi, phi), (inst.xi, xi), (inst.eta, eta), (inst.g, g))):
        return None
    c = inst.frame.structure_constants
    a = [-c[i, 0, i] for i in range(1, n + 1)] + [-c[n + i, 0, i] for i in range(1, n + 1)]
    params = FamilyParams(n, tuple(a))
    if _array_equal(family_frame(params).structure_constants, c):
        return params
    return None


def instance_to_manifest(inst: ApaprInstance) -> dict:
    """Explicit manifest reproducing ``inst``."""
    nest = lambda t: t.to_nested()  # noqa: E731
    return {
        "dimension": inst.dim,
        "structure_constants": inst.frame.to_triples(),
        "phi": nest(inst.phi),
        "xi": nest(inst.xi),
        "eta": nest(inst.eta),
        "g": nest(inst.g),
    }

"""Command-line front end.

Exit codes: 0 every check consistent, 1 input error, 2 some check inconsistent.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .family import build_family
from .manifest import Manifest, ManifestError, load_manifest, parse_family_arg
from .report import VERBS, build_report, dumps, parse_grid, render_text, sweep
from .theorems import DEFAULT_SECTION_SEED

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2

_HELP = {
    "validate": "check the structure axioms",
    "classify": "F, its decomposition and the class of both manifolds",
    "connections": "coefficient tables of the four connections",
    "svk": "adapted connections: identities, phi-derivatives, coincidences",
    "curvature": "curvature of the four connections and the relations between them",
    "sections": "sectional curvatures of one frame plane (or the seeded sample)",
    "theorems": "the theorem suite",
    "run": "every section",
    "sweep": "classes and theorem status over a family parameter grid",
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; usage errors are input errors here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _plane(text: str) -> tuple[int, int]:
    try:
        i, j = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--plane expects 'i,j', got {text!r}") from None
    return i, j


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apapr", description="Exact checks for almost paracontact almost paracomplex Riemannian structures on Lie groups.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in (*VERBS, "sweep"):
        p = sub.add_parser(verb, help=_HELP[verb], description=_HELP[verb])
        p.add_argument("--output", choices=("json", "text"), default=None, help="report format (default json, or the manifest's option)")
        p.add_argument("--section-seed", type=int, default=None, help=f"seed for sampled planes (default {DEFAULT_SECTION_SEED})")
        if verb == "sweep":
            p.add_argument("--n", type=int, required=True, help="family half-dimension")
            p.add_argument("--grid", required=True, help="'v1,v2,...' for every coordinate, or 2n ';'-separated lists")
            continue
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--manifest", metavar="PATH", help="JSON or TOML manifest; '-' reads stdin")
        src.add_argument("--family", metavar="n=N,a=A1,...", help="family shortcut, e.g. n=1,a=1/2,-3")
        p.add_argument("--format", choices=("json", "toml"), default=None, help="manifest format (default: by extension, else auto)")
        if verb == "sections":
            p.add_argument("--plane", type=_plane, default=None, metavar="i,j", help="frame plane span{E_i, E_j}")
    return parser


def _load(args) -> Manifest:
    if args.family is not None:
        params = parse_family_arg(args.family)
        return Manifest(instance=build_family(params), family=params)
    if args.manifest == "-":
        text, fmt = sys.stdin.read(), args.format
    else:
        path = Path(args.manifest)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ManifestError(f"cannot read manifest: {exc.strerror}", str(path)) from None
        fmt = args.format or {".json": "json", ".toml": "toml"}.get(path.suffix.lower())
    return load_manifest(text, fmt)


def _glue_values(argv: list[str]) -> list[str]:
    # grid and family values may start with '-', which argparse takes for an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--grid", "--family"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    try:
        if args.verb == "sweep":
            seed = DEFAULT_SECTION_SEED if args.section_seed is None else args.section_seed
            report = sweep(args.n, parse_grid(args.grid, args.n), seed)
            output = args.output or "json"
        else:
            m = _load(args)
            if args.section_seed is not None:
                m = Manifest(m.instance, m.family, m.checks, m.output, args.section_seed, m.raw)
            report = build_report(m, args.verb, plane=getattr(args, "plane", None))
            output = args.output or m.output
    except (ManifestError, ValueError) as exc:
        print(f"apapr: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(dumps(report) if output == "json" else render_text(report))
    return EXIT_OK if report["summary"]["consistent"] else EXIT_INCONSISTENT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Exact rational geometry of almost paracontact almost paracomplex Riemannian
structures on Lie groups: Levi-Civita connections, the fundamental tensor and
its classes, the pair of adapted connections, curvature and a theorem suite."""
from .analysis import Analysis, analyze
from .classify import ClassMembership, classify_instance, decompose, in_class, parse_class
from .curvature import four_curvatures, riemann, section_analysis
from .family import FamilyParams, build_family, expected_class, proposition_table
from .fundamental import compute_F, compute_F_tilde, compute_Phi, fundamental_data
from .lie_frame import Connection, LieFrame, koszul_levi_civita
from .manifest import Manifest, ManifestError, load_manifest, parse_manifest
from .report import build_report, dumps, run, sweep
from .scalar_tensor import Tensor, format_scalar, parse_scalar
from .structure import ApaprInstance, StructureError, build_instance
from .svk import build_svk, cartan_bijection
from .theorems import THEOREM_REGISTRY, theorem_suite

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "ApaprInstance",
    "ClassMembership",
    "Connection",
    "FamilyParams",
    "LieFrame",
    "Manifest",
    "ManifestError",
    "StructureError",
    "THEOREM_REGISTRY",
    "Tensor",
    "analyze",
    "build_family",
    "build_instance",
    "build_report",
    "build_svk",
    "cartan_bijection",
    "classify_instance",
    "compute_F",
    "compute_F_tilde",
    "compute_Phi",
    "decompose",
    "dumps",
    "expected_class",
    "format_scalar",
    "four_curvatures",
    "fundamental_data",
    "in_class",
    "koszul_levi_civita",
    "load_manifest",
    "parse_class",
    "parse_manifest",
    "parse_scalar",
    "proposition_table",
    "riemann",
    "run",
    "section_analysis",
    "sweep",
    "theorem_suite",
]

"""Metaplectic SO(2p+1)_2 fusion and modular data: construction, verification, classification."""

from .classifier import InvariantProfile, enumerate_classes, equivalent, invariant_profile
from .f_symbols import FStore, build_fstore, f_symbol
from .fusion_ring import FusionRing, build_ring
from .modular import ModularData, closed_form_modular, compute_modular, solve_pivotal
from .params import InvalidParams, Params, all_params
from .r_symbols import RStore, build_rstore, r_symbol
from .verifier import VerificationReport, check_hexagon, check_orthogonality, check_pentagon

__all__ = [
    "FStore",
    "FusionRing",
    "InvalidParams",
    "InvariantProfile",
    "ModularData",
    "Params",
    "RStore",
    "VerificationReport",
    "all_params",
    "build_fstore",
    "build_ring",
    "build_rstore",
    "check_hexagon",
    "check_orthogonality",
    "check_pentagon",
    "closed_form_modular",
    "compute_modular",
    "enumerate_classes",
    "equivalent",
    "f_symbol",
    "invariant_profile",
    "r_symbol",
    "solve_pivotal",
]

"""Exact verification of cyclic sieving for m-divisible non-crossing partitions."""

from .absorder import NCIndex, abs_length, le_T, nc_index, nc_interval
from .cyclotomic import CycloNumber, root_of_unity, to_rational
from .decomp import ParabolicType, decomposition_number, parabolic_type
from .groups import GroupElement, ReflectionGroup, load_group
from .ncm import ActionKind, NCTuple, act_power, brute_fixed_count, enumerate_ncm
from .qcat import eval_at, eval_phi, eval_psi, fuss_catalan
from .sieve import (
    OrbitEquation,
    SievingReport,
    classify_p,
    fixed_count_structured,
    solve_orbit_equation,
    verify_csp,
    verify_csp_all_m,
)

__all__ = [
    "ActionKind",
    "CycloNumber",
    "GroupElement",
    "NCIndex",
    "NCTuple",
    "OrbitEquation",
    "ParabolicType",
    "ReflectionGroup",
    "SievingReport",
    "abs_length",
    "act_power",
    "brute_fixed_count",
    "classify_p",
    "decomposition_number",
    "enumerate_ncm",
    "eval_at",
    "eval_phi",
    "eval_psi",
    "fixed_count_structured",
    "fuss_catalan",
    "le_T",
    "load_group",
    "nc_index",
    "nc_interval",
    "parabolic_type",
    "root_of_unity",
    "solve_orbit_equation",
    "to_rational",
    "verify_csp",
    "verify_csp_all_m",
]

__version__ = "0.1.0"

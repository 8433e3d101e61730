"""Verification harness: per-graph checks and corpus sweeps."""

from .checks import BOUND_CHECKS, CheckResult, GraphReport, check_graph
from .kernel import CHECKS
from .sweep import (HuntHit, PiCrossReport, SweepReport, equality_hunt, pi_cross_check,
                    verify_graph6_file, verify_graphs, verify_labeled)

__all__ = [
    "BOUND_CHECKS", "CHECKS", "CheckResult", "GraphReport", "HuntHit", "PiCrossReport",
    "SweepReport", "check_graph", "equality_hunt", "pi_cross_check", "verify_graph6_file",
    "verify_graphs", "verify_labeled",
]

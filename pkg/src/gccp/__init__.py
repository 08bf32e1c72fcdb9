"""Exact expected lengths for coupon collecting with multi-goal coupons.

Transversal counts of the goal hypergraph are obtained from a disjoint row
decomposition (or a frontier sweep) and turned into exact rational
expectations and variances, with and without replacement.
"""

from .core import (Instance, InstanceError, build_partition_instance, load_fixture, load_instance, load_instance_file,
                   reduce_goals)
from .expectation import (GccpReport, expected_length_nr, expected_length_r, q_from_tau, report_from_tau,
                          variance_nr, variance_r)
from .frontier import frontier_tau
from .oracle import CapExceeded, brute_T, brute_tau, simulate
from .rows import Row, count_polynomial, row_cardinality, row_contains, rows_disjoint
from .tralg import decompose, tau_of, tau_vector
from .transversoul import count_transversouls

__version__ = "0.1.0"

__all__ = [
    "Instance", "InstanceError", "build_partition_instance", "load_fixture", "load_instance",
    "load_instance_file", "reduce_goals",
    "GccpReport", "expected_length_nr", "expected_length_r", "q_from_tau", "report_from_tau",
    "variance_nr", "variance_r",
    "frontier_tau",
    "CapExceeded", "brute_T", "brute_tau", "simulate",
    "Row", "count_polynomial", "row_cardinality", "row_contains", "rows_disjoint",
    "decompose", "tau_of", "tau_vector",
    "count_transversouls",
    "solve",
]


def solve(inst: Instance, *, variance: bool = True) -> GccpReport:
    """Exact report for ``inst`` via the row decomposition."""
    return report_from_tau(tau_of(reduce_goals(inst)), inst.h, variance=variance)

"""Homomorphism densities, gluing templates and commonness certificates."""

from ._core import (
    BudgetExceeded,
    Graph,
    StepKernel,
    automorphism_count,
    build_j,
    c5_goodman_residual,
    certify_pair,
    check_good,
    common_gap,
    density,
    dk3k2_function,
    dk3k2_verify,
    expansion_residual,
    falsify_common,
    girth_obstruction,
    goodman_residual,
    hom_count,
    named_graph,
    pair_gap,
    run_acceptance,
    sample_graphon,
    sample_kernel,
    solve_simple_tree_p,
    strongly_common_gap,
    supersaturation_gap,
    verify_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]

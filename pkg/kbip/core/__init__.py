#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Core modules for kbip.

Provides permutation algebra, prime-field contexts, perfect 1-factorizations,
the (n+2)-edge-coloring constructions, their cycle-structure analysis and the
independent verifier.
"""

from .perm import (
    Permutation,
    CycleDecomposition,
    compose,
    inverse,
    conjugate,
    cycle_decomposition,
    cycle_type,
    fixed_points,
    is_full_cycle,
    format_cycles,
    parse_cycles
)
from .field import FieldContext, make_context, mod_inverse, is_generator, power_table, discrete_log
from .factorization import (
    FamilyKind,
    Factorization,
    P1FReport,
    GraphCycle,
    cyclic_factorization,
    p_squared_factorization,
    p_squared_matching,
    factorization_from_matchings,
    transversal_matching,
    validate_p1f,
    spot_check_p1f,
    check_p1f,
    union_cycles,
    latin_square,
    common_edges
)
from .edge_coloring import EdgeColoring, from_certificate, read_certificate, write_certificate
from .coloring import (
    LabelPartition,
    PartitionReport,
    cyclic_partition,
    p_squared_partition,
    frame_coloring,
    color_kpp,
    color_kp2,
    check_partition_condition,
    derive_subcoloring,
    color_histogram
)
from .analysis import (
    CaseKind,
    CaseReport,
    common_edge,
    decompose_factor_perm,
    conjugation_check,
    case_report,
    survey,
    orbit_representatives,
    render_case
)
from .verify import (
    BichromaticWitness,
    VerificationReport,
    LowerBoundResult,
    check_proper,
    check_acyclic,
    verify_coloring,
    witness_is_cycle,
    exhaustive_lower_bound
)

__all__ = [
    # Permutations
    'Permutation',
    'CycleDecomposition',
    'compose',
    'inverse',
    'conjugate',
    'cycle_decomposition',
    'cycle_type',
    'fixed_points',
    'is_full_cycle',
    'format_cycles',
    'parse_cycles',

    # Field
    'FieldContext',
    'make_context',
    'mod_inverse',
    'is_generator',
    'power_table',
    'discrete_log',

    # Factorizations
    'FamilyKind',
    'Factorization',
    'P1FReport',
    'GraphCycle',
    'cyclic_factorization',
    'p_squared_factorization',
    'p_squared_matching',
    'factorization_from_matchings',
    'transversal_matching',
    'validate_p1f',
    'spot_check_p1f',
    'check_p1f',
    'union_cycles',
    'latin_square',
    'common_edges',

    # Colorings
    'EdgeColoring',
    'from_certificate',
    'read_certificate',
    'write_certificate',
    'LabelPartition',
    'PartitionReport',
    'cyclic_partition',
    'p_squared_partition',
    'frame_coloring',
    'color_kpp',
    'color_kp2',
    'check_partition_condition',
    'derive_subcoloring',
    'color_histogram',

    # Analysis
    'CaseKind',
    'CaseReport',
    'common_edge',
    'decompose_factor_perm',
    'conjugation_check',
    'case_report',
    'survey',
    'orbit_representatives',
    'render_case',

    # Verification
    'BichromaticWitness',
    'VerificationReport',
    'LowerBoundResult',
    'check_proper',
    'check_acyclic',
    'verify_coloring',
    'witness_is_cycle',
    'exhaustive_lower_bound'
]

"""Exact commutative algebra over graded quotient rings, with a claim-checking harness."""

from __future__ import annotations

__version__ = "0.1.0"

from .core import GF, QQ, Field, Fp, PolyRing, Polynomial, compare_monomials, homogeneous_degree, poly_arith
from .matrix import Matrix
from .groebner import Ideal, ideal_dimension, ideal_equal, ideal_op, normal_form, radical_membership, reduced_groebner, syzygy_matrix
from .algebra import (
    FGModule,
    ModuleMap,
    QuotientRing,
    annihilator,
    auslander_transpose,
    betti_numbers,
    direct_sum,
    dual,
    evaluation_map,
    free_module,
    free_resolution,
    hom_module,
    ideal_module,
    is_zero_module,
    kernel_cokernel,
    length_over_field,
    make_quotient_ring,
    minimalize,
    module_dimension,
    present_module,
    projective_dimension,
    quotient_module,
    syzygy_module,
    tensor_modules,
    try_isomorphic,
    projective_dimension_info,
)
from .complexes import FreeComplex, ModuleComplex, homology, inf_sup, koszul_complex, shift, tensor_complexes
from .invariants import (
    PrimeSpec,
    Unsupported,
    ci_dimension,
    depth_formula_check,
    depth_koszul,
    depth_rees,
    ext,
    height,
    is_reflexive,
    is_regular_sequence,
    is_torsion_free,
    local_depth,
    rank_of,
    regular_seq_transfer_check,
    serre_condition,
    symbolic_power,
    tor,
    tor_vanishes_from_one,
)
from .report import CheckReport

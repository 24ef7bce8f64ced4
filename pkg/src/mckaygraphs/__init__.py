"""Exact-arithmetic McKay graphs of small finite groups."""

from .chartable import (
    CharacterTable,
    CharVector,
    FaithfulSelfDualMinDim,
    Irrep,
    Rho,
    compute_character_table,
    is_faithful,
    is_self_dual,
    kernel_of_character,
    resolve_rho,
    restriction_multiplicities,
    tensor_multiplicity,
)
from .cyclotomic import CycInt, cyclotomic_polynomial, euler_phi
from .graphs import (
    McKayGraph,
    build_mckay_graph,
    decompose_components,
    dual_check,
    graph_isomorphic,
    principal_component_isomorphism_check,
)
from .groups import (
    BinaryDihedral,
    BinaryPoly,
    Cyclic,
    Dihedral,
    ElemAb,
    Extraspecial2,
    FiniteGroup,
    Heisenberg,
    Product,
    Semidirect,
    build_group,
    conjugacy,
    quotient_group,
    subgroup_from_elements,
)
from .modp import FpElem, FpMatrix, SplitIncomplete, simultaneous_split
from .shapes import (
    ShapeLabel,
    bipartition,
    circuit_count,
    classify_component,
    is_forest,
    is_tree,
    pf_integer_vector_check,
)
from .verify import VerificationReport, run_suite

__all__ = [
    "BinaryDihedral",
    "BinaryPoly",
    "CharacterTable",
    "CharVector",
    "CycInt",
    "Cyclic",
    "Dihedral",
    "ElemAb",
    "Extraspecial2",
    "FaithfulSelfDualMinDim",
    "FiniteGroup",
    "FpElem",
    "FpMatrix",
    "Heisenberg",
    "Irrep",
    "McKayGraph",
    "Product",
    "Rho",
    "Semidirect",
    "ShapeLabel",
    "SplitIncomplete",
    "VerificationReport",
    "bipartition",
    "build_group",
    "build_mckay_graph",
    "circuit_count",
    "classify_component",
    "compute_character_table",
    "conjugacy",
    "cyclotomic_polynomial",
    "decompose_components",
    "dual_check",
    "euler_phi",
    "graph_isomorphic",
    "is_faithful",
    "is_forest",
    "is_self_dual",
    "is_tree",
    "kernel_of_character",
    "pf_integer_vector_check",
    "principal_component_isomorphism_check",
    "quotient_group",
    "resolve_rho",
    "restriction_multiplicities",
    "run_suite",
    "simultaneous_split",
    "subgroup_from_elements",
    "tensor_multiplicity",
]

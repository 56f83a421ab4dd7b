"""Crossed product and noncommutative torus at the numerical level."""
from .crossed import (
    BlockForm,
    ShiftDecomposition,
    assemble_matrix_form,
    assembly_crosscheck,
    build_crossed_rep,
    cq,
    cq_squared_exact,
    decompose_by_alpha_degree,
    norm_agreement_experiment,
    reassemble,
    shift_decomposition,
    torus_uniqueness_demo,
)
from .torus import TorusModel, TorusRep, build_torus_rep, clock_model, convergent_models, eval_torus_element

__all__ = [
    "BlockForm",
    "ShiftDecomposition",
    "TorusModel",
    "TorusRep",
    "assemble_matrix_form",
    "assembly_crosscheck",
    "build_crossed_rep",
    "build_torus_rep",
    "clock_model",
    "convergent_models",
    "cq",
    "cq_squared_exact",
    "decompose_by_alpha_degree",
    "eval_torus_element",
    "norm_agreement_experiment",
    "reassemble",
    "shift_decomposition",
    "torus_uniqueness_demo",
]

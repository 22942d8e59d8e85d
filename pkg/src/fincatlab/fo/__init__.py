"""Quantifier-free finite model theory: formulas, types, order property,
bounded coheir independence, indiscernibles, and universal-class
axiomatization."""

from ..structures import FinStructure, structure_from_json
from .axioms import (AxiomatizeResult, all_graphs, graph_structures,
                     is_transitive, sym_reflexive_structures, triangle_free,
                     universal_class_axiomatize)
from .forking import check_forking_properties, is_independent
from .formulas import QFFormula, evaluate, parse
from .indiscern import IndiscernibleWitness, extract_indiscernibles
from .order import SequenceWitness, order_property_witness
from .types import (QFType, count_types, cut_types_demo,
                    equivalence_structure, linear_order, pure_equality,
                    qf_type)

__all__ = [
    "FinStructure", "structure_from_json",
    "QFFormula", "evaluate", "parse",
    "QFType", "qf_type", "count_types", "cut_types_demo",
    "linear_order", "pure_equality", "equivalence_structure",
    "SequenceWitness", "order_property_witness",
    "is_independent", "check_forking_properties",
    "IndiscernibleWitness", "extract_indiscernibles",
    "AxiomatizeResult", "universal_class_axiomatize",
    "graph_structures", "sym_reflexive_structures",
    "triangle_free", "all_graphs", "is_transitive",
]

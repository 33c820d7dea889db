"""First-order formulas: syntax, evaluation and the shipped formula library."""

from .evaluate import Evaluator, Model, as_model, evaluate, evaluate_reference, graph_model
from .library import (independence_witness, ladder, ladder_index, load_formulas,
                      permutation_orders, permutation_roundtrip)
from .syntax import (Atom, Binary, Const, Definition, Eq, Formula, Not, Quant, Signature,
                     definition_text, parse_definitions, parse_formula, quantifier_rank, to_text)

__all__ = [
    "Atom", "Binary", "Const", "Definition", "Eq", "Evaluator", "Formula", "Model", "Not",
    "Quant", "Signature", "as_model", "definition_text", "evaluate", "evaluate_reference",
    "graph_model", "independence_witness", "ladder", "ladder_index", "load_formulas",
    "parse_definitions", "parse_formula", "permutation_orders", "permutation_roundtrip",
    "quantifier_rank", "to_text",
]

"""Graph colouring over clique-width terms with a scheme-based dynamic program."""
from .annotate import Annotations, annotate
from .extract import extract_colouring, verify_colouring
from .scheme import Scheme, closure, parse_scheme, render
from .solver import SolveResult, chromatic_number, solve
from .term import LabeledGraph, Term, TermError, evaluate_graph, parse_term, positions, width

__all__ = [
    "Annotations",
    "LabeledGraph",
    "Scheme",
    "SolveResult",
    "Term",
    "TermError",
    "annotate",
    "chromatic_number",
    "closure",
    "evaluate_graph",
    "extract_colouring",
    "parse_scheme",
    "parse_term",
    "positions",
    "render",
    "solve",
    "verify_colouring",
    "width",
]

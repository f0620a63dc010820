"""Epistemic networks: agents, propositions and nested beliefs, with
individual, dyadic and collective epistemic measures and the classical
social-network measures they are compared against."""
from .core import Epinet, Proposition
from .errors import (
    ComputationError,
    ConvergenceError,
    DataError,
    EpinetError,
    FormulaSyntaxError,
    SchemaError,
    UnknownTruthError,
)
from .formula import And, Bel, Know, Lit, Not, Truth, eliminate_k, evaluate, format_formula, normalize, parse

__all__ = [
    "And",
    "Bel",
    "ComputationError",
    "ConvergenceError",
    "DataError",
    "Epinet",
    "EpinetError",
    "FormulaSyntaxError",
    "Know",
    "Lit",
    "Not",
    "Proposition",
    "SchemaError",
    "Truth",
    "UnknownTruthError",
    "eliminate_k",
    "evaluate",
    "format_formula",
    "normalize",
    "parse",
]

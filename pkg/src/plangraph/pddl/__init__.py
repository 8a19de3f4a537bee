"""PDDL frontend: lexer, parser, printer, and structure encoding."""

from .abstract import to_abstract_structure
from .ast import (And, Atom, AxiomSchema, CondEffect, CostIncrease, Exists,
                  FluentInit, Forall, Formula, FunctionSig, Imply, Literal,
                  Not, OperatorSchema, Or, PddlDocument, PredicateSig,
                  TypedName)
from .parser import SUPPORTED_REQUIREMENTS, parse_pddl
from .printer import print_domain, print_problem

__all__ = [
    "And", "Atom", "AxiomSchema", "CondEffect", "CostIncrease", "Exists",
    "FluentInit", "Forall", "Formula", "FunctionSig", "Imply", "Literal",
    "Not", "OperatorSchema", "Or", "PddlDocument", "PredicateSig",
    "SUPPORTED_REQUIREMENTS", "TypedName", "parse_pddl", "print_domain",
    "print_problem", "to_abstract_structure",
]

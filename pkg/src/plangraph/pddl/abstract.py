"""Encoding of a PDDL document as one nested abstract structure.

The root is a four-tuple (operators, axioms, init, goal). Declarations
(types, predicates, functions, constants, objects) are folded into the init
component as tagging tuples so that every declared name owns a base symbol
in the structure. The full encoding table lives in
docs/abstract_structure_encoding.md.
"""

from __future__ import annotations

from ..structures import SetStruct, Structure, Symbol, TupleStruct
from .ast import (And, Atom, AxiomSchema, CondEffect, CostIncrease, Exists,
                  FluentInit, Forall, Formula, Imply, Literal, Not,
                  OperatorSchema, Or, PddlDocument, TypedName)

_NOT = Symbol("not", "predicate")
_OR = Symbol("or", "predicate")
_IMPLY = Symbol("imply", "predicate")
_EXISTS = Symbol("exists", "predicate")
_FORALL = Symbol("forall", "predicate")
_EQ = Symbol("=", "predicate")
_UNIT_COST = Symbol("1", "number")


def _term(name: str) -> Symbol:
    if name.startswith("?"):
        return Symbol(name, "variable")
    return Symbol(name, "constant")


def _type(name: str) -> Symbol:
    # Types behave like unary predicates, so they share that symbol type.
    return Symbol(name, "predicate")


def _atom(atom: Atom) -> TupleStruct:
    head = Symbol(atom.predicate, "predicate")
    return TupleStruct((head,) + tuple(_term(a) for a in atom.args))


def _fluent(atom: Atom) -> TupleStruct:
    head = Symbol(atom.predicate, "function")
    return TupleStruct((head,) + tuple(_term(a) for a in atom.args))


def _literal(lit: Literal) -> Structure:
    encoded = _atom(lit.atom)
    if lit.negated:
        return TupleStruct((_NOT, encoded))
    return encoded


def _params(params: tuple[TypedName, ...]) -> TupleStruct:
    return TupleStruct(tuple(
        TupleStruct((Symbol(p.name, "variable"), _type(p.type)))
        for p in params))


def _formula(formula: Formula) -> Structure:
    if isinstance(formula, Literal):
        return _literal(formula)
    if isinstance(formula, And):
        return SetStruct(tuple(_formula(p) for p in formula.parts))
    if isinstance(formula, Or):
        parts = SetStruct(tuple(_formula(p) for p in formula.parts))
        return TupleStruct((_OR, parts))
    if isinstance(formula, Not):
        return TupleStruct((_NOT, _formula(formula.part)))
    if isinstance(formula, Imply):
        return TupleStruct((_IMPLY, _formula(formula.antecedent),
                            _formula(formula.consequent)))
    if isinstance(formula, (Exists, Forall)):
        marker = _EXISTS if isinstance(formula, Exists) else _FORALL
        return TupleStruct((marker, _params(formula.params),
                            _formula(formula.part)))
    raise TypeError(f"unknown formula node {formula!r}")  # pragma: no cover


def _amount(amount: int | Atom) -> Structure:
    if isinstance(amount, Atom):
        return _fluent(amount)
    return Symbol(str(amount), "number")


def _effect(eff: CondEffect) -> TupleStruct:
    assert not isinstance(eff.effect, CostIncrease)
    return TupleStruct((
        _params(eff.params),
        SetStruct(tuple(_literal(c) for c in eff.condition)),
        _literal(eff.effect),
    ))


def _operator(op: OperatorSchema) -> TupleStruct:
    effects = tuple(_effect(e) for e in op.effects
                    if not isinstance(e.effect, CostIncrease))
    cost = op.cost
    return TupleStruct((
        Symbol(op.name, "constant"),
        _params(op.parameters),
        SetStruct(tuple(_literal(l) for l in op.precondition)),
        SetStruct(effects),
        _UNIT_COST if cost is None else _amount(cost),
    ))


def _axiom(axiom: AxiomSchema) -> TupleStruct:
    return TupleStruct((_atom(axiom.head), _formula(axiom.body)))


def _signature(name: str, head_type: str,
               params: tuple[TypedName, ...]) -> TupleStruct:
    types = TupleStruct(tuple(_type(p.type) for p in params))
    return TupleStruct((Symbol(name, head_type), types))


def _init_component(doc: PddlDocument) -> SetStruct:
    members: list[Structure] = []
    for entry in doc.init:
        if isinstance(entry, FluentInit):
            members.append(TupleStruct((
                _EQ, _fluent(entry.fluent), Symbol(str(entry.value),
                                                   "number"))))
        else:
            members.append(_literal(entry))
    for entity in doc.constants + doc.objects:
        members.append(TupleStruct((_term(entity.name), _type(entity.type))))
    for sig in doc.predicates:
        members.append(_signature(sig.name, "predicate", sig.params))
    for sig in doc.functions:
        members.append(_signature(sig.name, "function", sig.params))
    for t in doc.types:
        members.append(TupleStruct((_type(t.name), _type(t.type))))
    return SetStruct(tuple(members))


def to_abstract_structure(doc: PddlDocument) -> TupleStruct:
    """Encode the task as the four-tuple (operators, axioms, init, goal)."""
    return TupleStruct((
        SetStruct(tuple(_operator(op) for op in doc.schematic_operators)),
        SetStruct(tuple(_axiom(ax) for ax in doc.schematic_axioms)),
        _init_component(doc),
        SetStruct(tuple(_literal(l) for l in doc.goal)),
    ))

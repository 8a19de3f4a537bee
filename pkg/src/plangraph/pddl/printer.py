"""Pretty printer emitting PDDL text that reparses to an equal document.

Conjunctions are always wrapped in ``(and ...)`` and every name is printed
with an explicit type, so the output is a normal form rather than a
byte-level copy of the input.
"""

from __future__ import annotations

from .ast import (And, Atom, AxiomSchema, CondEffect, CostIncrease, Exists,
                  FluentInit, Forall, Formula, Imply, Literal, Not,
                  OperatorSchema, Or, PddlDocument, TypedName)


def _typed_list(items: tuple[TypedName, ...]) -> str:
    """Names grouped by consecutive runs of one type: ``a b - t c - u``."""
    parts: list[str] = []
    run: list[str] = []
    run_type: str | None = None
    for item in items:
        if run_type is not None and item.type != run_type:
            parts.append(" ".join(run) + f" - {run_type}")
            run = []
        run.append(item.name)
        run_type = item.type
    if run:
        parts.append(" ".join(run) + f" - {run_type}")
    return " ".join(parts)


def _atom(atom: Atom) -> str:
    if atom.args:
        return f"({atom.predicate} {' '.join(atom.args)})"
    return f"({atom.predicate})"


def _literal(lit: Literal) -> str:
    text = _atom(lit.atom)
    return f"(not {text})" if lit.negated else text


def _conjunction(literals: tuple[Literal, ...]) -> str:
    if not literals:
        return "(and)"
    return "(and " + " ".join(_literal(l) for l in literals) + ")"


def _formula(formula: Formula) -> str:
    if isinstance(formula, Literal):
        return _literal(formula)
    if isinstance(formula, And):
        inner = " ".join(_formula(p) for p in formula.parts)
        return f"(and {inner})" if formula.parts else "(and)"
    if isinstance(formula, Or):
        inner = " ".join(_formula(p) for p in formula.parts)
        return f"(or {inner})" if formula.parts else "(or)"
    if isinstance(formula, Not):
        return f"(not {_formula(formula.part)})"
    if isinstance(formula, Imply):
        return (f"(imply {_formula(formula.antecedent)} "
                f"{_formula(formula.consequent)})")
    if isinstance(formula, Exists):
        return f"(exists ({_typed_list(formula.params)}) " \
               f"{_formula(formula.part)})"
    if isinstance(formula, Forall):
        return f"(forall ({_typed_list(formula.params)}) " \
               f"{_formula(formula.part)})"
    raise TypeError(f"unknown formula node {formula!r}")  # pragma: no cover


def _cost(update: CostIncrease) -> str:
    amount = (_atom(update.amount) if isinstance(update.amount, Atom)
              else str(update.amount))
    return f"(increase {_atom(update.fluent)} {amount})"


def _effect(eff: CondEffect) -> str:
    if isinstance(eff.effect, CostIncrease):
        payload = _cost(eff.effect)
    else:
        payload = _literal(eff.effect)
    if eff.condition:
        payload = f"(when {_conjunction(eff.condition)} {payload})"
    if eff.params:
        payload = f"(forall ({_typed_list(eff.params)}) {payload})"
    return payload


def _operator(op: OperatorSchema) -> list[str]:
    lines = [f"  (:action {op.name}",
             f"    :parameters ({_typed_list(op.parameters)})",
             f"    :precondition {_conjunction(op.precondition)}"]
    effects = " ".join(_effect(e) for e in op.effects)
    lines.append(f"    :effect (and {effects}))" if op.effects
                 else "    :effect (and))")
    return lines


def _axiom(axiom: AxiomSchema) -> list[str]:
    head = _atom(axiom.head)
    return [f"  (:derived {head}", f"    {_formula(axiom.body)})"]


def print_domain(doc: PddlDocument) -> str:
    lines = [f"(define (domain {doc.domain_name})"]
    if doc.requirements:
        lines.append(f"  (:requirements {' '.join(doc.requirements)})")
    if doc.types:
        lines.append(f"  (:types {_typed_list(doc.types)})")
    if doc.constants:
        lines.append(f"  (:constants {_typed_list(doc.constants)})")
    if doc.predicates:
        lines.append("  (:predicates")
        for sig in doc.predicates:
            params = _typed_list(sig.params)
            body = f"({sig.name} {params})" if params else f"({sig.name})"
            lines.append(f"    {body}")
        lines[-1] += ")"
    if doc.functions:
        lines.append("  (:functions")
        for sig in doc.functions:
            params = _typed_list(sig.params)
            body = f"({sig.name} {params})" if params else f"({sig.name})"
            lines.append(f"    {body} - number")
        lines[-1] += ")"
    for op in doc.schematic_operators:
        lines.extend(_operator(op))
    for axiom in doc.schematic_axioms:
        lines.extend(_axiom(axiom))
    lines.append(")")
    return "\n".join(lines) + "\n"


def print_problem(doc: PddlDocument) -> str:
    lines = [f"(define (problem {doc.problem_name})",
             f"  (:domain {doc.domain_name})"]
    if doc.objects:
        lines.append(f"  (:objects {_typed_list(doc.objects)})")
    lines.append("  (:init")
    for entry in doc.init:
        if isinstance(entry, FluentInit):
            lines.append(f"    (= {_atom(entry.fluent)} {entry.value})")
        else:
            lines.append(f"    {_literal(entry)}")
    lines[-1] += ")" if doc.init else ""
    if not doc.init:
        lines[-1] = "  (:init)"
    lines.append(f"  (:goal {_conjunction(doc.goal)})")
    if doc.metric_fluent is not None:
        lines.append(f"  (:metric minimize {_atom(doc.metric_fluent)})")
    lines.append(")")
    return "\n".join(lines) + "\n"

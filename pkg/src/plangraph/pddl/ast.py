"""Document model for the supported PDDL fragment.

The fragment: conjunctive preconditions with negation and equality, typing,
conditional and universally quantified effects, integer action costs, and
derived predicates (whose bodies may use and/or/not/imply/exists/forall).

All nodes are immutable; source positions ride along for diagnostics but are
excluded from structural equality, so a document pretty-printed and reparsed
compares equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class Atom:
    """A predicate or function applied to terms; '?'-prefixed terms are variables."""

    predicate: str
    args: tuple[str, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(a for a in self.args if a.startswith("?"))


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negated: bool = False


@dataclass(frozen=True)
class TypedName:
    """A name/type pair: a typed parameter, object, constant, or type-parent link."""

    name: str
    type: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PredicateSig:
    name: str
    params: tuple[TypedName, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class FunctionSig:
    name: str
    params: tuple[TypedName, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    @property
    def arity(self) -> int:
        return len(self.params)


# Formulas appear as axiom bodies; goals and preconditions are restricted to
# flat literal conjunctions.
@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Not:
    part: "Formula"


@dataclass(frozen=True)
class Imply:
    antecedent: "Formula"
    consequent: "Formula"


@dataclass(frozen=True)
class Exists:
    params: tuple[TypedName, ...]
    part: "Formula"


@dataclass(frozen=True)
class Forall:
    params: tuple[TypedName, ...]
    part: "Formula"


Formula = Union[Literal, And, Or, Not, Imply, Exists, Forall]


@dataclass(frozen=True)
class CostIncrease:
    """A numeric cost update: increase ``fluent`` by an integer or another fluent."""

    fluent: Atom
    amount: Union[int, Atom]


@dataclass(frozen=True)
class CondEffect:
    """One conditional effect: for all ``params``, if ``condition`` then ``effect``."""

    params: tuple[TypedName, ...]
    condition: tuple[Literal, ...]
    effect: Union[Literal, CostIncrease]


@dataclass(frozen=True)
class OperatorSchema:
    name: str
    parameters: tuple[TypedName, ...]
    precondition: tuple[Literal, ...]
    effects: tuple[CondEffect, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    @property
    def cost(self) -> Union[int, Atom, None]:
        """The unconditional cost update amount, if the operator declares one."""
        for eff in self.effects:
            if isinstance(eff.effect, CostIncrease):
                return eff.effect.amount
        return None


@dataclass(frozen=True)
class AxiomSchema:
    head: Atom
    body: Formula
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FluentInit:
    """An initial function assignment, e.g. setting a cost counter to 0."""

    fluent: Atom
    value: int


@dataclass(frozen=True)
class PddlDocument:
    """A validated domain/problem pair."""

    domain_name: str
    problem_name: str
    requirements: tuple[str, ...]
    types: tuple[TypedName, ...]
    predicates: tuple[PredicateSig, ...]
    functions: tuple[FunctionSig, ...]
    constants: tuple[TypedName, ...]
    schematic_operators: tuple[OperatorSchema, ...]
    schematic_axioms: tuple[AxiomSchema, ...]
    objects: tuple[TypedName, ...]
    init: tuple[Union[Literal, FluentInit], ...]
    goal: tuple[Literal, ...]
    metric_fluent: Union[Atom, None] = None

    @property
    def derived_predicates(self) -> frozenset[str]:
        return frozenset(a.head.predicate for a in self.schematic_axioms)

"""Recursive-descent parser and validator for PDDL domain/problem pairs.

Parsing accepts the supported fragment (see :mod:`plangraph.pddl.ast`);
anything outside it raises a positioned error rather than being silently
dropped. Validation cross-checks declarations, arities, and variable scopes
over the combined document.
"""

from __future__ import annotations

from ..errors import ParseError, ValidationError
from .ast import (And, Atom, AxiomSchema, CondEffect, CostIncrease, Exists,
                  FluentInit, Forall, Formula, FunctionSig, Imply, Literal,
                  Not, OperatorSchema, Or, PddlDocument, PredicateSig,
                  TypedName)
from .lexer import (EOF, KEYWORD, LPAREN, MINUS, NAME, NUMBER, RPAREN,
                    VARIABLE, Token, tokenize)

SUPPORTED_REQUIREMENTS = frozenset({
    ":strips",
    ":typing",
    ":negative-preconditions",
    ":equality",
    ":conditional-effects",
    ":action-costs",
    ":derived-predicates",
})

# Names with syntactic meaning; declaring a predicate/function under one of
# these would make the structure encoding ambiguous.
RESERVED_NAMES = frozenset({
    "and", "or", "not", "imply", "exists", "forall", "when", "increase",
    "decrease", "assign", "define", "domain", "problem", "minimize",
    "maximize", "object", "number",
})

DEFAULT_TYPE = "object"


class _Stream:
    def __init__(self, tokens: list[Token], filename: str | None):
        self.tokens = tokens
        self.pos = 0
        self.filename = filename

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, filename=self.filename,
                          line=tok.line, column=tok.col)

    def expect(self, kind: str, value: str | None = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value if value is not None else kind
            raise self.error(f"expected {want!r}, found {tok.value!r}", tok)
        return tok


# ---------------------------------------------------------------------------
# Shared grammar pieces
# ---------------------------------------------------------------------------

def _parse_typed_list(s: _Stream, kind: str) -> tuple[TypedName, ...]:
    """``x1 x2 - t1 y1 - t2 z`` up to the closing paren; untyped means object."""
    out: list[TypedName] = []
    pending: list[Token] = []
    while True:
        tok = s.peek()
        if tok.kind == RPAREN:
            break
        if tok.kind == kind:
            pending.append(s.next())
            continue
        if tok.kind == MINUS:
            if not pending:
                raise s.error("type separator '-' without preceding names")
            s.next()
            type_tok = s.expect(NAME)
            out.extend(TypedName(p.value, type_tok.value, p.line, p.col)
                       for p in pending)
            pending = []
            continue
        raise s.error(f"unexpected token {tok.value!r} in typed list", tok)
    out.extend(TypedName(p.value, DEFAULT_TYPE, p.line, p.col)
               for p in pending)
    return tuple(out)


def _parse_term(s: _Stream) -> str:
    tok = s.next()
    if tok.kind in (NAME, VARIABLE):
        return tok.value
    if tok.kind == NUMBER:
        raise s.error("numbers cannot appear as atom arguments", tok)
    raise s.error(f"expected a term, found {tok.value!r}", tok)


def _parse_atom_body(s: _Stream, head: Token) -> Atom:
    """Everything after the opening paren and the predicate name token."""
    args = []
    while s.peek().kind != RPAREN:
        args.append(_parse_term(s))
    s.expect(RPAREN)
    return Atom(head.value, tuple(args), head.line, head.col)


def _parse_atom(s: _Stream) -> Atom:
    s.expect(LPAREN)
    head = s.next()
    if head.kind != NAME:
        raise s.error(f"expected a predicate name, found {head.value!r}", head)
    return _parse_atom_body(s, head)


def _parse_literal(s: _Stream) -> Literal:
    open_tok = s.expect(LPAREN)
    head = s.next()
    if head.kind != NAME:
        raise s.error(f"expected a predicate name or 'not', found "
                      f"{head.value!r}", head)
    if head.value == "not":
        atom = _parse_atom(s)
        s.expect(RPAREN)
        return Literal(atom, negated=True)
    del open_tok
    return Literal(_parse_atom_body(s, head))


def _parse_literal_conjunction(s: _Stream, what: str) -> tuple[Literal, ...]:
    """A literal, ``(and lit*)``, or the empty condition ``()``/``(and)``."""
    s.expect(LPAREN)
    tok = s.peek()
    if tok.kind == RPAREN:
        s.next()
        return ()
    if tok.kind == NAME and tok.value == "and":
        s.next()
        literals = []
        while s.peek().kind == LPAREN:
            literals.append(_parse_literal(s))
        s.expect(RPAREN)
        return tuple(literals)
    if tok.kind == NAME and tok.value in ("or", "imply", "exists", "forall"):
        raise ValidationError(
            f"{tok.value!r} is not allowed in a {what}: only conjunctions "
            "of literals are supported here",
            filename=s.filename, line=tok.line, column=tok.col)
    # single literal; reuse the already-consumed paren
    head = s.next()
    if head.kind != NAME:
        raise s.error(f"expected a literal in {what}, found {head.value!r}",
                      head)
    if head.value == "not":
        atom = _parse_atom(s)
        s.expect(RPAREN)
        return (Literal(atom, negated=True),)
    return (Literal(_parse_atom_body(s, head)),)


def _parse_formula(s: _Stream) -> Formula:
    open_tok = s.expect(LPAREN)
    tok = s.peek()
    if tok.kind == RPAREN:
        s.next()
        return And(())
    head = s.next()
    if head.kind != NAME:
        raise s.error(f"expected a connective or predicate, found "
                      f"{head.value!r}", head)
    word = head.value
    if word in ("and", "or"):
        parts = []
        while s.peek().kind == LPAREN:
            parts.append(_parse_formula(s))
        s.expect(RPAREN)
        return And(tuple(parts)) if word == "and" else Or(tuple(parts))
    if word == "not":
        inner = _parse_formula(s)
        s.expect(RPAREN)
        if isinstance(inner, Literal) and not inner.negated:
            return Literal(inner.atom, negated=True)
        return Not(inner)
    if word == "imply":
        antecedent = _parse_formula(s)
        consequent = _parse_formula(s)
        s.expect(RPAREN)
        return Imply(antecedent, consequent)
    if word in ("exists", "forall"):
        s.expect(LPAREN)
        params = _parse_typed_list(s, VARIABLE)
        s.expect(RPAREN)
        part = _parse_formula(s)
        s.expect(RPAREN)
        cls = Exists if word == "exists" else Forall
        return cls(params, part)
    del open_tok
    return Literal(_parse_atom_body(s, head))


# ---------------------------------------------------------------------------
# Effects
# ---------------------------------------------------------------------------

def _parse_cost_increase(s: _Stream, head: Token) -> CostIncrease:
    fluent = _parse_atom(s)
    amount_tok = s.peek()
    if amount_tok.kind == NUMBER:
        s.next()
        amount: int | Atom = int(amount_tok.value)
    elif amount_tok.kind == LPAREN:
        amount = _parse_atom(s)
    else:
        raise s.error("cost amount must be a nonnegative integer or a "
                      "function term", amount_tok)
    s.expect(RPAREN)
    del head
    return CostIncrease(fluent, amount)


def _parse_effect(s: _Stream, params: tuple[TypedName, ...] = (),
                  condition: tuple[Literal, ...] = (),
                  depth: int = 0) -> list[CondEffect]:
    """One effect element; 'and' at the top level is flattened by the caller."""
    s.expect(LPAREN)
    head = s.next()
    if head.kind != NAME:
        raise s.error(f"expected an effect, found {head.value!r}", head)
    word = head.value

    if word == "and":
        effects = []
        while s.peek().kind == LPAREN:
            effects.extend(_parse_effect(s, params, condition, depth + 1))
        s.expect(RPAREN)
        return effects

    if word == "forall":
        s.expect(LPAREN)
        inner_params = _parse_typed_list(s, VARIABLE)
        s.expect(RPAREN)
        effects = _parse_effect(s, params + inner_params, condition, depth + 1)
        s.expect(RPAREN)
        return effects

    if word == "when":
        if condition:
            raise ValidationError("nested 'when' is not supported",
                                  filename=s.filename, line=head.line,
                                  column=head.col)
        cond = _parse_literal_conjunction(s, "effect condition")
        effects = _parse_effect(s, params, cond, depth + 1)
        s.expect(RPAREN)
        for eff in effects:
            if isinstance(eff.effect, CostIncrease):
                raise ValidationError(
                    "conditional cost updates are not supported",
                    filename=s.filename, line=head.line, column=head.col)
        return effects

    if word == "increase":
        update = _parse_cost_increase(s, head)
        if params:
            raise ValidationError(
                "quantified cost updates are not supported",
                filename=s.filename, line=head.line, column=head.col)
        return [CondEffect((), condition, update)]

    if word in ("decrease", "assign", "scale-up", "scale-down"):
        raise ValidationError(f"numeric effect {word!r} is not supported "
                              "(only 'increase' on cost functions)",
                              filename=s.filename, line=head.line,
                              column=head.col)

    if word == "not":
        atom = _parse_atom(s)
        s.expect(RPAREN)
        return [CondEffect(params, condition, Literal(atom, negated=True))]

    atom = _parse_atom_body(s, head)
    return [CondEffect(params, condition, Literal(atom))]


# ---------------------------------------------------------------------------
# Domain / problem sections
# ---------------------------------------------------------------------------

class _DomainParts:
    def __init__(self):
        self.name = ""
        self.requirements: list[str] = []
        self.types: tuple[TypedName, ...] = ()
        self.constants: tuple[TypedName, ...] = ()
        self.predicates: list[PredicateSig] = []
        self.functions: list[FunctionSig] = []
        self.operators: list[OperatorSchema] = []
        self.axioms: list[AxiomSchema] = []


def _parse_requirements(s: _Stream) -> list[str]:
    flags = []
    while s.peek().kind == KEYWORD:
        tok = s.next()
        if tok.value not in SUPPORTED_REQUIREMENTS:
            raise ValidationError(
                f"unsupported requirement flag {tok.value}",
                filename=s.filename, line=tok.line, column=tok.col)
        flags.append(tok.value)
    s.expect(RPAREN)
    return flags


def _parse_signature(s: _Stream) -> tuple[Token, tuple[TypedName, ...]]:
    s.expect(LPAREN)
    name = s.expect(NAME)
    params = _parse_typed_list(s, VARIABLE)
    s.expect(RPAREN)
    return name, params


def _parse_predicates(s: _Stream) -> list[PredicateSig]:
    sigs = []
    while s.peek().kind == LPAREN:
        name, params = _parse_signature(s)
        sigs.append(PredicateSig(name.value, params, name.line, name.col))
    s.expect(RPAREN)
    return sigs


def _parse_functions(s: _Stream) -> list[FunctionSig]:
    sigs = []
    while s.peek().kind != RPAREN:
        if s.peek().kind != LPAREN:
            raise s.error("expected a function declaration")
        name, params = _parse_signature(s)
        sigs.append(FunctionSig(name.value, params, name.line, name.col))
        if s.peek().kind == MINUS:  # optional "- number" result annotation
            s.next()
            result = s.expect(NAME)
            if result.value != "number":
                raise ValidationError(
                    f"functions must map to 'number', not {result.value!r}",
                    filename=s.filename, line=result.line, column=result.col)
    s.expect(RPAREN)
    return sigs


def _parse_action(s: _Stream, name_tok: Token) -> OperatorSchema:
    name = s.expect(NAME)
    parameters: tuple[TypedName, ...] = ()
    precondition: tuple[Literal, ...] = ()
    effects: list[CondEffect] = []
    saw_params = False
    while s.peek().kind == KEYWORD:
        section = s.next()
        if section.value == ":parameters":
            s.expect(LPAREN)
            parameters = _parse_typed_list(s, VARIABLE)
            s.expect(RPAREN)
            saw_params = True
        elif section.value == ":precondition":
            precondition = _parse_literal_conjunction(s, "precondition")
        elif section.value == ":effect":
            effects = _parse_effect(s)
        else:
            raise s.error(f"unknown action section {section.value}", section)
    s.expect(RPAREN)
    if not saw_params:
        raise ParseError(f"action {name.value!r} has no :parameters section",
                         filename=s.filename, line=name.line, column=name.col)
    del name_tok
    return OperatorSchema(name.value, parameters, precondition,
                          tuple(effects), name.line, name.col)


def _parse_derived(s: _Stream, name_tok: Token) -> AxiomSchema:
    s.expect(LPAREN)
    head_name = s.expect(NAME)
    head_params = _parse_typed_list(s, VARIABLE)
    s.expect(RPAREN)
    body = _parse_formula(s)
    s.expect(RPAREN)
    head = Atom(head_name.value, tuple(p.name for p in head_params),
                head_name.line, head_name.col)
    return AxiomSchema(head, body, name_tok.line, name_tok.col)


def _parse_domain(text: str, filename: str | None) -> _DomainParts:
    s = _Stream(tokenize(text, filename), filename)
    parts = _DomainParts()
    s.expect(LPAREN)
    s.expect(NAME, "define")
    s.expect(LPAREN)
    s.expect(NAME, "domain")
    parts.name = s.expect(NAME).value
    s.expect(RPAREN)

    while s.peek().kind == LPAREN:
        s.next()
        section = s.next()
        if section.kind != KEYWORD:
            raise s.error(f"expected a domain section, found "
                          f"{section.value!r}", section)
        if section.value == ":requirements":
            parts.requirements.extend(_parse_requirements(s))
        elif section.value == ":types":
            parts.types = _parse_typed_list(s, NAME)
            s.expect(RPAREN)
        elif section.value == ":constants":
            parts.constants = _parse_typed_list(s, NAME)
            s.expect(RPAREN)
        elif section.value == ":predicates":
            parts.predicates.extend(_parse_predicates(s))
        elif section.value == ":functions":
            parts.functions.extend(_parse_functions(s))
        elif section.value == ":action":
            parts.operators.append(_parse_action(s, section))
        elif section.value == ":derived":
            parts.axioms.append(_parse_derived(s, section))
        else:
            raise s.error(f"unknown domain section {section.value}", section)
    s.expect(RPAREN)
    if s.peek().kind != EOF:
        raise s.error("trailing content after domain definition")
    return parts


class _ProblemParts:
    def __init__(self):
        self.name = ""
        self.domain_name = ""
        self.requirements: list[str] = []
        self.objects: tuple[TypedName, ...] = ()
        self.init: list[Literal | FluentInit] = []
        self.goal: tuple[Literal, ...] = ()
        self.metric_fluent: Atom | None = None
        self.saw_goal = False


def _parse_init_entry(s: _Stream) -> Literal | FluentInit:
    s.expect(LPAREN)
    head = s.next()
    if head.kind != NAME:
        raise s.error(f"expected an init entry, found {head.value!r}", head)
    if head.value == "not":
        atom = _parse_atom(s)
        s.expect(RPAREN)
        return Literal(atom, negated=True)
    if head.value == "=" and s.peek().kind == LPAREN:
        fluent = _parse_atom(s)
        value_tok = s.expect(NUMBER)
        s.expect(RPAREN)
        return FluentInit(fluent, int(value_tok.value))
    return Literal(_parse_atom_body(s, head))


def _parse_problem(text: str, filename: str | None) -> _ProblemParts:
    s = _Stream(tokenize(text, filename), filename)
    parts = _ProblemParts()
    s.expect(LPAREN)
    s.expect(NAME, "define")
    s.expect(LPAREN)
    s.expect(NAME, "problem")
    parts.name = s.expect(NAME).value
    s.expect(RPAREN)

    while s.peek().kind == LPAREN:
        s.next()
        section = s.next()
        if section.kind != KEYWORD:
            raise s.error(f"expected a problem section, found "
                          f"{section.value!r}", section)
        if section.value == ":domain":
            parts.domain_name = s.expect(NAME).value
            s.expect(RPAREN)
        elif section.value == ":requirements":
            parts.requirements.extend(_parse_requirements(s))
        elif section.value == ":objects":
            parts.objects = _parse_typed_list(s, NAME)
            s.expect(RPAREN)
        elif section.value == ":init":
            while s.peek().kind == LPAREN:
                parts.init.append(_parse_init_entry(s))
            s.expect(RPAREN)
        elif section.value == ":goal":
            parts.goal = _parse_literal_conjunction(s, "goal")
            parts.saw_goal = True
            s.expect(RPAREN)
        elif section.value == ":metric":
            direction = s.expect(NAME)
            if direction.value != "minimize":
                raise ValidationError("only 'minimize' metrics are supported",
                                      filename=s.filename,
                                      line=direction.line, column=direction.col)
            parts.metric_fluent = _parse_atom(s)
            s.expect(RPAREN)
        else:
            raise s.error(f"unknown problem section {section.value}", section)
    s.expect(RPAREN)
    if s.peek().kind != EOF:
        raise s.error("trailing content after problem definition")
    if not parts.saw_goal:
        raise ParseError("problem has no :goal section", filename=filename,
                         line=1, column=1)
    return parts


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

class _Validator:
    def __init__(self, doc: PddlDocument, domain_file: str | None,
                 problem_file: str | None):
        self.doc = doc
        self.domain_file = domain_file
        self.problem_file = problem_file
        self.types = {DEFAULT_TYPE}
        self.predicates: dict[str, int] = {}
        self.functions: dict[str, int] = {}
        self.entities: set[str] = set()

    def fail(self, message: str, node=None, problem: bool = False):
        line = getattr(node, "line", None)
        col = getattr(node, "col", None)
        raise ValidationError(message,
                              filename=self.problem_file if problem
                              else self.domain_file,
                              line=line or None, column=col or None)

    def run(self):
        doc = self.doc
        for t in doc.types:
            self.types.add(t.name)
            self.types.add(t.type)
        seen_children = set()
        for t in doc.types:
            if t.name in seen_children:
                self.fail(f"type {t.name!r} declared twice", t)
            seen_children.add(t.name)

        for sig in doc.predicates:
            if sig.name in RESERVED_NAMES or sig.name == "=":
                self.fail(f"predicate name {sig.name!r} is reserved", sig)
            if sig.name in self.predicates:
                self.fail(f"predicate {sig.name!r} declared twice", sig)
            self.predicates[sig.name] = sig.arity
            self.check_params(sig.params, f"predicate {sig.name}", sig)
        for sig in doc.functions:
            if sig.name in RESERVED_NAMES or sig.name == "=":
                self.fail(f"function name {sig.name!r} is reserved", sig)
            if sig.name in self.functions or sig.name in self.predicates:
                self.fail(f"function {sig.name!r} clashes with another "
                          "declaration", sig)
            self.functions[sig.name] = sig.arity
            self.check_params(sig.params, f"function {sig.name}", sig)

        for group, problem in ((doc.constants, False), (doc.objects, True)):
            for entity in group:
                if entity.name in self.entities:
                    self.fail(f"object {entity.name!r} declared twice",
                              entity, problem=problem)
                if entity.type not in self.types:
                    self.fail(f"object {entity.name!r} has undeclared type "
                              f"{entity.type!r}", entity, problem=problem)
                self.entities.add(entity.name)

        op_names = set()
        for op in doc.schematic_operators:
            if op.name in op_names:
                self.fail(f"operator {op.name!r} declared twice", op)
            op_names.add(op.name)
            self.check_operator(op)
        for axiom in doc.schematic_axioms:
            self.check_axiom(axiom)
        self.check_init()
        self.check_goal()
        if doc.metric_fluent is not None:
            self.check_fluent(doc.metric_fluent, scope=frozenset(),
                              context="metric", problem=True)

    def check_params(self, params, context: str, node, problem=False):
        seen = set()
        for p in params:
            if p.name in seen:
                self.fail(f"{context}: parameter {p.name} repeated", p,
                          problem=problem)
            seen.add(p.name)
            if p.type not in self.types:
                self.fail(f"{context}: undeclared type {p.type!r}", p,
                          problem=problem)

    def check_atom(self, atom: Atom, scope: frozenset[str], context: str,
                   problem=False):
        if atom.predicate == "=":
            if len(atom.args) != 2:
                self.fail(f"{context}: '=' takes exactly two arguments", atom,
                          problem=problem)
        elif atom.predicate not in self.predicates:
            self.fail(f"{context}: undeclared predicate {atom.predicate!r}",
                      atom, problem=problem)
        elif len(atom.args) != self.predicates[atom.predicate]:
            self.fail(
                f"{context}: predicate {atom.predicate!r} takes "
                f"{self.predicates[atom.predicate]} arguments, got "
                f"{len(atom.args)}", atom, problem=problem)
        self.check_terms(atom, scope, context, problem)

    def check_fluent(self, atom: Atom, scope: frozenset[str], context: str,
                     problem=False):
        if atom.predicate not in self.functions:
            self.fail(f"{context}: undeclared function {atom.predicate!r}",
                      atom, problem=problem)
        elif len(atom.args) != self.functions[atom.predicate]:
            self.fail(
                f"{context}: function {atom.predicate!r} takes "
                f"{self.functions[atom.predicate]} arguments, got "
                f"{len(atom.args)}", atom, problem=problem)
        self.check_terms(atom, scope, context, problem)

    def check_terms(self, atom: Atom, scope: frozenset[str], context: str,
                    problem=False):
        for arg in atom.args:
            if arg.startswith("?"):
                if arg not in scope:
                    self.fail(f"{context}: variable {arg} is not bound", atom,
                              problem=problem)
            elif arg not in self.entities:
                self.fail(f"{context}: undeclared constant {arg!r}", atom,
                          problem=problem)

    def check_operator(self, op: OperatorSchema):
        context = f"operator {op.name}"
        self.check_params(op.parameters, context, op)
        scope = frozenset(p.name for p in op.parameters)
        for lit in op.precondition:
            self.check_atom(lit.atom, scope, f"{context} precondition")
        cost_updates = 0
        for eff in op.effects:
            self.check_params(eff.params, f"{context} effect", op)
            local = scope | frozenset(p.name for p in eff.params)
            if len(local) != len(scope) + len(eff.params):
                self.fail(f"{context}: effect quantifier shadows a parameter",
                          op)
            for lit in eff.condition:
                self.check_atom(lit.atom, local, f"{context} effect condition")
            if isinstance(eff.effect, CostIncrease):
                cost_updates += 1
                self.check_fluent(eff.effect.fluent, local,
                                  f"{context} cost update")
                if isinstance(eff.effect.amount, int) \
                        and eff.effect.amount < 0:
                    self.fail(f"{context}: cost amounts must be nonnegative",
                              op)
                if isinstance(eff.effect.amount, Atom):
                    self.check_fluent(eff.effect.amount, local,
                                      f"{context} cost amount")
            else:
                if eff.effect.atom.predicate == "=":
                    self.fail(f"{context}: '=' cannot appear in effects",
                              eff.effect.atom)
                self.check_atom(eff.effect.atom, local, f"{context} effect")
                if eff.effect.atom.predicate in self.doc.derived_predicates:
                    self.fail(f"{context}: effect on derived predicate "
                              f"{eff.effect.atom.predicate!r}",
                              eff.effect.atom)
        if cost_updates > 1:
            self.fail(f"{context}: more than one cost update", op)

    def check_axiom(self, axiom: AxiomSchema):
        context = f"derived predicate {axiom.head.predicate}"
        if axiom.head.predicate not in self.predicates:
            self.fail(f"{context}: head predicate is not declared", axiom.head)
        if len(axiom.head.args) != self.predicates[axiom.head.predicate]:
            self.fail(f"{context}: head arity mismatch", axiom.head)
        head_vars = []
        for arg in axiom.head.args:
            if not arg.startswith("?"):
                self.fail(f"{context}: head arguments must be variables",
                          axiom.head)
            if arg in head_vars:
                self.fail(f"{context}: head variable {arg} repeated",
                          axiom.head)
            head_vars.append(arg)
        self.check_formula(axiom.body, frozenset(head_vars), context)

    def check_formula(self, formula: Formula, scope: frozenset[str],
                      context: str):
        if isinstance(formula, Literal):
            self.check_atom(formula.atom, scope, context)
        elif isinstance(formula, (And, Or)):
            for part in formula.parts:
                self.check_formula(part, scope, context)
        elif isinstance(formula, Not):
            self.check_formula(formula.part, scope, context)
        elif isinstance(formula, Imply):
            self.check_formula(formula.antecedent, scope, context)
            self.check_formula(formula.consequent, scope, context)
        elif isinstance(formula, (Exists, Forall)):
            self.check_params(formula.params, context, None)
            inner = scope | frozenset(p.name for p in formula.params)
            self.check_formula(formula.part, inner, context)
        else:  # pragma: no cover
            raise TypeError(f"unknown formula node {formula!r}")

    def check_init(self):
        for entry in self.doc.init:
            if isinstance(entry, FluentInit):
                self.check_fluent(entry.fluent, frozenset(), "init",
                                  problem=True)
                if entry.value < 0:
                    self.fail("init: function values must be nonnegative",
                              entry.fluent, problem=True)
                continue
            if entry.atom.variables:
                self.fail("init: literals must be ground", entry.atom,
                          problem=True)
            if entry.atom.predicate in self.doc.derived_predicates:
                self.fail(f"init: derived predicate "
                          f"{entry.atom.predicate!r} cannot be asserted",
                          entry.atom, problem=True)
            self.check_atom(entry.atom, frozenset(), "init", problem=True)

    def check_goal(self):
        for lit in self.doc.goal:
            if lit.atom.variables:
                self.fail("goal: literals must be ground", lit.atom,
                          problem=True)
            self.check_atom(lit.atom, frozenset(), "goal", problem=True)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def parse_pddl(domain_text: str, problem_text: str,
               domain_filename: str | None = None,
               problem_filename: str | None = None) -> PddlDocument:
    """Parse and validate a domain/problem pair into one document."""
    dom = _parse_domain(domain_text, domain_filename)
    prob = _parse_problem(problem_text, problem_filename)
    if prob.domain_name and prob.domain_name != dom.name:
        raise ValidationError(
            f"problem references domain {prob.domain_name!r} but the domain "
            f"file defines {dom.name!r}", filename=problem_filename)
    doc = PddlDocument(
        domain_name=dom.name,
        problem_name=prob.name,
        requirements=tuple(sorted(set(dom.requirements + prob.requirements))),
        types=dom.types,
        predicates=tuple(dom.predicates),
        functions=tuple(dom.functions),
        constants=dom.constants,
        schematic_operators=tuple(dom.operators),
        schematic_axioms=tuple(dom.axioms),
        objects=prob.objects,
        init=tuple(prob.init),
        goal=prob.goal,
        metric_fluent=prob.metric_fluent,
    )
    _Validator(doc, domain_filename, problem_filename).run()
    return doc

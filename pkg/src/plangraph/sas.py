"""Parser for grounded planning tasks in the sectioned SAS text format (version 3).

The format is the standard translator output: a version header, metric flag,
variable blocks, mutex groups, initial state, goal, operator blocks, and
axiom rule blocks. Parsing is pure; identical bytes yield structurally
identical tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import ConsistencyError, FormatError, RangeError

SUPPORTED_VERSION = 3


@dataclass(frozen=True)
class Variable:
    """A finite-domain state variable; ``axiom_layer >= 0`` marks it derived."""

    name: str
    axiom_layer: int
    values: tuple[str, ...]

    @property
    def domain_size(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Effect:
    """One operator effect: if ``conditions`` hold, set ``var := value``."""

    conditions: tuple[tuple[int, int], ...]
    var: int
    value: int


@dataclass(frozen=True)
class GroundOperator:
    """A ground operator with merged precondition and conditional effects.

    ``precondition`` merges the prevail pairs with every effect's old-value
    requirement (old value k >= 0 means the affected variable must equal k
    before application); effect conditions stay on the effects.
    """

    name: str
    precondition: tuple[tuple[int, int], ...]
    effects: tuple[Effect, ...]
    cost: int


@dataclass(frozen=True)
class GroundAxiom:
    """A derivation rule: if ``body`` holds, set ``var := value``."""

    body: tuple[tuple[int, int], ...]
    var: int
    value: int


@dataclass(frozen=True)
class SasTask:
    """A parsed grounded planning task."""

    variables: tuple[Variable, ...]
    mutexes: tuple[tuple[tuple[int, int], ...], ...]
    initial_state: tuple[int, ...]
    goal: tuple[tuple[int, int], ...]
    operators: tuple[GroundOperator, ...]
    axioms: tuple[GroundAxiom, ...]
    metric: bool

    @cached_property
    def derived_variables(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.variables)
                     if v.axiom_layer >= 0)


class _Cursor:
    """Line cursor with 1-based positions for diagnostics."""

    def __init__(self, text: str, filename: str | None):
        self.lines = text.splitlines()
        self.pos = 0
        self.filename = filename

    @property
    def line_no(self) -> int:
        return min(self.pos + 1, len(self.lines))

    def at_end(self) -> bool:
        while self.pos < len(self.lines) and not self.lines[self.pos].strip():
            self.pos += 1
        return self.pos >= len(self.lines)

    def peek(self) -> str | None:
        if self.pos < len(self.lines):
            return self.lines[self.pos].strip()
        return None

    def next(self, what: str) -> str:
        if self.pos >= len(self.lines):
            raise FormatError(f"unexpected end of file while reading {what}",
                              filename=self.filename, line=self.line_no)
        line = self.lines[self.pos]
        self.pos += 1
        return line.rstrip("\n")

    def expect(self, literal: str) -> None:
        line = self.next(f"'{literal}'").strip()
        if line != literal:
            raise FormatError(f"expected '{literal}', found '{line}'",
                              filename=self.filename, line=self.pos)

    def next_int(self, what: str) -> int:
        line = self.next(what).strip()
        try:
            return int(line)
        except ValueError:
            raise FormatError(f"expected integer {what}, found '{line}'",
                              filename=self.filename, line=self.pos)

    def next_ints(self, count: int, what: str) -> list[int]:
        line = self.next(what).strip()
        parts = line.split()
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise FormatError(f"expected integers for {what}, found '{line}'",
                              filename=self.filename, line=self.pos)
        if len(values) != count:
            raise FormatError(
                f"expected {count} integers for {what}, found {len(values)}",
                filename=self.filename, line=self.pos)
        return values


def parse_sas(text: str, filename: str | None = None) -> SasTask:
    """Parse SAS text into a validated task."""
    cur = _Cursor(text, filename)

    cur.expect("begin_version")
    version = cur.next_int("version number")
    if version != SUPPORTED_VERSION:
        raise FormatError(
            f"unsupported version {version}; only version "
            f"{SUPPORTED_VERSION} is supported",
            filename=filename, line=cur.line_no)
    cur.expect("end_version")

    cur.expect("begin_metric")
    metric_flag = cur.next_int("metric flag")
    if metric_flag not in (0, 1):
        raise FormatError(f"metric flag must be 0 or 1, found {metric_flag}",
                          filename=filename, line=cur.line_no)
    cur.expect("end_metric")

    variables = _parse_variables(cur)
    mutexes = _parse_mutexes(cur, variables)
    initial_state = _parse_state(cur, variables)
    goal = _parse_goal(cur, variables)
    operators = _parse_operators(cur, variables)
    axioms = _parse_axioms(cur, variables)

    if not cur.at_end():
        raise FormatError(f"unexpected trailing content '{cur.peek()}'",
                          filename=filename, line=cur.line_no)

    return SasTask(variables, mutexes, initial_state, goal, operators,
                   axioms, bool(metric_flag))


def _parse_variables(cur: _Cursor) -> tuple[Variable, ...]:
    count = cur.next_int("variable count")
    variables = []
    for _ in range(count):
        cur.expect("begin_variable")
        name = cur.next("variable name").strip()
        layer = cur.next_int("axiom layer")
        if layer < -1:
            raise RangeError(f"axiom layer {layer} below -1",
                             filename=cur.filename, line=cur.pos)
        size = cur.next_int("domain size")
        if size < 1:
            raise RangeError(f"variable {name} has empty domain",
                             filename=cur.filename, line=cur.pos)
        values = tuple(cur.next("value name").strip() for _ in range(size))
        cur.expect("end_variable")
        variables.append(Variable(name, layer, values))
    return tuple(variables)


def _check_fact(cur: _Cursor, variables: tuple[Variable, ...],
                var: int, val: int, context: str) -> None:
    if not 0 <= var < len(variables):
        raise RangeError(f"{context}: variable index {var} out of range",
                         filename=cur.filename, line=cur.pos)
    if not 0 <= val < variables[var].domain_size:
        raise RangeError(
            f"{context}: value {val} outside domain of size "
            f"{variables[var].domain_size}",
            filename=cur.filename, line=cur.pos)


def _parse_mutexes(cur: _Cursor, variables) -> tuple:
    count = cur.next_int("mutex group count")
    groups = []
    for _ in range(count):
        cur.expect("begin_mutex_group")
        n_facts = cur.next_int("mutex fact count")
        facts = []
        for _ in range(n_facts):
            var, val = cur.next_ints(2, "mutex fact")
            _check_fact(cur, variables, var, val, "mutex group")
            facts.append((var, val))
        cur.expect("end_mutex_group")
        groups.append(tuple(facts))
    return tuple(groups)


def _parse_state(cur: _Cursor, variables) -> tuple[int, ...]:
    cur.expect("begin_state")
    values = []
    for i in range(len(variables)):
        line = cur.next("initial state value").strip()
        if line == "end_state":
            raise ConsistencyError(
                f"initial state lists {i} values for {len(variables)} variables",
                filename=cur.filename, line=cur.pos)
        try:
            val = int(line)
        except ValueError:
            raise FormatError(f"expected state value, found '{line}'",
                              filename=cur.filename, line=cur.pos)
        _check_fact(cur, variables, i, val, "initial state")
        values.append(val)
    closer = cur.next("'end_state'").strip()
    if closer != "end_state":
        raise ConsistencyError(
            f"initial state has more values than the {len(variables)} variables",
            filename=cur.filename, line=cur.pos)
    return tuple(values)


def _parse_goal(cur: _Cursor, variables) -> tuple[tuple[int, int], ...]:
    cur.expect("begin_goal")
    count = cur.next_int("goal count")
    pairs = []
    seen = set()
    for _ in range(count):
        var, val = cur.next_ints(2, "goal pair")
        _check_fact(cur, variables, var, val, "goal")
        if var in seen:
            raise ConsistencyError(f"goal assigns variable {var} twice",
                                   filename=cur.filename, line=cur.pos)
        seen.add(var)
        pairs.append((var, val))
    cur.expect("end_goal")
    return tuple(pairs)


def _merge_precondition(cur: _Cursor, pairs: list[tuple[int, int]],
                        context: str) -> tuple[tuple[int, int], ...]:
    merged: dict[int, int] = {}
    for var, val in pairs:
        if var in merged and merged[var] != val:
            raise ConsistencyError(
                f"{context} requires variable {var} to equal both "
                f"{merged[var]} and {val}",
                filename=cur.filename, line=cur.pos)
        merged[var] = val
    return tuple(sorted(merged.items()))


def _parse_operators(cur: _Cursor, variables) -> tuple[GroundOperator, ...]:
    count = cur.next_int("operator count")
    operators = []
    for _ in range(count):
        cur.expect("begin_operator")
        name = cur.next("operator name").strip()

        pre_pairs: list[tuple[int, int]] = []
        n_prevail = cur.next_int("prevail count")
        for _ in range(n_prevail):
            var, val = cur.next_ints(2, "prevail pair")
            _check_fact(cur, variables, var, val, f"operator {name} prevail")
            pre_pairs.append((var, val))

        n_effects = cur.next_int("effect count")
        effects = []
        for _ in range(n_effects):
            line = cur.next("effect line").strip()
            parts = line.split()
            try:
                numbers = [int(p) for p in parts]
            except ValueError:
                raise FormatError(f"malformed effect line '{line}'",
                                  filename=cur.filename, line=cur.pos)
            if not numbers:
                raise FormatError("empty effect line",
                                  filename=cur.filename, line=cur.pos)
            n_conds = numbers[0]
            if len(numbers) != 1 + 2 * n_conds + 3:
                raise FormatError(
                    f"effect line '{line}' should hold {n_conds} condition "
                    "pairs plus var/old/new",
                    filename=cur.filename, line=cur.pos)
            conds = []
            for k in range(n_conds):
                cvar, cval = numbers[1 + 2 * k], numbers[2 + 2 * k]
                _check_fact(cur, variables, cvar, cval,
                            f"operator {name} effect condition")
                conds.append((cvar, cval))
            var, old, new = numbers[-3], numbers[-2], numbers[-1]
            _check_fact(cur, variables, var, new, f"operator {name} effect")
            if old != -1:
                _check_fact(cur, variables, var, old,
                            f"operator {name} effect old value")
                pre_pairs.append((var, old))
            cond_merged: dict[int, int] = {}
            for cvar, cval in conds:
                if cvar in cond_merged and cond_merged[cvar] != cval:
                    raise ConsistencyError(
                        f"operator {name} effect condition contradicts itself "
                        f"on variable {cvar}",
                        filename=cur.filename, line=cur.pos)
                cond_merged[cvar] = cval
            effects.append(Effect(tuple(sorted(cond_merged.items())), var, new))

        cost = cur.next_int("operator cost")
        if cost < 0:
            raise RangeError(f"operator {name} has negative cost {cost}",
                             filename=cur.filename, line=cur.pos)
        cur.expect("end_operator")
        precondition = _merge_precondition(cur, pre_pairs, f"operator {name}")
        operators.append(GroundOperator(name, precondition, tuple(effects), cost))
    return tuple(operators)


def _parse_axioms(cur: _Cursor, variables) -> tuple[GroundAxiom, ...]:
    count = cur.next_int("axiom count")
    axioms = []
    for _ in range(count):
        cur.expect("begin_rule")
        n_conds = cur.next_int("rule condition count")
        body_pairs: list[tuple[int, int]] = []
        for _ in range(n_conds):
            var, val = cur.next_ints(2, "rule condition")
            _check_fact(cur, variables, var, val, "axiom body")
            body_pairs.append((var, val))
        var, old, new = cur.next_ints(3, "rule head")
        _check_fact(cur, variables, var, new, "axiom head")
        if variables[var].axiom_layer < 0:
            raise ConsistencyError(
                f"axiom head variable {var} is not a derived variable",
                filename=cur.filename, line=cur.pos)
        if old != -1:
            _check_fact(cur, variables, var, old, "axiom head old value")
            body_pairs.append((var, old))
        cur.expect("end_rule")
        body = _merge_precondition(cur, body_pairs, "axiom")
        axioms.append(GroundAxiom(body, var, new))
    return tuple(axioms)

"""Abstract structure values: identity, canonical ordering, digests."""

import random

import pytest

from plangraph import SetStruct, Symbol, TupleStruct, structure_size


def test_symbol_identity_is_name_and_type():
    assert Symbol("on", "predicate") == Symbol("on", "predicate")
    assert Symbol("on", "predicate") != Symbol("on", "constant")
    assert Symbol("on", "predicate") != Symbol("off", "predicate")


def test_symbol_type_must_be_known():
    with pytest.raises(ValueError):
        Symbol("x", "gizmo")


def test_tuple_children_are_ordered():
    a, b = Symbol("a", "constant"), Symbol("b", "constant")
    assert TupleStruct((a, b)) != TupleStruct((b, a))
    assert TupleStruct((a, b)) == TupleStruct((a, b))


def test_set_children_are_unordered_and_deduplicated():
    a, b = Symbol("a", "constant"), Symbol("b", "constant")
    assert SetStruct((a, b)) == SetStruct((b, a))
    assert SetStruct((a, a, b)) == SetStruct((a, b))
    assert len(SetStruct((a, a, b)).children) == 2


def test_set_canonical_order_is_stable_under_permutation():
    """The stored child order must not depend on construction order."""
    rng = random.Random(7)
    symbols = [Symbol(f"s{i}", "constant") for i in range(8)]
    reference = SetStruct(tuple(symbols)).children
    for _ in range(20):
        shuffled = symbols[:]
        rng.shuffle(shuffled)
        assert SetStruct(tuple(shuffled)).children == reference


def test_digest_differs_between_set_and_tuple():
    a, b = Symbol("a", "constant"), Symbol("b", "constant")
    assert SetStruct((a, b)).digest != TupleStruct((a, b)).digest


def test_structures_usable_in_sets_and_dicts():
    a = Symbol("a", "constant")
    nested = TupleStruct((a, SetStruct((a,))))
    again = TupleStruct((a, SetStruct((a,))))
    assert len({nested, again}) == 1


def test_structure_size_counts_distinct_substructures():
    a, b = Symbol("a", "constant"), Symbol("b", "constant")
    assert structure_size(a) == 1
    assert structure_size(TupleStruct((a, b))) == 3
    # shared symbol counted once
    assert structure_size(SetStruct((a, TupleStruct((a,))))) == 3
    # structurally equal composites are one distinct structure
    twice = SetStruct((TupleStruct((a, b)), TupleStruct((b, a))))
    assert structure_size(twice) == 5
    same = TupleStruct((TupleStruct((a,)), TupleStruct((a,))))
    assert structure_size(same) == 3


def test_empty_composites():
    assert structure_size(SetStruct(())) == 1
    assert structure_size(TupleStruct(())) == 1
    assert SetStruct(()) != TupleStruct(())

"""Recursive structure values: typed symbols closed under set and tuple formation.

A structure is a typed symbol, an unordered set of structures, or an ordered
tuple of structures. Every value carries a 16-byte digest computed bottom-up
at construction time; digests are independent of process hash seeds, so they
double as the canonical ordering key for set members and as the structural
identity used for hash-consing when building graphs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Union

# Legal symbol types, in the order used by the graph feature vocabulary.
SYMBOL_TYPES = ("predicate", "function", "number", "variable", "constant")


def _digest(payload: bytes) -> bytes:
    return hashlib.blake2b(payload, digest_size=16).digest()


@dataclass(frozen=True, eq=False)
class Symbol:
    """A base structure: an interned name with one of the five symbol types."""

    name: str
    type: str
    digest: bytes = field(init=False, repr=False)

    def __post_init__(self):
        if self.type not in SYMBOL_TYPES:
            raise ValueError(f"unknown symbol type {self.type!r}")
        payload = b"sym\x00" + self.type.encode() + b"\x00" + self.name.encode()
        object.__setattr__(self, "digest", _digest(payload))

    def __eq__(self, other):
        return isinstance(other, Symbol) and self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.type!r})"


@dataclass(frozen=True, eq=False)
class TupleStruct:
    """An ordered tuple of structures."""

    children: tuple["Structure", ...]
    digest: bytes = field(init=False, repr=False)

    def __init__(self, children: Iterable["Structure"]):
        object.__setattr__(self, "children", tuple(children))
        payload = b"tup\x00" + b"".join(c.digest for c in self.children)
        object.__setattr__(self, "digest", _digest(payload))

    def __eq__(self, other):
        return isinstance(other, TupleStruct) and self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"TupleStruct({list(self.children)!r})"


@dataclass(frozen=True, eq=False)
class SetStruct:
    """An unordered set of structures.

    Members are deduplicated structurally and stored sorted by digest, so two
    sets with the same members compare equal regardless of input order.
    """

    children: tuple["Structure", ...]
    digest: bytes = field(init=False, repr=False)

    def __init__(self, children: Iterable["Structure"]):
        unique = {c.digest: c for c in children}
        canonical = tuple(unique[d] for d in sorted(unique))
        object.__setattr__(self, "children", canonical)
        payload = b"set\x00" + b"".join(c.digest for c in canonical)
        object.__setattr__(self, "digest", _digest(payload))

    def __eq__(self, other):
        return isinstance(other, SetStruct) and self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"SetStruct({list(self.children)!r})"


Structure = Union[Symbol, SetStruct, TupleStruct]


def structure_size(root: Structure) -> int:
    """Number of distinct sub-structures reachable from ``root`` (root included)."""
    seen = set()
    stack = [root]
    while stack:
        node = stack.pop()
        if node.digest in seen:
            continue
        seen.add(node.digest)
        if not isinstance(node, Symbol):
            stack.extend(node.children)
    return len(seen)

"""Finite relational structures.

A structure has universe {0, ..., n-1} and named relations, each a set of
tuples of fixed arity.  No function symbols: substructures are plain
universe subsets, so generation is exact and closure is the identity.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import FincatError


@dataclass(frozen=True)
class FinStructure:
    universe: int
    relations: tuple  # sorted tuple of (name, arity, frozenset of tuples)

    @staticmethod
    def make(universe, relations):
        """Build a structure from {name: (arity, iterable-of-tuples)}."""
        rels = []
        for name in sorted(relations):
            arity, tuples = relations[name]
            table = frozenset(tuple(t) for t in tuples)
            for t in table:
                if len(t) != arity:
                    raise FincatError(f"tuple {t} has wrong arity for {name}/{arity}")
                if any(not (0 <= v < universe) for v in t):
                    raise FincatError(f"tuple {t} outside universe of size {universe}")
            rels.append((name, arity, table))
        return FinStructure(universe, tuple(rels))

    def relation(self, name):
        for rel_name, arity, table in self.relations:
            if rel_name == name:
                return arity, table
        raise KeyError(name)

    @property
    def signature(self):
        return tuple((name, arity) for name, arity, _ in self.relations)

    def holds(self, name, args):
        arity, table = self.relation(name)
        if len(args) != arity:
            raise FincatError(f"{name} expects {arity} arguments, got {len(args)}")
        return tuple(args) in table

    def induced(self, subset):
        """Induced substructure on `subset`, relabelled to 0..k-1 in sort order."""
        order = sorted(set(subset))
        index = {v: i for i, v in enumerate(order)}
        rels = {}
        for name, arity, table in self.relations:
            kept = [tuple(index[v] for v in t) for t in table if all(v in index for v in t)]
            rels[name] = (arity, kept)
        return FinStructure.make(len(order), rels)

    def relabel(self, perm):
        """Apply a permutation (tuple: old -> new) to the universe."""
        rels = {}
        for name, arity, table in self.relations:
            rels[name] = (arity, [tuple(perm[v] for v in t) for t in table])
        return FinStructure.make(self.universe, rels)

    def canonical_key(self):
        """Isomorphism-invariant key: lexicographic minimum over relabellings."""
        best = None
        for perm in itertools.permutations(range(self.universe)):
            key = tuple(
                (name, arity, tuple(sorted(tuple(perm[v] for v in t) for t in table)))
                for name, arity, table in self.relations
            )
            if best is None or key < best:
                best = key
        return (self.universe, best)

    def to_json(self):
        return {
            "universe": self.universe,
            "relations": {
                name: {"arity": arity, "tuples": sorted(map(list, table))}
                for name, arity, table in self.relations
            },
        }


def is_homomorphism(mapping, source, target):
    """Does the map (tuple indexed by source universe) preserve every relation?"""
    for name, arity, table in source.relations:
        _, target_table = target.relation(name)
        for t in table:
            if tuple(mapping[v] for v in t) not in target_table:
                return False
    return True


def homomorphisms(source, target):
    """All relation-preserving maps from source to target."""
    if source.universe == 0:
        yield ()
        return
    for mapping in itertools.product(range(target.universe), repeat=source.universe):
        if is_homomorphism(mapping, source, target):
            yield mapping


def isomorphic(left, right):
    if left.universe != right.universe or left.signature != right.signature:
        return False
    return left.canonical_key() == right.canonical_key()


def structure_from_json(doc):
    """Parse {"universe": n, "relations": {"lt": {"arity": 2, "tuples": [[0,1],...]}}}."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    rels = {
        name: (spec["arity"], [tuple(t) for t in spec["tuples"]])
        for name, spec in doc.get("relations", {}).items()
    }
    return FinStructure.make(doc["universe"], rels)

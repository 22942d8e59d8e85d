"""Forbidden-substructure axiomatization of universal classes.

A family of finite relational structures closed under isomorphism and
induced substructures is pinned down, on small structures, by the list of
isomorphism types it omits: membership is "contains no forbidden induced
substructure".  Structures are purely relational, so the substructure
generated by a subset is the induced one and generation is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import ClosureViolationError, FincatError
from ..structures import FinStructure


@lru_cache(maxsize=None)
def graph_structures(n):
    """All structures on n points with an irreflexive symmetric E."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        tuples = []
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                tuples += [(u, v), (v, u)]
        out.append(FinStructure.make(n, {"E": (2, tuples)}))
    return out


@lru_cache(maxsize=None)
def sym_reflexive_structures(n):
    """All structures on n points with a reflexive symmetric E."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        tuples = [(i, i) for i in range(n)]
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                tuples += [(u, v), (v, u)]
        out.append(FinStructure.make(n, {"E": (2, tuples)}))
    return out


def triangle_free(structure):
    _, table = structure.relation("E")
    for a, b, c in itertools.combinations(range(structure.universe), 3):
        if (a, b) in table and (b, c) in table and (a, c) in table:
            return False
    return True


def all_graphs(structure):
    return True


def is_transitive(structure):
    _, table = structure.relation("E")
    return all((a, c) in table
               for a, b in table for b2, c in table if b == b2)


@dataclass
class AxiomatizeResult:
    k: int
    cap: int
    forbidden: list                    # canonical representatives
    mismatches: list = field(default_factory=list)
    forbidden_keys: set = field(default_factory=set)

    def admits(self, structure):
        """Membership by forbidden induced substructures."""
        for r in range(min(self.k, structure.universe) + 1):
            for subset in itertools.combinations(range(structure.universe), r):
                if structure.induced(subset).canonical_key() in self.forbidden_keys:
                    return False
        return True

    @property
    def agrees(self):
        return not self.mismatches


def universal_class_axiomatize(family, k, ambient, cap):
    """Compute the forbidden list of a substructure-closed family.

    `family` is a membership oracle, `ambient` maps a size to the labelled
    structures considered at that size (the surrounding universal class),
    and closure of the family under isomorphism and induced substructures
    is verified on everything up to `cap` before anything else.

    Returns the forbidden isomorphism types of size <= k plus the result
    of replaying membership against the oracle on all structures <= cap.
    """
    if k > cap:
        raise FincatError("forbidden-pattern size exceeds the verification cap")
    verdict_by_key = {}
    structures_by_size = {}
    for size in range(cap + 1):
        structures_by_size[size] = list(ambient(size))
        for s in structures_by_size[size]:
            key = s.canonical_key()
            verdict = bool(family(s))
            if key in verdict_by_key and verdict_by_key[key] != verdict:
                raise ClosureViolationError(
                    "family is not isomorphism-invariant", witness=s)
            verdict_by_key[key] = verdict
    for size in range(cap + 1):
        for s in structures_by_size[size]:
            if not verdict_by_key[s.canonical_key()]:
                continue
            for r in range(size):
                for subset in itertools.combinations(range(size), r):
                    sub = s.induced(subset)
                    inside = verdict_by_key.get(sub.canonical_key())
                    if inside is False:
                        raise ClosureViolationError(
                            "family is not closed under induced substructures",
                            witness={"structure": s, "subset": subset})

    forbidden = []
    forbidden_keys = set()
    for size in range(k + 1):
        for s in structures_by_size[size]:
            key = s.canonical_key()
            if not verdict_by_key[key] and key not in forbidden_keys:
                forbidden_keys.add(key)
                forbidden.append(s)

    result = AxiomatizeResult(k, cap, forbidden, forbidden_keys=forbidden_keys)
    for size in range(cap + 1):
        for s in structures_by_size[size]:
            if result.admits(s) != verdict_by_key[s.canonical_key()]:
                result.mismatches.append(s)
    return result

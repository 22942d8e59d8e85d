"""Quantifier-free types of tuples over parameter sets.

The type of a tuple over B is canonicalized as the induced substructure
on B together with the tuple, with B-elements individually named and the
fresh tuple entries labelled by first occurrence.  Two tuples get equal
canonical forms exactly when they satisfy the same quantifier-free
formulas with parameters in B (atoms read off the induced structure, and
conversely any difference in the induced data is an atomic formula).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import FincatError
from ..structures import FinStructure


@dataclass(frozen=True)
class QFType:
    arity: int
    marks: tuple     # per position: ("param", b) or ("fresh", first_index)
    atoms: tuple     # relation data over labelled elements


def qf_type(tup, params, structure):
    tup = tuple(tup)
    params = frozenset(params)
    for x in tup:
        if not 0 <= x < structure.universe:
            raise FincatError(f"{x} outside universe")
    label = {}
    marks = []
    for i, x in enumerate(tup):
        if x in params:
            marks.append(("param", x))
        else:
            if x not in label:
                label[x] = i
            marks.append(("fresh", label[x]))
    named = {b: ("param", b) for b in params}
    named.update({x: ("fresh", i) for x, i in label.items()})
    atoms = []
    for name, arity, table in structure.relations:
        rows = [tuple(named[v] for v in t) for t in table
                if all(v in named for v in t)]
        atoms.append((name, tuple(sorted(rows))))
    return QFType(len(tup), tuple(marks), tuple(atoms))


def count_types(params, structure, k):
    """Number of distinct quantifier-free k-types over the parameters."""
    found = set()
    for tup in itertools.product(range(structure.universe), repeat=k):
        found.add(qf_type(tup, params, structure))
    return len(found)


def linear_order(n):
    """The n-point linear order as a structure with relation lt."""
    tuples = [(i, j) for i in range(n) for j in range(n) if i < j]
    return FinStructure.make(n, {"lt": (2, tuples)})


def pure_equality(n):
    """A structure with no relations: only equality distinguishes points."""
    return FinStructure.make(n, {})


def equivalence_structure(class_sizes):
    """An equivalence relation with the given class sizes (relation E,
    stored irreflexively-symmetric with both orientations and loops)."""
    n = sum(class_sizes)
    tuples = []
    start = 0
    for size in class_sizes:
        block = range(start, start + size)
        tuples.extend((i, j) for i in block for j in block)
        start += size
    return FinStructure.make(n, {"E": (2, tuples)})


def cut_types_demo(n):
    """Extend the n-point order by one point per cut and count 1-types over
    the original points realized in the extension: n old points plus n+1
    cuts, so 2n+1."""
    if n < 1:
        raise FincatError("need at least one point")
    total = 2 * n + 1
    ext = linear_order(total)
    originals = {2 * i + 1 for i in range(n)}
    return count_types(originals, ext, 1)

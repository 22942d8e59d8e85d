"""Order-property detection: sequences a_0, ..., a_{L-1} of tuples with
phi(a_i, a_j) holding exactly when i < j."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import FincatError
from .formulas import evaluate


@dataclass
class SequenceWitness:
    tuples: list
    formula: object

    def replay(self, structure):
        """Re-evaluate the defining pattern; True iff it still holds."""
        for i, a in enumerate(self.tuples):
            for j, b in enumerate(self.tuples):
                if evaluate(self.formula, a + b, structure) != (i < j):
                    return False
        return True


def order_property_witness(formula, structure, length, block_size=None):
    """Search for a length-L order sequence for the formula.

    The formula's variables split into two equal blocks (x-block then
    y-block).  The search is a complete depth-first enumeration over
    tuples of the structure, so None means certified absence at this
    arity."""
    width = len(formula.variables)
    if block_size is None:
        if width % 2:
            raise FincatError("formula needs an even variable split")
        block_size = width // 2
    if 2 * block_size != width:
        raise FincatError("blocks must cover the variables exactly")
    candidates = list(itertools.product(range(structure.universe),
                                        repeat=block_size))

    def truth(a, b):
        return evaluate(formula, a + b, structure)

    def extend(seq):
        if len(seq) == length:
            return list(seq)
        for cand in candidates:
            if truth(cand, cand):
                continue
            ok = True
            for prev in seq:
                if not truth(prev, cand) or truth(cand, prev):
                    ok = False
                    break
            if ok:
                out = extend(seq + [cand])
                if out is not None:
                    return out
        return None

    if length < 1:
        raise FincatError("length must be positive")
    seq = extend([])
    return SequenceWitness(seq, formula) if seq is not None else None

"""Extraction of indiscernible subsequences for a finite formula set."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import BoundExceededError, FincatError
from .formulas import evaluate


@dataclass
class IndiscernibleWitness:
    indices: tuple
    patterns: dict   # str(formula) -> truth pattern of the increasing tuples

    def replay(self, seq, delta, structure, width=1):
        return _pattern(self.indices, seq, delta, structure, width) is not None


def _pattern(indices, seq, delta, structure, width):
    """Truth patterns on the subsequence, or None if some formula is not
    constant across same-length increasing tuples."""
    patterns = {}
    for formula in delta:
        if len(formula.variables) % width:
            raise FincatError("formula arity does not match the tuple width")
        r = len(formula.variables) // width
        if r > len(indices):
            continue
        value = None
        for combo in itertools.combinations(indices, r):
            args = tuple(x for i in combo for x in seq[i])
            now = evaluate(formula, args, structure)
            if value is None:
                value = now
            elif value != now:
                return None
        patterns[str(formula)] = value
    return patterns


def extract_indiscernibles(seq, delta, structure, k, subset_cap=200000):
    """A subsequence of length >= k on which every formula of delta has
    constant truth over same-length increasing tuples.

    Sequence entries may be elements or tuples.  The search scans index
    subsets in lexicographic order and is exhaustive, so None certifies
    absence; sequences whose subset count exceeds the cap first try the
    pigeonhole-plus-majority route for pair patterns and raise a bound
    signal only if that also fails.
    """
    seq = [x if isinstance(x, tuple) else (x,) for x in seq]
    if not seq:
        raise FincatError("empty sequence")
    width = len(seq[0])
    if any(len(x) != width for x in seq):
        raise FincatError("mixed tuple widths")
    n = len(seq)
    if k > n:
        return None

    combos = 1
    for i in range(k):
        combos = combos * (n - i) // (i + 1)
    if combos <= subset_cap:
        for indices in itertools.combinations(range(n), k):
            patterns = _pattern(indices, seq, delta, structure, width)
            if patterns is not None:
                return IndiscernibleWitness(indices, patterns)
        return None

    greedy = _greedy_ramsey(seq, delta, structure, width, k)
    if greedy is not None:
        return greedy
    raise BoundExceededError(
        f"{combos} subsets exceed the cap and the pigeonhole route failed")


def _greedy_ramsey(seq, delta, structure, width, k):
    """Pigeonhole on 1-patterns, then the pivot-majority Ramsey walk on
    pair patterns: pivots with equal outgoing colour are pairwise
    monochromatic.  Sound but not complete; used above the subset cap,
    with every candidate re-verified before being returned."""

    def unary_key(i):
        return tuple(
            evaluate(f, seq[i] * (len(f.variables) // width), structure)
            for f in delta if len(f.variables) == width)

    groups = {}
    for i in range(len(seq)):
        groups.setdefault(unary_key(i), []).append(i)
    pool = max(groups.values(), key=len)

    pair_formulas = [f for f in delta if len(f.variables) == 2 * width]

    def colour(i, j):
        return tuple(evaluate(f, seq[i] + seq[j], structure)
                     for f in pair_formulas)

    chain = []
    live = list(pool)
    while live:
        pivot, rest = live[0], live[1:]
        buckets = {}
        for j in rest:
            buckets.setdefault(colour(pivot, j), []).append(j)
        if buckets:
            col, nxt = max(buckets.items(), key=lambda kv: len(kv[1]))
        else:
            col, nxt = None, []
        chain.append((pivot, col))
        live = nxt
    by_colour = {}
    for pivot, col in chain[:-1]:
        by_colour.setdefault(col, []).append(pivot)
    best = max(by_colour.values(), key=len) if by_colour else []
    if chain:
        best = best + [chain[-1][0]]
    for combo in itertools.combinations(sorted(best), min(k, len(best))):
        if len(combo) < k:
            break
        patterns = _pattern(combo, seq, delta, structure, width)
        if patterns is not None:
            return IndiscernibleWitness(tuple(combo), patterns)
    return None

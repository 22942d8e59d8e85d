"""Finite sets, with all functions or with injections only.

Objects are frozensets of hashable labels; canonical objects use the
labels 0..n-1.  Morphisms store their graph as a sorted tuple of pairs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from ..errors import FincatError, NonCommutingCoconeError
from .base import Category, CommutingSquare, Cospan, PushoutResult, Span


def label_key(x):
    return (0, x) if isinstance(x, int) else (1, str(x))


def ordered(labels):
    return sorted(labels, key=label_key)


@dataclass(frozen=True)
class SetMap:
    dom: frozenset
    cod: frozenset
    pairs: tuple  # ((x, f(x)), ...) sorted by label_key of x

    @staticmethod
    def make(dom, cod, mapping):
        dom, cod = frozenset(dom), frozenset(cod)
        items = dict(mapping)
        if set(items) != dom:
            raise FincatError("map must be total on the domain")
        if not set(items.values()) <= cod:
            raise FincatError("map has values outside the codomain")
        return SetMap(dom, cod, tuple(sorted(items.items(), key=lambda kv: label_key(kv[0]))))

    @cached_property
    def mapping(self):
        return dict(self.pairs)

    def __call__(self, x):
        return self.mapping[x]

    @property
    def injective(self):
        return len({y for _, y in self.pairs}) == len(self.pairs)

    @property
    def image(self):
        return frozenset(y for _, y in self.pairs)


class SetCategory(Category):
    """Finite sets; kind "all" takes every function, kind "mono" injections."""

    def __init__(self, kind="mono"):
        if kind not in ("all", "mono"):
            raise FincatError(f"unknown set category kind {kind!r}")
        self.kind = kind
        self.name = "set-" + kind
        self._pushout_cache = {}

    def objects(self, max_size):
        return [frozenset(range(n)) for n in range(max_size + 1)]

    def size(self, obj):
        return len(obj)

    def elements(self, obj):
        return ordered(obj)

    def identity(self, obj):
        return SetMap.make(obj, obj, {x: x for x in obj})

    def compose(self, g, f):
        if f.cod != g.dom:
            raise FincatError("endpoints do not match")
        return SetMap.make(f.dom, g.cod, {x: g(f(x)) for x in f.dom})

    def apply(self, f, x):
        return f(x)

    def in_class(self, f):
        return self.kind == "all" or f.injective

    def morphisms(self, dom, cod):
        dom_list, cod_list = ordered(dom), ordered(cod)
        if self.kind == "mono":
            pools = itertools.permutations(cod_list, len(dom_list))
        else:
            pools = itertools.product(cod_list, repeat=len(dom_list))
        return [SetMap.make(dom, cod, dict(zip(dom_list, values))) for values in pools]

    def isomorphisms(self, dom, cod):
        if len(dom) != len(cod):
            return []
        dom_list, cod_list = ordered(dom), ordered(cod)
        return [SetMap.make(dom, cod, dict(zip(dom_list, perm)))
                for perm in itertools.permutations(cod_list)]

    def subobjects(self, obj, coarse=False):
        out = []
        for r in range(len(obj) + 1):
            for sub in itertools.combinations(ordered(obj), r):
                s = frozenset(sub)
                out.append((s, SetMap.make(s, obj, {x: x for x in s})))
        return out

    def generated(self, obj, elems):
        s = frozenset(elems)
        if not s <= obj:
            raise FincatError("elements outside the object")
        return s, SetMap.make(s, obj, {x: x for x in s})

    def corestrict(self, f, incl):
        if not f.image <= incl.dom:
            raise FincatError("image does not factor through the subobject")
        return SetMap.make(f.dom, incl.dom, dict(f.pairs))

    def pushout(self, span):
        """Glue B and C along the images of A; apex labels are 0..k-1."""
        cached = self._pushout_cache.get(span)
        if cached is not None:
            return cached
        out = self._pushout(span)
        self._pushout_cache[span] = out
        return out

    def _pushout(self, span):
        f, g = span.left, span.right
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx

        for b in f.cod:
            parent[("b", b)] = ("b", b)
        for c in g.cod:
            parent[("c", c)] = ("c", c)
        for a in f.dom:
            union(("b", f(a)), ("c", g(a)))

        index = {}
        for b in ordered(f.cod):
            root = find(("b", b))
            if root not in index:
                index[root] = len(index)
        for c in ordered(g.cod):
            root = find(("c", c))
            if root not in index:
                index[root] = len(index)
        apex = frozenset(range(len(index)))
        left = SetMap.make(f.cod, apex, {b: index[find(("b", b))] for b in f.cod})
        right = SetMap.make(g.cod, apex, {c: index[find(("c", c))] for c in g.cod})

        reps = {}
        for b in ordered(f.cod):
            reps.setdefault(index[find(("b", b))], ("b", b))
        for c in ordered(g.cod):
            reps.setdefault(index[find(("c", c))], ("c", c))

        def mediate(cospan):
            u, v = cospan.left, cospan.right
            if u.dom != f.cod or v.dom != g.cod:
                raise NonCommutingCoconeError("cocone legs do not match the span ears")
            if self.compose(u, f) != self.compose(v, g):
                raise NonCommutingCoconeError("cocone does not commute over the span")
            values = {}
            for i, (tag, x) in reps.items():
                values[i] = u(x) if tag == "b" else v(x)
            return SetMap.make(apex, u.cod, values)

        return PushoutResult(apex, left, right, span, mediate)

    def free_amalgam(self, span):
        po = self.pushout(span)
        return CommutingSquare(span, Cospan(po.left_inj, po.right_inj))

    def squares(self, bound, coarse=False):
        """Inclusion-form squares: apex 0..d-1, ears and base subsets."""
        for d in range(bound + 1):
            apex = frozenset(range(d))
            subs = [frozenset(s) for r in range(d + 1)
                    for s in itertools.combinations(range(d), r)]
            for ear_b in subs:
                for ear_c in subs:
                    both = ear_b & ear_c
                    for r in range(len(both) + 1):
                        for base in itertools.combinations(ordered(both), r):
                            yield self._inclusion_square(frozenset(base), ear_b, ear_c, apex)

    def _inclusion_square(self, base, ear_b, ear_c, apex):
        inc = lambda s, t: SetMap.make(s, t, {x: x for x in s})
        return CommutingSquare(
            Span(inc(base, ear_b), inc(base, ear_c)),
            Cospan(inc(ear_b, apex), inc(ear_c, apex)),
        )

    def spans(self, bound):
        """One span per (|A|, |B|, |C|): injective spans are rigid up to
        isomorphism, so standard inclusions cover everything."""
        if self.kind != "mono":
            raise FincatError("span enumeration is for the injective class")
        for a in range(bound + 1):
            for b in range(a, bound + 1):
                for c in range(a, bound + 1):
                    base = frozenset(range(a))
                    inc = lambda s, t: SetMap.make(s, t, {x: x for x in s})
                    yield Span(inc(base, frozenset(range(b))), inc(base, frozenset(range(c))))

    def square_key(self, square):
        """Complete isomorphism invariant of an injective square: apex
        size, ear sizes, ear-image overlap, and base size."""
        p, q = square.cospan.left, square.cospan.right
        return (len(square.apex), len(p.dom), len(q.dom),
                len(p.image & q.image), len(square.base))

    def subobject_meet(self, incl1, incl2):
        """Intersection of two subobjects of a common object."""
        if incl1.cod != incl2.cod:
            raise FincatError("subobjects of different objects")
        s = incl1.image & incl2.image
        return s, SetMap.make(s, incl1.cod, {x: x for x in s})

    def normalize_span(self, span):
        """Relabel a span of injections to standard inclusions.

        Returns (canonical_span, beta, gamma) where beta: B_c -> B and
        gamma: C_c -> C carry the standard span onto the given one; an
        amalgam (p, q) of the original transports to (p.beta, q.gamma).
        """
        f, g = span.left, span.right
        base_order = ordered(f.dom)
        a, b, c = len(f.dom), len(f.cod), len(g.cod)
        beta_vals = [f(x) for x in base_order] + ordered(f.cod - f.image)
        gamma_vals = [g(x) for x in base_order] + ordered(g.cod - g.image)
        ear_b, ear_c = frozenset(range(b)), frozenset(range(c))
        base = frozenset(range(a))
        inc = lambda s, t: SetMap.make(s, t, {x: x for x in s})
        canonical = Span(inc(base, ear_b), inc(base, ear_c))
        beta = SetMap.make(ear_b, f.cod, dict(enumerate(beta_vals)))
        gamma = SetMap.make(ear_c, g.cod, dict(enumerate(gamma_vals)))
        return canonical, beta, gamma

    def connect(self, apex1, apex2, pairs):
        """Glue two apexes along matched elements.

        Given constraints h1(x) = h2(y) for (x, y) in pairs, produce a
        common target (E, h1: apex1 -> E, h2: apex2 -> E) with injective
        legs, or None when the constraints are contradictory.  Fresh
        points absorb the unconstrained part of apex1.
        """
        mapping = {}
        hit = {}
        for x, y in pairs:
            if mapping.get(x, y) != y or hit.get(y, x) != x:
                return None
            mapping[x] = y
            hit[y] = x
        fresh = [x for x in ordered(apex1) if x not in mapping]
        labels = {}
        target = set(apex2)
        counter = 0
        for x in fresh:
            while counter in target:
                counter += 1
            labels[x] = counter
            target.add(counter)
            counter += 1
        apex = frozenset(target)
        h1 = SetMap.make(apex1, apex,
                         {x: mapping.get(x, labels.get(x)) for x in apex1})
        h2 = SetMap.make(apex2, apex, {y: y for y in apex2})
        return apex, h1, h2

    def cocone_class_key(self, square):
        """Complete connectedness invariant of an amalgam over its span:
        which ear elements collide in the apex.  Two amalgams of one span
        are jointly connected iff the legs determine a consistent
        injective matching, i.e. iff these patterns agree."""
        p, q = square.cospan.left, square.cospan.right
        return frozenset((x, y) for x in p.dom for y in q.dom if p(x) == q(y))

    def paired_iso(self, apex1, apex2, pairs):
        """Is the pair-determined map a bijective correspondence of apexes?"""
        out = self.connect(apex1, apex2, pairs)
        if out is None:
            return False
        _, h1, h2 = out
        return h1.image == h2.image

    def describe(self, value):
        if isinstance(value, SetMap):
            return {"dom": ordered(value.dom), "cod": ordered(value.cod),
                    "map": {str(k): v for k, v in value.pairs}}
        if isinstance(value, frozenset):
            return ordered(value)
        return repr(value)


def set_map_from_json(doc):
    """Parse {"dom": [...], "cod": [...], "map": {"0": 1, ...}}."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    dom = doc["dom"]
    by_str = {str(x): x for x in dom}
    mapping = {}
    for key, value in doc["map"].items():
        if key not in by_str:
            raise FincatError(f"map key {key!r} is not a domain element")
        mapping[by_str[key]] = value
    return SetMap.make(frozenset(dom), frozenset(doc["cod"]), mapping)


SET_ALL = SetCategory("all")
SET_MONO = SetCategory("mono")

"""Amalgams, connectedness, types as connected components, and universal
extensions.

An amalgam of a span is a commuting square over it.  All amalgams handled
here are trimmed (apex generated by the leg images); a general amalgam is
always connected to its trim by the evident inclusion, so nothing is lost
for connectedness questions.

Joint connectedness of two trimmed amalgams of the same span is decided
exactly, with no apex search: any witness restricts to the image of its
legs, so the legs themselves determine the only possible gluing.  Since
the built-in categories have the amalgamation property at every size,
connectedness and joint connectedness coincide and the verdicts are
definitive, never truncated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cats.base import Amalgam, CommutingSquare, Cospan, Span
from .errors import FincatError, InsufficientChainError


# ---------------------------------------------------------------------------
# connectedness of amalgams


def leg_pairs(cat, a1, a2):
    """Matching constraints h1(leg1(x)) = h2(leg2(x)) for a common span."""
    if a1.span != a2.span:
        raise FincatError("amalgams do not share a span")
    pairs = []
    for leg1, leg2 in ((a1.cospan.left, a2.cospan.left),
                       (a1.cospan.right, a2.cospan.right)):
        for x in cat.generators(leg1.dom):
            pairs.append((cat.apply(leg1, x), cat.apply(leg2, x)))
    return pairs


def trim(cat, amalgam):
    return cat.trim(amalgam)


def jointly_connected(a1, a2, cat, bound=None):
    """A common amalgam receiving both, or None if none exists at all.

    The verdict is exact for the built-in categories (see module doc);
    `bound` is echoed into the witness for reporting only.
    """
    t1, t2 = cat.trim(a1), cat.trim(a2)
    out = cat.connect(t1.apex, t2.apex, leg_pairs(cat, t1, t2))
    if out is None:
        return None
    apex, h1, h2 = out
    return {
        "apex": apex,
        "from_first": h1,
        "from_second": h2,
        "bound": bound,
        "exhaustive": True,
    }


def cocone_isomorphic(a1, a2, cat):
    """Isomorphism of amalgams over a fixed span (trimmed on both sides)."""
    t1, t2 = cat.trim(a1), cat.trim(a2)
    return cat.paired_iso(t1.apex, t2.apex, leg_pairs(cat, t1, t2))


# ---------------------------------------------------------------------------
# amalgam enumeration


@dataclass
class AmalgamationResult:
    span: Span
    amalgams: list
    bound: int
    exhaustive: bool

    def __len__(self):
        return len(self.amalgams)


def free_size(cat, span):
    """Size of the free amalgam: every amalgam trims to at most this."""
    return (cat.size(span.left.cod) + cat.size(span.right.cod)
            - cat.size(span.base))


def amalgamate(span, cat, size_bound):
    """All trimmed amalgams of the span with apex size <= size_bound, up
    to isomorphism of cocones.  The result is exhaustive for connectedness
    questions when the bound reaches the free-amalgam size (every amalgam
    is connected to a trimmed one of at most that size)."""
    f, g = span.left, span.right
    found = []
    for apex in cat.objects(size_bound):
        for p in cat.morphisms(f.cod, apex):
            pf = cat.compose(p, f)
            for q in cat.morphisms(g.cod, apex):
                if pf != cat.compose(q, g):
                    continue
                candidate = cat.trim(CommutingSquare(span, Cospan(p, q)))
                if not any(cocone_isomorphic(candidate, seen, cat) for seen in found):
                    found.append(candidate)
    return AmalgamationResult(span, found, size_bound,
                              exhaustive=size_bound >= free_size(cat, span))


def is_amalgamation_base(base, cat, bound):
    """Does every span with this base and ears of size <= bound amalgamate?

    The apex is allowed to reach the free-amalgam size even when that
    exceeds `bound`: the free amalgam is the canonical completion.
    """
    for ear_b in cat.objects(bound):
        for ear_c in cat.objects(bound):
            for f in cat.morphisms(base, ear_b):
                for g in cat.morphisms(base, ear_c):
                    span = Span(f, g)
                    try:
                        square = cat.free_amalgam(span)
                    except FincatError:
                        square = None
                    if square is None:
                        apex_bound = max(bound, free_size(cat, span))
                        if not amalgamate(span, cat, apex_bound).amalgams:
                            return False, span
    return True, None


# ---------------------------------------------------------------------------
# points and types


@dataclass(frozen=True)
class Point:
    """A point over a base object: an embedding together with a marked
    element of its codomain's carrier."""

    embedding: object
    element: object

    @property
    def base(self):
        return self.embedding.dom


@dataclass(frozen=True)
class TypeClassId:
    index: int
    representative: Point


@dataclass
class TypePartition:
    base: object
    classes: list          # list of lists of trimmed points
    bound: int
    exhaustive: bool = True

    @property
    def ids(self):
        return [TypeClassId(i, cls[0]) for i, cls in enumerate(self.classes)]

    def __len__(self):
        return len(self.classes)


def point_pairs(cat, p1, p2):
    if p1.base != p2.base:
        raise FincatError("points do not share a base")
    pairs = [(cat.apply(p1.embedding, x), cat.apply(p2.embedding, x))
             for x in cat.generators(p1.base)]
    pairs.append((p1.element, p2.element))
    return pairs


def trim_point(cat, point):
    hit = [cat.apply(point.embedding, x) for x in cat.generators(point.base)]
    hit.append(point.element)
    _, incl = cat.generated(point.embedding.cod, hit)
    small = cat.corestrict(point.embedding, incl)
    marked = next(y for y in cat.elements(incl.dom)
                  if cat.apply(incl, y) == point.element)
    return Point(small, marked)


def same_type(p1, p2, cat):
    """Joint connectedness in the category of points over the base."""
    t1, t2 = trim_point(cat, p1), trim_point(cat, p2)
    return cat.connect(t1.embedding.cod, t2.embedding.cod,
                       point_pairs(cat, t1, t2)) is not None


def enumerate_points(base, cat, bound):
    for cod in cat.objects(bound):
        for f in cat.morphisms(base, cod):
            for b in cat.elements(cod):
                yield Point(f, b)


def enumerate_types(base, cat, bound):
    """Partition the points over `base` with codomain size <= bound into
    connectedness classes.  Points are replaced by their trims (the trim
    inclusion is itself a point morphism), and trimmed points are merged
    by the exact joint-connectedness test, so the partition is definitive.
    """
    trimmed = []
    seen = set()
    for point in enumerate_points(base, cat, bound):
        t = trim_point(cat, point)
        if t not in seen:
            seen.add(t)
            trimmed.append(t)
    classes = []
    for t in trimmed:
        for cls in classes:
            if same_type(t, cls[0], cat):
                cls.append(t)
                break
        else:
            classes.append([t])
    return TypePartition(base, classes, bound)


def realizes_type(carrier_embedding, rep, cat):
    """Does the codomain of `carrier_embedding` realize the type of `rep`?

    True iff some marked element of the codomain gives a point with the
    same type over the shared base.
    """
    cod = carrier_embedding.cod
    return any(same_type(Point(carrier_embedding, b), rep, cat)
               for b in cat.elements(cod))


# ---------------------------------------------------------------------------
# universal extensions


def is_universal_over(big, base, cat, ext_bound, embedding=None):
    """Does every extension of `base` of size <= ext_bound factor into
    `big` over `base`?  Returns (verdict, counterexample-or-None)."""
    if embedding is None:
        candidates = cat.morphisms(base, big)
        if not candidates:
            raise FincatError("base does not embed in the target")
        embedding = candidates[0]
    for ext in cat.objects(ext_bound):
        for f in cat.morphisms(base, ext):
            if not any(cat.compose(g, f) == embedding
                       for g in cat.morphisms(ext, big)):
                return False, {"extension": ext, "via": f}
    return True, None


@dataclass
class ExtensionChain:
    objects: list    # [M_0, ..., M_k]
    steps: list      # embeddings M_i -> M_{i+1}

    def embedding_into_top(self, cat):
        emb = cat.identity(self.objects[0])
        for step in self.steps:
            emb = cat.compose(step, emb)
        return emb

    @property
    def top(self):
        return self.objects[-1]


def universal_extension_build(base, cat, steps, type_bound=None):
    """Iteratively extend `base` so each successor realizes every type
    over its predecessor (types taken at codomain size |M_i| + 1, which
    covers all one-point types since points trim to that size)."""
    chain = ExtensionChain([base], [])
    current = base
    for _ in range(steps):
        bound = type_bound or (cat.size(current) + 1)
        types = enumerate_types(current, cat, bound)
        stage = cat.identity(current)
        for cls in types.classes:
            rep = cls[0]
            if realizes_type(stage, rep, cat):
                continue
            square = cat.free_amalgam(Span(stage, rep.embedding))
            stage = cat.compose(square.cospan.left, stage)
        for cls in types.classes:
            if not realizes_type(stage, cls[0], cat):
                raise InsufficientChainError(
                    "successor fails to realize a type it was built for")
        chain.steps.append(stage)
        current = stage.cod
        chain.objects.append(current)
    return chain


def saturated_implies_universal_check(big, cat, sub_bound, ext_bound=None):
    """Finite saturation-to-universality check.

    Hypothesis: `big` realizes all types over every subobject of size at
    most sub_bound.  Conclusion: `big` is universal over every such
    subobject for extensions of size at most ext_bound (default
    sub_bound + 1).  Reports per-subobject outcomes; the overall verdict
    is "pass" unless the hypothesis holds and some conclusion fails.
    """
    if ext_bound is None:
        ext_bound = sub_bound + 1
    outcomes = []
    hypothesis = True
    for sub, incl in cat.subobjects(big):
        if cat.size(sub) > sub_bound:
            continue
        types = enumerate_types(sub, cat, cat.size(sub) + 1)
        realized = all(realizes_type(incl, cls[0], cat) for cls in types.classes)
        universal, witness = is_universal_over(big, sub, cat, ext_bound,
                                               embedding=incl)
        outcomes.append({
            "subobject": cat.describe(sub),
            "realizes_all_types": realized,
            "universal": universal,
            "witness": None if witness is None else
            {k: cat.describe(v) for k, v in witness.items()},
        })
        hypothesis = hypothesis and realized
    if not hypothesis:
        verdict = "hypothesis-not-met"
    elif all(o["universal"] for o in outcomes):
        verdict = "pass"
    else:
        verdict = "fail"
    return {"verdict": verdict, "hypothesis": hypothesis, "subobjects": outcomes,
            "sub_bound": sub_bound, "ext_bound": ext_bound}

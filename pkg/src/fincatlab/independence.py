"""Candidate independence notions on commuting squares, and the axiom
harness that tests them.

A predicate decides which amalgams count as "free".  The harness checks,
at a declared size bound and up to isomorphism of squares:

  existence     every span has an independent amalgam (apex allowed up to
                the free-amalgam size),
  uniqueness    independent amalgams of a span fall in one connectedness
                class,
  symmetry      swapping the ears preserves the verdict,
  transitivity  two independent squares glued along an edge give an
                independent outer square,
  invariance    connectedness classes are decide-constant,
  witness       a failure is already visible in a subsquare whose ears are
                generated by at most two elements over the base.

Connectedness verdicts reuse the exact gluing test from `amalgam`, so the
uniqueness and invariance fragments are complete at the declared bound.
The reported `exhaustive` flag means exactly that: every configuration
within the bound was inspected and no verdict was truncated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .amalgam import (amalgamate, cocone_isomorphic, free_size,
                      jointly_connected, leg_pairs)
from .cats import category_by_name
from .cats.base import CommutingSquare, Cospan, Span
from .cats.vect import span_members
from .errors import BoundExceededError, FincatError, UnsupportedCategoryError


@dataclass
class IndependencePredicate:
    """A decidable class of commuting squares.

    `image_determined` promises that the verdict depends only on the span
    and the leg images inside the apex (so it is stable under trimming);
    every shipped notion has this property, and the harness uses it to
    justify exhaustiveness claims.
    """

    name: str
    category: object
    decide: object
    image_determined: bool = True
    coarse: bool = False
    doc: str = ""

    def __call__(self, square):
        return self.decide(square)


def _memoized(fn):
    cache = {}

    def wrapped(square):
        out = cache.get(square)
        if out is None:
            out = fn(square)
            cache[square] = out
        return out

    return wrapped


# ---------------------------------------------------------------------------
# built-in predicates


def square_images(cat, square):
    p, q = square.cospan.left, square.cospan.right
    through = cat.compose(p, square.span.left)
    return (set(cat.image_elements(p)), set(cat.image_elements(q)),
            set(cat.image_elements(through)))


def effective_square(square, cat):
    """Is the mediator from the pushout of the span a class morphism?"""
    po = cat.pushout(square.span)
    mediator = po.mediator(square.cospan)
    return cat.in_class(mediator)


def disjoint_sets_predicate(cat=None):
    cat = cat or category_by_name("set-mono")

    def decide(square):
        im_b, im_c, im_a = square_images(cat, square)
        return im_b & im_c == im_a

    return IndependencePredicate(
        "disjoint-sets", cat, _memoized(decide),
        doc="ear images meet exactly in the base image")


def disjoint_subspaces_predicate(cat=None):
    cat = cat or category_by_name("vec")

    def decide(square):
        im_b, im_c, im_a = square_images(cat, square)
        return im_b & im_c == im_a

    return IndependencePredicate(
        "disjoint-subspaces", cat, _memoized(decide),
        doc="ear image subspaces meet exactly in the base image")


def _graph_cross_data(cat, square):
    im_b, im_c, im_a = square_images(cat, square)
    apex = square.apex
    fresh_b, fresh_c = im_b - im_a, im_c - im_a
    cross = [(u, v) for u in fresh_b for v in fresh_c if u != v]
    return im_b, im_c, im_a, cross, apex


def cross_edge_free_predicate(cat):
    def decide(square):
        im_b, im_c, im_a, cross, apex = _graph_cross_data(cat, square)
        if im_b & im_c != im_a:
            return False
        return not any(apex.has_edge(u, v) for u, v in cross)

    return IndependencePredicate(
        "cross-edge-free", cat, _memoized(decide), coarse=True,
        doc="disjoint over the base, with no cross-edges between fresh parts")


def cross_edges_present_predicate(cat):
    def decide(square):
        im_b, im_c, im_a, cross, apex = _graph_cross_data(cat, square)
        if im_b & im_c != im_a:
            return False
        return all(apex.has_edge(u, v) for u, v in cross)

    return IndependencePredicate(
        "cross-edges-present", cat, _memoized(decide), coarse=True,
        doc="disjoint over the base, with every fresh cross-pair an edge")


def effective_predicate(cat):
    def decide(square):
        return effective_square(square, cat)

    coarse = getattr(cat, "kind", None) in ("sub", "full")
    return IndependencePredicate(
        "effective", cat, _memoized(decide), coarse=coarse,
        doc="the mediator from the pushout lies in the morphism class")


def builtin_predicates():
    sets = category_by_name("set-mono")
    vec = category_by_name("vec")
    gsub = category_by_name("graph-sub")
    gfull = category_by_name("graph-full")
    return [
        disjoint_sets_predicate(sets),
        disjoint_subspaces_predicate(vec),
        cross_edge_free_predicate(gsub),
        cross_edge_free_predicate(gfull),
        cross_edges_present_predicate(gfull),
        effective_predicate(sets),
        effective_predicate(vec),
        effective_predicate(gsub),
    ]


def predicate_by_name(name, category_name):
    cat = category_by_name(category_name)
    table = {
        "disjoint-sets": disjoint_sets_predicate,
        "disjoint-subspaces": disjoint_subspaces_predicate,
        "cross-edge-free": cross_edge_free_predicate,
        "cross-edges-present": cross_edges_present_predicate,
        "effective": effective_predicate,
    }
    table.update({p.name: None for p in negative_controls(cat)})
    if name in table and table[name] is not None:
        return table[name](cat)
    for control in negative_controls(cat):
        if control.name == name:
            return control
    raise UnsupportedCategoryError(f"unknown predicate {name!r}")


def negative_controls(cat):
    """Deliberately broken predicates, each targeting one axiom.

    All controls depend only on carrier sizes or vertex images, so on the
    graph categories they run on the coarse square tier."""
    coarse = getattr(cat, "kind", None) in ("sub", "full")

    def never(square):
        return False

    def always(square):
        return True

    def asymmetric(square):
        im_b, im_c, _ = square_images(cat, square)
        return len(im_b) > len(im_c)

    def apex_growth(square):
        return cat.size(square.apex) - cat.size(square.base) <= 2

    def avoid_three(square):
        return cat.size(square.apex) != 3

    return [
        IndependencePredicate("never", cat, never, image_determined=False,
                              coarse=coarse,
                              doc="control: empty class, fails existence"),
        IndependencePredicate("always", cat, always, image_determined=False,
                              coarse=coarse,
                              doc="control: all squares, fails uniqueness"),
        IndependencePredicate("asymmetric", cat, asymmetric,
                              image_determined=True, coarse=coarse,
                              doc="control: compares ear image sizes, fails symmetry"),
        IndependencePredicate("apex-growth", cat, apex_growth,
                              image_determined=False, coarse=coarse,
                              doc="control: apex exceeds base by at most 2, "
                                  "fails transitivity"),
        IndependencePredicate("avoid-three", cat, avoid_three,
                              image_determined=False, coarse=coarse,
                              doc="control: apex size differs from 3, "
                                  "fails the witness property"),
    ]


# ---------------------------------------------------------------------------
# axiom fragments


@dataclass
class Fragment:
    axiom: str
    verdict: str                 # pass | fail
    witness: object = None
    bound: int = 0
    exhaustive: bool = True

    @property
    def passed(self):
        return self.verdict == "pass"


@dataclass
class AxiomReport:
    predicate: str
    category: str
    bound: int
    fragments: dict = field(default_factory=dict)

    @property
    def all_pass(self):
        return all(f.passed for f in self.fragments.values())

    def to_checks(self):
        return [
            {"name": f"{self.predicate}:{axiom}", "verdict": frag.verdict,
             "witness": frag.witness, "exhaustive": frag.exhaustive}
            for axiom, frag in self.fragments.items()
        ]


def _span_groups(pred, cat, bound):
    """Squares at the bound, transported onto canonical spans and grouped.

    Yields (canonical_span, list of (transported_square, decide)) with the
    decide verdicts taken on the original squares.
    """
    groups = {}
    for square in cat.squares(bound, coarse=pred.coarse):
        verdict = pred(square)
        canonical, beta, gamma = cat.normalize_span(square.span)
        moved = CommutingSquare(
            canonical,
            Cospan(cat.compose(square.cospan.left, beta),
                   cat.compose(square.cospan.right, gamma)))
        groups.setdefault(canonical, []).append((moved, verdict))
    return groups


def _analyze_groups(pred, cat, bound):
    """Span groups together with their connectedness labelling, computed
    once and shared by the uniqueness and invariance fragments."""
    return {span: (squares, _connection_classes(cat, squares))
            for span, squares in _span_groups(pred, cat, bound).items()}


def _connection_classes(cat, squares):
    """Partition same-span amalgams by connectedness (exact test).

    Uses the category's closed-form class invariant when available and
    falls back to pairwise gluing of trims otherwise."""
    labels = []
    by_key = {}
    reps = []
    trims = {}
    for square, _ in squares:
        key = cat.cocone_class_key(square)
        if key is not None:
            labels.append(by_key.setdefault(key, len(by_key) + (1 << 20)))
            continue
        t = trims.get(square)
        if t is None:
            t = cat.trim(square)
            trims[square] = t
        for idx, rep in enumerate(reps):
            if cat.connect(rep.apex, t.apex, leg_pairs(cat, rep, t)) is not None:
                labels.append(idx)
                break
        else:
            reps.append(t)
            labels.append(len(reps) - 1)
    return labels


def check_existence(pred, cat, bound):
    """Every span with base and ears at the bound has an independent
    amalgam: the category's canonical completions are tried first, then
    an exhaustive amalgam search up to the free-amalgam size.  A fragment
    that fails only because the fallback search was truncated says so."""
    for span in cat.spans(bound):
        hit = False
        try:
            hit = any(pred(a) for a in cat.candidate_amalgams(span))
        except FincatError:
            pass
        truncated = False
        if not hit:
            apex_bound = max(bound, free_size(cat, span))
            try:
                hit = any(pred(a)
                          for a in amalgamate(span, cat, apex_bound).amalgams)
            except BoundExceededError:
                truncated = True
        if not hit:
            witness = {"span": describe_span(cat, span)}
            if truncated:
                witness["note"] = "amalgam search truncated at the carrier bound"
            return Fragment("existence", "fail", witness=witness, bound=bound,
                            exhaustive=pred.image_determined and not truncated)
    return Fragment("existence", "pass", bound=bound,
                    exhaustive=pred.image_determined)


def check_uniqueness(pred, cat, bound, analysis=None):
    analysis = analysis or _analyze_groups(pred, cat, bound)
    for span, (squares, labels) in analysis.items():
        classes_hit = {}
        for (square, verdict), label in zip(squares, labels):
            if verdict:
                classes_hit.setdefault(label, square)
                if len(classes_hit) > 1:
                    first, second = list(classes_hit.values())[:2]
                    return Fragment(
                        "uniqueness", "fail",
                        witness={"span": describe_span(cat, span),
                                 "first": describe_square(cat, first),
                                 "second": describe_square(cat, second)},
                        bound=bound)
    return Fragment("uniqueness", "pass", bound=bound)


def check_invariance(pred, cat, bound, analysis=None):
    analysis = analysis or _analyze_groups(pred, cat, bound)
    for span, (squares, labels) in analysis.items():
        seen = {}
        for (square, verdict), label in zip(squares, labels):
            if label in seen and seen[label][1] != verdict:
                other = seen[label][0]
                return Fragment(
                    "invariance", "fail",
                    witness={"span": describe_span(cat, span),
                             "independent": describe_square(
                                 cat, other if seen[label][1] else square),
                             "connected_dependent": describe_square(
                                 cat, square if seen[label][1] else other)},
                    bound=bound)
            seen.setdefault(label, (square, verdict))
    return Fragment("invariance", "pass", bound=bound)


def check_symmetry(pred, cat, bound):
    seen = set()
    for square in cat.squares(bound, coarse=pred.coarse):
        key = cat.square_key(square)
        if key in seen:
            continue
        seen.add(key)
        flipped = CommutingSquare(
            Span(square.span.right, square.span.left),
            Cospan(square.cospan.right, square.cospan.left))
        if pred(square) != pred(flipped):
            return Fragment("symmetry", "fail",
                            witness={"square": describe_square(cat, square)},
                            bound=bound)
    return Fragment("symmetry", "pass", bound=bound)


def _double_squares(cat, bound, coarse=False):
    """Pairs of glued squares (A,B,C,D) and (C,D,E,F) with the outer square
    (A,B,E,F), enumerated through nested subobjects of each apex."""
    for apex in cat.objects(bound):
        subs = cat.subobjects(apex, coarse)
        for mid, into_apex in subs:          # D -> F
            mid_subs = cat.subobjects(mid, coarse)
            for ear, ear_into_apex in subs:  # E -> F
                meet_de, meet_incl = cat.subobject_meet(into_apex, ear_into_apex)
                for low, low_in_meet in cat.subobjects(meet_de, coarse):   # C
                    low_in_apex = cat.compose(meet_incl, low_in_meet)
                    c_in_d = cat.corestrict(low_in_apex, into_apex)
                    c_in_e = cat.corestrict(low_in_apex, ear_into_apex)
                    right_square = CommutingSquare(
                        Span(c_in_d, c_in_e), Cospan(into_apex, ear_into_apex))
                    yield right_square, mid_subs, into_apex, c_in_d, \
                        low_in_apex, ear_into_apex


def check_transitivity(pred, cat, bound):
    for (right_square, mid_subs, into_apex, c_in_d, low_in_apex,
         ear_into_apex) in _double_squares(cat, bound, coarse=pred.coarse):
        if not pred(right_square):
            continue
        for b_obj, b_in_d in mid_subs:       # B -> D
            b_in_apex = cat.compose(into_apex, b_in_d)
            meet_bc, meet_bc_incl = cat.subobject_meet(b_in_apex, low_in_apex)
            for base, base_in_meet in cat.subobjects(meet_bc, pred.coarse):   # A
                base_in_apex = cat.compose(meet_bc_incl, base_in_meet)
                a_in_b = cat.corestrict(base_in_apex, b_in_apex)
                a_in_c = cat.corestrict(base_in_apex, low_in_apex)
                left_square = CommutingSquare(
                    Span(a_in_b, a_in_c), Cospan(b_in_d, c_in_d))
                if not pred(left_square):
                    continue
                a_in_e = cat.corestrict(base_in_apex, ear_into_apex)
                outer = CommutingSquare(
                    Span(a_in_b, a_in_e), Cospan(b_in_apex, ear_into_apex))
                if not pred(outer):
                    return Fragment(
                        "transitivity", "fail",
                        witness={"left": describe_square(cat, left_square),
                                 "right": describe_square(cat, right_square),
                                 "outer": describe_square(cat, outer)},
                        bound=bound)
    return Fragment("transitivity", "pass", bound=bound)


def _two_generated_subsquares(cat, square):
    """Subsquares whose ears are generated by the base image plus at most
    two elements, trimmed to their own apex and enumerated smallest
    first.  Generating sets giving an already-seen ear are skipped."""
    f, g = square.span.left, square.span.right
    p, q = square.cospan.left, square.cospan.right
    base_b = [cat.apply(f, x) for x in cat.generators(f.dom)]
    base_c = [cat.apply(g, x) for x in cat.generators(g.dom)]

    def side(leg, incoming, base_img):
        out = []
        seen = set()
        for r in range(3):
            for extra in itertools.combinations(cat.elements(incoming.cod), r):
                sub, incl = cat.generated(incoming.cod, base_img + list(extra))
                if incl in seen:
                    continue
                seen.add(incl)
                out.append((r, cat.corestrict(incoming, incl),
                            cat.compose(leg, incl)))
        return out

    sides_b = side(p, f, base_b)
    sides_c = side(q, g, base_c)
    combos = sorted(((rb, rc) for rb in range(3) for rc in range(3)),
                    key=lambda t: t[0] + t[1])
    for rb, rc in combos:
        for rb2, f0, p0 in sides_b:
            if rb2 != rb:
                continue
            for rc2, g0, q0 in sides_c:
                if rc2 != rc:
                    continue
                yield cat.trim(CommutingSquare(Span(f0, g0), Cospan(p0, q0)))


def check_witness_property(pred, cat, bound):
    """Finite stand-in for the accessibility axiom: a failing square must
    contain a failing subsquare with two-generated ears."""
    seen = set()
    for square in cat.squares(bound, coarse=pred.coarse):
        if pred(square):
            continue
        probe = cat.trim(square) if pred.image_determined else square
        key = cat.square_key(probe)
        if key in seen:
            continue
        seen.add(key)
        if pred.image_determined and pred(probe):
            raise FincatError(f"{pred.name} is not actually image determined")
        if not any(not pred(sub) for sub in _two_generated_subsquares(cat, probe)):
            return Fragment("witness-property", "fail",
                            witness={"square": describe_square(cat, probe)},
                            bound=bound, exhaustive=pred.image_determined)
    return Fragment("witness-property", "pass", bound=bound,
                    exhaustive=pred.image_determined)


def run_axiom_suite(pred, cat=None, bound=4):
    cat = cat or pred.category
    report = AxiomReport(pred.name, cat.name, bound)
    analysis = _analyze_groups(pred, cat, bound)
    for fragment in (
            check_existence(pred, cat, bound),
            check_uniqueness(pred, cat, bound, analysis),
            check_symmetry(pred, cat, bound),
            check_transitivity(pred, cat, bound),
            check_invariance(pred, cat, bound, analysis),
            check_witness_property(pred, cat, bound),
    ):
        report.fragments[fragment.axiom] = fragment
    return report


def canonicity_compare(pred1, pred2, cat, bound):
    """First square on which the two notions disagree, or None if they
    agree on every square at the bound.  Two rival axiom-passing notions
    that disagree certify that no stable independence notion exists."""
    coarse = pred1.coarse and pred2.coarse
    for square in cat.squares(bound, coarse=coarse):
        v1, v2 = pred1(square), pred2(square)
        if v1 != v2:
            return {"square": describe_square(cat, square),
                    "raw_square": square,
                    pred1.name: v1, pred2.name: v2}
    return None


# ---------------------------------------------------------------------------
# reporting helpers


def describe_span(cat, span):
    return {"base": cat.describe(span.base),
            "left": cat.describe(span.left),
            "right": cat.describe(span.right)}


def describe_square(cat, square):
    return {"span": describe_span(cat, square.span),
            "apex": cat.describe(square.apex),
            "left_leg": cat.describe(square.cospan.left),
            "right_leg": cat.describe(square.cospan.right)}

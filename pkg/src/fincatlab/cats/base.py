"""Shared geometry for the built-in concrete categories.

A concrete category here is a small object with a distinguished morphism
class (injections, subgraph embeddings, ...) living inside an ambient
homomorphism category where pushouts can be computed.  All carriers are
finite and all enumerations are bounded.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NonCommutingCoconeError, UnsupportedCategoryError


@dataclass(frozen=True)
class Span:
    """Two morphisms out of a common base: left: A -> B, right: A -> C."""

    left: object
    right: object

    def __post_init__(self):
        if self.left.dom != self.right.dom:
            raise ValueError("span legs must share their domain")

    @property
    def base(self):
        return self.left.dom


@dataclass(frozen=True)
class Cospan:
    """Two morphisms into a common apex: left: B -> D, right: C -> D."""

    left: object
    right: object

    def __post_init__(self):
        if self.left.cod != self.right.cod:
            raise ValueError("cospan legs must share their codomain")

    @property
    def apex(self):
        return self.left.cod


@dataclass(frozen=True)
class CommutingSquare:
    """A span completed by a cospan with equal composites."""

    span: Span
    cospan: Cospan

    @property
    def base(self):
        return self.span.base

    @property
    def apex(self):
        return self.cospan.apex


# An amalgam of a span is exactly a commuting square over it.
Amalgam = CommutingSquare


@dataclass
class PushoutResult:
    apex: object
    left_inj: object   # B -> apex
    right_inj: object  # C -> apex
    span: Span
    _mediate: object   # callable(cospan) -> morphism

    def mediator(self, cospan):
        """Unique morphism m: apex -> cocone apex with m.left_inj, m.right_inj
        equal to the cocone legs.  Raises if the cocone does not commute."""
        return self._mediate(cospan)


class Category:
    """Protocol for the built-in concrete categories.

    Subclasses provide carriers, the distinguished morphism class, bounded
    enumeration of objects / morphisms / subobjects, and pushouts where
    they exist.  Sizes are carrier sizes, except for linear categories
    where size means dimension.
    """

    name = "?"

    def objects(self, max_size):
        raise NotImplementedError

    def size(self, obj):
        raise NotImplementedError

    def elements(self, obj):
        raise NotImplementedError

    def generators(self, obj):
        """Elements that determine morphisms out of the object (the whole
        carrier by default; a basis in linear categories)."""
        return self.elements(obj)

    def identity(self, obj):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def apply(self, f, x):
        raise NotImplementedError

    def morphisms(self, dom, cod):
        raise NotImplementedError

    def isomorphisms(self, dom, cod):
        raise NotImplementedError

    def in_class(self, f):
        """Is f a valid morphism of the distinguished class?"""
        raise NotImplementedError

    def subobjects(self, obj, coarse=False):
        """All (sub, inclusion) pairs, inclusion: sub -> obj in the class.

        `coarse` asks for the vertex-determined quotient where a category
        supports one; categories without a coarser tier ignore it."""
        raise NotImplementedError

    def generated(self, obj, elems):
        """Smallest subobject of obj containing elems, with its inclusion."""
        raise NotImplementedError

    def corestrict(self, f, incl):
        """Factor f through incl: the g with incl . g = f (f image inside incl)."""
        raise NotImplementedError

    def pushout(self, span):
        raise UnsupportedCategoryError(f"{self.name} does not support pushouts")

    def free_amalgam(self, span):
        """A canonical amalgam of the span within the morphism class."""
        raise NotImplementedError

    def candidate_amalgams(self, span):
        """Canonical completions tried first by existence searches."""
        return [self.free_amalgam(span)]

    def squares(self, bound, coarse=False):
        """All commuting class-squares with apex of size <= bound, up to
        isomorphism of squares (subobject-inclusion normal form)."""
        raise NotImplementedError

    def spans(self, bound):
        """Class-spans with base and ears of size <= bound, covering every
        span up to isomorphism."""
        raise NotImplementedError

    def cocone_class_key(self, square):
        """Complete invariant for the connectedness class of an amalgam
        over its span, or None when the category offers no closed form
        (callers then fall back to pairwise gluing)."""
        return None

    def square_key(self, square):
        """Isomorphism-class key for squares; the default keeps every
        square distinct (no dedup)."""
        return square

    def describe(self, value):
        """JSON-friendly rendering of objects and morphisms for reports."""
        return repr(value)

    # -- generic constructions ------------------------------------------

    def square(self, f, g, p, q):
        sq = CommutingSquare(Span(f, g), Cospan(p, q))
        if self.compose(p, f) != self.compose(q, g):
            raise NonCommutingCoconeError("square does not commute")
        return sq

    def image_elements(self, f):
        return [self.apply(f, x) for x in self.elements(f.dom)]

    def generator_images(self, f):
        return [self.apply(f, x) for x in self.generators(f.dom)]

    def trim(self, square):
        """Restrict the apex to the subobject generated by the leg images."""
        p, q = square.cospan.left, square.cospan.right
        hit = self.generator_images(p) + self.generator_images(q)
        _, incl = self.generated(square.apex, hit)
        return CommutingSquare(
            square.span,
            Cospan(self.corestrict(p, incl), self.corestrict(q, incl)),
        )

    def is_mono(self, f, bound):
        """Left-cancellability of f against all class morphisms from objects
        of size <= bound (canonical representatives suffice)."""
        for obj in self.objects(bound):
            seen = {}
            for g in self.morphisms(obj, f.dom):
                key = self.compose(f, g)
                if key in seen and seen[key] != g:
                    return False
                seen[key] = g
        return True

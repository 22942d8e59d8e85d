"""Finite simple graphs under three morphism classes.

Edges are stored irreflexively ((u, v) with u < v); the reflexive pairs
required by the "symmetric reflexive relation" reading are a convention,
never materialized, so collapsing an edge is still a homomorphism.

Kinds:
  hom  -- edge-preserving vertex maps (the ambient category, has pushouts)
  sub  -- injective edge-preserving maps (subgraph embeddings)
  full -- subgraph embeddings that also reflect edges
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from ..errors import (BoundExceededError, FincatError, NonCommutingCoconeError,
                      UnsupportedCategoryError)
from .base import Category, CommutingSquare, Cospan, PushoutResult, Span


def norm_edge(u, v):
    if u == v:
        raise FincatError("loops are implicit; do not store them")
    return (u, v) if u < v else (v, u)


def _inverse_perm(perm):
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return tuple(out)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset  # of (u, v) with u < v

    @staticmethod
    def make(n, edges):
        table = frozenset(norm_edge(u, v) for u, v in edges)
        for u, v in table:
            if not (0 <= u < n and 0 <= v < n):
                raise FincatError(f"edge ({u},{v}) outside vertex range")
        return Graph(n, table)

    def has_edge(self, u, v):
        return u != v and norm_edge(u, v) in self.edges


@dataclass(frozen=True)
class GraphMap:
    dom: Graph
    cod: Graph
    images: tuple

    def __call__(self, v):
        return self.images[v]

    @property
    def injective(self):
        return len(set(self.images)) == len(self.images)


def edge_image(f, e):
    u, v = f(e[0]), f(e[1])
    return None if u == v else norm_edge(u, v)


def is_morphism(f, kind):
    """Validity of a vertex map for the requested morphism kind."""
    if len(f.images) != f.dom.n or any(not (0 <= v < f.cod.n) for v in f.images):
        return False
    for e in f.dom.edges:
        img = edge_image(f, e)
        if img is None:
            if kind in ("sub", "full"):
                return False  # injectivity fails anyway
            continue  # collapsed edge: fine under the reflexive convention
        if img not in f.cod.edges:
            return False
    if kind in ("sub", "full") and not f.injective:
        return False
    if kind == "full":
        for u, v in itertools.combinations(range(f.dom.n), 2):
            if f.cod.has_edge(f(u), f(v)) and not f.dom.has_edge(u, v):
                return False
    return True


CARRIER_BOUND = 6  # hard per-run bound: every search here is exponential


@lru_cache(maxsize=None)
def canonical_reps(n):
    """All graphs on n vertices up to isomorphism, denser graphs first."""
    if n > CARRIER_BOUND:
        raise BoundExceededError(
            f"graph enumeration needs {n} vertices, above the carrier bound "
            f"{CARRIER_BOUND}")
    pairs = list(itertools.combinations(range(n), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        edges = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        key = min(
            tuple(sorted(norm_edge(perm[u], perm[v]) for u, v in edges))
            for perm in itertools.permutations(range(n))
        )
        if key not in seen:
            seen[key] = Graph(n, edges)
    return sorted(seen.values(), key=lambda g: (-len(g.edges), sorted(g.edges)))


class GraphCategory(Category):
    def __init__(self, kind):
        if kind not in ("hom", "sub", "full"):
            raise FincatError(f"unknown graph morphism kind {kind!r}")
        self.kind = kind
        self.name = "graph-" + kind
        self._pushout_cache = {}

    def objects(self, max_size):
        out = []
        for n in range(max_size + 1):
            out.extend(canonical_reps(n))
        return out

    def size(self, obj):
        return obj.n

    def elements(self, obj):
        return list(range(obj.n))

    def identity(self, obj):
        return GraphMap(obj, obj, tuple(range(obj.n)))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise FincatError("endpoints do not match")
        return GraphMap(f.dom, g.cod, tuple(g(f(v)) for v in range(f.dom.n)))

    def apply(self, f, x):
        return f(x)

    def in_class(self, f):
        return is_morphism(f, self.kind)

    def morphisms(self, dom, cod):
        out = []
        if self.kind == "hom":
            pool = itertools.product(range(cod.n), repeat=dom.n)
        else:
            pool = itertools.permutations(range(cod.n), dom.n)
        for images in pool:
            f = GraphMap(dom, cod, tuple(images))
            if is_morphism(f, self.kind):
                out.append(f)
        return out

    def isomorphisms(self, dom, cod):
        if dom.n != cod.n or len(dom.edges) != len(cod.edges):
            return []
        out = []
        for images in itertools.permutations(range(cod.n)):
            f = GraphMap(dom, cod, images)
            if is_morphism(f, "full"):
                out.append(f)
        return out

    @lru_cache(maxsize=None)
    def _sub_inclusions(self, obj, coarse=False):
        """(sub, inclusion) pairs according to the kind's subobject notion.

        With coarse=True only induced subgraphs are produced; this is the
        right quotient for vertex-determined predicates, where verdicts
        do not depend on which ear edges are kept."""
        out = []
        verts = range(obj.n)
        for r in range(obj.n + 1):
            for s in itertools.combinations(verts, r):
                pos = {v: i for i, v in enumerate(s)}
                induced = [norm_edge(pos[u], pos[v]) for u, v in obj.edges
                           if u in pos and v in pos]
                if self.kind == "sub" and not coarse:
                    for k in range(len(induced) + 1):
                        for chosen in itertools.combinations(induced, k):
                            sub = Graph.make(r, chosen)
                            out.append((sub, GraphMap(sub, obj, s)))
                else:
                    sub = Graph.make(r, induced)
                    out.append((sub, GraphMap(sub, obj, s)))
        return out

    def subobjects(self, obj, coarse=False):
        if self.kind == "hom":
            raise UnsupportedCategoryError("subobjects are for the embedding kinds")
        return self._sub_inclusions(obj, coarse)

    def generated(self, obj, elems):
        """Induced subgraph on the given vertices (image closure)."""
        s = tuple(sorted(set(elems)))
        pos = {v: i for i, v in enumerate(s)}
        induced = [norm_edge(pos[u], pos[v]) for u, v in obj.edges
                   if u in pos and v in pos]
        sub = Graph.make(len(s), induced)
        return sub, GraphMap(sub, obj, s)

    def corestrict(self, f, incl):
        pos = {v: i for i, v in enumerate(incl.images)}
        try:
            images = tuple(pos[f(v)] for v in range(f.dom.n))
        except KeyError:
            raise FincatError("image does not factor through the subobject")
        g = GraphMap(f.dom, incl.dom, images)
        if not is_morphism(g, self.kind if self.kind != "hom" else "hom"):
            raise FincatError("corestriction leaves the morphism class")
        return g

    def _ambient_pushout(self, span):
        cached = self._pushout_cache.get(span)
        if cached is not None:
            return cached
        out = self._ambient_pushout_build(span)
        self._pushout_cache[span] = out
        return out

    def _ambient_pushout_build(self, span):
        f, g = span.left, span.right
        b_n, c_n = f.cod.n, g.cod.n
        parent = list(range(b_n + c_n))  # 0..b_n-1 from B, then C

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(f.dom.n):
            ra, rb = find(f(a)), find(b_n + g(a))
            if ra != rb:
                parent[rb] = ra

        index = {}
        for x in range(b_n + c_n):
            root = find(x)
            if root not in index:
                index[root] = len(index)
        left_images = tuple(index[find(b)] for b in range(b_n))
        right_images = tuple(index[find(b_n + c)] for c in range(c_n))
        edges = set()
        for u, v in f.cod.edges:
            if left_images[u] != left_images[v]:
                edges.add(norm_edge(left_images[u], left_images[v]))
        for u, v in g.cod.edges:
            if right_images[u] != right_images[v]:
                edges.add(norm_edge(right_images[u], right_images[v]))
        apex = Graph(len(index), frozenset(edges))
        left = GraphMap(f.cod, apex, left_images)
        right = GraphMap(g.cod, apex, right_images)

        def mediate(cospan):
            u, v = cospan.left, cospan.right
            if u.dom != f.cod or v.dom != g.cod:
                raise NonCommutingCoconeError("cocone legs do not match the span ears")
            hom = GraphCategory("hom")
            if hom.compose(u, f) != hom.compose(v, g):
                raise NonCommutingCoconeError("cocone does not commute over the span")
            values = [None] * apex.n
            for b in range(b_n):
                values[left_images[b]] = u(b)
            for c in range(c_n):
                values[right_images[c]] = v(c)
            m = GraphMap(apex, u.cod, tuple(values))
            if not is_morphism(m, "hom"):
                raise NonCommutingCoconeError("cocone is not a homomorphism target")
            return m

        return PushoutResult(apex, left, right, span, mediate)

    def pushout(self, span):
        """Pushout in the ambient homomorphism category.  For subgraph
        embeddings the legs stay in the class; full embeddings are not
        closed under pushouts, so the full kind refuses."""
        if self.kind == "full":
            raise UnsupportedCategoryError(
                "full embeddings are not closed under pushouts; use free_amalgam")
        return self._ambient_pushout(span)

    def free_amalgam(self, span):
        """Vertex pushout with exactly the edges coming from the ears (no
        fresh cross-edges); its legs stay in every embedding kind."""
        po = self._ambient_pushout(span)
        square = CommutingSquare(span, Cospan(po.left_inj, po.right_inj))
        if not (self.in_class(po.left_inj) and self.in_class(po.right_inj)):
            raise FincatError("free amalgam legs left the morphism class")
        return square

    def candidate_amalgams(self, span):
        """The free amalgam, and for embedding kinds also its completion
        with every fresh cross-pair filled in (legs stay in the class:
        the added edges have one endpoint outside each ear image)."""
        free = self.free_amalgam(span)
        if self.kind == "hom":
            return [free]
        p, q = free.cospan.left, free.cospan.right
        f = span.left
        im_b = set(p.images)
        im_c = set(q.images)
        im_a = {p(f(x)) for x in range(f.dom.n)}
        fresh_cross = {norm_edge(u, v)
                       for u in im_b - im_a for v in im_c - im_a if u != v}
        if not fresh_cross:
            return [free]
        apex = free.apex
        full_apex = Graph(apex.n, apex.edges | frozenset(fresh_cross))
        complete = CommutingSquare(
            span, Cospan(GraphMap(p.dom, full_apex, p.images),
                         GraphMap(q.dom, full_apex, q.images)))
        return [free, complete]

    def squares(self, bound, coarse=False):
        if self.kind == "hom":
            raise UnsupportedCategoryError("square enumeration is for embedding kinds")
        for apex in self.objects(bound):
            subs = self._sub_inclusions(apex, coarse)
            for ear_b, incl_b in subs:
                for ear_c, incl_c in subs:
                    for base, incl_a in self._common_subobjects(
                            apex, ear_b, incl_b, ear_c, incl_c, coarse):
                        left = self.corestrict(incl_a, incl_b)
                        right = self.corestrict(incl_a, incl_c)
                        yield CommutingSquare(Span(left, right), Cospan(incl_b, incl_c))

    def _common_subobjects(self, apex, ear_b, incl_b, ear_c, incl_c, coarse=False):
        """Subobjects of the apex landing in both ears (base candidates)."""
        common_verts = sorted(set(incl_b.images) & set(incl_c.images))
        eb = {edge_image(incl_b, e) for e in ear_b.edges}
        ec = {edge_image(incl_c, e) for e in ear_c.edges}
        common_edges = sorted(eb & ec)
        for r in range(len(common_verts) + 1):
            for vs in itertools.combinations(common_verts, r):
                pos = {v: i for i, v in enumerate(vs)}
                avail = [e for e in common_edges if e[0] in pos and e[1] in pos]
                if self.kind == "sub" and not coarse:
                    edge_choices = [
                        [norm_edge(pos[u], pos[v]) for u, v in chosen]
                        for k in range(len(avail) + 1)
                        for chosen in itertools.combinations(avail, k)
                    ]
                else:
                    # base kept maximal: all edges shared by the two ears
                    edge_choices = [[norm_edge(pos[u], pos[v]) for u, v in avail]]
                for chosen in edge_choices:
                    base = Graph.make(r, chosen)
                    yield base, GraphMap(base, apex, vs)

    def spans(self, bound):
        """Spans up to isomorphism: legs are deduplicated modulo the
        automorphisms of their ear (postcomposing a leg with an ear
        automorphism gives an isomorphic span)."""
        if self.kind == "hom":
            raise UnsupportedCategoryError("span enumeration is for embedding kinds")
        objs = self.objects(bound)
        for base in objs:
            legs = []
            for ear in objs:
                auts = [tuple(a.images) for a in self.isomorphisms(ear, ear)]
                seen = set()
                for f in self.morphisms(base, ear):
                    key = min(tuple(a[v] for v in f.images) for a in auts)
                    if key not in seen:
                        seen.add(key)
                        legs.append(f)
            for left in legs:
                for right in legs:
                    yield Span(left, right)

    def square_key(self, square):
        """Canonical isomorphism invariant of a square: minimum over apex
        relabellings of the apex edges together with the relabelled leg
        data (vertex images and ear edge images)."""
        p, q = square.cospan.left, square.cospan.right
        f = square.span.left
        apex = square.apex
        pb = tuple(p.images)
        qb = tuple(q.images)
        ab = tuple(p(f(x)) for x in range(f.dom.n))
        eb = tuple(sorted(edge_image(p, e) for e in p.dom.edges))
        ec = tuple(sorted(edge_image(q, e) for e in q.dom.edges))
        best = None
        for perm in itertools.permutations(range(apex.n)):
            key = (
                tuple(sorted(norm_edge(perm[u], perm[v]) for u, v in apex.edges)),
                tuple(perm[v] for v in pb),
                tuple(sorted(norm_edge(perm[u], perm[v]) for u, v in eb)),
                tuple(perm[v] for v in qb),
                tuple(sorted(norm_edge(perm[u], perm[v]) for u, v in ec)),
                tuple(perm[v] for v in ab),
            )
            if best is None or key < best:
                best = key
        return (apex.n,) + best

    def subobject_meet(self, incl1, incl2):
        """Meet of two subobjects of a common graph: shared vertices, and
        for the sub kind the shared chosen edges."""
        if incl1.cod != incl2.cod:
            raise FincatError("subobjects of different graphs")
        verts = sorted(set(incl1.images) & set(incl2.images))
        pos = {v: i for i, v in enumerate(verts)}
        e1 = {edge_image(incl1, e) for e in incl1.dom.edges}
        e2 = {edge_image(incl2, e) for e in incl2.dom.edges}
        edges = [norm_edge(pos[u], pos[v]) for u, v in e1 & e2
                 if u in pos and v in pos]
        sub = Graph.make(len(verts), edges)
        return sub, GraphMap(sub, incl1.cod, tuple(verts))

    @lru_cache(maxsize=None)
    def _normalize_span_cached(self, span):
        f, g = span.left, span.right
        base, ear_b, ear_c = f.dom, f.cod, g.cod
        best = None
        for sigma in itertools.permutations(range(base.n)):
            inv_sigma = _inverse_perm(sigma)
            base_edges = tuple(sorted(norm_edge(sigma[u], sigma[v])
                                      for u, v in base.edges))
            sides = []
            for ear, leg in ((ear_b, f), (ear_c, g)):
                side_best = None
                for tau in itertools.permutations(range(ear.n)):
                    key = (
                        tuple(sorted(norm_edge(tau[u], tau[v]) for u, v in ear.edges)),
                        tuple(tau[leg(x)] for x in inv_sigma),
                    )
                    if side_best is None or key < side_best[0]:
                        side_best = (key, tau)
                sides.append(side_best)
            key = (base.n, base_edges, ear_b.n, sides[0][0], ear_c.n, sides[1][0])
            if best is None or key < best[0]:
                best = (key, sigma, sides[0][1], sides[1][1])
        _, sigma, tau_b, tau_c = best
        inv_sigma = _inverse_perm(sigma)
        base_c = Graph(base.n, frozenset(norm_edge(sigma[u], sigma[v])
                                         for u, v in base.edges))
        ears = []
        for ear, leg, tau in ((ear_b, f, tau_b), (ear_c, g, tau_c)):
            inv_tau = _inverse_perm(tau)
            ear_c_obj = Graph(ear.n, frozenset(norm_edge(tau[u], tau[v])
                                               for u, v in ear.edges))
            leg_c = GraphMap(base_c, ear_c_obj,
                             tuple(tau[leg(inv_sigma[i])] for i in range(base.n)))
            carry = GraphMap(ear_c_obj, ear, inv_tau)
            ears.append((leg_c, carry))
        canonical = Span(ears[0][0], ears[1][0])
        return canonical, ears[0][1], ears[1][1]

    def normalize_span(self, span):
        """Relabel a span to a canonical representative of its isomorphism
        class.  Returns (canonical_span, beta, gamma) with beta, gamma the
        ear relabellings carrying the canonical span onto the given one;
        an amalgam (p, q) transports to (p.beta, q.gamma)."""
        return self._normalize_span_cached(span)

    def connect(self, apex1, apex2, pairs):
        """Glue two apexes along matched vertices.

        Returns (E, h1, h2) with class-valid legs satisfying h1(x) = h2(y)
        for (x, y) in pairs, or None.  For subgraph embeddings the target
        may acquire extra edges; full embeddings must agree exactly on the
        matched part, since both legs reflect edges."""
        if self.kind == "hom":
            raise UnsupportedCategoryError("connect is for the embedding kinds")
        mapping = {}
        hit = {}
        for x, y in pairs:
            if mapping.get(x, y) != y or hit.get(y, x) != x:
                return None
            mapping[x] = y
            hit[y] = x
        if self.kind == "full":
            for x1 in mapping:
                for x2 in mapping:
                    if x1 < x2 and apex1.has_edge(x1, x2) != apex2.has_edge(
                            mapping[x1], mapping[x2]):
                        return None
        fresh = [x for x in range(apex1.n) if x not in mapping]
        labels = {x: apex2.n + i for i, x in enumerate(fresh)}
        images1 = tuple(mapping.get(x, labels.get(x)) for x in range(apex1.n))
        edges = set(apex2.edges)
        for u, v in apex1.edges:
            edges.add(norm_edge(images1[u], images1[v]))
        apex = Graph(apex2.n + len(fresh), frozenset(edges))
        h1 = GraphMap(apex1, apex, images1)
        h2 = GraphMap(apex2, apex, tuple(range(apex2.n)))
        if not (self.in_class(h1) and self.in_class(h2)):
            return None
        return apex, h1, h2

    def cocone_class_key(self, square):
        """Complete connectedness invariant over a fixed span.

        Subgraph embeddings: the vertex-collision pattern alone (apex
        edges can always be added on the witness side).  Full embeddings:
        also the cross-edge pattern between ear images, since both legs
        reflect edges; edges within one ear image equal that ear's edges
        for every amalgam of the span, so they never distinguish."""
        p, q = square.cospan.left, square.cospan.right
        collide = frozenset((x, y)
                            for x in range(p.dom.n) for y in range(q.dom.n)
                            if p(x) == q(y))
        if self.kind != "full":
            return collide
        apex = square.apex
        cross = frozenset((x, y)
                          for x in range(p.dom.n) for y in range(q.dom.n)
                          if apex.has_edge(p(x), q(y)))
        return (collide, cross)

    def paired_iso(self, apex1, apex2, pairs):
        """Is the pair-determined vertex map an isomorphism of apexes?"""
        if apex1.n != apex2.n:
            return False
        mapping = {}
        hit = {}
        for x, y in pairs:
            if mapping.get(x, y) != y or hit.get(y, x) != x:
                return False
            mapping[x] = y
            hit[y] = x
        if len(mapping) != apex1.n:
            return False
        f = GraphMap(apex1, apex2, tuple(mapping[x] for x in range(apex1.n)))
        return is_morphism(f, "full")

    def describe(self, value):
        if isinstance(value, Graph):
            return {"vertices": value.n, "edges": sorted(map(list, value.edges))}
        if isinstance(value, GraphMap):
            return {"dom": self.describe(value.dom), "cod": self.describe(value.cod),
                    "images": list(value.images)}
        return repr(value)


def graph_from_json(doc):
    """Parse {"vertices": n, "edges": [[u, v], ...]}."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    return Graph.make(doc["vertices"], [tuple(e) for e in doc["edges"]])


GRAPH_HOM = GraphCategory("hom")
GRAPH_SUB = GraphCategory("sub")
GRAPH_FULL = GraphCategory("full")

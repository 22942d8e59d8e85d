"""Finite-dimensional vector spaces over a prime field F_p.

Objects carry just a dimension (size means dimension throughout this
module: carriers have p^dim elements and would explode otherwise).
Morphisms are matrices with entries mod p; subspace bookkeeping goes
through row-reduced echelon bases, which are canonical.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from ..errors import BoundExceededError, FincatError, NonCommutingCoconeError
from .base import Category, CommutingSquare, Cospan, PushoutResult, Span


def _mod_inv(a, p):
    return pow(a, p - 2, p)


def rref(rows, p):
    """Row-reduced echelon form; returns (rows, pivot_columns), zero rows dropped."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = _mod_inv(rows[rank][col] % p, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col] % p
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return [tuple(r) for r in rows[:rank]], pivots


def mat_mul(a, b, p):
    """Matrix product a . b (a: m x k rows, b: k x n rows)."""
    if a and b and len(a[0]) != len(b):
        raise FincatError("matrix shapes do not compose")
    n = len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) % p for j in range(n))
        for i in range(len(a))
    )


def mat_vec(a, x, p):
    return tuple(sum(row[j] * x[j] for j in range(len(x))) % p for row in a)


def span_members(basis, p):
    """All vectors in the span of the given basis rows."""
    if not basis:
        return frozenset()
    width = len(basis[0])
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = tuple(sum(c * row[j] for c, row in zip(coeffs, basis)) % p
                  for j in range(width))
        out.add(v)
    return frozenset(out)


def coordinates(basis, target, p):
    """Express target in an RREF basis (rows); None if outside the span."""
    residue = list(target)
    coords = []
    for row in basis:
        pivot = next(j for j, x in enumerate(row) if x)
        c = residue[pivot] % p
        coords.append(c)
        residue = [(r - c * x) % p for r, x in zip(residue, row)]
    return tuple(coords) if not any(residue) else None


@dataclass(frozen=True)
class Vec:
    dim: int
    p: int = 2


@dataclass(frozen=True)
class LinMap:
    dom: Vec
    cod: Vec
    matrix: tuple  # cod.dim rows of dom.dim entries

    @staticmethod
    def make(dom, cod, matrix):
        if dom.p != cod.p:
            raise FincatError("mixed characteristics")
        rows = tuple(tuple(x % dom.p for x in row) for row in matrix)
        if len(rows) != cod.dim or any(len(r) != dom.dim for r in rows):
            raise FincatError("matrix shape does not match the declared spaces")
        return LinMap(dom, cod, rows)

    def __call__(self, x):
        return mat_vec(self.matrix, x, self.dom.p)

    @property
    def rank(self):
        return len(rref(self.matrix, self.dom.p)[0]) if self.matrix else 0

    @property
    def injective(self):
        return self.rank == self.dom.dim


@lru_cache(maxsize=None)
def subspaces(dim, p=2):
    """All subspaces of F_p^dim as canonical RREF basis tuples."""
    zero = (tuple(),)
    found = {(): tuple()}
    frontier = [tuple()]
    vectors = list(itertools.product(range(p), repeat=dim))
    while frontier:
        nxt = []
        for basis in frontier:
            members = span_members(basis, p) if basis else {tuple([0] * dim)}
            for v in vectors:
                if any(v) and v not in members:
                    new_basis, _ = rref(list(basis) + [v], p)
                    key = tuple(new_basis)
                    if key not in found:
                        found[key] = key
                        nxt.append(key)
        frontier = nxt
    return sorted(found.values(), key=lambda b: (len(b), b))


def subspace_meet(basis_u, basis_v, dim, p=2):
    """Intersection of two subspaces, as an RREF basis."""
    members = span_members(basis_u, p) & span_members(basis_v, p) if basis_u and basis_v \
        else frozenset()
    rows = [v for v in sorted(members) if any(v)]
    return tuple(rref(rows, p)[0]) if rows else tuple()


class VecCategory(Category):
    """kind "inj": injective linear maps; kind "all": every linear map."""

    MORPHISM_CAP = 1 << 16

    def __init__(self, kind="inj", p=2):
        if kind not in ("inj", "all"):
            raise FincatError(f"unknown vector category kind {kind!r}")
        self.kind = kind
        self.p = p
        self.name = f"vec{p}-{kind}"
        self._subobject_cache = {}
        self._normalize_cache = {}
        self._pushout_cache = {}

    def objects(self, max_size):
        return [Vec(d, self.p) for d in range(max_size + 1)]

    def size(self, obj):
        return obj.dim

    def elements(self, obj):
        return list(itertools.product(range(obj.p), repeat=obj.dim))

    def generators(self, obj):
        return [tuple(1 if j == i else 0 for j in range(obj.dim))
                for i in range(obj.dim)]

    def identity(self, obj):
        rows = tuple(tuple(1 if i == j else 0 for j in range(obj.dim))
                     for i in range(obj.dim))
        return LinMap.make(obj, obj, rows)

    def compose(self, g, f):
        if f.cod != g.dom:
            raise FincatError("endpoints do not match")
        mid = f.cod.dim
        rows = tuple(
            tuple(sum(g.matrix[i][t] * f.matrix[t][j] for t in range(mid)) % self.p
                  for j in range(f.dom.dim))
            for i in range(g.cod.dim)
        )
        return LinMap.make(f.dom, g.cod, rows)

    def apply(self, f, x):
        return f(x)

    def in_class(self, f):
        return self.kind == "all" or f.injective

    def morphisms(self, dom, cod):
        count = self.p ** (dom.dim * cod.dim)
        if count > self.MORPHISM_CAP:
            raise BoundExceededError(f"{count} matrices exceed the enumeration cap")
        out = []
        for flat in itertools.product(range(self.p), repeat=dom.dim * cod.dim):
            rows = tuple(tuple(flat[i * dom.dim:(i + 1) * dom.dim])
                         for i in range(cod.dim))
            f = LinMap.make(dom, cod, rows)
            if self.in_class(f):
                out.append(f)
        return out

    def isomorphisms(self, dom, cod):
        if dom.dim != cod.dim:
            return []
        return [f for f in VecCategory("all", self.p).morphisms(dom, cod)
                if f.rank == dom.dim]

    def _inclusion(self, basis, ambient):
        sub = Vec(len(basis), self.p)
        rows = tuple(tuple(basis[j][i] for j in range(len(basis)))
                     for i in range(ambient.dim))
        return sub, LinMap.make(sub, ambient, rows)

    def subobjects(self, obj, coarse=False):
        cached = self._subobject_cache.get(obj)
        if cached is None:
            cached = [self._inclusion(basis, obj)
                      for basis in subspaces(obj.dim, self.p)]
            self._subobject_cache[obj] = cached
        return cached

    def generated(self, obj, elems):
        rows = [v for v in elems if any(v)]
        basis, _ = rref(rows, self.p) if rows else ([], [])
        return self._inclusion(tuple(basis), obj)

    def corestrict(self, f, incl):
        basis = tuple(tuple(incl.matrix[i][j] for i in range(incl.cod.dim))
                      for j in range(incl.dom.dim))
        cols = []
        for j in range(f.dom.dim):
            image = tuple(f.matrix[i][j] for i in range(f.cod.dim))
            coords = coordinates(basis, image, self.p)
            if coords is None:
                raise FincatError("image does not factor through the subspace")
            cols.append(coords)
        rows = tuple(tuple(cols[j][i] for j in range(f.dom.dim))
                     for i in range(incl.dom.dim))
        return LinMap.make(f.dom, incl.dom, rows)

    def pushout(self, span):
        """Direct sum of the ears modulo the antidiagonal image of the base;
        dimension = dim B + dim C - dim A for injective spans."""
        cached = self._pushout_cache.get(span)
        if cached is not None:
            return cached
        out = self._pushout(span)
        self._pushout_cache[span] = out
        return out

    def _pushout(self, span):
        f, g = span.left, span.right
        b, c = f.cod.dim, g.cod.dim
        n = b + c
        relation_rows = []
        for j in range(f.dom.dim):
            fcol = [f.matrix[i][j] for i in range(b)]
            gcol = [(-g.matrix[i][j]) % self.p for i in range(c)]
            relation_rows.append(tuple(fcol + gcol))
        rel_basis, pivots = rref(relation_rows, self.p)
        nonpivots = [j for j in range(n) if j not in pivots]
        apex = Vec(len(nonpivots), self.p)

        def reduce_vec(x):
            x = list(x)
            for row, piv in zip(rel_basis, pivots):
                coef = x[piv] % self.p
                if coef:
                    x = [(xi - coef * ri) % self.p for xi, ri in zip(x, row)]
            return x

        def quotient(x):
            red = reduce_vec(x)
            return tuple(red[j] for j in nonpivots)

        def embed(offset, dim_part):
            cols = []
            for j in range(dim_part):
                e = [0] * n
                e[offset + j] = 1
                cols.append(quotient(e))
            rows = tuple(tuple(cols[j][i] for j in range(dim_part))
                         for i in range(apex.dim))
            return rows

        left = LinMap.make(f.cod, apex, embed(0, b))
        right = LinMap.make(g.cod, apex, embed(b, c))

        def mediate(cospan):
            u, v = cospan.left, cospan.right
            if u.dom != f.cod or v.dom != g.cod:
                raise NonCommutingCoconeError("cocone legs do not match the span ears")
            if mat_mul(u.matrix, f.matrix, self.p) != mat_mul(v.matrix, g.matrix, self.p):
                raise NonCommutingCoconeError("cocone does not commute over the span")
            cols = []
            for idx in nonpivots:
                section = [0] * n
                section[idx] = 1
                ub = mat_vec(u.matrix, section[:b], self.p)
                vc = mat_vec(v.matrix, section[b:], self.p)
                cols.append(tuple((x + y) % self.p for x, y in zip(ub, vc)))
            rows = tuple(tuple(cols[j][i] for j in range(apex.dim))
                         for i in range(u.cod.dim))
            return LinMap.make(apex, u.cod, rows)

        return PushoutResult(apex, left, right, span, mediate)

    def free_amalgam(self, span):
        po = self.pushout(span)
        return CommutingSquare(span, Cospan(po.left_inj, po.right_inj))

    def squares(self, bound, coarse=False):
        """Subspace-triple squares: apex F_p^d, ears U and V, base inside
        the intersection.  Injective squares are classified by these."""
        for d in range(bound + 1):
            ambient = Vec(d, self.p)
            all_subs = subspaces(d, self.p)
            for basis_u in all_subs:
                ear_b, incl_b = self._inclusion(basis_u, ambient)
                for basis_v in all_subs:
                    ear_c, incl_c = self._inclusion(basis_v, ambient)
                    meet = subspace_meet(basis_u, basis_v, d, self.p)
                    meet_members = sorted(span_members(meet, self.p)) if meet else []
                    for basis_w in _subspaces_inside(meet, meet_members, self.p):
                        base, incl_a = self._inclusion(basis_w, ambient)
                        yield CommutingSquare(
                            Span(self.corestrict(incl_a, incl_b),
                                 self.corestrict(incl_a, incl_c)),
                            Cospan(incl_b, incl_c),
                        )

    def spans(self, bound):
        """Standard inclusions per dimension triple: injective spans are
        rigid up to isomorphism."""
        for a in range(bound + 1):
            for b in range(a, bound + 1):
                for c in range(a, bound + 1):
                    base = Vec(a, self.p)
                    left = LinMap.make(base, Vec(b, self.p),
                                       tuple(tuple(1 if i == j else 0 for j in range(a))
                                             for i in range(b)))
                    right = LinMap.make(base, Vec(c, self.p),
                                        tuple(tuple(1 if i == j else 0 for j in range(a))
                                              for i in range(c)))
                    yield Span(left, right)

    def square_key(self, square):
        """Complete isomorphism invariant of an injective square: ambient
        dimension plus the dimensions of the ear images, their meet, and
        the base image (the stabilizer of a subspace pair induces every
        automorphism of the intersection)."""
        p, q = square.cospan.left, square.cospan.right
        basis_u = [tuple(p.matrix[i][j] for i in range(p.cod.dim))
                   for j in range(p.dom.dim)]
        basis_v = [tuple(q.matrix[i][j] for i in range(q.cod.dim))
                   for j in range(q.dom.dim)]
        u, _ = rref(basis_u, self.p) if basis_u else ([], [])
        v, _ = rref(basis_v, self.p) if basis_v else ([], [])
        meet = subspace_meet(tuple(u), tuple(v), square.apex.dim, self.p)
        return (square.apex.dim, len(u), len(v), len(meet),
                square.base.dim)

    def subobject_meet(self, incl1, incl2):
        if incl1.cod != incl2.cod:
            raise FincatError("subobjects of different spaces")
        basis1 = [tuple(incl1.matrix[i][j] for i in range(incl1.cod.dim))
                  for j in range(incl1.dom.dim)]
        basis2 = [tuple(incl2.matrix[i][j] for i in range(incl2.cod.dim))
                  for j in range(incl2.dom.dim)]
        meet = subspace_meet(tuple(rref(basis1, self.p)[0]),
                             tuple(rref(basis2, self.p)[0]),
                             incl1.cod.dim, self.p)
        return self._inclusion(meet, incl1.cod)

    def _complete_to_basis(self, columns, dim):
        """An invertible matrix whose first columns are the given ones."""
        rows = [tuple(col) for col in columns]
        chosen = list(rows)
        for i in range(dim):
            e = tuple(1 if j == i else 0 for j in range(dim))
            if len(rref(chosen + [e], self.p)[0]) > len(rref(chosen, self.p)[0]):
                chosen.append(e)
        return tuple(tuple(chosen[j][i] for j in range(dim)) for i in range(dim))

    def normalize_span(self, span):
        cached = self._normalize_cache.get(span)
        if cached is None:
            cached = self._normalize_span(span)
            self._normalize_cache[span] = cached
        return cached

    def _normalize_span(self, span):
        """Carry a span of injections onto the standard-inclusion span of
        its dimension triple (injective spans are rigid up to isomorphism).
        Returns (canonical_span, beta, gamma) as for the other categories."""
        f, g = span.left, span.right
        a, b, c = f.dom.dim, f.cod.dim, g.cod.dim
        beta = LinMap.make(Vec(b, self.p), f.cod, self._complete_to_basis(
            [[f.matrix[i][j] for i in range(b)] for j in range(a)], b))
        gamma = LinMap.make(Vec(c, self.p), g.cod, self._complete_to_basis(
            [[g.matrix[i][j] for i in range(c)] for j in range(a)], c))
        std = lambda rows_n, cols_n: LinMap.make(
            Vec(cols_n, self.p), Vec(rows_n, self.p),
            tuple(tuple(1 if i == j else 0 for j in range(cols_n))
                  for i in range(rows_n)))
        canonical = Span(std(b, a), std(c, a))
        return canonical, beta, gamma

    def connect(self, apex1, apex2, pairs):
        """Glue two spaces along matched vectors.

        The constraints h1(x) = h2(y) for (x, y) in pairs admit injective
        linear legs into a common space iff a combination of the x's
        vanishes exactly when the matching combination of the y's does.
        Unconstrained directions of apex1 go to fresh coordinates."""
        lefts = [tuple(x) for x, _ in pairs]
        rights = [tuple(y) for _, y in pairs]
        left_elim = _Eliminator(self.p)
        right_elim = _Eliminator(self.p)
        both_elim = _Eliminator(self.p)
        vecs, targets = [], []
        for x, y in zip(lefts, rights):
            gained_left = left_elim.add(x)
            gained_right = right_elim.add(y)
            gained_both = both_elim.add(x + y)
            # a dependency on one side must be a dependency on the other
            if not (gained_left == gained_right == gained_both):
                return None
            if gained_left:
                vecs.append(x)
                targets.append(y)
        rank_left = len(vecs)
        extra = apex1.dim - rank_left
        apex = Vec(apex2.dim + extra, self.p)

        def unit(i, d):
            return tuple(1 if j == i else 0 for j in range(d))

        targets = [y + (0,) * extra for y in targets]
        fresh = 0
        for i in range(apex1.dim):
            e = unit(i, apex1.dim)
            if left_elim.add(e):
                vecs.append(e)
                targets.append((0,) * apex2.dim + unit(fresh, extra))
                fresh += 1
        rows = linear_extension(vecs, targets, self.p) if vecs else tuple(
            tuple() for _ in range(apex.dim))
        h1 = LinMap.make(apex1, apex, rows)
        h2 = LinMap.make(apex2, apex,
                         tuple(tuple(1 if i == j else 0 for j in range(apex2.dim))
                               for i in range(apex.dim)))
        if not h1.injective:
            return None
        for x, y in pairs:
            if h1(x) != h2(y):
                return None
        return apex, h1, h2

    def cocone_class_key(self, square):
        """Complete connectedness invariant over a fixed span: the kernel
        of the stacked leg matrix [p | q].  A combination of ear vectors
        vanishes in one amalgam exactly when it vanishes in a connected
        one, and that relation determines the leg-induced gluing."""
        p, q = square.cospan.left, square.cospan.right
        stacked = tuple(tuple(p.matrix[i]) + tuple(q.matrix[i])
                        for i in range(square.apex.dim))
        return nullspace(stacked, p.dom.dim + q.dom.dim, self.p)

    def paired_iso(self, apex1, apex2, pairs):
        if apex1.dim != apex2.dim:
            return False
        out = self.connect(apex1, apex2, pairs)
        if out is None:
            return False
        apex, h1, _ = out
        return apex.dim == apex2.dim and h1.rank == apex2.dim

    def describe(self, value):
        if isinstance(value, Vec):
            return {"dim": value.dim, "p": value.p}
        if isinstance(value, LinMap):
            return {"p": self.p, "dom": value.dom.dim, "cod": value.cod.dim,
                    "matrix": [list(r) for r in value.matrix]}
        return repr(value)


def nullspace(rows, width, p):
    """Canonical (RREF) basis of the kernel of the matrix with the given
    rows, acting on column vectors of the given width."""
    red, pivots = rref(rows, p) if rows else ([], [])
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for j in free:
        vec = [0] * width
        vec[j] = 1
        for row, piv in zip(red, pivots):
            vec[piv] = (-row[j]) % p
        basis.append(tuple(vec))
    return tuple(rref(basis, p)[0]) if basis else tuple()


class _Eliminator:
    """Incremental Gaussian elimination: add(vec) reduces the vector
    against the rows held so far and reports whether it added rank."""

    def __init__(self, p):
        self.p = p
        self.rows = {}  # pivot column -> reduced row

    def add(self, vec):
        vec = list(vec)
        for col, row in self.rows.items():
            c = vec[col] % self.p
            if c:
                vec = [(a - c * b) % self.p for a, b in zip(vec, row)]
        for col, value in enumerate(vec):
            if value % self.p:
                inv = _mod_inv(value % self.p, self.p)
                self.rows[col] = tuple((a * inv) % self.p for a in vec)
                return True
        return False


def linear_extension(vecs, images, p):
    """The matrix sending basis vector vecs[t] to images[t].

    vecs must be a basis of its ambient space (square, full rank); rows of
    the result are indexed by the image coordinates.
    """
    n = len(vecs)
    m = len(images[0]) if images else 0
    aug = [list(vecs[t]) + [1 if s == t else 0 for s in range(n)] for t in range(n)]
    red, pivots = rref(aug, p)
    if len(red) != n or pivots != list(range(n)):
        raise FincatError("linear_extension needs a basis")
    cols = []
    for i in range(n):
        row = red[i]  # left part is the i-th unit vector
        combo = row[n:]
        cols.append(tuple(
            sum(combo[t] * images[t][j] for t in range(n)) % p for j in range(m)))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(m))


def _subspaces_inside(basis, members, p):
    """All subspaces of the span of `basis` (given its member list)."""
    if not basis:
        return [tuple()]
    found = {tuple()}
    frontier = [tuple()]
    while frontier:
        nxt = []
        for current in frontier:
            have = span_members(current, p) if current else {members[0]}
            for v in members:
                if any(v) and v not in have:
                    new_basis, _ = rref(list(current) + [v], p)
                    key = tuple(new_basis)
                    if key not in found:
                        found.add(key)
                        nxt.append(key)
        frontier = nxt
    return sorted(found, key=lambda b: (len(b), b))


def lin_map_from_json(doc):
    """Parse {"p": 2, "dom": d1, "cod": d2, "matrix": [[...], ...]}."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    p = doc.get("p", 2)
    return LinMap.make(Vec(doc["dom"], p), Vec(doc["cod"], p), doc["matrix"])


VEC2_INJ = VecCategory("inj", 2)
VEC2_ALL = VecCategory("all", 2)

"""Finite categories given by explicit composition tables.

Objects and morphisms are opaque names; composition is a lookup table.
Everything here is exhaustively checkable: category laws, monomorphisms,
section/retraction pairs, and the hom-set structure embedding that turns
an object M into a relational structure whose universe is the set of
morphisms into M from a chosen family of "small" objects.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import CompositionError, FincatError
from .structures import FinStructure


@dataclass(frozen=True)
class TableMorphism:
    name: str
    dom: str
    cod: str


@dataclass
class FinCategory:
    """A finite category: objects, named morphisms, and a composition table."""

    objects: list
    morphisms: dict = field(default_factory=dict)  # name -> TableMorphism
    table: dict = field(default_factory=dict)      # (g name, f name) -> name of g.f
    identities: dict = field(default_factory=dict)  # object -> morphism name

    def hom(self, dom, cod):
        return [m for m in self.morphisms.values() if m.dom == dom and m.cod == cod]

    def identity(self, obj):
        return self.morphisms[self.identities[obj]]

    def compose(self, g, f):
        """Return g after f; endpoints must match."""
        if f.cod != g.dom:
            raise CompositionError(f"cannot compose {g.name} after {f.name}: "
                                   f"{f.name} ends at {f.cod}, {g.name} starts at {g.dom}")
        return self.morphisms[self.table[(g.name, f.name)]]

    def all_morphisms(self):
        return list(self.morphisms.values())

    def validate(self):
        """Exhaustively check identity and associativity laws.

        Returns a list of human-readable violations (empty iff the table is
        a genuine category).
        """
        problems = []
        for obj in self.objects:
            if obj not in self.identities:
                problems.append(f"object {obj!r} has no identity morphism")
        for m in self.morphisms.values():
            if m.dom in self.identities:
                i = self.identity(m.dom)
                if self.table.get((m.name, i.name)) != m.name:
                    problems.append(f"identity law fails: {m.name} . id_{m.dom} != {m.name}")
            if m.cod in self.identities:
                i = self.identity(m.cod)
                if self.table.get((i.name, m.name)) != m.name:
                    problems.append(f"identity law fails: id_{m.cod} . {m.name} != {m.name}")
        for f in self.morphisms.values():
            for g in self.morphisms.values():
                if g.dom != f.cod:
                    continue
                if (g.name, f.name) not in self.table:
                    problems.append(f"missing composite {g.name} . {f.name}")
                    continue
                gf = self.compose(g, f)
                if gf.dom != f.dom or gf.cod != g.cod:
                    problems.append(f"composite {g.name} . {f.name} has wrong endpoints")
                for h in self.morphisms.values():
                    if h.dom != g.cod:
                        continue
                    if (h.name, g.name) not in self.table:
                        continue
                    left = self.compose(self.compose(h, g), f)
                    right = self.compose(h, self.compose(g, f))
                    if left != right:
                        problems.append(
                            f"associativity fails on ({h.name}, {g.name}, {f.name})")
        return problems


def compose(category, g, f):
    return category.compose(g, f)


def is_mono(f, category):
    """True iff f . g1 = f . g2 forces g1 = g2 over all enumerated homs."""
    for obj in category.objects:
        arrows = category.hom(obj, f.dom)
        for g1, g2 in itertools.combinations(arrows, 2):
            if category.compose(f, g1) == category.compose(f, g2):
                return False
    return True


def section_retraction_pairs(a, b, category):
    """All (i: a -> b, r: b -> a) with r . i = id_a."""
    ident = category.identity(a)
    pairs = []
    for i in category.hom(a, b):
        for r in category.hom(b, a):
            if category.compose(r, i) == ident:
                pairs.append((i, r))
    return pairs


def poset_category(elements, leq_pairs):
    """Category of a poset: one morphism a -> b whenever a <= b.

    `leq_pairs` may be any generating relation; the reflexive-transitive
    closure is taken, and antisymmetry is checked.
    """
    elements = list(elements)
    below = {e: {e} for e in elements}
    for a, b in leq_pairs:
        if a not in below or b not in below:
            raise FincatError(f"leq pair ({a!r}, {b!r}) mentions unknown element")
        below[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in elements:
            extra = set()
            for b in below[a]:
                extra |= below[b]
            if not extra <= below[a]:
                below[a] |= extra
                changed = True
    for a in elements:
        for b in below[a]:
            if a != b and a in below[b]:
                raise FincatError(f"leq is not antisymmetric on ({a!r}, {b!r})")

    cat = FinCategory(objects=list(elements))
    for a in elements:
        for b in below[a]:
            name = f"{a}->{b}"
            cat.morphisms[name] = TableMorphism(name, a, b)
            if a == b:
                cat.identities[a] = name
    for f in cat.morphisms.values():
        for g in cat.morphisms.values():
            if g.dom == f.cod:
                cat.table[(g.name, f.name)] = f"{f.dom}->{g.cod}"
    return cat


def category_from_json(doc):
    """Load {"objects": [...], "homs": [{"dom","cod","name"},...], "compose": [[g,f,gf],...]}.

    Identities are inferred from the table: for each object, the morphism
    that composes as a two-sided unit.
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    cat = FinCategory(objects=list(doc["objects"]))
    for h in doc["homs"]:
        m = TableMorphism(h["name"], h["dom"], h["cod"])
        if m.name in cat.morphisms:
            raise FincatError(f"duplicate morphism name {m.name!r}")
        cat.morphisms[m.name] = m
    for g, f, gf in doc.get("compose", []):
        cat.table[(g, f)] = gf
    for obj in cat.objects:
        for cand in cat.hom(obj, obj):
            is_unit = all(
                cat.table.get((m.name, cand.name)) == m.name
                for m in cat.morphisms.values() if m.dom == obj
            ) and all(
                cat.table.get((cand.name, m.name)) == m.name
                for m in cat.morphisms.values() if m.cod == obj
            )
            if is_unit:
                cat.identities[obj] = cand.name
                break
    return cat


def hom_embed(category, small, target):
    """Structure on the morphisms from `small` objects into `target`.

    Universe: every g: s -> target with s in `small`.  One unary relation
    per small object marking the morphisms with that domain.  One unary
    function per morphism f: s0 -> s1 between small objects, acting by
    precomposition g |-> g . f on morphisms with domain s1 and fixing
    everything else; functions are stored as their binary graphs, so the
    result is purely relational and ordinary homomorphisms are exactly the
    maps commuting with the marked functions.

    Returns (structure, universe) where universe[i] is the morphism named
    by element i.
    """
    universe = []
    for s in small:
        universe.extend(sorted(category.hom(s, target), key=lambda m: m.name))
    index = {m: i for i, m in enumerate(universe)}

    relations = {}
    for s in small:
        relations[f"dom_{s}"] = (1, [(index[m],) for m in universe if m.dom == s])
    for s0 in small:
        for s1 in small:
            for f in category.hom(s0, s1):
                graph = []
                for g in universe:
                    if g.dom == s1:
                        graph.append((index[g], index[category.compose(g, f)]))
                    else:
                        graph.append((index[g], index[g]))
                relations[f"pre_{f.name}"] = (2, graph)
    return FinStructure.make(len(universe), relations), universe


def _structure_maps(category, small, src, dst):
    """All maps E(src) -> E(dst) preserving the marked relations and functions."""
    struct_src, univ_src = hom_embed(category, small, src)
    struct_dst, univ_dst = hom_embed(category, small, dst)
    slots = []
    for g in univ_src:
        slots.append([i for i, h in enumerate(univ_dst) if h.dom == g.dom])
    found = []
    for assignment in itertools.product(*slots) if slots else [()]:
        ok = True
        for name, arity, table in struct_src.relations:
            if arity != 2:
                continue
            _, dst_table = struct_dst.relation(name)
            for x, y in table:
                if (assignment[x], assignment[y]) not in dst_table:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(assignment)
    return found, univ_src, univ_dst


def check_embedding_full_faithful(category, small=None):
    """Verify the hom-set embedding is functorial, faithful, and full.

    Checks, over all pairs of objects in `small` (default: all objects):
      * the category laws themselves (a corrupted table is reported here),
      * functoriality of precomposition data,
      * faithfulness: distinct morphisms give distinct structure maps,
      * fullness: every relation-preserving map arises from a morphism.

    Returns a dict report with a boolean verdict and a witness per failure.
    """
    if small is None:
        small = list(category.objects)
    report = {"verdict": True, "failures": []}

    law_problems = category.validate()
    if law_problems:
        report["verdict"] = False
        report["failures"].extend({"kind": "category-law", "witness": p} for p in law_problems)
        return report

    for src in small:
        for dst in small:
            maps, univ_src, univ_dst = _structure_maps(category, small, src, dst)
            arrows = category.hom(src, dst)
            images = {}
            for u in arrows:
                img = tuple(univ_dst.index(category.compose(u, g)) for g in univ_src)
                if img in images:
                    report["verdict"] = False
                    report["failures"].append({
                        "kind": "not-faithful",
                        "witness": f"{images[img]} and {u.name} induce the same map "
                                   f"E{src} -> E{dst}",
                    })
                images[img] = u.name
            for m in maps:
                if m not in images:
                    report["verdict"] = False
                    report["failures"].append({
                        "kind": "not-full",
                        "witness": f"structure map {m} from E{src} to E{dst} "
                                   f"arises from no morphism",
                    })
    return report

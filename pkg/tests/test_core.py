"""Table-driven finite categories: laws, monos, sections, hom embedding."""

import itertools

import pytest

from fincatlab.core import (category_from_json, check_embedding_full_faithful,
                            compose, hom_embed, is_mono, poset_category,
                            section_retraction_pairs)
from fincatlab.errors import CompositionError, FincatError
from fincatlab.structures import homomorphisms


def chain(n):
    names = [str(i) for i in range(n)]
    return poset_category(names, [(names[i], names[i + 1]) for i in range(n - 1)])


def test_poset_category_laws_exhaustive():
    for n in range(1, 5):
        assert chain(n).validate() == []


def test_compose_identities():
    cat = chain(3)
    f = cat.morphisms["0->1"]
    assert compose(cat, cat.identity("1"), f) == f
    assert compose(cat, f, cat.identity("0")) == f


def test_compose_three_chain_unique_hom():
    cat = chain(3)
    ab, bc = cat.morphisms["0->1"], cat.morphisms["1->2"]
    # oracle: the hom-set 0 -> 2 of a chain poset has exactly one element
    homs = cat.hom("0", "2")
    assert len(homs) == 1
    assert compose(cat, bc, ab) == homs[0]


def test_compose_endpoint_mismatch():
    cat = chain(3)
    with pytest.raises(CompositionError):
        compose(cat, cat.morphisms["0->1"], cat.morphisms["0->1"])


def test_associativity_on_all_enumerated_triples():
    cat = chain(4)
    ms = cat.all_morphisms()
    assert len(ms) <= 30
    for f in ms:
        for g in ms:
            if g.dom != f.cod:
                continue
            for h in ms:
                if h.dom != g.cod:
                    continue
                assert compose(cat, compose(cat, h, g), f) == \
                    compose(cat, h, compose(cat, g, f))


def test_poset_morphisms_are_mono():
    cat = chain(4)
    for m in cat.all_morphisms():
        assert is_mono(m, cat)


def _set_category_json(carriers):
    """Finite-set category on the given carriers, as a composition table."""
    objects = {f"s{i}": c for i, c in enumerate(carriers)}
    homs = []
    for a, ca in objects.items():
        for b, cb in objects.items():
            for images in itertools.product(cb, repeat=len(ca)):
                homs.append({"name": f"{a}>{b}:{images}", "dom": a, "cod": b,
                             "images": images})
    table = []
    for f in homs:
        for g in homs:
            if g["dom"] != f["cod"]:
                continue
            fa = dict(zip(objects[f["dom"]], f["images"]))
            ga = dict(zip(objects[g["dom"]], g["images"]))
            gf = tuple(ga[fa[x]] for x in objects[f["dom"]])
            table.append([g["name"], f["name"],
                          f"{f['dom']}>{g['cod']}:{gf}"])
    doc = {"objects": list(objects),
           "homs": [{k: h[k] for k in ("name", "dom", "cod")} for h in homs],
           "compose": table}
    return category_from_json(doc), objects


def test_is_mono_matches_injectivity_in_set_table():
    cat, objects = _set_category_json([(0,), (0, 1)])
    assert cat.validate() == []
    for m in cat.all_morphisms():
        images = eval(m.name.split(":")[1])
        injective = len(set(images)) == len(images)
        # oracle: brute-force left-cancellation over raw image tuples
        assert is_mono(m, cat) == injective


def test_constant_map_not_mono():
    cat, _ = _set_category_json([(0,), (0, 1)])
    constant = cat.morphisms["s1>s0:(0, 0)"]
    assert not is_mono(constant, cat)


def test_section_retraction_identity_always_present():
    cat = chain(3)
    for obj in cat.objects:
        pairs = section_retraction_pairs(obj, obj, cat)
        ident = cat.identity(obj)
        assert (ident, ident) in pairs


def test_section_retraction_two_pairs_for_point_into_pair():
    cat, _ = _set_category_json([(0,), (0, 1)])
    pairs = section_retraction_pairs("s0", "s1", cat)
    # oracle: i has two choices of image, r: {0,1} -> {0} is unique, and
    # r . i = id always holds
    assert len(pairs) == 2


def test_section_retraction_empty_for_strict_poset():
    cat = chain(2)
    assert section_retraction_pairs("0", "1", cat) == []


def test_retraction_and_mono_is_iso():
    # a retraction that is also a mono is an isomorphism: exhaustively check
    # in the small set-category table
    cat, objects = _set_category_json([(0,), (0, 1)])
    for a in cat.objects:
        for b in cat.objects:
            for i, r in section_retraction_pairs(a, b, cat):
                if is_mono(r, cat):
                    assert cat.compose(i, r) == cat.identity(b)


def test_hom_embed_universe_size():
    for n in range(1, 5):
        cat = chain(n)
        small = list(cat.objects)
        for target in cat.objects:
            structure, universe = hom_embed(cat, small, target)
            expected = sum(len(cat.hom(s, target)) for s in small)
            assert structure.universe == expected == len(universe)


def test_hom_embed_two_chain_example():
    cat = chain(2)
    structure, universe = hom_embed(cat, ["0", "1"], "1")
    assert structure.universe == 2


def test_hom_embed_marks_domains():
    cat = chain(3)
    structure, universe = hom_embed(cat, ["0", "1", "2"], "2")
    for i, m in enumerate(universe):
        assert structure.holds(f"dom_{m.dom}", (i,))


def test_hom_embed_precomposition_identity_clause():
    cat = chain(2)
    structure, universe = hom_embed(cat, ["0", "1"], "1")
    f = cat.morphisms["0->1"]
    _, graph = structure.relation(f"pre_{f.name}")
    for i, m in enumerate(universe):
        if m.dom == "1":
            expected = universe.index(cat.compose(m, f))
        else:
            expected = i  # elements outside the domain marker stay fixed
        assert (i, expected) in graph


def test_full_faithful_on_small_posets():
    diamond = poset_category("abcd", [("a", "b"), ("a", "c"),
                                      ("b", "d"), ("c", "d")])
    for cat in (chain(1), chain(3), diamond):
        assert check_embedding_full_faithful(cat)["verdict"]


def test_full_faithful_catches_corrupted_table():
    doc = {
        "objects": ["X"],
        "homs": [{"name": "id", "dom": "X", "cod": "X"},
                 {"name": "u", "dom": "X", "cod": "X"}],
        # corrupted: u . id should be u
        "compose": [["id", "id", "id"], ["id", "u", "u"],
                    ["u", "id", "id"], ["u", "u", "u"]],
    }
    report = check_embedding_full_faithful(category_from_json(doc))
    assert not report["verdict"]
    assert report["failures"]


def test_structure_homomorphisms_of_embedding_correspond_to_morphisms():
    cat = chain(3)
    small = list(cat.objects)
    src, univ_src = hom_embed(cat, small, "1")
    dst, univ_dst = hom_embed(cat, small, "2")
    arrows = cat.hom("1", "2")
    images = set()
    for u in arrows:
        images.add(tuple(univ_dst.index(cat.compose(u, g)) for g in univ_src))
    found = {h for h in homomorphisms(src, dst)}
    assert images <= found
    assert len(found) == len(arrows)  # fullness: nothing else arises


def test_poset_antisymmetry_rejected():
    with pytest.raises(FincatError):
        poset_category(["a", "b"], [("a", "b"), ("b", "a")])

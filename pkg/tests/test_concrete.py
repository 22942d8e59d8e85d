"""Concrete categories: pushouts, mediators, morphism classes, loaders."""

import itertools

import pytest

from fincatlab.cats import (GRAPH_FULL, GRAPH_HOM, GRAPH_SUB, SET_ALL,
                            SET_MONO, VEC2_ALL, VEC2_INJ)
from fincatlab.cats.base import Cospan, Span
from fincatlab.cats.graphs import Graph, GraphMap, graph_from_json, is_morphism
from fincatlab.cats.sets import SetMap, set_map_from_json
from fincatlab.cats.vect import LinMap, Vec, lin_map_from_json
from fincatlab.errors import (NonCommutingCoconeError, UnsupportedCategoryError)


def inc(s, t):
    return SetMap.make(s, t, {x: x for x in s})


def test_set_pushout_gluing_along_point():
    span = Span(inc({0}, {0, 1}), inc({0}, {0, 2}))
    po = SET_MONO.pushout(span)
    assert len(po.apex) == 3
    assert SET_MONO.apply(po.left_inj, 0) == SET_MONO.apply(po.right_inj, 0)


def test_graph_pushout_disjoint_union_over_empty():
    k1 = Graph.make(1, [])
    empty = Graph.make(0, [])
    leg = GraphMap(empty, k1, ())
    po = GRAPH_SUB.pushout(Span(leg, leg))
    assert po.apex.n == 2 and not po.apex.edges


def test_vec_pushout_dimension_formula():
    one, two = Vec(1), Vec(2)
    f = LinMap.make(one, two, ((1,), (0,)))
    g = LinMap.make(one, two, ((0,), (1,)))
    po = VEC2_INJ.pushout(Span(f, g))
    assert po.apex.dim == 3  # dim B + dim C - dim A


def test_vec_pushout_dimensions_exhaustive():
    # rank formula over all standard injective spans with dims <= 3
    for a in range(0, 3):
        for b in range(a, 4):
            for c in range(a, 4):
                span = next(s for s in VEC2_INJ.spans(3)
                            if s.base.dim == a and s.left.cod.dim == b
                            and s.right.cod.dim == c)
                assert VEC2_INJ.pushout(span).apex.dim == b + c - a


def test_mediator_of_pushout_itself_is_identity():
    span = Span(inc({0}, {0, 1}), inc({0}, {0, 2}))
    po = SET_MONO.pushout(span)
    m = po.mediator(Cospan(po.left_inj, po.right_inj))
    assert m == SET_MONO.identity(po.apex)


def test_mediator_collapsing_cocone_not_injective():
    span = Span(inc({0}, {0, 1}), inc({0}, {0, 2}))
    po = SET_MONO.pushout(span)
    cocone = Cospan(inc({0, 1}, {0, 1, 2}),
                    SetMap.make({0, 2}, {0, 1, 2}, {0: 0, 2: 1}))
    m = po.mediator(cocone)
    assert not m.injective  # the cocone identifies 1 and 2


def test_mediator_rejects_non_commuting_cocone():
    span = Span(inc({0}, {0, 1}), inc({0}, {0, 2}))
    po = SET_MONO.pushout(span)
    bad = Cospan(inc({0, 1}, {0, 1, 2}),
                 SetMap.make({0, 2}, {0, 1, 2}, {0: 1, 2: 2}))
    with pytest.raises(NonCommutingCoconeError):
        po.mediator(bad)


def test_graph_mediator_into_edge():
    empty = Graph.make(0, [])
    k1 = Graph.make(1, [])
    leg = GraphMap(empty, k1, ())
    po = GRAPH_SUB.pushout(Span(leg, leg))
    edge = Graph.make(2, [(0, 1)])
    cocone = Cospan(GraphMap(k1, edge, (0,)), GraphMap(k1, edge, (1,)))
    m = po.mediator(cocone)
    assert is_morphism(m, "sub")  # injective map from the edgeless apex


def test_pushout_universal_property_exhaustive_small_sets():
    # every commuting cocone admits exactly one mediator (carriers <= 4)
    span = Span(inc({0}, {0, 1}), inc({0}, {0, 2}))
    po = SET_MONO.pushout(span)
    for apex in SET_MONO.objects(4):
        for u in SET_MONO.morphisms(frozenset({0, 1}), apex):
            for v in SET_MONO.morphisms(frozenset({0, 2}), apex):
                if u(0) != v(0):
                    continue
                m = po.mediator(Cospan(u, v))
                candidates = [
                    h for h in SET_ALL.morphisms(po.apex, apex)
                    if SET_ALL.compose(h, po.left_inj) == u
                    and SET_ALL.compose(h, po.right_inj) == v]
                assert candidates == [m]


def test_mediator_injectivity_iff_images_meet_in_base():
    # grounds the effective-square characterization, by brute force
    span = Span(inc({0}, {0, 1}), inc({0}, {0, 2}))
    po = SET_MONO.pushout(span)
    for apex in SET_MONO.objects(4):
        for u in SET_MONO.morphisms(frozenset({0, 1}), apex):
            for v in SET_MONO.morphisms(frozenset({0, 2}), apex):
                if u(0) != v(0):
                    continue
                meets_in_base = u.image & v.image == {u(0)}
                assert po.mediator(Cospan(u, v)).injective == meets_in_base


def test_graph_morphism_kinds():
    edge = Graph.make(2, [(0, 1)])
    two = Graph.make(2, [])
    ident = GraphMap(edge, edge, (0, 1))
    for kind in ("hom", "sub", "full"):
        assert is_morphism(ident, kind)
    collapse = GraphMap(edge, Graph.make(1, []), (0, 0))
    assert is_morphism(collapse, "hom")     # reflexive convention
    assert not is_morphism(collapse, "sub")  # injectivity fails
    include = GraphMap(two, edge, (0, 1))
    assert is_morphism(include, "sub")
    assert not is_morphism(include, "full")  # edge not reflected


def test_hom_enumerate_counts():
    # injections {0,1} -> {0,1,2}: 3 * 2 = 6
    assert len(SET_MONO.morphisms(frozenset({0, 1}), frozenset({0, 1, 2}))) == 6
    # full embeddings K2 -> K3: all ordered vertex pairs of K3
    k2 = Graph.make(2, [(0, 1)])
    k3 = Graph.make(3, [(0, 1), (0, 2), (1, 2)])
    assert len(GRAPH_FULL.morphisms(k2, k3)) == 6
    # linear injections F2 -> F2^2: one per nonzero vector
    assert len(VEC2_INJ.morphisms(Vec(1), Vec(2))) == 3


def test_monos_match_injectivity_sets():
    # monos in the all-functions category coincide with injections
    for dom_size in range(3):
        for cod_size in range(3):
            dom, cod = frozenset(range(dom_size)), frozenset(range(cod_size))
            for f in SET_ALL.morphisms(dom, cod):
                assert SET_ALL.is_mono(f, 3) == f.injective


def test_monos_match_subgraph_embeddings():
    for dom in GRAPH_HOM.objects(3):
        for cod in GRAPH_HOM.objects(3):
            for f in GRAPH_HOM.morphisms(dom, cod):
                assert GRAPH_HOM.is_mono(f, 3) == f.injective


def test_monos_match_injective_linear_maps():
    for d1 in range(3):
        for d2 in range(3):
            for f in VEC2_ALL.morphisms(Vec(d1), Vec(d2)):
                assert VEC2_ALL.is_mono(f, 2) == f.injective


def test_graph_pushout_vertex_count():
    for base in GRAPH_SUB.objects(2):
        for span in (s for s in GRAPH_SUB.spans(3) if s.base == base):
            po = GRAPH_SUB.pushout(span)
            expected = span.left.cod.n + span.right.cod.n - base.n
            assert po.apex.n == expected


def test_full_embeddings_have_no_pushout_but_a_free_amalgam():
    k1 = Graph.make(1, [])
    leg = GraphMap(Graph.make(0, []), k1, ())
    with pytest.raises(UnsupportedCategoryError):
        GRAPH_FULL.pushout(Span(leg, leg))
    square = GRAPH_FULL.free_amalgam(Span(leg, leg))
    assert square.apex.n == 2 and not square.apex.edges


def test_json_loaders_round_trip():
    f = set_map_from_json({"dom": [0, 1], "cod": [0, 1, 2],
                           "map": {"0": 1, "1": 2}})
    assert f(0) == 1 and f(1) == 2
    g = graph_from_json({"vertices": 3, "edges": [[0, 1], [2, 1]]})
    assert g.has_edge(1, 2)
    h = lin_map_from_json({"p": 2, "dom": 1, "cod": 2, "matrix": [[1], [1]]})
    assert h((1,)) == (1, 1)


def test_canonical_graphs_unique_up_to_iso():
    from fincatlab.cats.graphs import canonical_reps
    # counts of graphs up to isomorphism on n vertices
    assert [len(canonical_reps(n)) for n in range(5)] == [1, 1, 2, 4, 11]

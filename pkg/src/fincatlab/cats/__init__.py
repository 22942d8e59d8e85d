"""Built-in concrete categories with bounded enumeration and pushouts."""

from .base import Amalgam, Category, CommutingSquare, Cospan, PushoutResult, Span
from .graphs import (GRAPH_FULL, GRAPH_HOM, GRAPH_SUB, Graph, GraphCategory,
                     GraphMap, graph_from_json, is_morphism)
from .sets import SET_ALL, SET_MONO, SetCategory, SetMap, set_map_from_json
from .vect import (VEC2_ALL, VEC2_INJ, LinMap, Vec, VecCategory,
                   lin_map_from_json)

BUILTIN_CATEGORIES = {
    "set-all": SET_ALL,
    "set-mono": SET_MONO,
    "graph-hom": GRAPH_HOM,
    "graph-sub": GRAPH_SUB,
    "graph-full": GRAPH_FULL,
    "vec": VEC2_INJ,
    "vec-all": VEC2_ALL,
}


def category_by_name(name):
    from ..errors import UnsupportedCategoryError
    if name not in BUILTIN_CATEGORIES:
        raise UnsupportedCategoryError(
            f"unknown category {name!r}; choose from {sorted(BUILTIN_CATEGORIES)}")
    return BUILTIN_CATEGORIES[name]


__all__ = [
    "Amalgam", "Category", "CommutingSquare", "Cospan", "PushoutResult", "Span",
    "Graph", "GraphCategory", "GraphMap", "graph_from_json", "is_morphism",
    "SetCategory", "SetMap", "set_map_from_json",
    "LinMap", "Vec", "VecCategory", "lin_map_from_json",
    "SET_ALL", "SET_MONO", "GRAPH_HOM", "GRAPH_SUB", "GRAPH_FULL",
    "VEC2_INJ", "VEC2_ALL", "BUILTIN_CATEGORIES", "category_by_name",
]

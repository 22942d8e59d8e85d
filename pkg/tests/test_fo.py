"""Quantifier-free model theory: formulas, types, order property, forking,
indiscernibles, axiomatization."""

import itertools
import random

import pytest

from fincatlab.errors import ClosureViolationError, FincatError, FormulaParseError
from fincatlab.fo import (count_types, cut_types_demo, equivalence_structure,
                          evaluate, extract_indiscernibles, graph_structures,
                          is_independent, is_transitive, linear_order, parse,
                          pure_equality, qf_type, order_property_witness,
                          sym_reflexive_structures, triangle_free,
                          universal_class_axiomatize)
from fincatlab.fo.forking import check_forking_properties, equivalence_rich_bases
from fincatlab.structures import FinStructure, structure_from_json


# -- formulas ---------------------------------------------------------------


def test_parse_and_evaluate_atoms():
    lin = linear_order(3)
    assert evaluate(parse("x=x"), (1,), lin)
    assert evaluate(parse("lt(x,y)"), (0, 2), lin)
    assert not evaluate(parse("lt(x,y) & !(x=y)"), (2, 2), lin)


def test_parse_precedence_and_parens():
    lin = linear_order(3)
    phi = parse("lt(x,y) | lt(y,x) & x=y")   # & binds tighter than |
    assert evaluate(phi, (0, 1), lin)
    psi = parse("(lt(x,y) | lt(y,x)) & x=y")
    assert not evaluate(psi, (0, 1), lin)


def test_parse_errors_carry_position():
    with pytest.raises(FormulaParseError) as err:
        parse("lt(x,")
    assert err.value.position > 0
    with pytest.raises(FormulaParseError):
        parse("lt(x,y) &")


def test_evaluate_arity_mismatch():
    with pytest.raises(FincatError):
        evaluate(parse("lt(x,y)"), (0,), linear_order(3))


# -- types ------------------------------------------------------------------


def test_fresh_elements_same_type_pure_equality():
    eq = pure_equality(5)
    params = {0, 1}
    assert qf_type((3,), params, eq) == qf_type((4,), params, eq)


def test_gaps_separate_types_linear_order():
    lin = linear_order(5)
    params = {1, 3}
    assert qf_type((0,), params, lin) != qf_type((2,), params, lin)
    assert qf_type((2,), params, lin) != qf_type((4,), params, lin)


def test_parameter_tuples_determined_by_type():
    lin = linear_order(4)
    params = {0, 1, 2, 3}
    for a in range(4):
        for b in range(4):
            if a != b:
                assert qf_type((a,), params, lin) != qf_type((b,), params, lin)


def test_count_types_examples():
    assert count_types({0, 1, 2}, pure_equality(6), 1) == 4
    assert count_types(set(range(5)), linear_order(5), 1) == 5
    assert count_types(set(), pure_equality(6), 1) == 1


def test_count_types_monotone_in_parameters():
    lin = linear_order(4)
    subsets = [set(c) for r in range(5)
               for c in itertools.combinations(range(4), r)]
    for small in subsets:
        for big in subsets:
            if small <= big:
                assert count_types(small, lin, 1) <= count_types(big, lin, 1)


def test_qf_type_soundness_sampled_formulas():
    # equal canonical type implies equal truth for random formulas over
    # the parameters; 1000 samples with a fixed seed
    rng = random.Random(2024)
    lin = linear_order(6)
    params = {1, 4}
    pool = [(a,) for a in range(6)]
    types = {t: qf_type(t, params, lin) for t in pool}

    def random_formula():
        # random boolean combination of atoms in x and two parameter slots
        atoms = ["lt(x,p)", "lt(p,x)", "lt(x,q)", "lt(q,x)", "x=p", "x=q"]
        text = rng.choice(atoms)
        for _ in range(rng.randrange(3)):
            text = f"({text}) {rng.choice('&|')} ({rng.choice(atoms)})"
        if rng.random() < 0.4:
            text = f"!({text})"
        return parse(text, variables=("x", "p", "q"))

    for _ in range(1000):
        phi = random_formula()
        for t1 in pool:
            for t2 in pool:
                if types[t1] == types[t2]:
                    assert evaluate(phi, (t1[0], 1, 4), lin) == \
                        evaluate(phi, (t2[0], 1, 4), lin)


# -- order property ---------------------------------------------------------


def test_order_witness_linear_order():
    lin = linear_order(5)
    witness = order_property_witness(parse("lt(x,y)"), lin, 5)
    assert witness is not None
    assert [t[0] for t in witness.tuples] == [0, 1, 2, 3, 4]
    assert witness.replay(lin)


def test_order_witness_absent_pure_equality():
    eq = pure_equality(6)
    assert order_property_witness(parse("x=y"), eq, 3) is None
    assert order_property_witness(parse("!(x=y)"), eq, 3) is None


def test_order_witness_absent_equivalence():
    ev = equivalence_structure([3, 3])
    assert order_property_witness(parse("E(x,y)"), ev, 3) is None


def test_cut_types_demo_small_and_monotone():
    assert cut_types_demo(1) == 3
    assert cut_types_demo(3) == 7
    for n in range(1, 9):
        assert cut_types_demo(n) == 2 * n + 1
    for n in range(1, 8):
        assert cut_types_demo(n + 1) == cut_types_demo(n) + 2


def test_order_witness_forces_many_types():
    # a length-n order witness yields >= n+1 types over its parameters in
    # the cut extension
    for n in range(2, 7):
        ext = linear_order(2 * n + 1)
        originals = {2 * i + 1 for i in range(n)}
        witness = order_property_witness(
            parse("lt(x,y)"), ext.induced(sorted(originals)), n)
        assert witness is not None
        assert count_types(originals, ext, 1) >= n + 1


# -- bounded coheir independence ---------------------------------------------


def test_independent_tuple_from_base():
    eq = pure_equality(6)
    assert is_independent((0,), {0, 1, 2, 3}, {4}, eq, 2)
    assert is_independent((0,), {0, 1, 2, 3}, {4}, eq, 5)


def test_independent_fresh_element_spec_example():
    eq = pure_equality(6)
    assert is_independent((5,), {0, 1, 2, 3}, {4}, eq, 2)
    assert not is_independent((5,), {0, 1, 2, 3}, {4}, eq, 5)


def test_independent_monotone_in_s_and_antitone_in_partner_set():
    eq = pure_equality(6)
    base = {0, 1, 2}
    for tup in [(3,), (4,), (0,)]:
        for others in [set(), {3}, {3, 4}, {3, 4, 5}]:
            for s in range(1, 5):
                if is_independent(tup, base, others, eq, s):
                    for smaller_s in range(1, s):
                        assert is_independent(tup, base, others, eq, smaller_s)
                    for sub in itertools.combinations(sorted(others),
                                                      max(len(others) - 1, 0)):
                        assert is_independent(tup, base, set(sub), eq, s)


def test_forking_pure_equality_all_pass():
    report = check_forking_properties(pure_equality(6), s=2, min_base=4)
    assert report.all_pass
    assert report.rich_enough


def test_forking_linear_order_violation():
    report = check_forking_properties(linear_order(5), s=2, min_base=4)
    bad = report.violations()
    assert "symmetry" in bad or "uniqueness" in bad


def test_forking_equivalence_rich_bases_pass():
    ev = equivalence_structure([2, 2, 2])
    bases = equivalence_rich_bases(ev, 2, min_base=4)
    assert bases
    report = check_forking_properties(ev, s=2, bases=bases)
    assert report.all_pass


def test_forking_full_base_vacuous_pass():
    eq = pure_equality(5)
    report = check_forking_properties(eq, s=2, bases=[frozenset(range(5))])
    assert report.all_pass


def test_pair_exchange_consequence_pure_equality():
    # independence lets equal-typed partners swap past the tuple
    eq = pure_equality(7)
    base = frozenset({0, 1, 2, 3})
    for a in range(7):
        for b1 in range(7):
            for b2 in range(7):
                if qf_type((b1,), base, eq) != qf_type((b2,), base, eq):
                    continue
                if not is_independent((a,), base, {b1, b2}, eq, 2):
                    continue
                assert qf_type((b1, a), base, eq) == qf_type((b2, a), base, eq)


# -- indiscernibles -----------------------------------------------------------


def test_indiscernibles_constant_sequence():
    eq = pure_equality(3)
    witness = extract_indiscernibles([0, 0, 0, 0, 0], [parse("x=y")], eq, 5)
    assert witness is not None and len(witness.indices) == 5


def test_indiscernibles_distinct_elements_pure_equality():
    eq = pure_equality(5)
    witness = extract_indiscernibles([0, 1, 2, 3, 4], [parse("x=y")], eq, 5)
    assert witness is not None and len(witness.indices) == 5


def test_indiscernibles_every_six_vertex_graph_sample():
    # spot sample of the exhaustive acceptance criterion
    rng = random.Random(5)
    pairs = list(itertools.combinations(range(6), 2))
    phi = parse("E(x,y)")
    for _ in range(64):
        mask = rng.randrange(1 << 15)
        tuples = []
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                tuples += [(u, v), (v, u)]
        g = FinStructure.make(6, {"E": (2, tuples)})
        witness = extract_indiscernibles(list(range(6)), [phi], g, 3)
        assert witness is not None
        assert witness.replay([(i,) for i in range(6)], [phi], g)


def test_indiscernible_witness_replayable():
    lin = linear_order(6)
    phi = parse("lt(x,y)")
    witness = extract_indiscernibles(list(range(6)), [phi], lin, 4)
    assert witness is not None
    assert witness.patterns[str(phi)] is True


# -- universal classes --------------------------------------------------------


def test_axiomatize_triangle_free():
    result = universal_class_axiomatize(triangle_free, 3, graph_structures, 5)
    assert len(result.forbidden) == 1
    k3 = result.forbidden[0]
    assert k3.universe == 3
    _, table = k3.relation("E")
    assert len(table) == 6  # symmetric closure of the triangle
    assert result.agrees


def test_axiomatize_all_graphs_nothing_forbidden():
    result = universal_class_axiomatize(lambda s: True, 3, graph_structures, 4)
    assert result.forbidden == []
    assert result.agrees


def test_axiomatize_equivalence_like():
    result = universal_class_axiomatize(is_transitive, 3,
                                        sym_reflexive_structures, 3)
    assert len(result.forbidden) == 1
    pattern = result.forbidden[0]
    assert pattern.universe == 3 and not is_transitive(pattern)
    assert result.agrees


def test_axiomatize_rejects_non_closed_family():
    def edge_count_exactly_one(s):
        _, table = s.relation("E")
        return len(table) == 2  # one undirected edge

    with pytest.raises(ClosureViolationError):
        universal_class_axiomatize(edge_count_exactly_one, 2,
                                   graph_structures, 3)


def test_structure_json_round_trip():
    doc = {"universe": 3,
           "relations": {"lt": {"arity": 2, "tuples": [[0, 1], [0, 2], [1, 2]]}}}
    s = structure_from_json(doc)
    assert s == linear_order(3)
    assert s.to_json() == doc

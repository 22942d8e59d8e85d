"""Batch front end: loads JSON inputs, dispatches to the library, and
emits machine- or human-readable reports.

Exit status: 0 when every check passes, 1 when some check fails, 2 on
usage or parse errors.  Reports are deterministic given identical inputs,
bounds, and seed, except for the wall-time field.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__, amalgam, exhaustion, fo, independence
from .cats import BUILTIN_CATEGORIES, category_by_name
from .core import check_embedding_full_faithful, poset_category
from .errors import FincatError, FormulaParseError
from .fo.axioms import (all_graphs, graph_structures, is_transitive,
                        sym_reflexive_structures, triangle_free)
from .structures import structure_from_json


@dataclass
class CommandSpec:
    subcommand: tuple
    category: str = None
    predicate: str = None
    bound: int = 4
    ext_bound: int = None
    steps: int = None
    s: int = 2
    length: int = None
    arity: int = 1
    base: str = None
    base_size: int = None
    formula: str = None
    structure: str = None
    poset: str = None
    demo: str = None
    tuple_arg: str = None
    set_arg: str = None
    out: str = None
    seed: int = 0
    json_output: bool = False


@dataclass
class ReportDocument:
    version: str
    command: str
    checks: list = field(default_factory=list)
    elapsed_ms: int = 0
    seed: int = 0

    def add(self, name, verdict, witness=None, exhaustive=True):
        self.checks.append({"name": name, "verdict": verdict,
                            "witness": witness, "exhaustive": exhaustive})

    @property
    def all_pass(self):
        return all(c["verdict"] == "pass" for c in self.checks)

    def to_json(self):
        return {"version": self.version, "command": self.command,
                "checks": self.checks, "elapsed_ms": self.elapsed_ms,
                "seed": self.seed}

    def render_table(self):
        lines = [f"fincatlab {self.version}  [{self.command}]"]
        width = max((len(c["name"]) for c in self.checks), default=4)
        for c in self.checks:
            flag = "" if c["exhaustive"] else "  (not exhaustive)"
            lines.append(f"  {c['name']:<{width}}  {c['verdict']}{flag}")
            if c["witness"] is not None and c["verdict"] != "pass":
                lines.append(f"    witness: {json.dumps(c['witness'], default=str)}")
        lines.append(f"  elapsed: {self.elapsed_ms} ms")
        return "\n".join(lines)


def _suggest(name, pool):
    close = difflib.get_close_matches(name, sorted(pool), n=3)
    hint = f"; did you mean {', '.join(close)}?" if close else ""
    raise FincatError(f"unknown name {name!r}{hint}")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise FincatError(f"no such file: {path}")
    except json.JSONDecodeError as err:
        raise FincatError(
            f"{path}: invalid JSON at line {err.lineno}, column {err.colno}")


def _int_list(text):
    if text is None or text == "":
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise FincatError(f"expected comma-separated integers, got {text!r}")


DEFAULT_RIVALS = {
    "graph-full": ("cross-edge-free", "cross-edges-present"),
    "graph-sub": ("cross-edge-free", "effective"),
    "set-mono": ("disjoint-sets", "effective"),
    "vec": ("disjoint-subspaces", "effective"),
}

FAMILIES = {
    "triangle-free": (triangle_free, graph_structures, 5),
    "all-graphs": (all_graphs, graph_structures, 4),
    "equivalence-like": (is_transitive, sym_reflexive_structures, 3),
}


def _category(spec):
    if spec.category is None:
        raise FincatError("--category is required")
    if spec.category not in BUILTIN_CATEGORIES:
        _suggest(spec.category, BUILTIN_CATEGORIES)
    return category_by_name(spec.category)


def _run_indep(spec, report):
    cat = _category(spec)
    if spec.subcommand[1] == "suite":
        if spec.predicate is None:
            raise FincatError("--predicate is required")
        try:
            pred = independence.predicate_by_name(spec.predicate, spec.category)
        except FincatError:
            known = {"disjoint-sets", "disjoint-subspaces", "cross-edge-free",
                     "cross-edges-present", "effective", "never", "always",
                     "asymmetric", "apex-growth", "avoid-three"}
            _suggest(spec.predicate, known)
        suite = independence.run_axiom_suite(pred, cat, spec.bound)
        for check in suite.to_checks():
            report.checks.append(check)
    else:  # canonicity
        if spec.predicate:
            names = spec.predicate.split(",")
            if len(names) != 2:
                raise FincatError("canonicity needs two predicate names")
        else:
            if spec.category not in DEFAULT_RIVALS:
                raise FincatError(f"no default rival pair for {spec.category}")
            names = DEFAULT_RIVALS[spec.category]
        p1 = independence.predicate_by_name(names[0], spec.category)
        p2 = independence.predicate_by_name(names[1], spec.category)
        witness = independence.canonicity_compare(p1, p2, cat, spec.bound)
        if witness is None:
            report.add(f"canonicity:{names[0]}~{names[1]}", "pass",
                       witness={"agree_at_bound": spec.bound})
        else:
            shown = {k: v for k, v in witness.items() if k != "raw_square"}
            report.add(f"canonicity:{names[0]}~{names[1]}", "fail",
                       witness=shown)


def _run_amalg(spec, report):
    cat = _category(spec)
    sub = spec.subcommand[1]
    if sub == "check":
        for obj in cat.objects(spec.base_size if spec.base_size is not None
                               else spec.bound):
            ok, witness = amalgam.is_amalgamation_base(obj, cat, spec.bound)
            report.add(f"amalgamation-base:{cat.describe(obj)}",
                       "pass" if ok else "fail",
                       witness=None if ok else independence.describe_span(cat, witness))
    elif sub == "types":
        if spec.base_size is None:
            raise FincatError("--base-size is required")
        base = cat.objects(spec.base_size)[-1] if spec.base_size else cat.objects(0)[0]
        base = next(o for o in cat.objects(spec.base_size)
                    if cat.size(o) == spec.base_size)
        partition = amalgam.enumerate_types(base, cat, spec.bound)
        report.add("type-count", "pass",
                   witness={"base": cat.describe(base), "count": len(partition),
                            "bound": spec.bound})
    else:  # universal
        if spec.base_size is None or spec.steps is None:
            raise FincatError("--base-size and --steps are required")
        base = next(o for o in cat.objects(spec.base_size)
                    if cat.size(o) == spec.base_size)
        chain = amalgam.universal_extension_build(base, cat, spec.steps)
        sizes = [cat.size(o) for o in chain.objects]
        report.add("chain-built", "pass", witness={"sizes": sizes})
        ext_bound = spec.ext_bound or (spec.base_size + spec.steps)
        ok, witness = amalgam.is_universal_over(
            chain.top, base, cat, ext_bound,
            embedding=chain.embedding_into_top(cat))
        report.add(f"universal-over:ext_bound={ext_bound}",
                   "pass" if ok else "fail",
                   witness=None if ok else {k: cat.describe(v)
                                            for k, v in witness.items()})


def _run_exhaust(spec, report):
    sub = spec.subcommand[1]
    if sub == "run":
        demos = {"zorn", "generic", "filtration", "universal-extension"}
        if spec.demo not in demos:
            _suggest(spec.demo or "", demos)
        if spec.demo == "zorn":
            if not spec.poset:
                raise FincatError("--poset is required for the zorn demo")
            doc = _load_json(spec.poset)
            elements = list(doc["elements"])
            pairs = {tuple(p) for p in doc["leq"]}
            closure = {(a, a) for a in elements} | pairs
            changed = True
            while changed:
                changed = False
                for a, b in list(closure):
                    for c, d in list(closure):
                        if b == c and (a, d) not in closure:
                            closure.add((a, d))
                            changed = True
            demo, diagram = exhaustion.zorn_demo_run(
                elements, lambda a, b: (a, b) in closure)
            terminal = diagram.terminal
            ok = demo.is_maximal(terminal)
            report.add("zorn-full-object", "pass" if ok else "fail",
                       witness={"terminal": terminal})
            violations = diagram.verify_full()
            report.add("full-diagram-condition",
                       "pass" if not violations else "fail",
                       witness=violations or None)
        elif spec.demo == "generic":
            m = spec.bound
            demo, diagram = exhaustion.generic_demo_run(m, spec.steps)
            ok = demo.is_total(diagram.terminal)
            report.add("generic-total-function", "pass" if ok else "fail",
                       witness={"assignments": list(diagram.terminal)})
            violations = diagram.verify_full()
            report.add("full-diagram-condition",
                       "pass" if not violations else "fail",
                       witness=violations or None)
        elif spec.demo == "universal-extension":
            if not spec.structure:
                raise FincatError(
                    "--structure must point to {\"chain\": [...], \"target\": [...]}")
            doc = _load_json(spec.structure)
            out = exhaustion.demo_universal_extension(
                [frozenset(s) for s in doc["chain"]], frozenset(doc["target"]))
            report.add("target-embedded", "pass",
                       witness={"map": {str(k): v
                                        for k, v in out["embedding"].pairs}})
        else:
            raise FincatError("run the filtration demo via `exhaust club`")
    else:  # club
        if not spec.structure:
            raise FincatError("--structure must point to {\"A\": [...], \"B\": [...]}")
        doc = _load_json(spec.structure)
        demo = exhaustion.FiltrationDemo(doc["A"], doc["B"])
        out = exhaustion.full_indices(demo.chain())
        lower_union = set().union(*(set(s) for s in doc["A"])) if doc["A"] else set()
        oracle = [i for i, upper in enumerate(doc["B"])
                  if lower_union & set(upper) == set(doc["A"][i])]
        agrees = out["full"] == oracle
        report.add("full-indices", "pass" if agrees else "fail",
                   witness={"computed": out["full"], "oracle": oracle})
        report.add("closure", "pass" if out["closure_ok"] else "fail",
                   witness=out["closure_witness"])


def _delta_from_spec(spec, structure):
    if spec.formula:
        return [fo.parse(part) for part in spec.formula.split(";")]
    atoms = []
    for name, arity, _ in structure.relations:
        names = [f"x{i}" for i in range(arity)]
        atoms.append(fo.parse(f"{name}({','.join(names)})"))
    atoms.append(fo.parse("x0=x1"))
    return atoms


def _run_fo(spec, report):
    sub = spec.subcommand[1]
    if sub == "axiomatize":
        if spec.predicate not in FAMILIES:
            _suggest(spec.predicate or "", FAMILIES)
        family, ambient, default_cap = FAMILIES[spec.predicate]
        cap = spec.ext_bound or default_cap
        result = fo.universal_class_axiomatize(family, spec.bound, ambient, cap)
        report.add("axiomatize-closure", "pass")
        report.add("axiomatize-agreement",
                   "pass" if result.agrees else "fail",
                   witness={"forbidden": [s.to_json() for s in result.forbidden],
                            "mismatches": len(result.mismatches)})
        return
    if not spec.structure:
        raise FincatError("--structure is required")
    structure = structure_from_json(_load_json(spec.structure))
    if sub == "order-property":
        if not spec.formula or not spec.length:
            raise FincatError("--formula and --length are required")
        phi = fo.parse(spec.formula)
        witness = fo.order_property_witness(phi, structure, spec.length)
        report.add("order-property-witness", "pass",
                   witness={"sequence": None if witness is None
                            else [list(t) for t in witness.tuples],
                            "certified_absent": witness is None})
    elif sub == "types":
        base = _int_list(spec.base)
        count = fo.count_types(set(base), structure, spec.arity)
        report.add("type-count", "pass",
                   witness={"base": base, "arity": spec.arity, "count": count})
    elif sub == "independent":
        tup = tuple(_int_list(spec.tuple_arg))
        base = set(_int_list(spec.base))
        others = set(_int_list(spec.set_arg))
        verdict = fo.is_independent(tup, base, others, structure, spec.s)
        report.add(f"independent:s={spec.s}", "pass" if verdict else "fail",
                   witness={"tuple": list(tup), "base": sorted(base),
                            "others": sorted(others)})
    elif sub == "indiscernibles":
        seq = _int_list(spec.tuple_arg)
        if not seq:
            raise FincatError("--tuple must list the sequence elements")
        delta = _delta_from_spec(spec, structure)
        k = spec.length or 3
        witness = fo.extract_indiscernibles(seq, delta, structure, k)
        report.add("indiscernible-subsequence",
                   "pass" if witness is not None else "fail",
                   witness=None if witness is None
                   else {"indices": list(witness.indices),
                         "patterns": witness.patterns})
    else:
        raise FincatError(f"unknown fo subcommand {sub!r}")


def _run_cat(spec, report):
    if not spec.poset:
        raise FincatError("--poset is required")
    doc = _load_json(spec.poset)
    category = poset_category(doc["elements"], [tuple(p) for p in doc["leq"]])
    out = check_embedding_full_faithful(category)
    report.add("embedding-full-faithful",
               "pass" if out["verdict"] else "fail",
               witness=out["failures"] or None)


DISPATCH = {
    "indep": _run_indep,
    "amalg": _run_amalg,
    "exhaust": _run_exhaust,
    "fo": _run_fo,
    "cat": _run_cat,
}


def run(spec):
    """Execute a command spec and return the report document."""
    started = time.time()
    report = ReportDocument(__version__, " ".join(spec.subcommand),
                            seed=spec.seed)
    DISPATCH[spec.subcommand[0]](spec, report)
    report.elapsed_ms = int((time.time() - started) * 1000)
    return report


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fincatlab",
        description="finite categorical model theory workbench")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="group", required=True)

    def common(p):
        p.add_argument("--category")
        p.add_argument("--predicate")
        p.add_argument("--bound", type=int, default=4)
        p.add_argument("--ext-bound", type=int, dest="ext_bound")
        p.add_argument("--steps", type=int)
        p.add_argument("--s", type=int, default=2)
        p.add_argument("--length", type=int)
        p.add_argument("--arity", type=int, default=1)
        p.add_argument("--base")
        p.add_argument("--base-size", type=int, dest="base_size")
        p.add_argument("--formula")
        p.add_argument("--structure")
        p.add_argument("--poset")
        p.add_argument("--demo")
        p.add_argument("--tuple", dest="tuple_arg")
        p.add_argument("--set", dest="set_arg")
        p.add_argument("--out")
        p.add_argument("--seed", type=int, default=0)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", dest="json_output")
        fmt.add_argument("--table", action="store_false", dest="json_output")

    groups = {
        "indep": ["suite", "canonicity"],
        "amalg": ["check", "types", "universal"],
        "exhaust": ["run", "club"],
        "fo": ["order-property", "types", "independent", "indiscernibles",
               "axiomatize"],
        "cat": ["embed"],
    }
    for group, commands in groups.items():
        gp = sub.add_parser(group)
        gsub = gp.add_subparsers(dest="command", required=True)
        for name in commands:
            common(gsub.add_parser(name))
    return parser


def spec_from_args(args):
    return CommandSpec(
        subcommand=(args.group, args.command),
        category=args.category, predicate=args.predicate, bound=args.bound,
        ext_bound=args.ext_bound, steps=args.steps, s=args.s,
        length=args.length, arity=args.arity, base=args.base,
        base_size=args.base_size, formula=args.formula,
        structure=args.structure, poset=args.poset, demo=args.demo,
        tuple_arg=args.tuple_arg, set_arg=args.set_arg, out=args.out,
        seed=args.seed, json_output=args.json_output)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    spec = spec_from_args(args)
    try:
        report = run(spec)
    except FormulaParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except FincatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    payload = json.dumps(report.to_json(), indent=2, default=str)
    if spec.out:
        with open(spec.out, "w") as fh:
            fh.write(payload + "\n")
    if spec.json_output:
        print(payload)
    else:
        print(report.render_table())
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())

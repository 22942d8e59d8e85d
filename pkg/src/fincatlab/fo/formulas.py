"""Quantifier-free formulas: a small AST, a parser, and evaluation.

Grammar: atoms are name(v1,...,vk) and v=w; connectives !, &, | with the
usual precedence; parentheses group.  Relation names and variables are
identifiers; anything applied to arguments is a relation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FincatError, FormulaParseError


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    sub: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class QFFormula:
    root: object
    variables: tuple

    def __str__(self):
        return _render(self.root)


def _render(node):
    if isinstance(node, Rel):
        return f"{node.name}({','.join(node.args)})"
    if isinstance(node, Eq):
        return f"{node.left}={node.right}"
    if isinstance(node, Not):
        return f"!{_render(node.sub)}"
    if isinstance(node, And):
        return f"({_render(node.left)} & {_render(node.right)})"
    if isinstance(node, Or):
        return f"({_render(node.left)} | {_render(node.right)})"
    raise FincatError(f"unknown node {node!r}")


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<sym>[()&|!=,]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaParseError(f"unexpected character {text[pos]!r}", pos + 1)
        if m.group("name"):
            out.append(("name", m.group("name"), pos))
        elif m.group("sym"):
            out.append(("sym", m.group("sym"), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, text_len):
        self.tokens = tokens
        self.at = 0
        self.text_len = text_len

    def peek(self):
        return self.tokens[self.at] if self.at < len(self.tokens) else None

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok is None:
            raise FormulaParseError("unexpected end of formula", self.text_len + 1)
        if kind and tok[0] != kind or value and tok[1] != value:
            raise FormulaParseError(f"unexpected token {tok[1]!r}", tok[2] + 1)
        self.at += 1
        return tok

    def disjunction(self):
        node = self.conjunction()
        while self.peek() and self.peek()[1] == "|":
            self.take()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self):
        node = self.negation()
        while self.peek() and self.peek()[1] == "&":
            self.take()
            node = And(node, self.negation())
        return node

    def negation(self):
        if self.peek() and self.peek()[1] == "!":
            self.take()
            return Not(self.negation())
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise FormulaParseError("unexpected end of formula", self.text_len + 1)
        if tok[1] == "(":
            self.take()
            node = self.disjunction()
            self.take(value=")")
            return node
        name = self.take("name")[1]
        nxt = self.peek()
        if nxt and nxt[1] == "(":
            self.take()
            args = [self.take("name")[1]]
            while self.peek() and self.peek()[1] == ",":
                self.take()
                args.append(self.take("name")[1])
            self.take(value=")")
            return Rel(name, tuple(args))
        if nxt and nxt[1] == "=":
            self.take()
            return Eq(name, self.take("name")[1])
        where = nxt[2] + 1 if nxt else self.text_len + 1
        raise FormulaParseError(f"bare identifier {name!r}", where)


def _collect_variables(node, seen, order):
    if isinstance(node, Rel):
        names = node.args
    elif isinstance(node, Eq):
        names = (node.left, node.right)
    elif isinstance(node, Not):
        _collect_variables(node.sub, seen, order)
        return
    elif isinstance(node, (And, Or)):
        _collect_variables(node.left, seen, order)
        _collect_variables(node.right, seen, order)
        return
    else:
        raise FincatError(f"unknown node {node!r}")
    for v in names:
        if v not in seen:
            seen.add(v)
            order.append(v)


def parse(text, variables=None):
    """Parse formula text; the variable list defaults to first-occurrence
    order and may be widened explicitly (e.g. to pad unused slots)."""
    parser = _Parser(_tokenize(text), len(text))
    root = parser.disjunction()
    tok = parser.peek()
    if tok is not None:
        raise FormulaParseError(f"trailing input {tok[1]!r}", tok[2] + 1)
    seen, order = set(), []
    _collect_variables(root, seen, order)
    if variables is None:
        variables = tuple(order)
    else:
        variables = tuple(variables)
        missing = seen - set(variables)
        if missing:
            raise FincatError(f"variables {sorted(missing)} not in the declared list")
    return QFFormula(root, variables)


def evaluate(formula, values, structure):
    """Truth of the formula with values bound to its variables in order."""
    if len(values) != len(formula.variables):
        raise FincatError(
            f"formula takes {len(formula.variables)} values, got {len(values)}")
    env = dict(zip(formula.variables, values))

    def run(node):
        if isinstance(node, Rel):
            return structure.holds(node.name, tuple(env[v] for v in node.args))
        if isinstance(node, Eq):
            return env[node.left] == env[node.right]
        if isinstance(node, Not):
            return not run(node.sub)
        if isinstance(node, And):
            return run(node.left) and run(node.right)
        if isinstance(node, Or):
            return run(node.left) or run(node.right)
        raise FincatError(f"unknown node {node!r}")

    return run(formula.root)

"""Multilinear identities: parsing, validation and expansion on basis tuples.

An identity is a signed sum of fully parenthesized product trees, e.g.
``(x*y)*z - x*(y*z) + (z*y)*x - z*(y*x)``.  The root product of every
monomial is the slot where a bilinear form is plugged in when the identity is
turned into cocycle equations; all inner products use the algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from .arith import ZERO, Scalar


class IdentityError(ValueError):
    """Malformed or non-multilinear identity text."""

    def __init__(self, message: str, position: int = None, line: int = None):
        self.position = position
        self.line = line
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if position is not None:
            loc.append(f"column {position + 1}")
        super().__init__(message + (f" ({', '.join(loc)})" if loc else ""))


@dataclass(frozen=True)
class Leaf:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Node:
    left: "Tree"
    right: "Tree"

    def __str__(self):
        return f"{_wrap(self.left)}*{_wrap(self.right)}"


Tree = Union[Leaf, Node]


def _wrap(t: Tree) -> str:
    return str(t) if isinstance(t, Leaf) else f"({t})"


def leaves(t: Tree) -> List[str]:
    if isinstance(t, Leaf):
        return [t.name]
    return leaves(t.left) + leaves(t.right)


@dataclass(frozen=True)
class Identity:
    name: str
    variables: Tuple[str, ...]
    monomials: Tuple[Tuple[Fraction, Node], ...]

    @property
    def arity(self) -> int:
        return len(self.variables)

    def to_text(self) -> str:
        parts = []
        for i, (c, t) in enumerate(self.monomials):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(t) if a == 1 else f"{a}*({t})"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_text()


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-zA-Z][a-zA-Z0-9_]*)|([-+*()=]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise IdentityError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", Fraction(m.group(1)), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    # identity := ['+'|'-'] monomial (('+'|'-') monomial)* ['=' '0']
    # monomial := [number ['*']] product
    # product  := atom '*' atom | '(' product ')'
    # atom     := variable | '(' product ')'

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise IdentityError(msg, tok[2])

    def expect(self, op):
        tok = self.take()
        if tok[:2] != ("op", op):
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            self.fail(f"expected {op!r}, found {found}", tok)
        return tok

    def identity(self):
        monos = []
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        monos.append(self.monomial(sign))
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
            monos.append(self.monomial(sign))
        if self.peek()[:2] == ("op", "="):
            self.take()
            tok = self.take()
            if tok[:2] != ("num", 0):
                self.fail("only '= 0' may follow an identity", tok)
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[:2] == ("op", "*"):
                self.fail("nested products need explicit parentheses", tok)
            if tok[:2] == ("op", ")"):
                self.fail("unbalanced parentheses: unexpected ')'", tok)
            self.fail(f"unexpected {tok[1]!r}", tok)
        return monos

    def monomial(self, sign):
        coeff = Fraction(sign)
        start = self.peek()
        if start[0] == "num":
            self.take()
            coeff *= start[1]
            if self.peek()[:2] == ("op", "*"):
                self.take()
        tree = self.atom()
        if self.peek()[:2] == ("op", "*"):
            self.take()
            tree = Node(tree, self.atom())
            if self.peek()[:2] == ("op", "*"):
                self.fail("nested products need explicit parentheses")
        if not isinstance(tree, Node):
            self.fail("a monomial must be a product", start)
        return coeff, tree, start[2]

    def atom(self):
        tok = self.take()
        if tok[0] == "var":
            return Leaf(tok[1])
        if tok[:2] == ("op", "("):
            inner = self.atom()
            if self.peek()[:2] == ("op", "*"):
                self.take()
                inner = Node(inner, self.atom())
            if self.peek()[:2] == ("op", "*"):
                self.fail("nested products need explicit parentheses")
            if self.peek()[0] == "end":
                self.fail("unbalanced parentheses: missing ')'")
            self.expect(")")
            return inner
        if tok[0] == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {tok[1]!r}", tok)


def parse_identity(text: str, name: str = "") -> Identity:
    """Parse and validate a multilinear identity.

    Raises :class:`IdentityError` on syntax errors or when a monomial does not
    contain every variable exactly once.
    """
    monos = _Parser(text).identity()
    variables: List[str] = []
    for _, tree, _ in monos:
        for v in leaves(tree):
            if v not in variables:
                variables.append(v)
    for _, tree, pos in monos:
        names = leaves(tree)
        for v in variables:
            count = names.count(v)
            if count != 1:
                what = "appears twice" if count > 1 else "is missing"
                if count > 2:
                    what = f"appears {count} times"
                raise IdentityError(
                    f"identity is not multilinear: variable {v} {what} in monomial {tree}", pos)
    return Identity(name, tuple(variables), tuple((c, t) for c, t, _ in monos))


def parse_identities(text: str) -> List[Identity]:
    """Parse an identity file: ``name : expr`` per line, ``#`` comments."""
    ids = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            name, expr = (s.strip() for s in line.split(":", 1))
        else:
            name, expr = f"id{len(ids) + 1}", line
        try:
            ids.append(parse_identity(expr, name))
        except IdentityError as e:
            col = None
            if e.position is not None:
                col = raw.index(expr) + e.position
            raise IdentityError(str(e).split(" (column")[0], col, lineno) from None
    return ids


def load_identities(path) -> List[Identity]:
    return parse_identities(Path(path).read_text())


def format_identities(ids: Sequence[Identity]) -> str:
    return "".join(f"{i.name} : {i.to_text()}\n" for i in ids)


# -- expansion ---------------------------------------------------------------

def _evaluate(a, tree: Tree, env):
    if isinstance(tree, Leaf):
        return env[tree.name]
    return a.product(_evaluate(a, tree.left, env), _evaluate(a, tree.right, env))


def _env(a, ident: Identity, args):
    if len(args) != ident.arity:
        raise ValueError(f"identity {ident.name or ident} has arity {ident.arity}, got {len(args)} arguments")
    return {v: (a.basis(x) if isinstance(x, int) else x) for v, x in zip(ident.variables, args)}


def expand_plain(a, ident: Identity, args) -> Tuple[Scalar, ...]:
    """Evaluate the identity in the algebra.

    ``args`` holds 0-based basis indices or explicit elements.
    """
    env = _env(a, ident, args)
    total = [ZERO] * a.dim
    for c, tree in ident.monomials:
        val = _evaluate(a, tree, env)
        for k, x in enumerate(val):
            if not x.is_zero():
                total[k] = total[k] + c * x
    return tuple(total)


def expand_cocycle(a, ident: Identity, args) -> Tuple[Scalar, ...]:
    """Cocycle equation for one argument tuple.

    The root product of each monomial is replaced by the unknown bilinear
    form; the result is its coefficient vector over the n*n unknowns
    ``theta(e_i, e_j)``, flattened row-major.
    """
    env = _env(a, ident, args)
    n = a.dim
    coeffs = [ZERO] * (n * n)
    for c, tree in ident.monomials:
        x = _evaluate(a, tree.left, env)
        y = _evaluate(a, tree.right, env)
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            cx = c * xi
            for j, yj in enumerate(y):
                if not yj.is_zero():
                    coeffs[i * n + j] = coeffs[i * n + j] + cx * yj
    return tuple(coeffs)

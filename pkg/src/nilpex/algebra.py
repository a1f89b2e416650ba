"""Finite-dimensional algebras given by structure constants."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as iproduct
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple

from .arith import ONE, ZERO, ExpressionError, Polynomial, Scalar, parse_scalar
from .identities import Identity, expand_plain
from .linalg import Matrix, Subspace, nullspace, rank

Element = Tuple[Scalar, ...]


class AlgebraFormatError(ValueError):
    """Malformed algebra definition file."""

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        super().__init__(message + (f" ({', '.join(loc)})" if loc else ""))


class Algebra:
    """Algebra with basis e_1..e_n and product e_i e_j = sum_k c_ij^k e_k.

    Indices are 0-based in code and 1-based in text.  ``sc[i][j]`` is the
    coordinate vector of ``e_i e_j``.
    """

    def __init__(self, dim: int, sc=None, name: str = "", params: Sequence[str] = ()):
        self.dim = n = dim
        self.name = name
        self.params = tuple(params)
        if sc is None:
            sc = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        self.sc = tuple(tuple(tuple(Scalar.coerce(c) for c in sc[i][j]) for j in range(n))
                        for i in range(n))
        if any(len(self.sc[i][j]) != n for i in range(n) for j in range(n)):
            raise ValueError("structure constants have the wrong shape")
        used = set()
        for i, j, k in iproduct(range(n), repeat=3):
            used.update(self.sc[i][j][k].variables)
        missing = used - set(self.params)
        if missing:
            raise ValueError(f"undeclared parameters in structure constants: {sorted(missing)}")

    @classmethod
    def from_table(cls, dim: int, table: Mapping[Tuple[int, int], Mapping[int, object]],
                   name: str = "", params: Sequence[str] = ()) -> "Algebra":
        """Build from 1-based ``{(i, j): {k: coeff}}``; absent products are zero."""
        sc = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), rhs in table.items():
            for k, c in rhs.items():
                sc[i - 1][j - 1][k - 1] = Scalar.coerce(c)
        return cls(dim, sc, name, params)

    @classmethod
    def zero(cls, dim: int, name: str = "") -> "Algebra":
        return cls(dim, None, name)

    def basis(self, i: int) -> Element:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def element(self, coords) -> Element:
        coords = tuple(Scalar.coerce(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"element needs {self.dim} coordinates")
        return coords

    def product(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Element:
        n = self.dim
        out = [ZERO] * n
        y = [Scalar.coerce(c) for c in y]
        for i, xi in enumerate(x):
            xi = Scalar.coerce(xi)
            if xi.is_zero():
                continue
            row = self.sc[i]
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                cij = row[j]
                w = None
                for k in range(n):
                    c = cij[k]
                    if not c.is_zero():
                        if w is None:
                            w = xi * yj
                        out[k] = out[k] + w * c
        return tuple(out)

    def nonzero_products(self) -> List[Tuple[int, int, Element]]:
        return [(i, j, self.sc[i][j]) for i in range(self.dim) for j in range(self.dim)
                if any(not c.is_zero() for c in self.sc[i][j])]

    def slice(self, k: int) -> Matrix:
        """The bilinear form (i, j) -> c_ij^k."""
        n = self.dim
        return Matrix([[self.sc[i][j][k] for j in range(n)] for i in range(n)], n)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for i in range(self.dim) for j in range(self.dim)
            for a, b in zip(self.sc[i][j], other.sc[i][j]))

    def __hash__(self):
        return hash((self.dim, self.sc))

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim})"

    def to_text(self) -> str:
        return format_algebra(self)


def product(a: Algebra, x, y) -> Element:
    return a.product(x, y)


# -- identities --------------------------------------------------------------

@dataclass(frozen=True)
class IdentityFailure:
    identity: int
    args: Tuple[int, ...]
    residual: Element
    generic: bool  # residual depends on parameters: may vanish at special values

    def describe(self, ids: Sequence[Identity] = None) -> str:
        name = ids[self.identity].name if ids else f"#{self.identity}"
        args = ",".join(f"e{i + 1}" for i in self.args)
        return f"{name} at ({args}): {format_element(self.residual)}"


@dataclass(frozen=True)
class IdentityReport:
    holds: bool
    failures: Tuple[IdentityFailure, ...] = field(default=())

    @property
    def fails_for_all_parameters(self) -> bool:
        return any(not f.generic for f in self.failures)


def check_identities(a: Algebra, ids: Sequence[Identity]) -> IdentityReport:
    """Evaluate every identity on every basis tuple, in lexicographic order."""
    failures = []
    for idx, ident in enumerate(ids):
        for args in iproduct(range(a.dim), repeat=ident.arity):
            res = expand_plain(a, ident, args)
            if any(not c.is_zero() for c in res):
                generic = all(c.is_zero() or not c.is_rational() for c in res)
                failures.append(IdentityFailure(idx, args, res, generic))
    return IdentityReport(not failures, tuple(failures))


# -- annihilator and nilpotency ----------------------------------------------

def annihilator_system(a: Algebra) -> Matrix:
    """Rows of x e_i = 0 and e_i x = 0 in the coordinates of x."""
    n = a.dim
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([a.sc[t][i][k] for t in range(n)])  # (x e_i)_k
            rows.append([a.sc[i][t][k] for t in range(n)])  # (e_i x)_k
    return Matrix(rows, n)


def compute_annihilator(a: Algebra) -> Subspace:
    return nullspace(annihilator_system(a))


def power_chain(a: Algebra, limit: int = None) -> List[Subspace]:
    """A^1, A^2, ... with A^s = sum_{i+j=s} A^i A^j, until zero or ``limit``."""
    n = a.dim
    if limit is None:
        limit = 2 ** n + 1
    chain = [Subspace.full(n)]
    while chain[-1].dim and len(chain) < limit:
        s = len(chain) + 1
        bound = chain[-1].dim
        vectors: List[Element] = []
        for i in range(1, s):
            for x in chain[i - 1].basis:
                for y in chain[s - i - 1].basis:
                    p = a.product(x, y)
                    if all(c.is_zero() for c in p):
                        continue
                    if rank(vectors + [p], n) > len(vectors):
                        vectors.append(p)
                    if len(vectors) == bound:
                        break
                if len(vectors) == bound:
                    break
            if len(vectors) == bound:
                break
        chain.append(Subspace.span(vectors, n))
    return chain


def is_nilpotent(a: Algebra):
    """``(nilpotent, index)`` where index is the least s with A^s = 0."""
    chain = power_chain(a)
    if chain[-1].dim == 0:
        return True, len(chain) if a.dim else 1
    return False, None


# -- text format -------------------------------------------------------------

_SECTION_RE = re.compile(r"\[\s*([a-zA-Z_]+)\s*\]$")
_BASIS_RE = re.compile(r"e(\d+)$")


def _parse_list(value: str, lineno: int) -> List[str]:
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise AlgebraFormatError("expected a bracketed list", lineno)
    items = [s.strip().strip('"').strip("'") for s in value[1:-1].split(",")]
    return [s for s in items if s]


def _parse_linear(text: str, dim: int, params: Sequence[str], lineno: int, col: int) -> Element:
    """Parse a linear combination of e1..en with scalar coefficients."""
    try:
        s = parse_scalar(text)
    except ExpressionError as e:
        raise AlgebraFormatError(str(e).split(" at column")[0], lineno,
                                 col + (e.position or 0)) from None
    basis_names = {f"e{k + 1}" for k in range(dim)}
    for v in s.variables:
        if v not in basis_names and v not in params:
            raise AlgebraFormatError(f"unknown symbol {v!r}", lineno, col)
    if set(s.den.variables) & basis_names:
        raise AlgebraFormatError("basis vectors may not appear in a denominator", lineno, col)
    coords = [Polynomial() for _ in range(dim)]
    for m, c in s.num.terms.items():
        basis_part = [(v, e) for v, e in m if v in basis_names]
        if len(basis_part) != 1 or basis_part[0][1] != 1:
            raise AlgebraFormatError(f"right-hand side {text!r} is not linear in the basis", lineno, col)
        k = int(basis_part[0][0][1:]) - 1
        rest = tuple((v, e) for v, e in m if v not in basis_names)
        coords[k] = coords[k] + Polynomial({rest: c})
    return tuple(Scalar(c, s.den) for c in coords)


def parse_algebra(text: str) -> Algebra:
    """Parse the sectioned algebra format (``[algebra]`` then ``[product]``)."""
    section = None
    meta: Dict[str, str] = {}
    where: Dict[str, Tuple[int, int]] = {}
    products = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m:
            section = m.group(1)
            if section not in ("algebra", "product"):
                raise AlgebraFormatError(f"unknown section [{section}]", lineno, 1)
            continue
        if section is None:
            raise AlgebraFormatError("content before the [algebra] section", lineno, 1)
        if "=" not in line:
            raise AlgebraFormatError("expected 'key = value'", lineno, 1)
        lhs, rhs = line.split("=", 1)
        if section == "algebra":
            meta[lhs.strip()] = rhs.strip()
            where[lhs.strip()] = (lineno, raw.index("=") + 2 + len(rhs) - len(rhs.lstrip()))
        else:
            products.append((lhs.strip(), rhs.strip(), lineno, raw.index(rhs.strip()) + 1))
    if "dim" not in meta:
        raise AlgebraFormatError("missing 'dim' in [algebra]")
    try:
        dim = int(meta["dim"])
    except ValueError:
        raise AlgebraFormatError(f"dim must be an integer, got {meta['dim']!r}", *where["dim"]) from None
    if dim < 0:
        raise AlgebraFormatError("dim must be nonnegative", *where["dim"])
    name = meta.get("name", "").strip().strip('"').strip("'")
    params = _parse_list(meta.get("params", "[]"), where.get("params", (None,))[0])
    sc = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for lhs, rhs, lineno, col in products:
        parts = [p.strip() for p in lhs.split("*")]
        idx = []
        for p in parts:
            bm = _BASIS_RE.match(p)
            if not bm or not 1 <= int(bm.group(1)) <= dim:
                raise AlgebraFormatError(f"bad basis product {lhs!r}", lineno, 1)
            idx.append(int(bm.group(1)) - 1)
        if len(idx) != 2:
            raise AlgebraFormatError(f"bad basis product {lhs!r}", lineno, 1)
        i, j = idx
        if (i, j) in seen:
            raise AlgebraFormatError(f"product e{i + 1}*e{j + 1} defined twice", lineno, 1)
        seen.add((i, j))
        sc[i][j] = list(_parse_linear(rhs, dim, params, lineno, col))
    return Algebra(dim, sc, name, params)


def load_algebra(path) -> Algebra:
    return parse_algebra(Path(path).read_text())


def format_element(x: Sequence[Scalar], prefix: str = "e") -> str:
    """Linear combination text such as ``l*e3`` or ``2*e2 - e1``."""
    parts = []
    for k, c in enumerate(x):
        if c.is_zero():
            continue
        name = f"{prefix}{k + 1}"
        if c == ONE:
            parts.append(("+", name))
        elif c == -ONE:
            parts.append(("-", name))
        else:
            text = str(c)
            neg = False
            if c.is_polynomial():
                p = c.as_polynomial()
                if len(p.terms) == 1 and next(iter(p.terms.values())) < 0:
                    neg, text = True, str(-p)
            if c.is_polynomial() and len(c.as_polynomial().terms) == 1:
                parts.append(("-" if neg else "+", f"{text}*{name}"))
            else:
                parts.append(("+", f"({text})*{name}"))
    if not parts:
        return "0"
    out = parts[0][1] if parts[0][0] == "+" else f"-{parts[0][1]}"
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_algebra(a: Algebra) -> str:
    lines = ["[algebra]", f'name = "{a.name}"', f"dim = {a.dim}",
             f"params = [{', '.join(a.params)}]", "[product]"]
    for i, j, val in a.nonzero_products():
        lines.append(f"e{i + 1}*e{j + 1} = {format_element(val)}")
    return "\n".join(lines) + "\n"

"""Automorphism groups: defining equations, parametric families, samples.

Convention: an automorphism F sends e_i to sum_j l_ij e_j.  As a matrix it
acts on coordinate columns, so column j of the matrix is the coordinate
vector of F(e_j) and matrix entry (r, c) equals the unknown l_cr.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple

from .algebra import Algebra
from .arith import ZERO, ExpressionError, MonomialOrder, Polynomial, Scalar, parse_polynomial, poly_divmod
from .groebner import DEFAULT_MAX_DEGREE, GroebnerBasis, buchberger
from .linalg import Matrix

log = logging.getLogger(__name__)


def unknown_name(i: int, j: int, n: int) -> str:
    """Name of the unknown l_ij (0-based arguments)."""
    if n <= 9:
        return f"l{i + 1}{j + 1}"
    return f"l{i + 1}_{j + 1}"


@dataclass(frozen=True)
class Equation:
    pair: Tuple[int, int]   # (i, j), 0-based
    coord: int              # k, 0-based
    poly: Polynomial

    def label(self) -> str:
        i, j = self.pair
        return f"pair (e{i + 1},e{j + 1}) coord e{self.coord + 1}"


@dataclass(frozen=True)
class PolynomialSystem:
    unknowns: Tuple[str, ...]
    equations: Tuple[Equation, ...]
    params: Tuple[str, ...] = ()

    @property
    def polynomials(self) -> List[Polynomial]:
        return [e.poly for e in self.equations]

    def __len__(self):
        return len(self.equations)


def _unknown_matrix(n: int):
    return [[Scalar.var(unknown_name(i, j, n)) for j in range(n)] for i in range(n)]


def automorphism_equations(a: Algebra) -> PolynomialSystem:
    """F(e_i)F(e_j) - F(e_i e_j) = 0 coordinatewise, in the unknowns l_ij.

    Each equation is sum_{p,q} l_ip l_jq c_pq^k - sum_r c_ij^r l_rk; parameter
    denominators are cleared.  Identically zero equations are dropped.
    """
    n = a.dim
    names = tuple(unknown_name(i, j, n) for i in range(n) for j in range(n))
    clash = set(names) & set(a.params)
    if clash:
        raise ValueError(f"algebra parameters clash with unknowns: {sorted(clash)}")
    lam = _unknown_matrix(n)
    eqs = []
    for i in range(n):
        for j in range(n):
            lhs = a.product(lam[i], lam[j])
            for k in range(n):
                rhs = ZERO
                for r in range(n):
                    c = a.sc[i][j][r]
                    if not c.is_zero():
                        rhs = rhs + c * lam[r][k]
                val = lhs[k] - rhs
                if val.is_zero():
                    continue
                eqs.append(Equation((i, j), k, _clear_denominator(val)))
    return PolynomialSystem(names, tuple(eqs), a.params)


def _clear_denominator(s: Scalar) -> Polynomial:
    if s.is_polynomial():
        p = s.as_polynomial()
    else:
        p = s.num
    c = p.content()
    return p * (1 / c) if c != 1 else p


def groebner_of(system: PolynomialSystem, order: str = "grevlex",
                max_pairs: int = None, max_degree: int = DEFAULT_MAX_DEGREE) -> GroebnerBasis:
    """Groebner basis of an automorphism system; unknowns rank above params."""
    mo = MonomialOrder(order, system.unknowns + system.params)
    return buchberger(system.polynomials, mo, max_pairs=max_pairs, max_degree=max_degree)


# -- parametric families -----------------------------------------------------

class FamilyFormatError(ValueError):
    def __init__(self, message: str, line: int = None):
        self.line = line
        super().__init__(message + (f" (line {line})" if line is not None else ""))


@dataclass(frozen=True)
class ParametricMatrixFamily:
    entries: Matrix                     # polynomial entries in ``params``
    params: Tuple[str, ...]
    nonvanishing: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        if self.entries.nrows != self.entries.ncols:
            raise ValueError("family matrix must be square")
        for r in self.entries.rows:
            for x in r:
                if not x.is_polynomial():
                    raise ValueError(f"family entry {x} is not a polynomial")
                extra = set(x.variables) - set(self.params)
                if extra:
                    raise ValueError(f"undeclared family parameters {sorted(extra)}")

    @property
    def n(self) -> int:
        return self.entries.nrows

    def at(self, assignment: Mapping[str, object]) -> Matrix:
        return self.entries.map(lambda x: Scalar.coerce(x.evaluate(assignment)))

    @classmethod
    def identity(cls, n: int) -> "ParametricMatrixFamily":
        return cls(Matrix.identity(n), ())


def parse_family(text: str) -> ParametricMatrixFamily:
    """Family file: ``params``/``nonvanishing`` lists, then ``[matrix]`` rows."""
    params: List[str] = []
    nonvanishing_text: List[Tuple[str, int]] = []
    rows = []
    in_matrix = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "[matrix]":
            in_matrix = True
            continue
        if in_matrix:
            try:
                rows.append([Scalar.coerce(parse_polynomial(cell.strip())) for cell in line.split(",")])
            except ExpressionError as e:
                raise FamilyFormatError(str(e), lineno) from None
            continue
        if "=" not in line:
            raise FamilyFormatError("expected 'key = [...]'", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not (value.startswith("[") and value.endswith("]")):
            raise FamilyFormatError(f"{key} must be a bracketed list", lineno)
        items = [s.strip() for s in value[1:-1].split(",") if s.strip()]
        if key == "params":
            params = items
        elif key == "nonvanishing":
            nonvanishing_text = [(s, lineno) for s in items]
        else:
            raise FamilyFormatError(f"unknown key {key!r}", lineno)
    if not rows:
        raise FamilyFormatError("missing [matrix] section")
    if any(len(r) != len(rows) for r in rows):
        raise FamilyFormatError("family matrix must be square")
    nonvanishing = []
    for s, lineno in nonvanishing_text:
        try:
            nonvanishing.append(parse_polynomial(s))
        except ExpressionError as e:
            raise FamilyFormatError(str(e), lineno) from None
    try:
        return ParametricMatrixFamily(Matrix(rows), tuple(params), tuple(nonvanishing))
    except ValueError as e:
        raise FamilyFormatError(str(e)) from None


def load_family(path) -> ParametricMatrixFamily:
    return parse_family(Path(path).read_text())


def format_family(fam: ParametricMatrixFamily) -> str:
    lines = [f"params = [{', '.join(fam.params)}]",
             f"nonvanishing = [{', '.join(str(p) for p in fam.nonvanishing)}]",
             "[matrix]"]
    for r in fam.entries.rows:
        lines.append(", ".join(str(x) for x in r))
    return "\n".join(lines) + "\n"


def substitution(fam: ParametricMatrixFamily) -> Dict[str, Polynomial]:
    """Values of the unknowns l_ij for a family (l_ij = entry (j, i))."""
    n = fam.n
    return {unknown_name(i, j, n): fam.entries[j, i].as_polynomial()
            for i in range(n) for j in range(n)}


@dataclass(frozen=True)
class FamilyReport:
    is_automorphism_family: bool
    det: Polynomial
    residuals: Tuple[Tuple[Equation, Polynomial], ...] = ()
    det_certified: bool = False   # det divides a power of the product of nonvanishing conditions

    def describe_residuals(self) -> List[str]:
        return [f"{eq.label()}: {r}" for eq, r in self.residuals]


def divides_power_of(d: Polynomial, conditions: Sequence[Polynomial]) -> bool:
    """True if ``d`` divides (prod conditions)^k for k = deg d (d nonzero)."""
    if d.is_zero():
        return False
    if d.is_constant():
        return True
    if not conditions:
        return False
    prod = Polynomial.constant(1)
    for c in conditions:
        prod = prod * c
    target = prod ** max(d.degree(), 1)
    (_,), r = poly_divmod(target, [d])
    return r.is_zero()


def verify_parametric_family(a: Algebra, fam: ParametricMatrixFamily) -> FamilyReport:
    if fam.n != a.dim:
        raise ValueError(f"family is {fam.n}x{fam.n} but the algebra has dimension {a.dim}")
    system = automorphism_equations(a)
    sub = substitution(fam)
    residuals = []
    for eq in system.equations:
        r = eq.poly.subs(sub)
        if not r.is_zero():
            residuals.append((eq, r))
    det = fam.entries.det().as_polynomial()
    return FamilyReport(not residuals, det, tuple(residuals),
                        divides_power_of(det, fam.nonvanishing))


def is_automorphism(a: Algebra, phi: Matrix) -> bool:
    """phi(e_i) phi(e_j) == phi(e_i e_j) for all basis pairs, and phi invertible."""
    n = a.dim
    if phi.shape != (n, n) or phi.det().is_zero():
        return False
    cols = [phi.column(j) for j in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = a.product(cols[i], cols[j])
            rhs = phi.apply(a.sc[i][j])
            if any(x != y for x, y in zip(lhs, rhs)):
                return False
    return True


def sample_automorphisms(a: Algebra, fam: ParametricMatrixFamily,
                         assignments: Sequence[Mapping[str, object]]) -> List[Matrix]:
    """Concrete members of a family; assignments violating a nonvanishing
    condition (or giving a singular matrix) are skipped with a warning."""
    out = []
    for asg in assignments:
        missing = set(fam.params) - set(asg)
        if missing:
            raise ValueError(f"assignment misses parameters {sorted(missing)}")
        bad = [str(p) for p in fam.nonvanishing if p.evaluate(asg) == 0]
        if bad:
            log.warning("skipping %s: nonvanishing condition %s is zero", dict(asg), ", ".join(bad))
            continue
        phi = fam.at(asg)
        if phi.det().is_zero():
            log.warning("skipping %s: singular matrix", dict(asg))
            continue
        out.append(phi)
    return out

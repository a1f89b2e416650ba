"""Second cohomology with trivial one-dimensional coefficients.

Bilinear forms on an n-dimensional algebra are n*n matrices with entry (i, j)
equal to theta(e_i, e_j); as vectors they are flattened row-major, so
``d_ij`` (the form dual to the pair (e_i, e_j)) is coordinate ``i*n + j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import List, Sequence, Tuple

from .algebra import Algebra, check_identities, format_element
from .arith import ONE, ZERO, ExpressionError, Polynomial, Scalar, parse_scalar
from .identities import Identity, expand_cocycle
from .linalg import Matrix, Subspace, complete_basis, in_span, nullspace

BilinearForm = Matrix


class IdentityViolation(ValueError):
    """The algebra itself does not satisfy the identities."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class CoboundaryError(ValueError):
    """Coboundaries violate cocycle equations (identity/algebra mismatch)."""


# -- forms -------------------------------------------------------------------

def form_to_vector(theta: Matrix):
    return theta.flatten()


def vector_to_form(v, n: int) -> Matrix:
    v = list(v)
    if len(v) != n * n:
        raise ValueError(f"expected {n * n} coordinates, got {len(v)}")
    return Matrix([v[i * n:(i + 1) * n] for i in range(n)], n)


def delta(i: int, j: int, n: int) -> Matrix:
    """The form d_ij (0-based indices)."""
    v = [ZERO] * (n * n)
    v[i * n + j] = ONE
    return vector_to_form(v, n)


def _delta_name(i: int, j: int, n: int) -> str:
    if n <= 9:
        return f"d{i + 1}{j + 1}"
    return f"d{i + 1}_{j + 1}"


_DELTA_RE = re.compile(r"d(\d+)_(\d+)$|d(\d)(\d)$")


def parse_form(text: str, n: int, params: Sequence[str] = ()) -> Matrix:
    """Parse a form literal such as ``d13+d22+d31`` or ``2*d11 - l*d12``.

    For n > 9 write ``d10_3``.
    """
    try:
        s = parse_scalar(text)
    except ExpressionError as e:
        raise ValueError(f"bad form literal {text!r}: {e}") from None
    coords = [Polynomial() for _ in range(n * n)]
    for m, c in s.num.terms.items():
        deltas = [(v, e) for v, e in m if _DELTA_RE.match(v)]
        if len(deltas) != 1 or deltas[0][1] != 1:
            raise ValueError(f"form literal {text!r} is not linear in the d_ij")
        g = _DELTA_RE.match(deltas[0][0]).groups()
        i, j = (int(g[0]), int(g[1])) if g[0] else (int(g[2]), int(g[3]))
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"{deltas[0][0]} out of range for dimension {n}")
        rest = tuple((v, e) for v, e in m if v != deltas[0][0])
        for v, _ in rest:
            if v not in params:
                raise ValueError(f"unknown symbol {v!r} in form literal")
        coords[(i - 1) * n + j - 1] = coords[(i - 1) * n + j - 1] + Polynomial({rest: c})
    for v in s.den.variables:
        if v not in params:
            raise ValueError(f"unknown symbol {v!r} in form literal")
    return vector_to_form([Scalar(c, s.den) for c in coords], n)


def format_form(theta) -> str:
    """Inverse of :func:`parse_form`."""
    if isinstance(theta, Matrix):
        n = theta.nrows
        v = theta.flatten()
    else:
        v = list(theta)
        n = int(round(len(v) ** 0.5))
    # reuse the linear-combination printer with d_ij names
    parts = []
    for idx, c in enumerate(v):
        if not c.is_zero():
            parts.append((idx, c))
    if not parts:
        return "0"
    names = {idx: _delta_name(idx // n, idx % n, n) for idx, _ in parts}
    text = format_element([c for _, c in parts], prefix="\0")
    for k, (idx, _) in reversed(list(enumerate(parts))):
        text = text.replace(f"\0{k + 1}", names[idx])
    return text


# -- spaces ------------------------------------------------------------------

def cocycle_system(a: Algebra, ids: Sequence[Identity]) -> List[Tuple[Scalar, ...]]:
    """Distinct nonzero cocycle equations over all identities and basis tuples."""
    rows = []
    seen = set()
    for ident in ids:
        for args in iproduct(range(a.dim), repeat=ident.arity):
            row = expand_cocycle(a, ident, args)
            if all(c.is_zero() for c in row):
                continue
            key = _normalized(row)
            if key in seen:
                continue
            seen.add(key)
            rows.append(row)
    return rows


def _normalized(row):
    lead = next(c for c in row if not c.is_zero())
    if lead.is_rational():
        inv = ONE / lead
        return tuple(c * inv for c in row)
    return tuple(row)


def _require_identities(a: Algebra, ids: Sequence[Identity]):
    report = check_identities(a, ids)
    if not report.holds:
        first = report.failures[0].describe(ids)
        raise IdentityViolation(
            f"algebra {a.name or ''} does not satisfy the identities: {first}".replace("  ", " "),
            report)


def compute_z2(a: Algebra, ids: Sequence[Identity], check: bool = True) -> Subspace:
    """Cocycles: forms satisfying every identity with the root product replaced."""
    if check:
        _require_identities(a, ids)
    n2 = a.dim * a.dim
    rows = cocycle_system(a, ids)
    if not rows:
        return Subspace.full(n2)
    sol = nullspace(Matrix(rows, n2))
    z2 = Subspace.span(sol.basis, n2)
    return Subspace(n2, z2.basis, tuple(_merge(sol.case_splits, z2.case_splits)))


def compute_b2(a: Algebra) -> Subspace:
    """Coboundaries: span of the slices (i, j) -> c_ij^k, dependent ones dropped."""
    n = a.dim
    slices = [a.slice(k).flatten() for k in range(n)]
    slices = [s for s in slices if any(not c.is_zero() for c in s)]
    return Subspace.span(slices, n * n, canonical=False)


@dataclass(frozen=True)
class CohomologySpaces:
    algebra: Algebra
    z2: Subspace
    b2: Subspace
    h2_reps: Tuple[Matrix, ...]
    case_splits: Tuple[Polynomial, ...] = field(default=())

    @property
    def dim_h2(self) -> int:
        return len(self.h2_reps)

    def quotient_coordinates(self, theta: Matrix):
        """Coordinates of a cocycle's class along ``h2_reps``.

        Writes theta in the basis b2 + h2_reps of Z^2 and keeps the h2 part.
        Raises ValueError if theta is not a cocycle.
        """
        n2 = self.z2.ambient
        basis = list(self.b2.basis) + [r.flatten() for r in self.h2_reps]
        target = theta.flatten()
        # solve sum c_t basis_t = target: nullspace of [basis^T | -target]
        cols = basis + [tuple(-c for c in target)]
        m = Matrix.from_columns(cols) if cols else Matrix.zeros(n2, 0)
        sol = nullspace(m)
        for v in sol.basis:
            if not v[-1].is_zero():
                inv = ONE / v[-1]
                coeffs = [c * inv for c in v[:-1]]
                return tuple(coeffs[self.b2.dim:])
        raise ValueError("form is not a cocycle")


def _merge(*lists):
    out = []
    for lst in lists:
        for p in lst:
            if p not in out:
                out.append(p)
    return out


def compute_h2(a: Algebra, ids: Sequence[Identity], check: bool = True) -> CohomologySpaces:
    z2 = compute_z2(a, ids, check=check)
    b2 = compute_b2(a)
    for v in b2.basis:
        if not in_span(v, z2):
            raise CoboundaryError("coboundaries violate cocycle equations")
    reps = complete_basis(b2, z2)
    n = a.dim
    return CohomologySpaces(a, z2, b2, tuple(vector_to_form(v, n) for v in reps.basis),
                            tuple(_merge(z2.case_splits, b2.case_splits)))


def is_cocycle(a: Algebra, ids: Sequence[Identity], theta: Matrix):
    """``(ok, violation)``; violation names the first failing equation."""
    v = theta.flatten()
    for ident in ids:
        for args in iproduct(range(a.dim), repeat=ident.arity):
            row = expand_cocycle(a, ident, args)
            val = ZERO
            for c, x in zip(row, v):
                if not c.is_zero() and not x.is_zero():
                    val = val + c * x
            if not val.is_zero():
                where = ",".join(f"e{i + 1}" for i in args)
                return False, f"{ident.name or ident.to_text()} at ({where}) gives {val}"
    return True, None

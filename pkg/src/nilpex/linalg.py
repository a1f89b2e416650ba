"""Exact dense linear algebra over :class:`~nilpex.arith.Scalar`.

Pivoting never divides silently by a parameter-dependent entry: every such
pivot is reported as a *case split* (its numerator polynomial is assumed
nonzero on the generic branch that is followed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .arith import ONE, ZERO, Polynomial, Scalar

Vector = Tuple[Scalar, ...]


def vec(values) -> Vector:
    return tuple(Scalar.coerce(v) for v in values)


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return all(x.is_zero() for x in v)


class Matrix:
    """Immutable dense matrix of scalars, stored row-major."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols: int = None):
        self.rows = tuple(vec(r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix rows")

    @classmethod
    def zeros(cls, nrows: int, ncols: int = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols) -> "Matrix":
        cols = [vec(c) for c in cols]
        return cls(list(zip(*cols)), len(cols))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)) if self.rows else [], self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for r in self.rows:
            out.append([_dot(r, c) for c in cols])
        return Matrix(out, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Scalar.coerce(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.ncols)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        return tuple(_dot(r, v) for r in self.rows)

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(a) for a in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def flatten(self) -> Vector:
        return tuple(a for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash((self.shape, self.rows))

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return determinant(self.rows)

    def to_text(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "]"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Matrix({self.to_text()})"


def _dot(u, v) -> Scalar:
    total = ZERO
    for a, b in zip(u, v):
        if not a.is_zero() and not b.is_zero():
            total = total + a * b
    return total


def determinant(rows) -> Scalar:
    """Cofactor expansion along the sparsest row (exact; meant for n <= 6)."""
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    i = min(range(n), key=lambda r: sum(not a.is_zero() for a in rows[r]))
    total = ZERO
    for j, a in enumerate(rows[i]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
        term = a * determinant(minor)
        total = total + term if (i + j) % 2 == 0 else total - term
    return total


# -- elimination -------------------------------------------------------------

def _split_of(pivot: Scalar) -> Polynomial:
    """Polynomial whose nonvanishing a pivot division assumes."""
    num = pivot.num
    c = num.content()
    p = num * (1 / c)
    lead = p.sorted_terms()[0][1]
    return p * (1 / lead) if lead < 0 else p


def _add_split(splits: List[Polynomial], pivot: Scalar):
    if pivot.is_rational():
        return
    p = _split_of(pivot)
    if p not in splits:
        splits.append(p)


def _eliminate(rows: List[List[Scalar]], ncols: int, full_pivoting: bool):
    """Gauss-Jordan elimination in place.

    Returns ``(pivots, splits)`` where ``pivots`` is a list of
    ``(row, column)`` pairs in the order chosen.  With ``full_pivoting`` any
    column may be chosen next (rational pivots first), which avoids case
    splits when a rational pivot exists somewhere; without it columns are
    processed left to right, giving a true reduced row echelon form.
    """
    splits: List[Polynomial] = []
    pivots = []
    r = 0
    nrows = len(rows)
    used_cols = set()
    col_iter = iter(range(ncols))
    while r < nrows:
        choice = None
        if full_pivoting:
            fallback = None
            for c in range(ncols):
                if c in used_cols:
                    continue
                for i in range(r, nrows):
                    a = rows[i][c]
                    if a.is_zero():
                        continue
                    if a.is_rational():
                        choice = (i, c)
                        break
                    if fallback is None:
                        fallback = (i, c)
                if choice:
                    break
            choice = choice or fallback
            if choice is None:
                break
        else:
            for c in col_iter:
                fallback = None
                for i in range(r, nrows):
                    a = rows[i][c]
                    if a.is_zero():
                        continue
                    if a.is_rational():
                        choice = (i, c)
                        break
                    if fallback is None:
                        fallback = (i, c)
                choice = choice or fallback
                if choice:
                    break
            if choice is None:
                break
        i, c = choice
        used_cols.add(c)
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][c]
        _add_split(splits, piv)
        if piv != ONE:
            inv = ONE / piv
            rows[r] = [a * inv if not a.is_zero() else ZERO for a in rows[r]]
            rows[r][c] = ONE
        prow = rows[r]
        for k in range(nrows):
            if k == r:
                continue
            f = rows[k][c]
            if f.is_zero():
                continue
            rows[k] = [a - f * b if not b.is_zero() else a for a, b in zip(rows[k], prow)]
            rows[k][c] = ZERO
        pivots.append((r, c))
        r += 1
    return pivots, splits


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns ``(r, pivots, case_splits)``: the reduced matrix, the strictly
    increasing pivot columns, and the polynomials assumed nonzero.
    """
    rows = [list(r) for r in m.rows]
    pivots, splits = _eliminate(rows, m.ncols, full_pivoting=False)
    return Matrix(rows, m.ncols), [c for _, c in pivots], splits


def rank(vectors: Sequence[Sequence[Scalar]], ncols: int = None) -> int:
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    pivots, _ = _eliminate(rows, ncols, full_pivoting=True)
    return len(pivots)


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of Q(params)^ambient given by an independent basis."""

    ambient: int
    basis: Tuple[Vector, ...] = ()
    case_splits: Tuple[Polynomial, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(vec(v) for v in self.basis))
        for v in self.basis:
            if len(v) != self.ambient:
                raise ValueError("basis vector has wrong length")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient).rows)

    @classmethod
    def span(cls, vectors, ambient: int, canonical: bool = True) -> "Subspace":
        """Subspace spanned by ``vectors``.

        ``canonical`` returns the nonzero rows of the RREF (reproducible
        order); otherwise a maximal independent subset is kept in the
        order given.
        """
        vectors = [vec(v) for v in vectors]
        if canonical:
            if not vectors:
                return cls(ambient, ())
            r, piv, splits = rref(Matrix(vectors, ambient))
            return cls(ambient, r.rows[:len(piv)], tuple(splits))
        kept: List[Vector] = []
        for v in vectors:
            if rank(kept + [v], ambient) > len(kept):
                kept.append(v)
        return cls(ambient, kept)

    def contains(self, v) -> bool:
        return in_span(v, self)

    def __contains__(self, v) -> bool:
        return in_span(v, self)

    def issubspace(self, other: "Subspace") -> bool:
        return all(in_span(v, other) for v in self.basis)

    def same_span(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.issubspace(other)


def nullspace(m: Matrix) -> Subspace:
    """Solution space of ``m @ x = 0``; one basis vector per free column."""
    rows = [list(r) for r in m.rows]
    pivots, splits = _eliminate(rows, m.ncols, full_pivoting=True)
    pivot_of_col = {c: r for r, c in pivots}
    basis = []
    for f in range(m.ncols):
        if f in pivot_of_col:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for c, r in pivot_of_col.items():
            a = rows[r][f]
            if not a.is_zero():
                v[c] = -a
        basis.append(tuple(v))
    return Subspace(m.ncols, basis, tuple(splits))


def in_span(v, s: Subspace) -> bool:
    v = vec(v)
    if len(v) != s.ambient:
        raise ValueError("vector and subspace have different ambient dimension")
    if is_zero_vector(v):
        return True
    return rank(list(s.basis) + [v], s.ambient) == s.dim


def complete_basis(inner: Subspace, outer: Subspace) -> Subspace:
    """Greedily extend ``inner`` by members of ``outer.basis`` to span ``outer``.

    Follows the order of ``outer.basis``; the returned subspace holds only the
    added vectors.
    """
    if inner.ambient != outer.ambient:
        raise ValueError("subspaces live in different ambient spaces")
    for v in inner.basis:
        if not in_span(v, outer):
            raise ValueError("inner subspace is not contained in outer subspace")
    current = list(inner.basis)
    added = []
    for z in outer.basis:
        if rank(current + [z], outer.ambient) > len(current):
            current.append(z)
            added.append(z)
    return Subspace(outer.ambient, added)


def intersect(*spaces: Subspace) -> Subspace:
    """Intersection of subspaces of a common ambient space."""
    n = spaces[0].ambient
    if any(s.ambient != n for s in spaces):
        raise ValueError("subspaces live in different ambient spaces")
    # x in U iff x is orthogonal to a basis of U's annihilator (dual)
    eqs = []
    for s in spaces:
        eqs.extend(nullspace(Matrix(s.basis, n) if s.basis else Matrix.zeros(0, n)).basis)
    if not eqs:
        return Subspace.full(n)
    return nullspace(Matrix(eqs, n))

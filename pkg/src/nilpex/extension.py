"""Automorphism action on cocycles, annihilator conditions, central extensions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .algebra import Algebra, annihilator_system, compute_annihilator
from .arith import ZERO, Polynomial, Scalar
from .automorphism import ParametricMatrixFamily, is_automorphism
from .cohomology import CohomologySpaces, is_cocycle
from .identities import Identity
from .linalg import Matrix, Subspace, nullspace, rank


class SingularMatrixError(ValueError):
    pass


class CocycleError(ValueError):
    """A form offered for an extension is not a cocycle."""


class NotAnAutomorphism(ValueError):
    pass


def act(phi: Matrix, theta: Matrix) -> Matrix:
    """(phi . theta)(x, y) = theta(phi x, phi y), i.e. phi^T theta phi."""
    if phi.shape != theta.shape or phi.nrows != phi.ncols:
        raise ValueError(f"shape mismatch: phi {phi.shape}, theta {theta.shape}")
    if phi.det().is_zero():
        raise SingularMatrixError("automorphism matrix is singular")
    return phi.T @ theta @ phi


@dataclass(frozen=True)
class CohomologySubspace:
    """W = <[theta_1], ..., [theta_m]> inside H^2, with coefficient symbols."""

    ambient: Optional[CohomologySpaces]
    span: Tuple[Matrix, ...]
    coeff_symbols: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.coeff_symbols:
            object.__setattr__(self, "coeff_symbols",
                               tuple(f"a{i + 1}" for i in range(len(self.span))))
        if len(self.coeff_symbols) != len(self.span):
            raise ValueError("one coefficient symbol per representative")

    @property
    def m(self) -> int:
        return len(self.span)

    @classmethod
    def whole(cls, spaces: CohomologySpaces) -> "CohomologySubspace":
        return cls(spaces, spaces.h2_reps)

    def general_form(self) -> Matrix:
        """sum_i a_i theta_i with symbolic coefficients."""
        n = self.span[0].nrows if self.span else self.ambient.algebra.dim
        total = Matrix.zeros(n)
        for sym, theta in zip(self.coeff_symbols, self.span):
            total = total + theta.scale(Scalar.var(sym))
        return total

    def quotient_rank(self) -> int:
        coords = [self.ambient.quotient_coordinates(t) for t in self.span]
        return rank(coords, self.ambient.dim_h2) if coords else 0


def act_parametric(fam: ParametricMatrixFamily, span: CohomologySubspace) -> Matrix:
    """fam^T (sum_i a_i theta_i) fam, entries polynomial in params and a_i."""
    if span.span and fam.n != span.span[0].nrows:
        raise ValueError("family and cohomology have different dimensions")
    return fam.entries.T @ span.general_form() @ fam.entries


def ann_of_form(theta: Matrix) -> Subspace:
    """{x : theta(x, A) = theta(A, x) = 0}."""
    return nullspace(_ann_form_rows(theta))


def _ann_form_rows(theta: Matrix) -> Matrix:
    n = theta.nrows
    rows = []
    for j in range(n):
        rows.append(theta.column(j))   # theta(x, e_j) = sum_i x_i theta_ij
        rows.append(theta.rows[j])     # theta(e_j, x) = sum_i theta_ji x_i
    return Matrix(rows, n)


def annihilator_symbols(ann: Subspace) -> List[str]:
    """Coordinate names l_k for a general element of Ann(A).

    Basis vector t is named after its first nonzero coordinate, so a basis
    vector e_3 gets coordinate l3.
    """
    names = []
    for v in ann.basis:
        k = next(i for i, c in enumerate(v) if not c.is_zero())
        name = f"l{k + 1}"
        while name in names:
            name += "_"
        names.append(name)
    return names


def _monic(p: Polynomial) -> Polynomial:
    lead = p.sorted_terms()[0][1]
    return p * (1 / lead) if lead != 1 else p


def intersection_conditions(a: Algebra, h2: CohomologySpaces,
                            span: CohomologySubspace = None) -> List[Polynomial]:
    """Bilinear conditions for u in Ann(A) to lie in Ann(theta).

    u = sum_t l_t v_t over the Ann(A) basis, theta = sum_i a_i theta_i over
    the cohomology representatives.  Returns the distinct nonzero polynomials
    theta(u, e_j), theta(e_j, u) (normalized to leading coefficient 1); the
    intersection is zero for a given a iff their only common zero is u = 0.
    """
    if span is None:
        span = CohomologySubspace.whole(h2)
    n = a.dim
    ann = compute_annihilator(a)
    if not ann.basis or not span.span:
        return []
    syms = annihilator_symbols(ann)
    u = [ZERO] * n
    for sym, v in zip(syms, ann.basis):
        s = Scalar.var(sym)
        u = [x + s * c for x, c in zip(u, v)]
    theta = span.general_form()
    conds: List[Polynomial] = []
    for j in range(n):
        left = sum((u[i] * theta[i, j] for i in range(n)), ZERO)
        right = sum((theta[j, i] * u[i] for i in range(n)), ZERO)
        for val in (left, right):
            if val.is_zero():
                continue
            p = _monic(val.as_polynomial())
            if p not in conds:
                conds.append(p)
    return conds


def check_tm_membership(a: Algebra, w: CohomologySubspace) -> bool:
    """True iff Ann(A) and every Ann(theta_i) intersect in zero."""
    n = a.dim
    rows = list(annihilator_system(a).rows)
    for theta in w.span:
        if any(not x.is_rational() for x in theta.flatten()):
            raise ValueError("T_m membership needs concrete (rational) representatives")
        rows.extend(_ann_form_rows(theta).rows)
    return nullspace(Matrix(rows, n)).dim == 0


@dataclass(frozen=True)
class ExtensionResult:
    algebra: Algebra
    theta_forms: Tuple[Matrix, ...]
    parent: Algebra


def central_extension(a: Algebra, thetas: Sequence[Matrix],
                      identities: Sequence[Identity] = None, name: str = None) -> ExtensionResult:
    """A + V with (x + v)(y + w) = xy + sum_t theta_t(x, y) e_{n+t}.

    With ``identities`` given each theta is first checked to be a cocycle.
    """
    thetas = tuple(thetas)
    if not thetas:
        raise ValueError("need at least one form")
    n, m = a.dim, len(thetas)
    for t, theta in enumerate(thetas):
        if theta.shape != (n, n):
            raise ValueError(f"form {t + 1} has shape {theta.shape}, expected {(n, n)}")
        if identities is not None:
            ok, why = is_cocycle(a, identities, theta)
            if not ok:
                raise CocycleError(f"form {t + 1} is not a cocycle: {why}")
    N = n + m
    sc = [[[ZERO] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                sc[i][j][k] = a.sc[i][j][k]
            for t, theta in enumerate(thetas):
                sc[i][j][n + t] = theta[i, j]
    if name is None:
        name = f"{a.name}_ext" if a.name else "extension"
    return ExtensionResult(Algebra(N, sc, name, a.params), thetas, a)


def subspace_equivalent_under(phi: Matrix, w1: CohomologySubspace,
                              w2: CohomologySubspace) -> bool:
    """True iff phi W1 = W2 in H^2 (compared in quotient coordinates)."""
    spaces = w1.ambient
    if not is_automorphism(spaces.algebra, phi):
        raise NotAnAutomorphism("matrix is not an automorphism of the algebra")
    k = spaces.dim_h2
    moved = [spaces.quotient_coordinates(act(phi, t)) for t in w1.span]
    target = [w2.ambient.quotient_coordinates(t) for t in w2.span]
    r1 = rank(moved, k) if moved else 0
    r2 = rank(target, k) if target else 0
    if r1 != r2:
        return False
    return (rank(moved + target, k) if moved or target else 0) == r1

"""Independent reference computations used by several test modules.

Nothing here calls the cocycle or elimination code under test: products are
recomputed from the raw structure constants and kernels come from sympy.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Sequence

import sympy

from nilpex.identities import Leaf


def _q(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def numeric_table(a, values: Dict[str, Fraction]):
    """Structure constants as Fractions, parameters replaced by ``values``."""
    n = a.dim
    return [[[a.sc[i][j][k].evaluate(values) for k in range(n)] for j in range(n)] for i in range(n)]


def _mul(sc, x, y):
    n = len(sc)
    return [sum(x[i] * y[j] * sc[i][j][k] for i in range(n) for j in range(n)) for k in range(n)]


def _eval(sc, tree, env):
    if isinstance(tree, Leaf):
        return env[tree.name]
    return _mul(sc, _eval(sc, tree.left, env), _eval(sc, tree.right, env))


def z2_oracle(a, ids, rng: random.Random, substitutions: int = 20,
              values: Dict[str, Fraction] = None) -> sympy.Matrix:
    """Kernel of the cocycle conditions sampled at random rational points.

    Each identity contributes ``substitutions`` linear equations on the n*n
    entries of theta: the root product of every monomial is replaced by theta
    and the variables by random vectors.  Returns the kernel as the columns of
    a sympy matrix.
    """
    sc = numeric_table(a, values or {})
    n = a.dim
    rows = []
    for ident in ids:
        for _ in range(substitutions):
            env = {v: [Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(n)]
                   for v in ident.variables}
            row = [Fraction(0)] * (n * n)
            for c, tree in ident.monomials:
                left, right = _eval(sc, tree.left, env), _eval(sc, tree.right, env)
                for i in range(n):
                    for j in range(n):
                        row[i * n + j] += c * left[i] * right[j]
            rows.append([_q(x) for x in row])
    if not rows:
        return sympy.eye(n * n)
    kernel = sympy.Matrix(rows).nullspace()
    return sympy.Matrix.hstack(*kernel) if kernel else sympy.zeros(n * n, 0)


def as_columns(vectors: Sequence[Sequence], values: Dict[str, Fraction] = None, size: int = None):
    cols = [[_q(x.evaluate(values or {})) if hasattr(x, "evaluate") else _q(Fraction(x)) for x in v]
            for v in vectors]
    if not cols:
        return sympy.zeros(size or 0, 0)
    return sympy.Matrix(cols).T


def same_column_span(a: sympy.Matrix, b: sympy.Matrix) -> bool:
    ra, rb = a.rank() if a.cols else 0, b.rank() if b.cols else 0
    if ra != rb:
        return False
    if ra == 0:
        return True
    return sympy.Matrix.hstack(a, b).rank() == ra


def random_values(params: Sequence[str], rng: random.Random) -> Dict[str, Fraction]:
    return {p: Fraction(rng.choice([-1, 1]) * rng.randint(2, 30), rng.randint(1, 7)) for p in params}


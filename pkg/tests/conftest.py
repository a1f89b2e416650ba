from __future__ import annotations

import random
from fractions import Fraction

import pytest

from nilpex import data
from nilpex.algebra import Algebra, check_identities, load_algebra
from nilpex.arith import Polynomial
from nilpex.automorphism import load_family, sample_automorphisms
from nilpex.identities import load_identities

FIXTURES = ["m3_01", "m3_02", "m3_03", "m3_04", "m3_05"]


def algebra(name: str) -> Algebra:
    return load_algebra(data.path(f"{name}.alg"))


def family(name: str):
    return load_family(data.path(f"aut_{name}.fam"))


def moufang():
    return load_identities(data.path("moufang.ids"))


def random_triangular(rng: random.Random, n: int, density: float = 0.6) -> Algebra:
    """e_i e_j lands in span(e_k : k > max(i, j)), so the algebra is nilpotent."""
    table = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(max(i, j) + 1, n + 1):
                if rng.random() < density:
                    table.setdefault((i, j), {})[k] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return Algebra.from_table(n, table, name=f"rand{n}")


def random_table(rng: random.Random, n: int, density: float = 0.3) -> Algebra:
    table = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if rng.random() < density:
                    table.setdefault((i, j), {})[k] = rng.randint(-2, 2)
    return Algebra.from_table(n, table, name=f"table{n}")


@pytest.fixture(scope="session")
def ids():
    return moufang()


@pytest.fixture(scope="session")
def m301():
    return algebra("m3_01")


def variety_member(rng: random.Random, n: int, ids) -> Algebra:
    while True:
        a = random_triangular(rng, n)
        if check_identities(a, ids).holds:
            return a


def random_samples(a: Algebra, fam, rng: random.Random, count: int):
    """``count`` concrete automorphisms from a family, nonvanishing respected."""
    out = []
    while len(out) < count:
        asg = {p: Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for p in fam.params}
        out.extend(sample_automorphisms(a, fam, [asg]))
    return out


def random_quadratic_system(rng: random.Random, nvars: int, neqs: int):
    names = [f"v{k}" for k in range(nvars)]
    monos = [()] + [((v, 1),) for v in names] + [
        tuple(sorted({(a, 1), (b, 1)})) if a != b else ((a, 2),)
        for i, a in enumerate(names) for b in names[i:]]
    system = []
    for _ in range(neqs):
        terms = {m: Fraction(rng.randint(-3, 3)) for m in rng.sample(monos, rng.randint(2, 4))}
        p = Polynomial(terms)
        if not p.is_zero():
            system.append(p)
    return names, system

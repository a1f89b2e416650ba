import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, algebra, moufang, random_table, random_triangular
from nilpex.algebra import (
    Algebra,
    AlgebraFormatError,
    check_identities,
    compute_annihilator,
    format_algebra,
    is_nilpotent,
    parse_algebra,
    power_chain,
)
from nilpex.arith import Scalar
from nilpex.identities import Leaf, parse_identity


def naive_product(a: Algebra, x, y):
    n = a.dim
    return [sum(x[i] * y[j] * a.sc[i][j][k].to_fraction() for i in range(n) for j in range(n))
            for k in range(n)]


def naive_eval(a, tree, env):
    if isinstance(tree, Leaf):
        return env[tree.name]
    return naive_product(a, naive_eval(a, tree.left, env), naive_eval(a, tree.right, env))


def holds_at_random_points(a, ids, rng, trials=5):
    """Independent check: evaluate every identity at random rational vectors."""
    for ident in ids:
        for _ in range(trials):
            env = {v: [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(a.dim)]
                   for v in ident.variables}
            total = [Fraction(0)] * a.dim
            for c, tree in ident.monomials:
                total = [t + c * x for t, x in zip(total, naive_eval(a, tree, env))]
            if any(total):
                return False
    return True


def test_fixture_products():
    a = algebra("m3_05")
    assert a.params == ("l",)
    e1, e2 = a.basis(0), a.basis(1)
    assert a.product(e1, e1) == (Scalar(0), Scalar(0), Scalar.var("l"))
    assert a.product(e1, e2) == (Scalar(0),) * 3
    assert len(a.nonzero_products()) == 3


@pytest.mark.parametrize("name", FIXTURES + ["m4_01"])
def test_text_round_trip(name):
    a = algebra(name)
    again = parse_algebra(format_algebra(a))
    assert again == a and again.name == a.name


@pytest.mark.parametrize("text, line, column", [
    ('[algebra]\ndim = 2\n[product]\ne1*e1 = 2*e2 + k*e1\n', 4, 9),
    ('[algebra]\nname = "x"\ndim = two\n', 3, 7),
    ('[algebra]\ndim = 2\n[product]\ne1*e1 = e2\ne1*e1 = e1\n', 5, 1),
    ('[algebra]\ndim = 2\n[product]\ne1*e1 = e2^2\n', 4, 9),
    ('[algebra]\ndim = 2\n[product]\ne1*e3 = e2\n', 4, 1),
])
def test_format_errors_have_positions(text, line, column):
    with pytest.raises(AlgebraFormatError) as info:
        parse_algebra(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_undeclared_parameter_is_rejected():
    with pytest.raises(ValueError):
        Algebra.from_table(2, {(1, 1): {2: "m"}})


def test_identity_failures_are_reported():
    a = Algebra.from_table(2, {(1, 1): {1: 1, 2: 1}}, name="bad")
    assoc = [parse_identity("(x*y)*z - x*(y*z)", "assoc"),
             parse_identity("x*y - y*x", "comm")]
    assert check_identities(a, assoc).holds
    b = Algebra.from_table(2, {(1, 2): {1: 1}}, name="nc")
    rep = check_identities(b, assoc)
    assert not rep.holds
    first = rep.failures[0]
    assert (assoc[first.identity].name, first.args) == ("assoc", (0, 1, 1))
    assert first.describe(assoc) == "assoc at (e1,e2,e2): e1"
    assert rep.fails_for_all_parameters


def test_parametric_failure_is_generic():
    a = Algebra.from_table(1, {(1, 1): {1: "l"}}, params=["l"])
    rep = check_identities(a, [parse_identity("x*y", "zero")])
    assert not rep.holds and rep.failures[0].generic and not rep.fails_for_all_parameters


@pytest.mark.parametrize("name, index, ann", [
    ("m3_01", 4, [(0, 0, 1)]),
    ("m3_02", 3, [(0, 1, 0), (0, 0, 1)]),
    ("m3_03", 3, [(0, 0, 1)]),
    ("m3_04", 3, [(0, 0, 1)]),
    ("m3_05", 3, [(0, 0, 1)]),
    ("m4_01", 5, [(0, 0, 0, 1)]),
])
def test_annihilator_and_nilpotency(name, index, ann):
    a = algebra(name)
    assert is_nilpotent(a) == (True, index)
    got = compute_annihilator(a)
    assert [tuple(int(x.to_fraction()) for x in v) for v in got.basis] == ann


def test_non_nilpotent_algebra():
    a = Algebra.from_table(2, {(1, 1): {1: 1}})
    assert is_nilpotent(a) == (False, None)
    assert [s.dim for s in power_chain(a, limit=4)] == [2, 1, 1, 1]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_identity_check_matches_random_evaluation(seed, n):
    ids = moufang()
    rng = random.Random(seed)
    a = random_triangular(rng, n) if seed % 2 else random_table(rng, n)
    assert check_identities(a, ids).holds == holds_at_random_points(a, ids, rng)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_product_is_bilinear(seed):
    rng = random.Random(seed)
    a = random_table(rng, 3)
    vec = lambda: [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)]
    x, y, z = vec(), vec(), vec()
    c = Fraction(rng.randint(-5, 5), 7)
    lhs = a.product([xi + c * zi for xi, zi in zip(x, z)], y)
    rhs = [p + c * q for p, q in zip(a.product(x, y), a.product(z, y))]
    assert lhs == tuple(rhs)
    assert [s.to_fraction() for s in a.product(x, y)] == naive_product(a, x, y)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_annihilator_certificate(seed, n):
    rng = random.Random(seed)
    a = random_triangular(rng, n, density=0.4)
    ann = compute_annihilator(a)
    for u in ann.basis:
        for i in range(n):
            assert all(c.is_zero() for c in a.product(u, a.basis(i)))
            assert all(c.is_zero() for c in a.product(a.basis(i), u))
    assert is_nilpotent(a)[0]

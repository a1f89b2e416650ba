import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import FIXTURES, algebra, random_quadratic_system
from nilpex.arith import MonomialOrder, Polynomial, parse_polynomial
from nilpex.automorphism import automorphism_equations, groebner_of
from nilpex.groebner import BudgetExhausted, buchberger, certify, default_max_pairs, is_reduced


def sympy_basis(polys, names, kind):
    syms = sympy.symbols(names)
    exprs = [sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(names, syms))) for p in polys]
    return sympy.groebner(exprs, *syms, order=kind, domain="QQ")


def same_basis(ours, theirs, names):
    syms = sympy.symbols(names)
    mine = {sympy.expand(sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(names, syms))))
            for g in ours}
    return mine == {sympy.expand(g) for g in theirs.exprs}


def test_textbook_basis():
    order = MonomialOrder("lex", ["x", "y"])
    gb = buchberger([parse_polynomial("x^2 - y"), parse_polynomial("x*y - 1")], order)
    assert [str(g) for g in gb] == ["-y^2 + x", "y^3 - 1"]
    assert certify(gb, [parse_polynomial("x^2 - y")]) == []
    assert is_reduced(gb)


def test_unit_ideal_and_membership():
    gb = buchberger([parse_polynomial("x*y - 1"), parse_polynomial("x")])
    assert gb.is_unit_ideal and [str(g) for g in gb] == ["1"]
    gb = buchberger([parse_polynomial("x^2 + y^2 - 1"), parse_polynomial("x - y")])
    assert gb.contains(parse_polynomial("2*y^2 - 1"))
    assert not gb.contains(parse_polynomial("y"))


def test_empty_and_zero_input():
    assert len(buchberger([])) == 0
    assert len(buchberger([Polynomial()])) == 0


def test_budgets(monkeypatch):
    polys = automorphism_equations(algebra("m3_01")).polynomials
    with pytest.raises(BudgetExhausted):
        buchberger(polys, max_pairs=1)
    with pytest.raises(BudgetExhausted):
        buchberger([parse_polynomial("x^3 - y"), parse_polynomial("x*y^3 - 1")], max_degree=3)
    monkeypatch.setenv("NILPEX_BUDGET_PAIRS", "7")
    assert default_max_pairs() == 7
    monkeypatch.setenv("NILPEX_BUDGET_PAIRS", "many")
    with pytest.raises(ValueError):
        default_max_pairs()


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("kind", ["grevlex", "lex"])
def test_automorphism_systems_agree_with_sympy(name, kind):
    system = automorphism_equations(algebra(name))
    gb = groebner_of(system, kind)
    assert certify(gb, system.polynomials) == []
    names = list(system.unknowns + system.params)
    assert same_basis(gb, sympy_basis(system.polynomials, names, kind), names)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5), st.sampled_from(["grevlex", "lex"]))
def test_random_quadratic_systems(seed, nvars, kind):
    rng = random.Random(seed)
    names, system = random_quadratic_system(rng, nvars, rng.randint(1, 4))
    gb = buchberger(system, MonomialOrder(kind, names), max_degree=200)
    assert certify(gb, system) == []
    assert is_reduced(gb)
    assert same_basis(gb, sympy_basis(system, names, kind), names)


def test_result_is_deterministic():
    system = automorphism_equations(algebra("m3_05")).polynomials
    first = [str(g) for g in buchberger(system)]
    assert first == [str(g) for g in buchberger(list(system))]

"""Buchberger's algorithm with Gebauer-Moeller pair elimination.

Internally polynomials are dicts from exponent tuples (over a fixed variable
order) to Fractions; the public interface speaks :class:`Polynomial`.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import MonomialOrder, Polynomial, mono_div, mono_divides, mono_lcm, poly_divmod

Exp = Tuple[int, ...]
IPoly = Dict[Exp, Fraction]

DEFAULT_MAX_PAIRS = 100_000
DEFAULT_MAX_DEGREE = 20


class BudgetExhausted(RuntimeError):
    """The pair or degree budget ran out before the basis was complete."""


def default_max_pairs() -> int:
    env = os.environ.get("NILPEX_BUDGET_PAIRS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"NILPEX_BUDGET_PAIRS must be an integer, got {env!r}") from None
    return DEFAULT_MAX_PAIRS


class _Ring:
    def __init__(self, order: MonomialOrder):
        self.order = order
        self.vars = order.variables
        self.nvars = len(self.vars)
        if order.kind == "lex":
            self.key = lambda e: e
        else:
            self.key = lambda e: (sum(e), tuple(-x for x in reversed(e)))

    def to_internal(self, p: Polynomial) -> IPoly:
        return {self.order.exponents(m): c for m, c in p.terms.items()}

    def to_poly(self, p: IPoly) -> Polynomial:
        terms = {}
        for e, c in p.items():
            terms[tuple((v, x) for v, x in zip(self.vars, e) if x)] = c
        return Polynomial(terms)

    def lead(self, p: IPoly) -> Exp:
        return max(p, key=self.key)


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class _Basis:
    """Polynomials with cached leading data."""

    def __init__(self, ring: _Ring):
        self.ring = ring
        self.polys: List[IPoly] = []
        self.lms: List[Exp] = []
        self.lcs: List[Fraction] = []

    def add(self, p: IPoly) -> int:
        lm = self.ring.lead(p)
        lc = p[lm]
        if lc != 1:
            p = {e: c / lc for e, c in p.items()}
        self.polys.append(p)
        self.lms.append(lm)
        self.lcs.append(Fraction(1))
        return len(self.polys) - 1

    def reduce(self, p: IPoly, active: Sequence[int]) -> IPoly:
        """Full reduction of ``p`` modulo the active polynomials."""
        key = self.ring.key
        p = dict(p)
        heap = [(_neg(key(e)), e) for e in p]
        heapq.heapify(heap)
        rem: IPoly = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = p.get(e)
            if c is None:
                continue
            for i in active:
                lm = self.lms[i]
                if _divides(lm, e):
                    shift = _sub(e, lm)
                    for ge, gc in self.polys[i].items():
                        t = _add(ge, shift)
                        old = p.get(t)
                        if old is None:
                            p[t] = -c * gc
                            heapq.heappush(heap, (_neg(key(t)), t))
                        else:
                            s = old - c * gc
                            if s:
                                p[t] = s
                            else:
                                del p[t]
                    break
            else:
                rem[e] = c
                del p[e]
        return rem

    def spoly(self, i: int, j: int) -> IPoly:
        f, g = self.polys[i], self.polys[j]
        lcm = _lcm(self.lms[i], self.lms[j])
        sf, sg = _sub(lcm, self.lms[i]), _sub(lcm, self.lms[j])
        out: IPoly = {}
        for e, c in f.items():
            out[_add(e, sf)] = c
        for e, c in g.items():
            t = _add(e, sg)
            s = out.get(t, 0) - c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return out


class _NegKey:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def _neg(k):
    return _NegKey(k)


def _update(basis: _Basis, G: List[int], B: List[Tuple[int, int]], h: int):
    lms = basis.lms
    hl = lms[h]
    C = [g for g in G]
    D: List[int] = []
    while C:
        g1 = C.pop(0)
        l1 = _lcm(lms[g1], hl)
        if _coprime(lms[g1], hl) or not any(
                _divides(_lcm(lms[g2], hl), l1) for g2 in C + D):
            D.append(g1)
    E = [(g, h) for g in D if not _coprime(lms[g], hl)]
    B_new = []
    for g1, g2 in B:
        l12 = _lcm(lms[g1], lms[g2])
        if (_divides(hl, l12) and _lcm(lms[g1], hl) != l12 and _lcm(lms[g2], hl) != l12):
            continue
        B_new.append((g1, g2))
    B_new.extend(E)
    G_new = [g for g in G if not _divides(hl, lms[g])]
    G_new.append(h)
    return G_new, B_new


@dataclass(frozen=True)
class GroebnerBasis:
    generators: Tuple[Polynomial, ...]
    order: MonomialOrder
    pairs_reduced: int = 0

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    @property
    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def reduce(self, f: Polynomial) -> Polynomial:
        if not self.generators:
            return f
        return poly_divmod(f, list(self.generators), self.order)[1]

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()


def buchberger(polys: Sequence[Polynomial], order: MonomialOrder = None,
               max_pairs: Optional[int] = None,
               max_degree: int = DEFAULT_MAX_DEGREE) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Normal selection strategy (smallest lcm first, ties by pair index) keeps
    the run deterministic.  Raises :class:`BudgetExhausted` when more than
    ``max_pairs`` S-pairs would be reduced or a pair's lcm exceeds
    ``max_degree``.
    """
    if order is None:
        order = MonomialOrder("grevlex")
    if max_pairs is None:
        max_pairs = default_max_pairs()
    names = set()
    for p in polys:
        names.update(p.variables)
    order = order.extended(names)
    ring = _Ring(order)
    basis = _Basis(ring)
    G: List[int] = []
    B: List[Tuple[int, int]] = []
    for p in polys:
        ip = ring.to_internal(p)
        if not ip:
            continue
        ip = basis.reduce(ip, G)
        if not ip:
            continue
        h = basis.add(ip)
        G, B = _update(basis, G, B, h)

    reduced = 0
    key = ring.key
    while B:
        idx = min(range(len(B)), key=lambda t: (key(_lcm(basis.lms[B[t][0]], basis.lms[B[t][1]])), B[t]))
        i, j = B.pop(idx)
        if sum(_lcm(basis.lms[i], basis.lms[j])) > max_degree:
            raise BudgetExhausted(f"S-pair degree exceeds max_degree={max_degree}")
        reduced += 1
        if reduced > max_pairs:
            raise BudgetExhausted(f"more than {max_pairs} S-pair reductions")
        s = basis.spoly(i, j)
        if not s:
            continue
        h = basis.reduce(s, G)
        if h:
            G, B = _update(basis, G, B, basis.add(h))

    # minimal, then interreduced
    lms = basis.lms
    minimal = [g for g in G if not any(h != g and _divides(lms[h], lms[g]) for h in G)]
    final = []
    for g in minimal:
        lm = lms[g]
        tail = {e: c for e, c in basis.polys[g].items() if e != lm}
        others = [h for h in minimal if h != g]
        rest = basis.reduce(tail, others)
        rest[lm] = Fraction(1)
        final.append(rest)
    final.sort(key=lambda p: key(ring.lead(p)), reverse=True)
    return GroebnerBasis(tuple(ring.to_poly(p) for p in final), order, reduced)


# -- certificates (independent of the engine above) --------------------------

def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return (f.scale_monomial(mono_div(lcm, mf), 1 / cf)
            - g.scale_monomial(mono_div(lcm, mg), 1 / cg))


def certify(gb: GroebnerBasis, inputs: Sequence[Polynomial] = ()) -> List[str]:
    """Check the Groebner property; returns a list of problems (empty if OK)."""
    problems = []
    gens = list(gb.generators)
    order = gb.order
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            r = poly_divmod(s_polynomial(gens[a], gens[b], order), gens, order)[1]
            if not r.is_zero():
                problems.append(f"S({a},{b}) reduces to {r}")
    for k, f in enumerate(inputs):
        if gens:
            r = poly_divmod(f, gens, order)[1]
        else:
            r = f
        if not r.is_zero():
            problems.append(f"input {k} reduces to {r}")
    return problems


def is_reduced(gb: GroebnerBasis) -> bool:
    gens = list(gb.generators)
    for k, g in enumerate(gens):
        m, c = g.leading_term(gb.order)
        if c != 1:
            return False
        others = gens[:k] + gens[k + 1:]
        for mono in g.terms:
            for h in others:
                if mono_divides(h.leading_term(gb.order)[0], mono):
                    return False
    return True

"""Exact scalars: rationals, sparse multivariate polynomials and their fractions.

Rationals are :class:`fractions.Fraction`.  A monomial is a tuple of
``(variable, exponent)`` pairs sorted by variable name with no zero exponents,
so equal monomials are equal tuples.  :class:`Polynomial` maps monomials to
nonzero rational coefficients and :class:`Scalar` is a quotient of two
polynomials.  All values are immutable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Number = Union[int, Fraction]

ONE_MONO: Monomial = ()

VARIABLE_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")


class PoleError(ZeroDivisionError):
    """A denominator vanished under evaluation; the caller must split cases."""


# -- monomials ---------------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    eb = dict(b)
    return all(eb.get(v, 0) >= e for v, e in a)


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    exps = dict(b)
    for v, e in a:
        r = exps[v] - e
        if r < 0:
            raise ValueError("monomial does not divide")
        if r:
            exps[v] = r
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        if e > exps.get(v, 0):
            exps[v] = e
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


# -- monomial orders ---------------------------------------------------------

class MonomialOrder:
    """Admissible monomial order: ``lex`` or ``grevlex``.

    ``variables`` fixes the precedence (first is largest).  Variables not
    listed rank below all listed ones, alphabetically.
    """

    KINDS = ("lex", "grevlex")

    def __init__(self, kind: str = "grevlex", variables: Sequence[str] = ()):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.variables = tuple(variables)
        self._rank = {v: i for i, v in enumerate(self.variables)}

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {list(self.variables)!r})"

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.variables == other.variables)

    def __hash__(self):
        return hash((self.kind, self.variables))

    def extended(self, names: Iterable[str]) -> "MonomialOrder":
        extra = sorted(set(names) - set(self.variables))
        if not extra:
            return self
        return MonomialOrder(self.kind, self.variables + tuple(extra))

    def exponents(self, m: Monomial) -> Tuple[int, ...]:
        vec = [0] * len(self.variables)
        for v, e in m:
            vec[self._rank[v]] = e
        return tuple(vec)

    def key(self, m: Monomial):
        """Sort key; larger key means larger monomial."""
        vec = self.exponents(m)
        if self.kind == "lex":
            return vec
        return (sum(vec), tuple(-e for e in reversed(vec)))


# -- polynomials -------------------------------------------------------------

def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    m = tuple(sorted((v, e) for v, e in m if e))
                    c = clean.get(m, 0) + _as_fraction(c)
                    if c:
                        clean[m] = c
                    else:
                        del clean[m]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls._raw({ONE_MONO: _as_fraction(c)} if c else {})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        if not VARIABLE_RE.fullmatch(name):
            raise ValueError(f"invalid variable name {name!r}")
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.constant(x)
        if isinstance(x, Scalar):
            return x.as_polynomial()
        raise TypeError(f"cannot convert {type(x).__name__} to Polynomial")

    # structure

    @property
    def variables(self) -> Tuple[str, ...]:
        """Sorted tuple of variables that actually occur."""
        return tuple(sorted({v for m in self.terms for v, _ in m}))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(ONE_MONO, Fraction(0))

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        return max((dict(m).get(var, 0) for m in self.terms), default=-1)

    def leading_term(self, order: MonomialOrder) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order.extended(self.variables)
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def content(self) -> Fraction:
        """Positive gcd of the coefficients (numerators over denominators)."""
        if not self.terms:
            return Fraction(0)
        from math import gcd
        num = reduce(gcd, (c.numerator for c in self.terms.values()))
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.terms.values()))
        return Fraction(abs(num), den)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.constant(other)
            else:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.constant(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial()
            return Polynomial._raw({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial()
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale_monomial(self, m: Monomial, c: Fraction) -> "Polynomial":
        return Polynomial._raw({mono_mul(m, k): v * c for k, v in self.terms.items()})

    # comparison

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, Scalar):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # evaluation and substitution

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                try:
                    t *= _as_fraction(assignment[v]) ** e
                except KeyError:
                    raise KeyError(f"no value for variable {v!r}") from None
            total += t
        return total

    def subs(self, mapping: Mapping[str, Union["Polynomial", Number]]) -> "Polynomial":
        """Substitute polynomials for some variables; others are kept."""
        cache: Dict[Tuple[str, int], Polynomial] = {}
        total = Polynomial()
        for m, c in self.terms.items():
            term = Polynomial.constant(c)
            rest: List[Tuple[str, int]] = []
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = Polynomial.coerce(mapping[v]) ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term.scale_monomial(tuple(rest), Fraction(1))
            total = total + term
        return total

    # display

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in printing order: total degree descending, then lex by name."""
        names = self.variables
        order = MonomialOrder("lex", names)
        return sorted(self.terms.items(),
                      key=lambda mc: (mono_degree(mc[0]), order.key(mc[0])),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = mono_str(m)
            else:
                body = f"{a}*{mono_str(m)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def poly_arith(a: Polynomial, b: Polynomial, kind: str) -> Polynomial:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {kind!r}")


def poly_divmod(f: Polynomial, divisors: Sequence[Polynomial],
                order: MonomialOrder = None):
    """Multivariate division of ``f`` by ``divisors``.

    Returns ``(quotients, remainder)`` with ``f == sum(q*d) + r`` and no
    monomial of ``r`` divisible by a leading monomial of a divisor.
    """
    if order is None:
        order = MonomialOrder("grevlex")
    if any(d.is_zero() for d in divisors):
        raise ZeroDivisionError("division by the zero polynomial")
    names = set(f.variables)
    for d in divisors:
        names.update(d.variables)
    order = order.extended(names)
    key = order.key
    leads = [d.leading_term(order) for d in divisors]
    quotients: List[Dict[Monomial, Fraction]] = [{} for _ in divisors]
    remainder: Dict[Monomial, Fraction] = {}
    p = dict(f.terms)
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, (lm, lc) in enumerate(leads):
            if mono_divides(lm, m):
                qm = mono_div(m, lm)
                qc = c / lc
                quotients[i][qm] = quotients[i].get(qm, 0) + qc
                for dm, dc in divisors[i].terms.items():
                    t = mono_mul(qm, dm)
                    s = p.get(t, 0) - qc * dc
                    if s:
                        p[t] = s
                    else:
                        p.pop(t, None)
                break
        else:
            remainder[m] = c
            del p[m]
    return [Polynomial(q) for q in quotients], Polynomial._raw(remainder)


# -- univariate helpers for fraction reduction -------------------------------

def _univariate(p: Polynomial, var: str) -> List[Fraction]:
    coeffs = [Fraction(0)] * (p.degree_in(var) + 1)
    for m, c in p.terms.items():
        coeffs[dict(m).get(var, 0)] = c
    return coeffs


def _from_univariate(coeffs: Sequence[Fraction], var: str) -> Polynomial:
    terms = {}
    for e, c in enumerate(coeffs):
        if c:
            terms[((var, e),) if e else ONE_MONO] = c
    return Polynomial._raw(terms)


def _trim(c: List[Fraction]) -> List[Fraction]:
    while c and not c[-1]:
        c.pop()
    return c


def _upoly_rem(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= q * bc
        _trim(a)
    return a


def univariate_gcd(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    """Monic gcd of two polynomials in the single variable ``var``."""
    x, y = _trim(_univariate(a, var)), _trim(_univariate(b, var))
    while y:
        x, y = y, _upoly_rem(x, y)
    if not x:
        return Polynomial()
    lead = x[-1]
    return _from_univariate([c / lead for c in x], var)


def exact_quotient(f: Polynomial, d: Polynomial):
    """``f / d`` as a polynomial when ``d`` divides ``f``, else None."""
    (q,), r = poly_divmod(f, [d])
    return q if r.is_zero() else None


# -- fractions of polynomials ------------------------------------------------

_PRINT_ORDER = MonomialOrder("grevlex")


class Scalar:
    """Element of Q(parameters): a quotient of polynomials.

    Reduction is partial (content, univariate gcd, exact division); equality
    is decided by cross-multiplication, so it never depends on it.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, *, reduce_: bool = True):
        num = Polynomial.coerce(num)
        den = Polynomial.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("scalar with zero denominator")
        if reduce_:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> "Scalar":
        s = cls.__new__(cls)
        s.num = num
        s.den = den
        return s

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._raw(Polynomial.constant(x), _ONE)
        if isinstance(x, Polynomial):
            return cls._raw(x, _ONE)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    @classmethod
    def var(cls, name: str) -> "Scalar":
        return cls._raw(Polynomial.var(name), _ONE)

    # structure

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_rational(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_constant(self) -> bool:
        return self.is_rational()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> Polynomial:
        if not self.den.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        d = self.den.constant_value()
        return self.num if d == 1 else self.num * (1 / d)

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.num.variables) | set(self.den.variables)))

    # arithmetic

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den is o.den or self.den == o.den:
            return Scalar(self.num + o.num, self.den)
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return ZERO
        if self.den.is_constant() and o.den.is_constant():
            return Scalar._raw(self.as_polynomial() * o.as_polynomial(), _ONE)
        return Scalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return Scalar(1) / (self ** -k)
        return Scalar(self.num ** k, self.den ** k, reduce_=False)

    # comparison

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        if self.den.is_constant():
            return hash(self.as_polynomial())
        # non-canonical form: only a coarse hash is safe
        return hash(("frac", self.variables))

    def __bool__(self):
        return not self.num.is_zero()

    # evaluation

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        d = self.den.evaluate(assignment)
        if d == 0:
            raise PoleError(f"denominator {self.den} vanishes at {dict(assignment)}")
        return self.num.evaluate(assignment) / d

    def subs(self, mapping) -> "Scalar":
        num = self.num.subs(mapping)
        den = self.den.subs(mapping)
        if den.is_zero():
            raise PoleError(f"denominator {self.den} vanishes under substitution")
        return Scalar(num, den)

    # display

    def __str__(self):
        if self.den.is_constant():
            return str(self.as_polynomial())
        num = str(self.num)
        if len(self.num.terms) > 1 or any(c.denominator != 1 for c in self.num.terms.values()):
            num = f"({num})"
        den = str(self.den)
        (m, c), = self.den.terms.items() if len(self.den.terms) == 1 else ((None, None),)
        if m is None or len(m) > 1 or c != 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


_ONE = Polynomial.constant(1)


def _reduce(num: Polynomial, den: Polynomial):
    if num.is_zero():
        return num, _ONE
    if den.is_constant():
        d = den.constant_value()
        return (num if d == 1 else num * (1 / d)), _ONE
    # divide by a common univariate gcd when both live in one variable
    nv, dv = num.variables, den.variables
    if len(dv) == 1 and set(nv) <= set(dv):
        g = univariate_gcd(num, den, dv[0])
        if g.degree() > 0:
            num = exact_quotient(num, g)
            den = exact_quotient(den, g)
    elif len(den.terms) <= 4:
        q = exact_quotient(num, den)
        if q is not None:
            return q, _ONE
    if den.is_constant():
        d = den.constant_value()
        return num * (1 / d), _ONE
    # normalize: denominator's leading coefficient is 1
    _, lc = den.leading_term(_PRINT_ORDER)
    if lc != 1:
        num, den = num * (1 / lc), den * (1 / lc)
    return num, den


def scalar_arith(a: Scalar, b: Scalar, kind: str) -> Scalar:
    a, b = Scalar.coerce(a), Scalar.coerce(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown scalar operation {kind!r}")


def evaluate(p, assignment: Mapping[str, Number]) -> Fraction:
    """Evaluate a Polynomial or Scalar at a rational point."""
    if isinstance(p, (int, Fraction)):
        return Fraction(p)
    return p.evaluate(assignment)


ZERO = Scalar._raw(Polynomial(), _ONE)
ONE = Scalar._raw(_ONE, _ONE)


# -- textual syntax ----------------------------------------------------------

class ExpressionError(ValueError):
    """Malformed scalar/polynomial text."""

    def __init__(self, message: str, text: str = "", position: int = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at column {position + 1}"
        super().__init__(message)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ExpressionError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _ExprParser:
    # expr := ['+'|'-'] term (('+'|'-') term)*
    # term := power (('*'|'/') power)*
    # power := atom ['^' integer]
    # atom := number | variable | '(' expr ')' | '-' atom

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExpressionError(msg, self.text, tok[2])

    def parse(self) -> Scalar:
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> Scalar:
        sign = 1
        if self.peek() [:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.power()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()
            rhs = self.power()
            if op[1] == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    self.error("division by zero", op)
                value = value / rhs
        return value

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be an integer", tok)
            if sign < 0 and base.is_zero():
                self.error("zero to a negative power", tok)
            base = base ** (sign * tok[1])
        return base

    def atom(self) -> Scalar:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return Scalar.coerce(val)
        if kind == "var":
            return Scalar.var(val)
        if tok[:2] == ("op", "("):
            inner = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.error("expected ')'", self.tokens[self.i - 1])
            return inner
        if tok[:2] == ("op", "-"):
            return -self.power()
        self.error(f"unexpected {val!r}" if val is not None else "unexpected end of input", tok)


def parse_scalar(text: str) -> Scalar:
    """Parse text such as ``3*l11^2*l21 - 2`` or ``1/(l+1)``."""
    return _ExprParser(text).parse()


def parse_polynomial(text: str) -> Polynomial:
    s = parse_scalar(text)
    if not s.is_polynomial():
        raise ExpressionError(f"{text!r} is not a polynomial")
    return s.as_polynomial()


def format_scalar(x) -> str:
    return str(Scalar.coerce(x))

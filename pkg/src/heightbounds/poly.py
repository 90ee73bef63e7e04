"""Exact multivariate polynomials over Q and prime fields.

A :class:`PolyRing` bundles an ordered variable list, a coefficient field and a
monomial order.  Polynomials are immutable; internally they are a dict from
exponent tuples to nonzero coefficients, and the canonical term list (sorted
decreasing in the ring order) is computed on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from dataclasses import field as _field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DuplicateVariable,
    ExponentOverflow,
    FieldMismatch,
    InputError,
    PolySyntaxError,
    RingMismatch,
    UnknownVariable,
    ZeroPolynomial,
)

MAX_EXPONENT = 2**32 - 1
IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class CoefficientField:
    """Q when ``characteristic == 0``, otherwise the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (2 <= p < 2**31 and is_prime(p)):
            raise InputError(f"characteristic must be 0 or a prime below 2^31, got {p}")

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime(cls, p):
        return cls(p)

    @property
    def is_rational(self):
        return self.characteristic == 0

    def __call__(self, value):
        """Coerce an int, Fraction or numeric string into the field."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldMismatch(f"denominator {value.denominator} is not invertible mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inverse(self, a):
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / a

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"Fp {self.characteristic}"


def _grevlex(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block`` (grevlex on the first ``split``
    variables, ties broken by grevlex on the rest).

    ``key`` maps an exponent tuple to a flat tuple of ints whose natural
    ordering is the monomial order; negating it elementwise reverses it.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise InputError(f"unknown monomial order {self.kind!r}")
        if self.kind != "block" and self.split:
            raise InputError("split only applies to block orders")

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def block(cls, split):
        return cls("block", split)

    def key(self, e: tuple) -> tuple:
        if self.kind == "grevlex":
            return _grevlex(e)
        if self.kind == "lex":
            return e
        k = self.split
        return _grevlex(e[:k]) + _grevlex(e[k:])

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    field: CoefficientField = _field(default_factory=CoefficientField)
    order: MonomialOrder = _field(default_factory=MonomialOrder)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        seen = set()
        for v in self.variables:
            if not isinstance(v, str) or not IDENTIFIER.match(v):
                raise InputError(f"invalid variable name {v!r}")
            if v in seen:
                raise DuplicateVariable(f"variable {v!r} appears twice")
            seen.add(v)
        if self.order.kind == "block" and not 0 <= self.order.split <= len(self.variables):
            raise InputError("block split exceeds the number of variables")

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(f"{name!r} is not a variable of this ring") from None

    # construction helpers

    def from_dict(self, d) -> Polynomial:
        coerce = self.field
        out = {}
        for m, c in d.items():
            c = coerce(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exps, coeff=1):
        return self.from_dict({tuple(exps): coeff})

    def parse(self, src: str) -> Polynomial:
        return parse_poly(src, self)

    def __call__(self, value):
        if isinstance(value, Polynomial):
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def with_order(self, order):
        return PolyRing(self.variables, self.field, order)

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}] ({self.order})"


def extend_ring(ring: PolyRing, new_vars: Sequence[str], placement="front", order=None) -> PolyRing:
    """Adjoin ``new_vars`` before or after the existing variables.

    With ``placement="front"`` and no explicit order the result carries the
    block order eliminating the new variables.  Existing polynomials move into
    the new ring with ``f.change_ring(new_ring)``.
    """
    new_vars = tuple(new_vars)
    if not new_vars:
        return ring if order is None else ring.with_order(order)
    clash = set(new_vars) & set(ring.variables)
    if clash:
        raise DuplicateVariable(f"variables already present: {sorted(clash)}")
    if placement == "front":
        names = new_vars + ring.variables
        if order is None:
            order = MonomialOrder.block(len(new_vars))
    elif placement == "back":
        names = ring.variables + new_vars
        if order is None:
            order = ring.order if ring.order.kind != "block" else MonomialOrder.grevlex()
    else:
        raise InputError(f"placement must be 'front' or 'back', not {placement!r}")
    return PolyRing(names, ring.field, order)


def fresh_names(ring: PolyRing, stem: str, count: int) -> list:
    """``count`` names ``stem1..stemN`` avoiding clashes with ``ring``."""
    taken = set(ring.variables)
    while True:
        names = [f"{stem}{i + 1}" for i in range(count)]
        if not taken.intersection(names):
            return names
        stem += "_"


def _fmt_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def _fmt_monomial(e, names):
    parts = []
    for x, k in zip(names, e):
        if k == 1:
            parts.append(x)
        elif k:
            parts.append(f"{x}^{k}")
    return "*".join(parts)


class Polynomial:
    """Immutable element of a :class:`PolyRing`."""

    __slots__ = ("ring", "_d", "_terms", "_hash")

    def __init__(self, ring: PolyRing, d: dict):
        # d must already be normalized: field-coerced, no zero coefficients
        self.ring = ring
        self._d = d
        self._terms = None
        self._hash = None

    def __getstate__(self):
        return (self.ring, self._d)

    def __setstate__(self, state):
        self.ring, self._d = state
        self._terms = None
        self._hash = None

    # -- canonical form

    @property
    def terms(self) -> tuple:
        """(exponents, coefficient) pairs, strictly decreasing in the order."""
        if self._terms is None:
            key = self.ring.order.key
            self._terms = tuple(sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True))
        return self._terms

    def as_dict(self):
        return dict(self._d)

    def is_zero(self):
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def leading_term(self):
        if not self._d:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        return self.terms[0]

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def constant_coefficient(self):
        return self._d.get((0,) * self.ring.nvars, self.ring.field(0))

    def total_degree(self):
        """-1 for the zero polynomial."""
        return max((sum(m) for m in self._d), default=-1)

    def is_constant(self):
        return all(not any(m) for m in self._d)

    def is_homogeneous(self, weights=None):
        if weights is None:
            degs = {sum(m) for m in self._d}
        else:
            degs = {sum(w * k for w, k in zip(weights, m)) for m in self._d}
        return len(degs) <= 1

    def support(self):
        """Indices of variables that occur in the polynomial."""
        used = set()
        for m in self._d:
            used.update(i for i, k in enumerate(m) if k)
        return used

    def monic(self):
        if not self._d:
            return self
        return self.scale(self.ring.field.inverse(self.leading_coefficient()))

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        d = dict(self._d)
        for m, c in other._d.items():
            s = d.get(m, 0) + c
            if p:
                s %= p
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self._d.items()})
        return Polynomial(self.ring, {m: -c for m, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c):
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self._d.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self._d.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._d or not other._d:
            return self.ring.zero()
        bound = max(max(m) for m in self._d) + max(max(m) for m in other._d) if self.ring.nvars else 0
        if bound > MAX_EXPONENT:
            raise ExponentOverflow("exponent exceeds 32 bits")
        p = self.ring.field.characteristic
        d = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = d.get(m, 0) + c1 * c2
        if p:
            d = {m: c % p for m, c in d.items() if c % p}
        else:
            d = {m: c for m, c in d.items() if c}
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        if self._d and k and max((max(m) for m in self._d), default=0) * k > MAX_EXPONENT:
            raise ExponentOverflow("exponent exceeds 32 bits")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, exps, coeff=1):
        coeff = self.ring.field(coeff)
        p = self.ring.field.characteristic
        d = {}
        for m, c in self._d.items():
            v = c * coeff
            if p:
                v %= p
            if v:
                d[tuple(a + b for a, b in zip(m, exps))] = v
        return Polynomial(self.ring, d)

    # -- rings

    def change_ring(self, target: PolyRing) -> Polynomial:
        """Map into ``target`` by variable name.

        Every variable that actually occurs must exist in ``target``.
        """
        if target is self.ring or target == self.ring:
            return self if target is self.ring else Polynomial(target, dict(self._d))
        if target.field != self.ring.field:
            raise RingMismatch("coefficient fields differ")
        pos = []
        used = self.support()
        for i, name in enumerate(self.ring.variables):
            if name in target.variables:
                pos.append(target.variables.index(name))
            elif i in used:
                raise UnknownVariable(f"{name!r} does not exist in the target ring")
            else:
                pos.append(None)
        n = target.nvars
        d = {}
        for m, c in self._d.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[pos[i]] = k
            d[tuple(e)] = c
        return Polynomial(target, d)

    # -- comparison / printing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self._d.items())))
        return self._hash

    def __str__(self):
        if not self._d:
            return "0"
        names = self.ring.variables
        p = self.ring.field.characteristic
        out = []
        for m, c in self.terms:
            mono = _fmt_monomial(m, names)
            neg = not p and c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(a)}*{mono}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


# ---------------------------------------------------------------------------
# expression parser

_TOKEN = re.compile(r"(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S)")


def _tokenize(src):
    tokens = []
    pos = 0
    n = len(src)
    while True:
        while pos < n and src[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(src, pos)
        num, ident, sym = m.groups()
        if num is not None:
            tokens.append(("num", num, pos))
        elif ident is not None:
            tokens.append(("id", ident, pos))
        else:
            if sym not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {sym!r}", pos, src)
            tokens.append((sym, sym, pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src, ring):
        self.src = src
        self.ring = ring
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"expected {want}, found {got}", tok[2], self.src)
        self.i += 1
        return tok

    def expr(self):
        sign = None
        if self.peek()[0] in ("+", "-"):
            sign = self.take()[0]
        result = self.term()
        if sign == "-":
            result = -result
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.factor()
        while self.peek()[0] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self):
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("num")
            base = base ** int(tok[1])
        return base

    def base(self):
        kind, text, pos = self.peek()
        if kind == "num":
            self.take()
            num = int(text)
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("num")
                den = int(den_tok[1])
                if den == 0:
                    raise PolySyntaxError("zero denominator", den_tok[2], self.src)
                return self.ring.const(Fraction(num, den))
            return self.ring.const(num)
        if kind == "id":
            self.take()
            if text not in self.ring.variables:
                raise UnknownVariable(f"unknown variable {text!r} at position {pos}")
            return self.ring.var(text)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        got = "end of input" if kind == "end" else repr(text)
        raise PolySyntaxError(f"unexpected {got}", pos, self.src)


def parse_poly(src: str, ring: PolyRing) -> Polynomial:
    """Parse ``src`` in the expression grammar::

        expr   := ["+"|"-"] term (("+"|"-") term)*
        term   := factor ("*" factor)*
        factor := base ("^" uint)?
        base   := rational | identifier | "(" expr ")"
    """
    if not isinstance(src, str):
        raise PolySyntaxError("expression must be a string")
    parser = _Parser(src, ring)
    if parser.peek()[0] == "end":
        raise PolySyntaxError("empty expression", 0, src)
    result = parser.expr()
    parser.take("end")
    return result


def parse_polys(srcs: Iterable[str], ring: PolyRing) -> list:
    return [parse_poly(s, ring) for s in srcs]

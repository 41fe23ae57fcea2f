"""Sparse polynomials in x1, x2, y1, y2 over F_p.

A monomial is an exponent 4-tuple ``(u, v, s, t)`` meaning
``x1^u x2^v y1^s y2^t``. Coefficients are stored as canonical ints in
``[0, p)``; the zero polynomial has no terms.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, Mapping, Sequence

from .errors import FieldMismatch, PolySyntaxError, SingularMatrix, UnknownVariable, ZeroPolynomial
from .fields import ExtElement, FieldElement, PrimeField
from .linalg import det_mod

Monomial = tuple[int, int, int, int]

VARIABLES = ("x1", "x2", "y1", "y2")
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}
ONE: Monomial = (0, 0, 0, 0)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def monomial_degree(m: Monomial) -> int:
    return m[0] + m[1] + m[2] + m[3]


class MonomialOrder(enum.Enum):
    GRLEX = "grlex"
    LEX = "lex"  # x1 > y1 > x2 > y2

    def key(self, m: Monomial):
        if self is MonomialOrder.GRLEX:
            return (m[0] + m[1] + m[2] + m[3], m[0], m[1], m[2], m[3])
        return (m[0], m[2], m[1], m[3])


def monomials_of_degree(d: int) -> list[Monomial]:
    """All degree-d monomials, grlex-descending."""
    out = []
    for u in range(d, -1, -1):
        for v in range(d - u, -1, -1):
            for s in range(d - u - v, -1, -1):
                out.append((u, v, s, d - u - v - s))
    return out


def _mul_terms(a: Mapping[Monomial, int], b: Mapping[Monomial, int], p: int) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3])
            out[m] = (out.get(m, 0) + ca * cb) % p
    return {m: c for m, c in out.items() if c}


class Polynomial:
    """Immutable sparse polynomial over F_p."""

    __slots__ = ("p", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, p: int = 0, *, _clean: bool = False):
        if p < 3:
            PrimeField(p)
        self.p = p
        if terms is None:
            self._terms: dict[Monomial, int] = {}
        elif _clean:
            self._terms = dict(terms)
        else:
            clean = {}
            for m, c in terms.items():
                if len(m) != 4 or min(m) < 0:
                    raise ValueError(f"bad exponent vector {m}")
                c = int(c) % p
                if c:
                    clean[tuple(int(e) for e in m)] = c
            self._terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> Polynomial:
        return cls({}, p, _clean=True)

    @classmethod
    def constant(cls, c: int, p: int) -> Polynomial:
        return cls({ONE: c}, p)

    @classmethod
    def monomial(cls, m: Sequence[int], p: int, c: int = 1) -> Polynomial:
        return cls({tuple(m): c}, p)

    @classmethod
    def var(cls, name: str, p: int) -> Polynomial:
        m = [0, 0, 0, 0]
        m[_VAR_INDEX[name]] = 1
        return cls({tuple(m): 1}, p, _clean=True)

    @classmethod
    def variables(cls, p: int) -> tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
        return tuple(cls.var(n, p) for n in VARIABLES)

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, m: Monomial) -> int:
        return self._terms.get(tuple(m), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(monomial_degree(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({monomial_degree(m) for m in self._terms}) <= 1

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(m[0] + m[1], m[2] + m[3]) for m in self._terms}

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def sorted_terms(self, order: MonomialOrder = MonomialOrder.GRLEX) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def homogeneous_component(self, d: int) -> Polynomial:
        return Polynomial({m: c for m, c in self._terms.items() if monomial_degree(m) == d}, self.p, _clean=True)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: Polynomial):
        if other.p != self.p:
            raise FieldMismatch(f"polynomials over F_{self.p} and F_{other.p}")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldMismatch(f"scalar from F_{other.p}")
            other = other.value
        if isinstance(other, int):
            return Polynomial.constant(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        p = self.p
        for m, c in other._terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(out, p, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: self.p - c for m, c in self._terms.items()}, self.p, _clean=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial(_mul_terms(self._terms, other._terms, self.p), self.p, _clean=True)

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        if isinstance(c, FieldElement):
            if c.p != self.p:
                raise FieldMismatch(f"scalar from F_{c.p}")
            c = c.value
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.p)
        return Polynomial({m: v * c % self.p for m, v in self._terms.items()}, self.p, _clean=True)

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.p == other.p and self._terms == other._terms
        if isinstance(other, int):
            return self == Polynomial.constant(other, self.p)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, p={self.p})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def leading_term(f: Polynomial, order: MonomialOrder = MonomialOrder.GRLEX) -> tuple[Monomial, FieldElement]:
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no leading term")
    m = max(f._terms, key=order.key)
    return m, FieldElement(f._terms[m], f.p)


def _linear_forms(A: Sequence[Sequence[int]], p: int) -> list[dict[Monomial, int]]:
    forms = []
    for row in A:
        form = {}
        for j, a in enumerate(row):
            a = int(a) % p
            if a:
                m = [0, 0, 0, 0]
                m[j] = 1
                form[tuple(m)] = a
        forms.append(form)
    return forms


def substitute_linear(f: Polynomial, A: Sequence[Sequence[int]], *, check: bool = True) -> Polynomial:
    """Replace each variable z_i by sum_j A[i][j] z_j, with z = (x1, x2, y1, y2).

    Composition: substitute_linear(f, A @ B) == substitute_linear(substitute_linear(f, A), B).
    """
    p = f.p
    if len(A) != 4 or any(len(row) != 4 for row in A):
        raise ValueError("substitution matrix must be 4x4")
    if check and det_mod(A, p) == 0:
        raise SingularMatrix("substitution matrix is singular")
    forms = _linear_forms(A, p)
    powers: list[list[dict[Monomial, int]]] = [[{ONE: 1}] for _ in range(4)]

    def power(i: int, k: int) -> dict[Monomial, int]:
        cache = powers[i]
        while len(cache) <= k:
            cache.append(_mul_terms(cache[-1], forms[i], p))
        return cache[k]

    out: dict[Monomial, int] = {}
    for m, c in f._terms.items():
        img = {ONE: c}
        for i in range(4):
            if m[i]:
                img = _mul_terms(img, power(i, m[i]), p)
        for mm, cc in img.items():
            out[mm] = (out.get(mm, 0) + cc) % p
    return Polynomial({m: c for m, c in out.items() if c}, p, _clean=True)


def evaluate(f: Polynomial, point: Sequence):
    """Evaluate at a 4-point whose entries are ints, F_p elements or F_{p^e} elements."""
    if len(point) != 4:
        raise ValueError("point must have 4 coordinates")
    ext = [z for z in point if isinstance(z, ExtElement)]
    if ext:
        F = ext[0].field
        if F.p != f.p:
            raise FieldMismatch(f"polynomial over F_{f.p} evaluated in F_{F.p}^{F.e}")
        coords = []
        for z in point:
            if isinstance(z, ExtElement):
                if z.field != F:
                    raise FieldMismatch("point coordinates live in different fields")
                coords.append(z.coeffs)
            else:
                if isinstance(z, FieldElement) and z.p != f.p:
                    raise FieldMismatch(f"coordinate from F_{z.p}")
                coords.append(F.embed(int(z)).coeffs)
        return _evaluate_ext(f, coords, F)
    for z in point:
        if isinstance(z, FieldElement) and z.p != f.p:
            raise FieldMismatch(f"coordinate from F_{z.p}")
    p = f.p
    vals = [int(z) % p for z in point]
    total = 0
    for m, c in f._terms.items():
        total += c * pow(vals[0], m[0], p) * pow(vals[1], m[1], p) * pow(vals[2], m[2], p) * pow(vals[3], m[3], p)
    return FieldElement(total % p, p)


def _evaluate_ext(f: Polynomial, coords, F) -> ExtElement:
    p, e, mul = F.p, F.e, F._mul
    one = F.one.coeffs
    maxexp = [0, 0, 0, 0]
    for m in f._terms:
        for i in range(4):
            maxexp[i] = max(maxexp[i], m[i])
    pw = []
    for i in range(4):
        table = [one]
        for _ in range(maxexp[i]):
            table.append(mul(table[-1], coords[i]))
        pw.append(table)
    acc = [0] * e
    for m, c in f._terms.items():
        v = mul(mul(pw[0][m[0]], pw[1][m[1]]), mul(pw[2][m[2]], pw[3][m[3]]))
        for k in range(e):
            acc[k] += c * v[k]
    return ExtElement(tuple(a % p for a in acc), F)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def _format_monomial(m: Monomial) -> str:
    parts = []
    for name, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for m, c in f.sorted_terms(MonomialOrder.GRLEX):
        mono = _format_monomial(m)
        if not mono:
            pieces.append(str(c))
        elif c == 1:
            pieces.append(mono)
        else:
            pieces.append(f"{c}*{mono}")
    return " + ".join(pieces)


_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tok = m.group(kind)
        if kind == "name" and tok not in _VAR_INDEX:
            raise UnknownVariable(f"unknown variable {tok!r}", text, start)
        tokens.append((kind, tok, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, p: int):
        self.text = text
        self.p = p
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise PolySyntaxError(f"expected {want}, found {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        terms: dict[Monomial, int] = {}
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.i += 1
            sign = -1
        self._add(terms, sign, self.term())
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.take("op")[1] == "+" else -1
            self._add(terms, sign, self.term())
        if self.peek()[0] != "end":
            tok = self.peek()
            raise PolySyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return Polynomial(terms, self.p)

    def _add(self, terms, sign, term):
        m, c = term
        terms[m] = terms.get(m, 0) + sign * c

    def term(self) -> tuple[Monomial, int]:
        kind = self.peek()[0]
        if kind == "nat":
            c = int(self.take("nat")[1])
            if self.peek()[:2] == ("op", "*"):
                self.i += 1
                return self.powers(), c
            return ONE, c
        if kind == "name":
            return self.powers(), 1
        tok = self.peek()
        raise PolySyntaxError(f"expected a term, found {tok[1] or 'end of input'!r}", self.text, tok[2])

    def powers(self) -> Monomial:
        m = list(self.power())
        while self.peek()[:2] == ("op", "*"):
            self.i += 1
            nxt = self.power()
            m = [a + b for a, b in zip(m, nxt)]
        return tuple(m)

    def power(self) -> Monomial:
        name = self.take("name")[1]
        e = 1
        if self.peek()[:2] == ("op", "^"):
            self.i += 1
            e = int(self.take("nat")[1])
        m = [0, 0, 0, 0]
        m[_VAR_INDEX[name]] = e
        return tuple(m)


def parse_poly(text: str, p: int) -> Polynomial:
    PrimeField(p)
    return _Parser(text, p).parse()


def poly(text: str, p: int) -> Polynomial:
    """Shorthand for parse_poly."""
    return parse_poly(text, p)


def from_terms(pairs: Iterable[tuple[Sequence[int], int]], p: int) -> Polynomial:
    terms: dict[Monomial, int] = {}
    for m, c in pairs:
        m = tuple(m)
        terms[m] = terms.get(m, 0) + c
    return Polynomial(terms, p)

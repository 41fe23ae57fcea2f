"""Exact arithmetic in prime fields F_p and their extensions F_{p^e}.

Prime-field elements are stored as canonical residues in ``[0, p)``.
Extension-field elements are little-endian coefficient tuples of length ``e``
modulo a monic irreducible polynomial.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import FieldMismatch, NotPrime, ReducibleModulus, ZeroInverse


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise NotPrime(f"p must be an odd prime, got {self.p}")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self.p)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self.p)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self.p)

    def elements(self):
        return [FieldElement(v, self.p) for v in range(self.p)]


@dataclass(frozen=True, order=True)
class FieldElement:
    """Residue ``value`` in F_p. Plain ints are coerced on arithmetic."""

    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.p, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return field_inverse(self) ** (-k)
        return FieldElement(pow(self.value, k, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * field_inverse(FieldElement(o, self.p))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"F{self.p}({self.value})"


def field_inverse(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse in F_{a.p}")
    return FieldElement(pow(a.value, -1, a.p), a.p)


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInverse("0 has no multiplicative order")
    n = p - 1
    order = n
    for q in prime_factors(n):
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    for a in range(2 if p > 2 else 1, p):
        if multiplicative_order(a, p) == p - 1:
            return a
    raise AssertionError("unreachable: every prime field has a primitive root")


def primitive_root(p: int) -> FieldElement:
    """Smallest generator of the cyclic group F_p^x."""
    PrimeField(p)
    return FieldElement(_primitive_root(p), p)


def is_square(a: int, p: int) -> bool:
    a %= p
    return a == 0 or pow(a, (p - 1) // 2, p) == 1


def select_lambda(p: int) -> FieldElement:
    """Non-square used for the minus-type form: -1 when p = 3 mod 4, else the
    smallest primitive root."""
    PrimeField(p)
    lam = p - 1 if p % 4 == 3 else _primitive_root(p)
    assert pow(lam, (p - 1) // 2, p) == p - 1, "selected lambda must be a non-square"
    return FieldElement(lam, p)


# ---------------------------------------------------------------------------
# univariate helpers over F_p (little-endian coefficient lists)
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _upoly_rem([c % p for c in prod], mod, p)


def _upoly_rem(a: list[int], mod: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _upoly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _upoly_rem(a, b, p)
    return a


def _upoly_powmod(base: list[int], k: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _upoly_rem(base, mod, p)
    while k:
        if k & 1:
            result = _upoly_mulmod(result, base, mod, p)
        base = _upoly_mulmod(base, base, mod, p)
        k >>= 1
    return result


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    e = len(modulus) - 1
    mod = list(modulus)
    if e == 1:
        return True
    x = [0, 1]
    if _upoly_powmod(x, p**e, mod, p) != _upoly_rem(x, mod, p):
        return False
    for q in prime_factors(e):
        h = _upoly_powmod(x, p ** (e // q), mod, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        g = _upoly_gcd(mod, _trim(h), p)
        if len(g) != 1:
            return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    if e == 2:
        lam = select_lambda(p).value
        return (-lam % p, 0, 1)
    # lexicographically smallest monic irreducible, comparing from t^(e-1) down
    for high_to_low in itertools.product(range(p), repeat=e):
        modulus = tuple(reversed(high_to_low)) + (1,)
        if modulus[0] and is_irreducible(modulus, p):
            return modulus
    raise AssertionError("irreducible polynomials exist in every degree")


class ExtensionField:
    """F_{p^e} = F_p[t] / (modulus)."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None = None):
        PrimeField(p)
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree e")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
        self.modulus = modulus
        self.order = p**e
        self.zero = ExtElement((0,) * e, self)
        self.one = self.embed(1)

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"ExtensionField(p={self.p}, e={self.e}, modulus={self.modulus})"

    def embed(self, value: int) -> ExtElement:
        return ExtElement((value % self.p,) + (0,) * (self.e - 1), self)

    def element(self, coeffs) -> ExtElement:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.e:
            raise ValueError(f"need {self.e} coefficients")
        return ExtElement(coeffs, self)

    def from_index(self, n: int) -> ExtElement:
        """Element whose base-p digits (least significant first) are its coefficients."""
        coeffs = []
        for _ in range(self.e):
            n, r = divmod(n, self.p)
            coeffs.append(r)
        return ExtElement(tuple(coeffs), self)

    def elements(self):
        return [self.from_index(n) for n in range(self.order)]

    # raw tuple arithmetic, used by ExtElement and hot loops
    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        e, p, mod = self.e, self.p, self.modulus
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k] % p
            if c:
                base = k - e
                for i in range(e):
                    prod[base + i] -= c * mod[i]
        return tuple(c % p for c in prod[:e])


class ExtElement:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: tuple[int, ...], field: ExtensionField):
        self.coeffs = coeffs
        self.field = field

    def _other(self, other) -> tuple[int, ...]:
        if isinstance(other, ExtElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("elements of different extension fields")
            return other.coeffs
        if isinstance(other, FieldElement):
            if other.p != self.field.p:
                raise FieldMismatch(f"F_{other.p} element in F_{self.field.p}^e arithmetic")
            other = other.value
        if isinstance(other, int):
            return self.field.embed(other).coeffs
        raise TypeError(f"cannot combine ExtElement with {type(other).__name__}")

    def __add__(self, other):
        p = self.field.p
        return ExtElement(tuple((a + b) % p for a, b in zip(self.coeffs, self._other(other))), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        p = self.field.p
        return ExtElement(tuple((a - b) % p for a, b in zip(self.coeffs, self._other(other))), self.field)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        p = self.field.p
        return ExtElement(tuple(-a % p for a in self.coeffs), self.field)

    def __mul__(self, other):
        return ExtElement(self.field._mul(self.coeffs, self._other(other)), self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one.coeffs
        base = self.coeffs
        while k:
            if k & 1:
                result = self.field._mul(result, base)
            base = self.field._mul(base, base)
            k >>= 1
        return ExtElement(result, self.field)

    def inverse(self) -> ExtElement:
        if self.is_zero():
            raise ZeroInverse("0 has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        if not isinstance(other, ExtElement):
            other = ExtElement(self._other(other), self.field)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self.coeffs == self._other(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ExtElement({list(self.coeffs)})"

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def random_ext_element(field: ExtensionField, rng: random.Random) -> ExtElement:
    """Uniform draw from F_{p^e}; all randomness comes from the caller's ``rng``."""
    return ExtElement(tuple(rng.randrange(field.p) for _ in range(field.e)), field)


def minimal_extension_degree(p: int, lower_bound: int) -> int:
    e = 1
    while p**e < lower_bound:
        e += 1
    return e

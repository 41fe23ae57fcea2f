"""Finite 2x2 matrix groups over F_p and their action on F_p[V + V*].

Group elements act on the variable vector (x1, x2, y1, y2) through
``action_matrix``: a single g acts as block-diag(g, (g^T)^-1) and a product
element (g1, g2) as block-diag(g1, (g2^T)^-1).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    ClosureBudgetExceeded,
    NoGeneratorFound,
    NotASubgroup,
    PrimeTooLarge,
    SingularGenerator,
    SingularMatrix,
)
from .fields import FieldElement, PrimeField, is_square, primitive_root, select_lambda

CLOSURE_BUDGET = 10**6


@dataclass(frozen=True, order=True)
class Mat2:
    """2x2 matrix over F_p, entries row-major and reduced."""

    entries: tuple[int, int, int, int]
    p: int

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], p: int) -> Mat2:
        (a, b), (c, d) = rows
        return cls((int(a) % p, int(b) % p, int(c) % p, int(d) % p), p)

    @classmethod
    def identity(cls, p: int) -> Mat2:
        return cls((1, 0, 0, 1), p)

    @classmethod
    def diag(cls, a: int, d: int, p: int) -> Mat2:
        return cls((a % p, 0, 0, d % p), p)

    def __mul__(self, other: Mat2) -> Mat2:
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        p = self.p
        return Mat2(((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p), p)

    def __pow__(self, k: int) -> Mat2:
        if k < 0:
            return self.inverse() ** (-k)
        result = Mat2.identity(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def det(self) -> int:
        a, b, c, d = self.entries
        return (a * d - b * c) % self.p

    def inverse(self) -> Mat2:
        det = self.det()
        if det == 0:
            raise SingularMatrix(f"{self.rows()} is singular mod {self.p}")
        inv = pow(det, -1, self.p)
        a, b, c, d = self.entries
        p = self.p
        return Mat2((d * inv % p, -b * inv % p, -c * inv % p, a * inv % p), p)

    def transpose(self) -> Mat2:
        a, b, c, d = self.entries
        return Mat2((a, c, b, d), self.p)

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def order(self) -> int:
        if self.det() == 0:
            raise SingularMatrix("singular matrices have no multiplicative order")
        g, k = self, 1
        while not g.is_identity():
            g = g * self
            k += 1
        return k

    def rows(self) -> list[list[int]]:
        a, b, c, d = self.entries
        return [[a, b], [c, d]]

    def __repr__(self):
        return f"Mat2({self.rows()}, p={self.p})"


class ProductElement(NamedTuple):
    g1: Mat2
    g2: Mat2

    def __mul__(self, other: ProductElement) -> ProductElement:
        return ProductElement(self.g1 * other.g1, self.g2 * other.g2)

    def inverse(self) -> ProductElement:
        return ProductElement(self.g1.inverse(), self.g2.inverse())

    @property
    def p(self) -> int:
        return self.g1.p

    def rows(self) -> list[list[list[int]]]:
        return [self.g1.rows(), self.g2.rows()]


@dataclass
class MatrixGroup:
    p: int
    elements: tuple[Mat2, ...]
    generators: tuple[Mat2, ...]
    label: str = "custom"  # SO2plus | O2plus | O2minus | GL2 | custom
    lam: FieldElement | None = None
    reflection: Mat2 | None = None  # eta (minus) or xi (plus)
    rotation: Mat2 | None = None  # sigma (minus) or tau_a (plus)
    rotation_params: tuple[int, int] | None = None
    generator_note: str | None = None
    _members: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        self._members = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Mat2]:
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._members

    @property
    def identity(self) -> Mat2:
        return Mat2.identity(self.p)

    def is_closed(self) -> bool:
        if self.identity not in self:
            return False
        return all(g * h in self for g in self.elements for h in self.generators) and all(
            g.inverse() in self for g in self.elements
        )

    def element_set(self) -> frozenset:
        return self._members


class ProductGroup:
    """Direct product factor x factor, iterated lazily by pairs."""

    def __init__(self, factor: MatrixGroup):
        self.factor = factor
        self.p = factor.p
        e = Mat2.identity(self.p)
        self.generators = tuple(ProductElement(g, e) for g in factor.generators) + tuple(
            ProductElement(e, g) for g in factor.generators
        )
        self.label = f"{factor.label}x{factor.label}"
        self.lam = factor.lam

    @property
    def order(self) -> int:
        return factor_order_squared(self.factor)

    def __len__(self):
        return self.order

    def __iter__(self) -> Iterator[ProductElement]:
        for g1 in self.factor:
            for g2 in self.factor:
                yield ProductElement(g1, g2)

    def __contains__(self, g) -> bool:
        return isinstance(g, ProductElement) and g.g1 in self.factor and g.g2 in self.factor

    @property
    def identity(self) -> ProductElement:
        e = Mat2.identity(self.p)
        return ProductElement(e, e)

    def diagonal(self) -> MatrixGroup:
        """The diagonal copy {(g, g)}; it acts exactly as the factor does."""
        return self.factor


def factor_order_squared(G: MatrixGroup) -> int:
    return G.order * G.order


def closure(generators: Sequence[Mat2], p: int, label: str = "custom", budget: int = CLOSURE_BUDGET, **meta) -> MatrixGroup:
    gens = tuple(generators)
    for g in gens:
        if g.p != p:
            raise ValueError(f"generator over F_{g.p} in a group over F_{p}")
        if g.det() == 0:
            raise SingularGenerator(f"generator {g.rows()} is singular")
    e = Mat2.identity(p)
    seen = {e}
    queue = deque([e])
    while queue:
        h = queue.popleft()
        for g in gens:
            k = h * g
            if k not in seen:
                seen.add(k)
                if len(seen) > budget:
                    raise ClosureBudgetExceeded(f"closure exceeds {budget} elements")
                queue.append(k)
    return MatrixGroup(p, tuple(sorted(seen)), gens, label, **meta)


def xi(p: int) -> Mat2:
    return Mat2((0, 1, 1, 0), p)


def tau(a: int, p: int) -> Mat2:
    return Mat2.diag(a, pow(a, -1, p), p)


def eta(p: int) -> Mat2:
    return Mat2.diag(-1, 1, p)


def minus_rotation(a: int, b: int, lam: int, p: int) -> Mat2:
    """Rotation [[a, lam*b], [b, a]]; preserves x1^2 - lam*x2^2 when a^2 - lam*b^2 = 1."""
    return Mat2((a % p, lam * b % p, b % p, a % p), p)


def _find_rotation(p: int, lam: int, a_values) -> tuple[int, int] | None:
    for a in a_values:
        for b in range(1, p):
            if (a * a - lam * b * b) % p == 1 and minus_rotation(a, b, lam, p).order() == p + 1:
                return a, b
    return None


def orthogonal_group(p: int, kind: str = "plus", lam=None) -> MatrixGroup:
    PrimeField(p)
    if kind == "plus":
        a = primitive_root(p).value
        X, T = xi(p), tau(a, p)
        G = closure([X, T], p, "O2plus", reflection=X, rotation=T, rotation_params=(a, 0))
        assert G.order == 2 * (p - 1)
        return G
    if kind != "minus":
        raise ValueError(f"kind must be 'plus' or 'minus', got {kind!r}")
    lam = select_lambda(p).value if lam is None else int(lam) % p
    if is_square(lam, p):
        raise ValueError(f"lambda={lam} is a square mod {p}; the minus form needs a non-square")
    note = None
    found = _find_rotation(p, lam, range(1, p))
    if found is None:
        found = _find_rotation(p, lam, range(0, p))
        if found is not None:
            note = (
                f"no rotation with a, b both nonzero has order {p + 1} for p={p}; "
                f"used a={found[0]}, b={found[1]}"
            )
    if found is None:
        raise NoGeneratorFound(f"no rotation of order {p + 1} solves a^2 - {lam}*b^2 = 1 mod {p}")
    a, b = found
    E, S = eta(p), minus_rotation(a, b, lam, p)
    G = closure(
        [E, S], p, "O2minus",
        lam=FieldElement(lam, p), reflection=E, rotation=S, rotation_params=(a, b), generator_note=note,
    )
    if G.order != 2 * (p + 1):
        raise NoGeneratorFound(f"closure has order {G.order}, expected {2 * (p + 1)}")
    return G


def stabilizer_bruteforce(p: int, form: Sequence[Sequence[int]]) -> MatrixGroup:
    """All g in GL_2(F_p) with g^T D g = D, by enumeration of p^4 matrices."""
    if p > 13:
        raise PrimeTooLarge(f"brute-force stabilizer limited to p <= 13, got {p}")
    PrimeField(p)
    D = Mat2.of([[int(x) for x in row] for row in form], p)
    if D.entries[1] != D.entries[2] or D.det() == 0:
        raise ValueError("form matrix must be symmetric and invertible")
    members = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    g = Mat2((a, b, c, d), p)
                    if g.det() and g.transpose() * D * g == D:
                        members.append(g)
    members.sort()
    return MatrixGroup(p, tuple(members), tuple(members), "custom")


def special_subgroup(G: MatrixGroup) -> MatrixGroup:
    elements = tuple(g for g in G.elements if g.det() == 1)
    if G.label == "O2plus" and G.rotation is not None:
        H = MatrixGroup(G.p, elements, (G.rotation,), "SO2plus", rotation=G.rotation, rotation_params=G.rotation_params)
        assert H.order == G.p - 1
        return H
    gens: list[Mat2] = []
    span = {Mat2.identity(G.p)}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(closure(gens, G.p).elements)
    label = "SO2minus" if G.label == "O2minus" else "custom"
    return MatrixGroup(G.p, elements, tuple(gens), label, lam=G.lam)


def general_linear_group(p: int) -> MatrixGroup:
    if p > 13:
        raise PrimeTooLarge("GL_2 enumeration limited to p <= 13")
    members = sorted(
        Mat2((a, b, c, d), p)
        for a in range(p) for b in range(p) for c in range(p) for d in range(p)
        if (a * d - b * c) % p
    )
    a = primitive_root(p).value
    gens = (Mat2.diag(a, 1, p), Mat2((-1 % p, 1, -1 % p, 0), p))
    return MatrixGroup(p, tuple(members), gens, "GL2")


def random_gl2(p: int, rng: random.Random) -> Mat2:
    while True:
        g = Mat2(tuple(rng.randrange(p) for _ in range(4)), p)
        if g.det():
            return g


def coset_representatives(G, H: MatrixGroup) -> list:
    """One representative per left coset gH, identity first.

    For the product group over O2- with H its diagonal, returns
    (sigma^i, 1) for i = 0..p followed by (eta*sigma^i, 1).
    """
    if isinstance(G, ProductGroup):
        return _product_cosets(G, H)
    for h in H.elements:
        if h not in G:
            raise NotASubgroup(f"{h.rows()} lies in H but not in G")
    if G.order % H.order:
        raise NotASubgroup("|H| does not divide |G|")
    covered: set[Mat2] = set()
    reps = []
    for g in (G.identity,) + G.elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(g * h for h in H.elements)
    assert len(reps) == G.order // H.order
    return reps


def _product_cosets(G: ProductGroup, H: MatrixGroup) -> list[ProductElement]:
    for h in H.elements:
        if h not in G.factor:
            raise NotASubgroup(f"diagonal element {h.rows()} not in the product group")
    e = Mat2.identity(G.p)
    F = G.factor
    if H.element_set() == F.element_set() and F.label == "O2minus" and F.rotation is not None:
        S, E = F.rotation, F.reflection
        reps = [ProductElement(S**i, e) for i in range(G.p + 1)]
        reps += [ProductElement(E * S**i, e) for i in range(G.p + 1)]
        # (g, 1) and (k, 1) share a coset of the diagonal iff g = k
        assert len({r.g1 for r in reps}) == F.order
        return reps
    covered: set[ProductElement] = set()
    reps = []
    for g in [G.identity] + list(G):
        if g in covered:
            continue
        reps.append(g)
        covered.update(g * ProductElement(h, h) for h in H.elements)
    return reps


ActionMatrix = tuple[tuple[int, int, int, int], ...]


def action_matrix(g) -> ActionMatrix:
    if isinstance(g, ProductElement):
        x_block, y_src = g.g1, g.g2
    else:
        x_block, y_src = g, g
    if x_block.det() == 0 or y_src.det() == 0:
        raise SingularMatrix("action of a singular matrix")
    y_block = y_src.transpose().inverse()
    a, b, c, d = x_block.entries
    e, f, h, k = y_block.entries
    return ((a, b, 0, 0), (c, d, 0, 0), (0, 0, e, f), (0, 0, h, k))


def blocks(g) -> tuple[Mat2, Mat2]:
    """(x-block, y-block) of the action matrix."""
    if isinstance(g, ProductElement):
        return g.g1, g.g2.transpose().inverse()
    return g, g.transpose().inverse()

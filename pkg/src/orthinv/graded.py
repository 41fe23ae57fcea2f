"""Graded linear algebra on homogeneous pieces of F_p[x1, x2, y1, y2].

A piece is indexed by a *key*: either a bidegree ``(a, b)`` (x-degree, y-degree)
or a plain total degree ``d``. Each key owns an ordered monomial list
(grlex-descending) so polynomials become coefficient row vectors.

Every group action in this package is block-diagonal on (x | y), so fixed
spaces are always computed per bidegree, where the action on the piece
(a, b) is kron(Sym^a(x-block), Sym^b(y-block)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .linalg import left_nullspace, rref
from .matgroups import Mat2, blocks
from .polyring import Monomial, MonomialOrder, Polynomial, monomials_of_degree


@lru_cache(maxsize=None)
def bidegree_monomials(a: int, b: int) -> tuple[Monomial, ...]:
    return tuple((a - v, v, b - t, t) for v in range(a + 1) for t in range(b + 1))


@lru_cache(maxsize=None)
def degree_monomials(d: int) -> tuple[Monomial, ...]:
    return tuple(monomials_of_degree(d))


@lru_cache(maxsize=None)
def _index(key) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_for(key))}


def monomials_for(key) -> tuple[Monomial, ...]:
    if isinstance(key, tuple):
        return bidegree_monomials(*key)
    return degree_monomials(key)


def key_degree(key) -> int:
    return key[0] + key[1] if isinstance(key, tuple) else key


def key_sub(key, other):
    """key - other, or None if negative."""
    if isinstance(key, tuple):
        a, b = key[0] - other[0], key[1] - other[1]
        return (a, b) if a >= 0 and b >= 0 else None
    d = key - other
    return d if d >= 0 else None


def zero_key(bigraded: bool):
    return (0, 0) if bigraded else 0


def poly_key(f: Polynomial, bigraded: bool):
    """Grading key of a (bi)homogeneous nonzero polynomial, else None."""
    if f.is_zero():
        return None
    if bigraded:
        bd = f.bidegrees()
        return next(iter(bd)) if len(bd) == 1 else None
    return f.degree() if f.is_homogeneous() else None


def keys_up_to(D: int, bigraded: bool, x_only: bool = False) -> list:
    if not bigraded:
        return list(range(D + 1))
    if x_only:
        return [(d, 0) for d in range(D + 1)]
    return [(a, d - a) for d in range(D + 1) for a in range(d, -1, -1)]


def to_vector(f: Polynomial, key) -> np.ndarray:
    idx = _index(key)
    vec = np.zeros(len(idx), dtype=np.int64)
    for m, c in f.items():
        vec[idx[m]] = c
    return vec


def to_poly(vec: np.ndarray, key, p: int) -> Polynomial:
    mons = monomials_for(key)
    return Polynomial({mons[i]: int(vec[i]) for i in np.flatnonzero(vec)}, p, _clean=True)


def multiplication_matrix(f: Polynomial, src_key, tgt_key) -> np.ndarray:
    """Matrix of h -> h*f from the piece ``src_key`` into ``tgt_key``."""
    src = monomials_for(src_key)
    tgt = _index(tgt_key)
    M = np.zeros((len(src), len(tgt)), dtype=np.int64)
    terms = list(f.items())
    for i, m in enumerate(src):
        for t, c in terms:
            M[i, tgt[(m[0] + t[0], m[1] + t[1], m[2] + t[2], m[3] + t[3])]] += c
    return M % f.p


# ---------------------------------------------------------------------------
# group action on bidegree pieces
# ---------------------------------------------------------------------------

def _binary_power(form: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.array([1], dtype=np.int64)
    for _ in range(k):
        out = np.convolve(out, form) % p
    return out


@lru_cache(maxsize=4096)
def sym_power(g: Mat2, k: int) -> np.ndarray:
    """Action of the substitution X1 -> g11 X1 + g12 X2, X2 -> g21 X1 + g22 X2 on
    binary forms of degree k; rows/cols indexed by the X2 exponent."""
    p = g.p
    a, b, c, d = g.entries
    L1 = np.array([a, b], dtype=np.int64)
    L2 = np.array([c, d], dtype=np.int64)
    M = np.zeros((k + 1, k + 1), dtype=np.int64)
    for v in range(k + 1):
        M[v] = np.convolve(_binary_power(L1, k - v, p), _binary_power(L2, v, p)) % p
    M.setflags(write=False)
    return M


def block_action(g, key: tuple[int, int]) -> np.ndarray:
    """Matrix M with act(g, f) <-> to_vector(f) @ M on the bidegree piece."""
    xb, yb = blocks(g)
    a, b = key
    return np.kron(sym_power(xb, a), sym_power(yb, b)) % xb.p


# ---------------------------------------------------------------------------
# graded bases
# ---------------------------------------------------------------------------

@dataclass
class GradedBasis:
    """Per-key reduced row echelon bases of a graded subspace."""

    p: int
    pieces: dict = field(default_factory=dict)  # key -> (rows, pivots)

    def set(self, key, rows: np.ndarray):
        R, piv = rref(rows, self.p) if rows.size else (np.zeros((0, len(monomials_for(key))), np.int64), [])
        self.pieces[key] = (R, piv)

    def rows(self, key) -> np.ndarray:
        if key not in self.pieces:
            return np.zeros((0, len(monomials_for(key))), dtype=np.int64)
        return self.pieces[key][0]

    def dim_key(self, key) -> int:
        return len(self.pieces[key][1]) if key in self.pieces else 0

    def dim(self, d: int) -> int:
        return sum(len(piv) for k, (_, piv) in self.pieces.items() if key_degree(k) == d)

    def dims(self, D: int) -> list[int]:
        return [self.dim(d) for d in range(D + 1)]

    def basis(self, d: int) -> list[Polynomial]:
        """Degree-d basis, pivot-normalized, sorted by leading monomial (grlex)."""
        polys = []
        for k, (R, _) in self.pieces.items():
            if key_degree(k) == d:
                polys.extend(to_poly(row, k, self.p) for row in R)
        return sorted(polys, key=lambda f: MonomialOrder.GRLEX.key(max(f.terms, key=MonomialOrder.GRLEX.key)), reverse=True)

    def degree_rows(self, d: int) -> np.ndarray:
        """Degree-d basis as RREF rows over grlex-ordered monomials of degree d."""
        polys = self.basis(d)
        if not polys:
            return np.zeros((0, len(degree_monomials(d))), dtype=np.int64)
        return np.array([to_vector(f, d) for f in polys], dtype=np.int64)


def fixed_space_piece(generators: Sequence, key: tuple[int, int], p: int) -> np.ndarray:
    n = len(bidegree_monomials(*key))
    if not generators:
        return np.eye(n, dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    stacked = np.hstack([(block_action(g, key) - eye) % p for g in generators])
    return left_nullspace(stacked, p)


def span_pieces(
    generators: Sequence[Polynomial],
    keys: Iterable,
    base: GradedBasis,
    p: int,
    bigraded: bool,
    include_unit: bool,
) -> GradedBasis:
    """For each key, the span of {g * b : g in generators, b in base[key - key(g)]}.

    With ``base`` being the result itself (include_unit=True) this grows the
    subalgebra generated by ``generators`` degree by degree; keys must then be
    in nondecreasing degree order.
    """
    gen_keys = [poly_key(g, bigraded) for g in generators]
    out = base if include_unit else GradedBasis(p)
    unit = zero_key(bigraded)
    for key in keys:
        if include_unit and key == unit:
            out.set(key, np.ones((1, 1), dtype=np.int64))
            continue
        chunks = []
        for g, gk in zip(generators, gen_keys):
            src = key_sub(key, gk)
            if src is None:
                continue
            R = base.rows(src)
            if R.shape[0] == 0:
                continue
            chunks.append((R @ multiplication_matrix(g, src, key)) % p)
        if chunks:
            out.set(key, np.vstack(chunks))
        else:
            out.set(key, np.zeros((0, len(monomials_for(key))), dtype=np.int64))
    return out

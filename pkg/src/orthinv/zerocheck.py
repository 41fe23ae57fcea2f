"""Nonvanishing of det(g_i(f_j)) for the covariant basis.

``det_nonzero`` evaluates the matrix at random points of an extension field;
a nonzero value is an exact certificate, an all-zero run only bounds the
error probability (Schwartz-Zippel). ``leading_term_matrix_det`` computes the
determinant of the leading-term matrix exactly for p = 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import NamedFamily, covariant_basis
from .errors import PrimeTooLargeForExact
from .fields import ExtElement, ExtensionField, minimal_extension_degree, random_ext_element, select_lambda
from .invariants import act
from .matgroups import ProductGroup, coset_representatives, orthogonal_group
from .polyring import MonomialOrder, Polynomial, evaluate, leading_term

OVERSAMPLING = 100


@dataclass
class CovariantMatrix:
    p: int
    entries: list[list[Polynomial]]
    representatives: list = field(default_factory=list)
    basis: NamedFamily | None = None

    @property
    def size(self) -> int:
        return len(self.entries)

    def column_degrees(self) -> list[int]:
        n = self.size
        return [max((self.entries[i][j].degree() for i in range(n)), default=0) for j in range(n)]

    def degree_bound(self) -> int:
        return sum(max(d, 0) for d in self.column_degrees())

    def permuted(self, order: Sequence[int]) -> CovariantMatrix:
        reps = [self.representatives[i] for i in order] if self.representatives else []
        return CovariantMatrix(self.p, [self.entries[i] for i in order], reps, self.basis)


def build_covariant_matrix(p: int, lam=None) -> CovariantMatrix:
    """Rows: coset representatives (sigma^i, 1), (eta*sigma^i, 1); columns: f_0..f_{2p+1}."""
    lam = select_lambda(p).value if lam is None else int(lam) % p
    G = orthogonal_group(p, "minus", lam)
    reps = coset_representatives(ProductGroup(G), G)
    basis = covariant_basis(p, lam, G)
    entries = [[act(g, f) for f in basis.polys] for g in reps]
    return CovariantMatrix(p, entries, reps, basis)


@dataclass
class ZeroTestVerdict:
    nonzero: bool
    trials: int
    extension_degree: int
    failure_bound: Fraction
    witness: list[list[int]] | None = None
    determinant: list[int] | None = None
    degree_bound: int = 0

    def to_dict(self) -> dict:
        return {
            "nonzero": self.nonzero,
            "trials": self.trials,
            "extension_degree": self.extension_degree,
            "failure_bound": str(self.failure_bound),
            "witness": self.witness,
            "determinant": self.determinant,
            "degree_bound": self.degree_bound,
        }


def ext_determinant(rows: list[list[ExtElement]]) -> ExtElement:
    A = [list(r) for r in rows]
    n = len(A)
    F = A[0][0].field
    det = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if piv is None:
            return F.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c]
        inv = A[c][c].inverse()
        for r in range(c + 1, n):
            if not A[r][c].is_zero():
                factor = A[r][c] * inv
                A[r] = [x - factor * y for x, y in zip(A[r], A[c])]
    return det


def det_nonzero(M: CovariantMatrix, seed: int = 0, trials: int = 3) -> ZeroTestVerdict:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    degbound = M.degree_bound()
    e = minimal_extension_degree(M.p, OVERSAMPLING * max(degbound, 1))
    F = ExtensionField(M.p, e)
    rng = random.Random(seed)
    for t in range(1, trials + 1):
        point = [random_ext_element(F, rng) for _ in range(4)]
        values = [[evaluate(f, point) for f in row] for row in M.entries]
        det = ext_determinant(values)
        if not det.is_zero():
            return ZeroTestVerdict(True, t, e, Fraction(0), [z.to_list() for z in point], det.to_list(), degbound)
    bound = Fraction(degbound, F.order) ** trials
    return ZeroTestVerdict(False, trials, e, bound, None, None, degbound)


def leading_term_matrix(M: CovariantMatrix, order: MonomialOrder = MonomialOrder.LEX) -> list[list[Polynomial]]:
    out = []
    for row in M.entries:
        lt_row = []
        for f in row:
            if f.is_zero():
                lt_row.append(f)
            else:
                m, c = leading_term(f, order)
                lt_row.append(Polynomial.monomial(m, f.p, c.value))
        out.append(lt_row)
    return out


def poly_determinant(matrix: list[list[Polynomial]], p: int) -> Polynomial:
    """Leibniz expansion, pruning zero entries."""
    n = len(matrix)
    total = Polynomial.zero(p)

    def expand(row: int, used: int, sign: int, acc: Polynomial):
        nonlocal total
        if row == n:
            total = total + (acc if sign > 0 else -acc)
            return
        for col in range(n):
            bit = 1 << col
            if used & bit:
                continue
            entry = matrix[row][col]
            if entry.is_zero():
                continue
            # columns already used to the right of col each add one inversion
            later_used = bin(used >> (col + 1)).count("1")
            s = -sign if later_used % 2 else sign
            expand(row + 1, used | bit, s, acc * entry)

    expand(0, 0, 1, Polynomial.constant(1, p))
    return total


def leading_term_matrix_det(M: CovariantMatrix, order: MonomialOrder = MonomialOrder.LEX) -> Polynomial:
    if M.p != 3:
        raise PrimeTooLargeForExact(f"exact leading-term determinant only supported for p = 3, got {M.p}")
    return poly_determinant(leading_term_matrix(M, order), M.p)

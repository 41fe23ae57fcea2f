"""Group actions on polynomials, averaging operators, fixed spaces, and the two
graded verification engines (subalgebra generation, free-module basis)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import graded
from .errors import FieldMismatch, ModularIndex, ModularOrder, NotHInvariant, NotInvariantGenerator
from .graded import GradedBasis, fixed_space_piece, keys_up_to
from .linalg import rank
from .matgroups import MatrixGroup, ProductElement, ProductGroup, action_matrix, coset_representatives
from .polyring import Polynomial, substitute_linear
from .series import degree_generating_polynomial, hsop_denominator, series_expand


def _group_p(g) -> int:
    return g.p


def act(g, f: Polynomial) -> Polynomial:
    if _group_p(g) != f.p:
        raise FieldMismatch(f"group over F_{_group_p(g)} acting on a polynomial over F_{f.p}")
    return substitute_linear(f, action_matrix(g), check=False)


def is_invariant(G, f: Polynomial) -> bool:
    return all(act(g, f) == f for g in G.generators)


def reynolds(G, f: Polynomial) -> Polynomial:
    p = f.p
    if G.order % p == 0:
        raise ModularOrder(f"|G| = {G.order} is divisible by p = {p}")
    total = Polynomial.zero(p)
    for g in G:
        total = total + act(g, f)
    return total.scale(pow(G.order, -1, p))


def transfer(G, f: Polynomial) -> Polynomial:
    total = Polynomial.zero(f.p)
    for g in G:
        total = total + act(g, f)
    return total


def relative_reynolds(G, H: MatrixGroup, f: Polynomial) -> Polynomial:
    """Average of f over coset representatives of H in G, for H-invariant f."""
    p = f.p
    if not is_invariant(H, f):
        raise NotHInvariant("input is not fixed by the subgroup")
    index = G.order // H.order
    if index % p == 0:
        raise ModularIndex(f"[G:H] = {index} is divisible by p = {p}")
    # act(., f) is constant on right cosets Hg; inverses of left-coset
    # representatives are right-coset representatives
    reps = [r.inverse() for r in coset_representatives(G, H)]
    total = Polynomial.zero(p)
    for r in reps:
        total = total + act(r, f)
    return total.scale(pow(index, -1, p))


# ---------------------------------------------------------------------------
# fixed spaces and Hilbert series
# ---------------------------------------------------------------------------

def fixed_space(G, d: int, *, x_only: bool = False) -> GradedBasis:
    """Degree-d invariants, computed as a null space for the generators of G."""
    basis = GradedBasis(G.p)
    keys = [(d, 0)] if x_only else [(a, d - a) for a in range(d, -1, -1)]
    for key in keys:
        basis.set(key, fixed_space_piece(G.generators, key, G.p))
    return basis


def invariant_basis(G, D: int, *, x_only: bool = False) -> GradedBasis:
    basis = GradedBasis(G.p)
    for key in keys_up_to(D, True, x_only):
        basis.set(key, fixed_space_piece(G.generators, key, G.p))
    return basis


def hilbert_dims(G, D: int, *, x_only: bool = False) -> list[int]:
    return invariant_basis(G, D, x_only=x_only).dims(D)


def relative_reynolds_image_dims(G, H: MatrixGroup, D: int) -> list[tuple[int, int, int]]:
    """Per degree d: (d, rank of R(H-invariants of degree d), dim G-invariants of degree d)."""
    p = G.p
    reps = [r.inverse() for r in coset_representatives(G, H)]
    index_inv = pow(len(reps), -1, p)
    H_inv = invariant_basis(H, D)
    G_inv = invariant_basis(G, D)
    out = []
    for d in range(D + 1):
        image = 0
        for key in keys_up_to(D, True):
            if graded.key_degree(key) != d:
                continue
            R = H_inv.rows(key)
            if R.shape[0] == 0:
                continue
            op = sum(graded.block_action(r, key) for r in reps) * index_inv % p
            image += rank((R @ op) % p, p)
        out.append((d, image, G_inv.dim(d)))
    return out


# ---------------------------------------------------------------------------
# verification engines
# ---------------------------------------------------------------------------

@dataclass
class DegreeCheck:
    degree: int
    dim_expected: int
    dim_actual: int
    ok: bool
    dim_series: int | None = None


@dataclass
class GradedReport:
    kind: str
    max_degree: int
    rows: list[DegreeCheck] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def first_failure(self) -> DegreeCheck | None:
        return next((r for r in self.rows if not r.ok), None)


def _labels(gens, labels):
    if labels is None:
        return [f"gen[{i}]" for i in range(len(gens))]
    return list(labels)


def _check_generators(G, gens, labels):
    for g, label in zip(gens, labels):
        if g.p != G.p:
            raise FieldMismatch(f"{label} is over F_{g.p}, group over F_{G.p}")
        if g.is_zero() or not g.is_homogeneous():
            raise ValueError(f"{label} must be a nonzero homogeneous polynomial")
        if not is_invariant(G, g):
            raise NotInvariantGenerator(label)


def subalgebra_basis(gens: Sequence[Polynomial], D: int, *, x_only: bool = False) -> tuple[GradedBasis, bool]:
    """Graded pieces (up to degree D) of the subalgebra generated by ``gens``."""
    p = gens[0].p
    gens = [g for g in gens if g.degree() > 0]
    bigraded = all(g.is_bihomogeneous() for g in gens)
    if x_only and not bigraded:
        raise ValueError("x-only verification needs bihomogeneous generators")
    keys = keys_up_to(D, bigraded, x_only)
    if x_only:
        gens = [g for g in gens if graded.poly_key(g, True)[1] == 0]
    basis = GradedBasis(p)
    graded.span_pieces(gens, keys, basis, p, bigraded, include_unit=True)
    return basis, bigraded


def verify_generating_set(G, gens: Sequence[Polynomial], D: int, *, labels=None, x_only: bool = False) -> GradedReport:
    """Compare, degree by degree up to D, the subalgebra generated by ``gens``
    with the full invariant ring of G."""
    labels = _labels(gens, labels)
    _check_generators(G, gens, labels)
    if gens and D < max(g.degree() for g in gens):
        raise ValueError(f"D={D} is below the largest generator degree")
    sub, bigraded = subalgebra_basis(gens, D, x_only=x_only)
    inv = hilbert_dims(G, D, x_only=x_only)
    report = GradedReport("generating_set", D)
    report.notes.append("bigraded" if bigraded else "total-degree grading")
    for d in range(D + 1):
        actual = sub.dim(d)
        report.rows.append(DegreeCheck(d, inv[d], actual, actual == inv[d]))
    return report


def verify_free_basis(
    G_small,
    G_big,
    hsop: Sequence[Polynomial],
    basis: Sequence[Polynomial],
    D: int,
    *,
    hsop_labels=None,
    basis_labels=None,
) -> GradedReport:
    """Check that ``basis`` spans the G_small-invariants freely over F_p[hsop] up to degree D."""
    _check_generators(G_big, hsop, _labels(hsop, hsop_labels))
    p = G_small.p
    blabels = _labels(basis, basis_labels)
    for f, label in zip(basis, blabels):
        if not f.is_homogeneous():
            raise ValueError(f"{label} must be a homogeneous polynomial")
        if not is_invariant(G_small, f):
            raise NotInvariantGenerator(label)
    if D < max(f.degree() for f in basis):
        raise ValueError(f"D={D} is below the largest basis degree")
    # a zero member spans nothing; it is kept so the report shows the shortfall
    zeros = [label for f, label in zip(basis, blabels) if f.is_zero()]
    basis = [f for f in basis if not f.is_zero()]
    bigraded = all(g.is_bihomogeneous() for g in list(hsop) + list(basis))
    keys = keys_up_to(D, bigraded)
    params = GradedBasis(p)
    graded.span_pieces(list(hsop), keys, params, p, bigraded, include_unit=True)
    module = graded.span_pieces(list(basis), keys, params, p, bigraded, include_unit=False)

    inv = hilbert_dims(G_small, D)
    numerator = degree_generating_polynomial([f.degree() for f in basis])
    expected = series_expand(numerator, hsop_denominator([h.degree() for h in hsop]), D).coefficients
    report = GradedReport("free_basis", D)
    report.notes.append(f"freeness certified only through degree {D}")
    if zeros:
        report.notes.append(f"zero basis members: {', '.join(zeros)}")
    for d in range(D + 1):
        actual = module.dim(d)
        report.rows.append(DegreeCheck(d, inv[d], actual, actual == inv[d] == expected[d], dim_series=expected[d]))
    return report

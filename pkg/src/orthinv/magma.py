"""Standalone Magma scripts that recompute a suite's dimensions independently.

Magma lets matrices act on row vectors, so every action matrix is written out
transposed. The scripts are emitted for optional cross-checking only.
"""

from __future__ import annotations

from .catalog import covariant_basis, p3_generators, set_A, set_B, set_C
from .matgroups import ProductGroup, action_matrix, orthogonal_group
from .polyring import format_poly
from .suites import default_max_degree

MAGMA_SUITES = ("thm1", "thm2", "thm3", "thm4", "lemma31", "example-p3")

_GENERATION_CHECK = """\
assert forall{{f : f in gens | IsInvariant(f, G)}};
S<t> := PowerSeriesRing(Rationals(), {prec});
molien := S!MolienSeries(G);
W := PolynomialRing(F, [TotalDegree(f) : f in gens]);
print "degree  invariants  generated";
for d in [0..{D}] do
    mons := MonomialsOfDegree(P, d);
    words := [Evaluate(w, gens) : w in MonomialsOfWeightedDegree(W, d)];
    rows := [[MonomialCoefficient(w, m) : m in mons] : w in words];
    r := #rows eq 0 select 0 else Rank(Matrix(F, rows));
    printf "%o  %o  %o\\n", d, Coefficient(molien, d), r;
end for;
"""

_QUOTIENT_CHECK = """\
S<t> := PowerSeriesRing(Integers(), {prec});
small := S!MolienSeries(G);
big := S!MolienSeries(B);
q := small * (1 - t^2)^2 * (1 - t^{e})^2;
print "series quotient:", q;
print "product series:", big;
"""


def _matrix(g, p: int) -> str:
    rows = action_matrix(g)
    cols = [[rows[i][j] % p for i in range(4)] for j in range(4)]
    return "[" + ", ".join(str(x) for row in cols for x in row) + "]"


def _header(p: int, suite: str) -> list[str]:
    return [
        f"// orthinv cross-check: suite {suite}, p = {p}",
        f"F := GF({p});",
        "P<x1, x2, y1, y2> := PolynomialRing(F, 4);",
    ]


def _group(name: str, gens, p: int) -> str:
    mats = ", ".join(_matrix(g, p) for g in gens)
    return f"{name} := MatrixGroup<4, F | {mats}>;"


def _poly_list(polys) -> str:
    return "gens := [\n    " + ",\n    ".join(f"P!({format_poly(f)})" for f in polys) + "\n];"


def magma_script(suite: str, p: int, lam=None, max_degree: int | None = None) -> str:
    if suite not in MAGMA_SUITES:
        raise ValueError(f"suite {suite!r} has no Magma export; choose from {', '.join(MAGMA_SUITES)}")
    D = default_max_degree(suite, p) if max_degree is None else max_degree
    lines = _header(p, suite)
    if suite in ("thm1", "thm2", "thm3", "example-p3"):
        if suite == "thm1":
            fam = set_A(p)
            G, polys = fam.group, fam.polys
        elif suite == "thm2":
            fam = set_B(p)
            G, polys = fam.group, fam.polys
        elif suite == "thm3":
            fam = set_C(p, lam)
            G, polys = fam.group, fam.polys
        else:
            G, polys = orthogonal_group(3, "plus"), list(p3_generators().values())
        lines.append(_group("G", G.generators, p))
        lines.append(f"assert #G eq {G.order};")
        lines.append(_poly_list(polys))
        lines.append(_GENERATION_CHECK.format(prec=D + 1, D=D))
    else:
        G = orthogonal_group(p, "minus", lam)
        B = ProductGroup(G)
        lines.append(_group("G", G.generators, p))
        lines.append(_group("B", B.generators, p))
        lines.append(f"assert #G eq {G.order} and #B eq {B.order};")
        if suite == "thm4":
            lines.append(_poly_list(covariant_basis(p, lam, G).polys))
            lines.append("assert forall{f : f in gens | IsInvariant(f, G)};")
        lines.append(_QUOTIENT_CHECK.format(prec=D + 1, e=p + 1))
    return "\n".join(lines) + "\n"


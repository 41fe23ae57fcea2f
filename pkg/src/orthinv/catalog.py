"""Named polynomial families: generating sets, vector invariants, parameter
forms, the covariant basis, and the p = 3 relations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import NotInvariantGenerator, RelationFailed
from .fields import FieldElement, select_lambda
from .invariants import act, is_invariant, transfer
from .matgroups import MatrixGroup, orthogonal_group, special_subgroup
from .polyring import Polynomial, format_poly, parse_poly

# exhaustive invariance check at construction is limited to this prime
EXHAUSTIVE_CHECK_MAX_P = 13


@dataclass
class NamedFamily:
    name: str
    p: int
    members: list[tuple[str, Polynomial]]
    lam: FieldElement | None = None
    group: MatrixGroup | None = field(default=None, repr=False)

    @property
    def polys(self) -> list[Polynomial]:
        return [f for _, f in self.members]

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.members]

    def __len__(self):
        return len(self.members)

    def __getitem__(self, label: str) -> Polynomial:
        for name, f in self.members:
            if name == label:
                return f
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "p": self.p,
            "lambda": None if self.lam is None else self.lam.value,
            "members": [{"label": label, "poly": format_poly(f)} for label, f in self.members],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def check_invariance(self, G) -> None:
        for label, f in self.members:
            if G.p <= EXHAUSTIVE_CHECK_MAX_P:
                ok = all(_fixed_by(g, f) for g in G)
            else:
                ok = is_invariant(G, f)
            if not ok:
                raise NotInvariantGenerator(label)


def _fixed_by(g, f: Polynomial) -> bool:
    return act(g, f) == f


def _lam(p: int, lam) -> int:
    return select_lambda(p).value if lam is None else int(lam) % p


def _P(text: str, p: int) -> Polynomial:
    return parse_poly(text, p)


def set_A(p: int, *, check: bool = True) -> NamedFamily:
    members = [
        ("A.x1x2", _P("x1*x2", p)),
        ("A.y1y2", _P("y1*y2", p)),
        ("A.x1y1", _P("x1*y1", p)),
        ("A.x2y2", _P("x2*y2", p)),
    ]
    for i in range(p):
        members.append((f"A.x1y2[i={i}]", Polynomial.monomial((p - 1 - i, 0, 0, i), p)))
        members.append((f"A.x2y1[i={i}]", Polynomial.monomial((0, p - 1 - i, i, 0), p)))
    fam = NamedFamily("A", p, members)
    if check:
        G = special_subgroup(orthogonal_group(p, "plus"))
        fam.group = G
        fam.check_invariance(G)
    return fam


def set_B(p: int, *, check: bool = True) -> NamedFamily:
    members = [
        ("B.x1x2", _P("x1*x2", p)),
        ("B.y1y2", _P("y1*y2", p)),
        ("B.u", _P("x1*y1 + x2*y2", p)),
    ]
    for i in range(p):
        f = Polynomial.monomial((p - 1 - i, 0, 0, i), p) + Polynomial.monomial((0, p - 1 - i, i, 0), p)
        members.append((f"B.sym[i={i}]", f))
    fam = NamedFamily("B", p, members)
    if check:
        G = orthogonal_group(p, "plus")
        fam.group = G
        fam.check_invariance(G)
    return fam


def forms(p: int, lam=None) -> NamedFamily:
    """The four parameter invariants of O2- x O2- (quadratic and degree p+1 forms)."""
    lam = _lam(p, lam)
    li = pow(lam, -1, p)
    x1, x2, y1, y2 = Polynomial.variables(p)
    members = [
        ("C.qx", x1**2 - x2**2 * lam),
        ("C.qx[p+1]", x1 ** (p + 1) - x2 ** (p + 1) * lam),
        ("C.qy", y1**2 - y2**2 * li),
        ("C.qy[p+1]", y1 ** (p + 1) - y2 ** (p + 1) * li),
    ]
    return NamedFamily("forms", p, members, FieldElement(lam, p))


def trace_generators(p: int, G: MatrixGroup) -> list[tuple[str, Polynomial]]:
    return [(f"C.tr[i={i}]", transfer(G, Polynomial.monomial((p + 1 - i, 0, i, 0), p))) for i in range(1, p + 1)]


def set_C(p: int, lam=None, *, check: bool = True) -> NamedFamily:
    lam = _lam(p, lam)
    G = orthogonal_group(p, "minus", lam)
    members = list(forms(p, lam).members)
    members.append(("C.u", _P("x1*y1 + x2*y2", p)))
    members.extend(trace_generators(p, G))
    fam = NamedFamily("C", p, members, FieldElement(lam, p), G)
    if check:
        fam.check_invariance(G)
    return fam


def vector_invariants(p: int, kind: str, lam=None) -> NamedFamily:
    """Generators of the x-only invariants: 'so_plus' {x1x2, x1^(p-1), x2^(p-1)},
    'plus' {x1x2, x1^(p-1)+x2^(p-1)}, 'minus' the two x-forms."""
    if kind == "so_plus":
        members = [
            ("V.x1x2", _P("x1*x2", p)),
            ("V.x1^(p-1)", Polynomial.monomial((p - 1, 0, 0, 0), p)),
            ("V.x2^(p-1)", Polynomial.monomial((0, p - 1, 0, 0), p)),
        ]
        return NamedFamily("vector_so_plus", p, members)
    if kind == "plus":
        members = [
            ("V.x1x2", _P("x1*x2", p)),
            ("V.x1^(p-1)+x2^(p-1)", Polynomial.monomial((p - 1, 0, 0, 0), p) + Polynomial.monomial((0, p - 1, 0, 0), p)),
        ]
        return NamedFamily("vector_plus", p, members)
    if kind == "minus":
        fam = forms(p, lam)
        return NamedFamily("vector_minus", p, fam.members[:2], fam.lam)
    raise ValueError(f"unknown vector family {kind!r}")


def covariant_basis(p: int, lam=None, G: MatrixGroup | None = None) -> NamedFamily:
    """f_i = u^i (0 <= i <= p+1) followed by f_{p+1+j} = Tr(x1^(p+1-j) y1^j) (1 <= j <= p)."""
    lam = _lam(p, lam)
    if G is None:
        G = orthogonal_group(p, "minus", lam)
    u = _P("x1*y1 + x2*y2", p)
    members = [(f"f{i}", u**i) for i in range(p + 2)]
    for j in range(1, p + 1):
        members.append((f"f{p + 1 + j}", transfer(G, Polynomial.monomial((p + 1 - j, 0, j, 0), p))))
    return NamedFamily("covariant_basis", p, members, FieldElement(lam, p), G)


def p3_generators() -> dict[str, Polynomial]:
    p = 3
    return {
        "f1": _P("x1*x2", p),
        "f2": _P("x1^2 + x2^2", p),
        "f3": _P("y1*y2", p),
        "f4": _P("y1^2 + y2^2", p),
        "u": _P("x1*y1 + x2*y2", p),
        "v": _P("x1*y2 + x2*y1", p),
    }


def relation_residuals(p: int) -> list[tuple[str, Polynomial]]:
    """The two p=3 relations evaluated over F_p (zero exactly when p = 3)."""
    f1, f2, f3, f4 = (_P(t, p) for t in ("x1*x2", "x1^2 + x2^2", "y1*y2", "y1^2 + y2^2"))
    u, v = _P("x1*y1 + x2*y2", p), _P("x1*y2 + x2*y1", p)
    return [
        ("f1*f4 + f2*f3 - u*v", f1 * f4 + f2 * f3 - u * v),
        ("f1*f3 + f2*f4 - u^2 - v^2", f1 * f3 + f2 * f4 - u**2 - v**2),
    ]


def p3_relations() -> NamedFamily:
    members = relation_residuals(3)
    for label, r in members:
        if not r.is_zero():
            raise RelationFailed(f"{label} = {r} over F_3")
    return NamedFamily("p3_relations", 3, members)

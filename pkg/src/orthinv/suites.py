"""Named verification suites and the report they produce."""

from __future__ import annotations

import json
import platform
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from . import __version__
from .catalog import covariant_basis, forms, p3_generators, p3_relations, relation_residuals, set_A, set_B, set_C
from .errors import RelationFailed
from .fields import select_lambda
from .invariants import (
    DegreeCheck,
    GradedReport,
    hilbert_dims,
    relative_reynolds_image_dims,
    verify_free_basis,
    verify_generating_set,
)
from .matgroups import ProductGroup, orthogonal_group, special_subgroup, stabilizer_bruteforce
from .series import hsop_denominator, quotient_numerator, s_invariant, series_expand, trim
from .zerocheck import build_covariant_matrix, det_nonzero, leading_term_matrix_det

SUITES = ("thm1", "thm2", "thm3", "thm4", "lemma31", "lemma33", "example-p3", "oracle-groups")

# largest prime each suite accepts without ORTHINV_MAX_P
SUITE_MAX_P = {
    "thm1": 13,
    "thm2": 13,
    "thm3": 7,
    "thm4": 7,
    "lemma31": 7,
    "lemma33": 7,
    "example-p3": 3,
    "oracle-groups": 13,
}


def default_max_degree(suite: str, p: int) -> int:
    if suite in ("thm1", "thm2", "example-p3"):
        return 2 * p
    if suite == "oracle-groups":
        return 0
    return 2 * (p + 1) + 4


@dataclass
class Report:
    suite: str
    p: int
    lam: int | None
    max_degree: int
    seed: int
    per_degree: list[dict] = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    versions: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    @property
    def overall(self) -> str:
        ok = all(row["ok"] for row in self.per_degree) and all(self.checks.values())
        return "PASS" if ok else "FAIL"

    @property
    def passed(self) -> bool:
        return self.overall == "PASS"

    def first_failure(self) -> str | None:
        for row in self.per_degree:
            if not row["ok"]:
                return f"degree {row['degree']}: expected {row['dim_expected']}, got {row['dim_actual']}"
        for name, ok in self.checks.items():
            if not ok:
                return f"check {name} failed"
        return None

    def to_dict(self, *, include_timing: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "p": self.p,
            "lambda": self.lam,
            "max_degree": self.max_degree,
            "seed": self.seed,
            "per_degree": self.per_degree,
            "checks": self.checks,
            "extras": self.extras,
            "overall": self.overall,
            "first_failure": self.first_failure(),
            "versions": self.versions,
        }
        if include_timing:
            d["timing"] = self.timing
        return d

    def to_json(self, *, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing=include_timing), indent=2, sort_keys=True)

    def render(self) -> str:
        lam = "" if self.lam is None else f" lambda={self.lam}"
        lines = [f"suite {self.suite}  p={self.p}{lam}  D={self.max_degree}  seed={self.seed}"]
        if self.per_degree:
            lines.append("  degree  expected  actual  ok")
            for row in self.per_degree:
                mark = "ok" if row["ok"] else "MISMATCH"
                lines.append(f"  {row['degree']:>6}  {row['dim_expected']:>8}  {row['dim_actual']:>6}  {mark}")
        for name, ok in self.checks.items():
            lines.append(f"  check {name}: {'ok' if ok else 'FAILED'}")
        for key, value in self.extras.items():
            lines.append(f"  {key}: {value}")
        failure = self.first_failure()
        if failure:
            lines.append(f"  first failure: {failure}")
        lines.append(self.overall)
        return "\n".join(lines)


def _rows(report: GradedReport) -> list[dict]:
    return [_row(r) for r in report.rows]


def _row(r: DegreeCheck) -> dict:
    return {"degree": r.degree, "dim_expected": r.dim_expected, "dim_actual": r.dim_actual, "ok": bool(r.ok)}


def load_schema() -> dict:
    return json.loads(resources.files("orthinv").joinpath("schema/report.schema.json").read_text("utf-8"))


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _thm1(rep: Report):
    p, D = rep.p, rep.max_degree
    fam = set_A(p)
    rep.per_degree = _rows(verify_generating_set(fam.group, fam.polys, D, labels=fam.labels))
    rep.extras["generators"] = len(fam)


def _thm2(rep: Report):
    p, D = rep.p, rep.max_degree
    fam = set_B(p)
    G = fam.group
    rep.per_degree = _rows(verify_generating_set(G, fam.polys, D, labels=fam.labels))
    image = relative_reynolds_image_dims(G, special_subgroup(G), D)
    rep.extras["relative_reynolds_image"] = [{"degree": d, "image": i, "invariants": n} for d, i, n in image]
    rep.checks["relative_reynolds_surjective"] = all(i == n for _, i, n in image)


def _thm3(rep: Report):
    fam = set_C(rep.p, rep.lam)
    rep.per_degree = _rows(verify_generating_set(fam.group, fam.polys, rep.max_degree, labels=fam.labels))
    rep.extras["generators"] = len(fam)
    if fam.group.generator_note:
        rep.extras["generator_note"] = fam.group.generator_note


def _thm4(rep: Report):
    p, D = rep.p, rep.max_degree
    G = orthogonal_group(p, "minus", rep.lam)
    hsop = forms(p, rep.lam)
    basis = covariant_basis(p, rep.lam, G)
    result = verify_free_basis(
        G, ProductGroup(G), hsop.polys, basis.polys, D, hsop_labels=hsop.labels, basis_labels=basis.labels
    )
    rep.per_degree = _rows(result)
    rep.extras["series"] = [r.dim_series for r in result.rows]
    degrees = [f.degree() for f in basis.polys]
    rep.extras["basis_degrees"] = degrees
    rep.extras["degree_sum"] = sum(degrees)
    rep.checks["degree_sum_is_2(p+1)^2"] = sum(degrees) == 2 * (p + 1) ** 2


def _lemma31(rep: Report):
    p, D = rep.p, rep.max_degree
    G = orthogonal_group(p, "minus", rep.lam)
    hsop_degrees = [2, 2, p + 1, p + 1]
    expected = series_expand([1], hsop_denominator(hsop_degrees), D).coefficients
    big = hilbert_dims(ProductGroup(G), D)
    rep.per_degree = [
        {"degree": d, "dim_expected": expected[d], "dim_actual": big[d], "ok": expected[d] == big[d]} for d in range(D + 1)
    ]
    numerator = trim(quotient_numerator(hilbert_dims(G, D), hsop_degrees, D))
    r, s = s_invariant(numerator)
    rep.extras.update(numerator=numerator, r=r, s_invariant=s)
    rep.checks["r=2(p+1)"] = r == 2 * (p + 1)
    rep.checks["s=2(p+1)^2"] = s == 2 * (p + 1) ** 2
    # the numerator must have stabilized below the truncation
    rep.checks["numerator_degree<=2(p+1)"] = len(numerator) - 1 <= 2 * (p + 1) < D


def _lemma33(rep: Report):
    p = rep.p
    M = build_covariant_matrix(p, rep.lam)
    verdict = det_nonzero(M, seed=rep.seed)
    rep.extras["zero_test"] = verdict.to_dict()
    rep.extras["matrix_size"] = M.size
    rep.checks["jacobian_nonzero"] = verdict.nonzero
    if p == 3:
        J = leading_term_matrix_det(M)
        rep.extras["leading_term_determinant"] = str(J)
        rep.checks["leading_term_determinant_nonzero"] = not J.is_zero()


def _example_p3(rep: Report):
    rep.extras["relations"] = {label: str(r) for label, r in relation_residuals(3)}
    try:
        p3_relations()
        rep.checks["relations_vanish"] = True
    except RelationFailed:
        rep.checks["relations_vanish"] = False
    gens = p3_generators()
    G = orthogonal_group(3, "plus")
    rep.per_degree = _rows(verify_generating_set(G, list(gens.values()), rep.max_degree, labels=list(gens)))


def _oracle_groups(rep: Report):
    p = rep.p
    plus = orthogonal_group(p, "plus")
    minus = orthogonal_group(p, "minus", rep.lam)
    so = special_subgroup(plus)
    lam = minus.lam.value
    rep.extras["orders"] = {"SO2plus": so.order, "O2plus": plus.order, "O2minus": minus.order}
    rep.checks["|SO2+|=p-1"] = so.order == p - 1
    rep.checks["|O2+|=2(p-1)"] = plus.order == 2 * (p - 1)
    rep.checks["|O2-|=2(p+1)"] = minus.order == 2 * (p + 1)
    rep.checks["O2+ = Stab(x1x2)"] = plus.element_set() == stabilizer_bruteforce(p, [[0, 1], [1, 0]]).element_set()
    rep.checks["O2- = Stab(x1^2 - lam x2^2)"] = (
        minus.element_set() == stabilizer_bruteforce(p, [[1, 0], [0, (-lam) % p]]).element_set()
    )


RUNNERS: dict[str, Callable[[Report], None]] = {
    "thm1": _thm1,
    "thm2": _thm2,
    "thm3": _thm3,
    "thm4": _thm4,
    "lemma31": _lemma31,
    "lemma33": _lemma33,
    "example-p3": _example_p3,
    "oracle-groups": _oracle_groups,
}


def run_suite(suite: str, p: int, *, lam=None, max_degree: int | None = None, seed: int = 0) -> Report:
    if suite not in RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    lam = select_lambda(p).value if lam is None else int(lam) % p
    D = default_max_degree(suite, p) if max_degree is None else max_degree
    rep = Report(suite, p, lam, D, seed)
    rep.versions = {"orthinv": __version__, "python": platform.python_version(), "numpy": np.__version__}
    start = time.perf_counter()
    RUNNERS[suite](rep)
    rep.timing = {"seconds": round(time.perf_counter() - start, 3)}
    return rep


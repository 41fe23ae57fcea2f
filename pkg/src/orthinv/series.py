"""Truncated integer power series in t: Hilbert series quotients and s-invariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import BadDenominator, NegativeCoefficient


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def hsop_denominator(degrees: Sequence[int]) -> list[int]:
    """prod_i (1 - t^{d_i}) as an ascending coefficient list."""
    out = [1]
    for d in degrees:
        factor = [1] + [0] * (d - 1) + [-1]
        out = poly_mul(out, factor)
    return out


@dataclass(frozen=True)
class SeriesQuotient:
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    truncation: int
    coefficients: tuple[int, ...]


def series_expand(numerator: Sequence[int], denominator: Sequence[int], D: int) -> SeriesQuotient:
    """Coefficients of numerator/denominator up to t^D by power-series division."""
    num = list(numerator)
    den = list(denominator)
    if not den or den[0] not in (1, -1):
        raise BadDenominator(f"denominator must have constant term +-1, got {den[:1]}")
    if den[0] == -1:
        num = [-c for c in num]
        den = [-c for c in den]
    coeffs = []
    for k in range(D + 1):
        c = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            c -= den[j] * coeffs[k - j]
        coeffs.append(c)
    return SeriesQuotient(tuple(numerator), tuple(denominator), D, tuple(coeffs))


def truncated_product(series: Sequence[int], poly: Sequence[int], D: int) -> list[int]:
    out = [0] * (D + 1)
    for i, s in enumerate(series[: D + 1]):
        if s:
            for j, c in enumerate(poly):
                if i + j > D:
                    break
                out[i + j] += s * c
    return out


def quotient_numerator(small_dims: Sequence[int], hsop_degrees: Sequence[int], D: int | None = None) -> list[int]:
    """Coefficients of H_small(t) * prod(1 - t^{d_i}) up to degree D.

    A negative coefficient means the module is not free over the parameter
    algebra, or D is too small; it is raised rather than returned.
    """
    if D is None:
        D = len(small_dims) - 1
    if len(small_dims) < D + 1:
        raise ValueError(f"need {D + 1} dimensions, got {len(small_dims)}")
    out = truncated_product(small_dims, hsop_denominator(hsop_degrees), D)
    negative = [k for k, c in enumerate(out) if c < 0]
    if negative:
        k = negative[0]
        raise NegativeCoefficient(f"coefficient of t^{k} is {out[k]}")
    return out


class SInvariant(NamedTuple):
    r: int  # value at t = 1
    s: int  # derivative at t = 1


def s_invariant(numerator: Sequence[int]) -> SInvariant:
    return SInvariant(sum(numerator), sum(k * c for k, c in enumerate(numerator)))


def trim(coeffs: Sequence[int]) -> list[int]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree_generating_polynomial(degrees: Sequence[int]) -> list[int]:
    """sum_j t^{deg_j}."""
    out = [0] * (max(degrees) + 1 if degrees else 1)
    for d in degrees:
        out[d] += 1
    return out

import random

from hypothesis import strategies as st

from orthinv.polyring import Polynomial, from_terms

PRIMES = (3, 5, 7)


def random_poly(rng: random.Random, p: int, max_exp: int = 2, terms: int = 4) -> Polynomial:
    return from_terms(
        [(tuple(rng.randrange(max_exp + 1) for _ in range(4)), rng.randrange(1, p)) for _ in range(terms)], p
    )


def random_invertible(rng: random.Random, p: int) -> list[list[int]]:
    from orthinv.linalg import det_mod

    while True:
        A = [[rng.randrange(p) for _ in range(4)] for _ in range(4)]
        if det_mod(A, p):
            return A


@st.composite
def polys(draw, p: int, max_exp: int = 2, max_terms: int = 5):
    n = draw(st.integers(0, max_terms))
    pairs = [
        (tuple(draw(st.integers(0, max_exp)) for _ in range(4)), draw(st.integers(0, p - 1)))
        for _ in range(n)
    ]
    return from_terms(pairs, p)


@st.composite
def invertible_4x4(draw, p: int):
    from orthinv.linalg import det_mod

    A = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=4, max_size=4), min_size=4, max_size=4))
    if not det_mod(A, p):
        # fall back to an upper unitriangular perturbation of A, always invertible
        A = [[(1 if i == j else (A[i][j] if j > i else 0)) for j in range(4)] for i in range(4)]
    return A

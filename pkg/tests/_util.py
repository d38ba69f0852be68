"""Shared helpers for the test suite (seeded-random generators, tiny oracles)."""

from __future__ import annotations

import random

from jetcert.polynomials import MultiPoly


def random_poly(
    rng: random.Random,
    arity: int,
    max_degree: int = 4,
    n_terms: int = 6,
    modulus: int | None = None,
    coeff_low: int = -9,
    coeff_high: int = 9,
) -> MultiPoly:
    """A random sparse polynomial; zero coefficients are allowed to collide away."""
    terms: dict[tuple[int, ...], int] = {}
    for _ in range(n_terms):
        exps = tuple(rng.randint(0, max_degree) for _ in range(arity))
        coeff = rng.randint(coeff_low, coeff_high)
        terms[exps] = terms.get(exps, 0) + coeff
    return MultiPoly(arity, terms, modulus)


def random_nonzero_poly(
    rng: random.Random,
    arity: int,
    max_degree: int = 4,
    n_terms: int = 6,
    modulus: int | None = None,
) -> MultiPoly:
    while True:
        poly = random_poly(rng, arity, max_degree, n_terms, modulus)
        if not poly.is_zero:
            return poly

"""Seeded random draws of monomials, elements and polynomials.

Everything takes an explicit ``random.Random`` so a (config, seed) pair
pins every sample.
"""

from __future__ import annotations

import random
from typing import List, Sequence

from .algebra import HamiltonianAlgebra
from .elements import AlgebraElement, BasisIndex
from .twist import Poly, TruncatedPolyAlgebra


def random_group(rng: random.Random, m: int, radius: int):
    return tuple(rng.randint(-radius, radius) for _ in range(m))


def random_index(rng: random.Random, nat: Sequence[bool], cap: int):
    idx = [0] * len(nat)
    slots = [p for p, flag in enumerate(nat) if flag]
    if slots:
        for _ in range(rng.randint(0, cap)):
            idx[rng.choice(slots)] += 1
    return tuple(idx)


def random_key(rng: random.Random, alg: HamiltonianAlgebra, radius: int = 2, cap: int = 2) -> BasisIndex:
    return random_group(rng, alg.m, radius), random_index(rng, alg._nat, cap)


def random_monomial(rng: random.Random, alg: HamiltonianAlgebra, radius: int = 2, cap: int = 2) -> AlgebraElement:
    return AlgebraElement({random_key(rng, alg, radius, cap): 1}, _trusted=True)


def random_element(rng: random.Random, alg: HamiltonianAlgebra, terms: int = 3, radius: int = 2, cap: int = 2,
                   coef_range: int = 3) -> AlgebraElement:
    acc = {}
    for _ in range(terms):
        c = rng.randint(-coef_range, coef_range) or 1
        k = random_key(rng, alg, radius, cap)
        acc[k] = acc.get(k, 0) + c
    return AlgebraElement.from_dict_accumulate(acc)


def random_from_keys(rng: random.Random, keys: Sequence[BasisIndex], terms: int = 2, coef_range: int = 3,
                     exclude: Sequence[BasisIndex] = ()) -> AlgebraElement:
    """Nonzero combination of ``terms`` distinct keys with nonzero integer coefficients."""
    pool = [k for k in keys if k not in set(exclude)]
    chosen = rng.sample(pool, min(terms, len(pool)))
    return AlgebraElement({k: rng.choice([c for c in range(-coef_range, coef_range + 1) if c]) for k in chosen})


def random_poly(rng: random.Random, P: TruncatedPolyAlgebra, max_degree: int = 2, terms: int = 3,
                coef_range: int = 3) -> Poly:
    d = {}
    for _ in range(terms):
        e = [0] * P.nvars
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(P.nvars)] += 1
        c = rng.randint(-coef_range, coef_range) or 1
        d[tuple(e)] = d.get(tuple(e), 0) + c
    return P.poly(d)


def triples(rng: random.Random, draw, count: int) -> List[tuple]:
    return [(draw(rng), draw(rng), draw(rng)) for _ in range(count)]

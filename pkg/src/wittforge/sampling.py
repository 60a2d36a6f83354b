"""Seeded random generators for matrices, forms and factorizations."""

from __future__ import annotations

import random

from .alternating import AlternatingMatrix, psi
from .elementary import ElementaryFactorization
from .matrix import Matrix
from .rings import IntegerRing, Ring


def random_unit(ring: Ring, rng: random.Random):
    if isinstance(ring, IntegerRing):
        return rng.choice((1, -1))
    while True:
        x = ring.random_element(rng)
        if ring.is_unit(x):
            return x


def random_matrix(ring: Ring, nrows: int, ncols: int, rng: random.Random) -> Matrix:
    return Matrix(ring, [[ring.random_element(rng) for _ in range(ncols)] for _ in range(nrows)])


def random_elementary(ring: Ring, size: int, rng: random.Random, max_steps: int = 4) -> ElementaryFactorization:
    """Random word of ``0..max_steps`` elementary steps."""
    steps = []
    if size >= 2:
        for _ in range(rng.randint(0, max_steps)):
            i, j = rng.sample(range(1, size + 1), 2)
            steps.append((i, j, ring.random_element(rng)))
    return ElementaryFactorization(ring, size, tuple(steps))


def random_invertible(ring: Ring, n: int, rng: random.Random, det_one: bool = False) -> Matrix:
    """Uniform rejection sampling on finite rings and fields; over ``Z`` an
    elementary word times a diagonal sign matrix."""
    if isinstance(ring, IntegerRing):
        e = random_elementary(ring, n, rng, max_steps=2 * n + 2).evaluate()
        if det_one or n == 0:
            return e
        return Matrix.diag(ring, [random_unit(ring, rng)] + [1] * (n - 1)) @ e
    while True:
        g = random_matrix(ring, n, n, rng)
        d = g.det().value
        if ring.is_unit(d) and (not det_one or d == ring.one):
            return g


def random_alternating(ring: Ring, rank: int, rng: random.Random) -> AlternatingMatrix:
    rows = [[ring.zero] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            x = ring.random_element(rng)
            rows[i][j], rows[j][i] = x, ring.neg(x)
    return AlternatingMatrix(Matrix(ring, rows))


def random_invertible_alternating(ring: Ring, rank: int, rng: random.Random) -> AlternatingMatrix:
    """Congruence image ``G^t psi G`` of the standard form under a random invertible ``G``."""
    if rank == 0:
        return AlternatingMatrix.empty(ring)
    return psi(rank, ring).congruent(random_invertible(ring, rank, rng))

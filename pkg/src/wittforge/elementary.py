"""Elementary-matrix certificates.

An :class:`ElementaryFactorization` is an ordered list of steps ``(i, j, lam)``
(1-based, ``i != j``), each standing for ``E_ij(lam) = Id + lam * e_ij``. Its
value is the left-to-right product of those matrices, so a factorization is a
checkable certificate of membership in the elementary subgroup ``E_n(R)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exceptions import DimensionError, NotInvertibleError
from .matrix import Matrix
from .rings import ZZ, Ring, ring_parse


@dataclass(frozen=True)
class ElementaryFactorization:
    ring: Ring
    size: int
    steps: tuple = field(default=())

    def __post_init__(self):
        steps = tuple((int(i), int(j), self.ring.coerce(lam)) for i, j, lam in self.steps)
        for i, j, _ in steps:
            if i == j or not (1 <= i <= self.size and 1 <= j <= self.size):
                raise DimensionError(f"invalid elementary step ({i}, {j}) for size {self.size}")
        object.__setattr__(self, "steps", steps)

    def __len__(self):
        return len(self.steps)

    def evaluate(self) -> Matrix:
        """Product ``E_1 E_2 ... E_k`` of the listed elementary matrices."""
        R = self.ring
        cols = [list(c) for c in Matrix.identity(R, self.size).T.rows]
        # right-multiplying by E_ij(lam) adds lam * column i to column j
        for i, j, lam in self.steps:
            if R.is_zero(lam):
                continue
            ci, cj = cols[i - 1], cols[j - 1]
            for k in range(self.size):
                if not R.is_zero(ci[k]):
                    cj[k] = R.add(cj[k], R.mul(lam, ci[k]))
        return Matrix(R, cols).T if self.size else Matrix(R, [])

    def inverse(self) -> "ElementaryFactorization":
        neg = self.ring.neg
        return ElementaryFactorization(
            self.ring, self.size, tuple((i, j, neg(lam)) for i, j, lam in reversed(self.steps))
        )

    def transpose(self) -> "ElementaryFactorization":
        """Factorization of the transposed product."""
        return ElementaryFactorization(
            self.ring, self.size, tuple((j, i, lam) for i, j, lam in reversed(self.steps))
        )

    def embed(self, size: int, offset: int = 0) -> "ElementaryFactorization":
        """View as the block ``id_offset ⊥ self ⊥ id`` inside a larger size."""
        if offset + self.size > size:
            raise DimensionError("embedding does not fit")
        return ElementaryFactorization(
            self.ring, size, tuple((i + offset, j + offset, lam) for i, j, lam in self.steps)
        )

    def __add__(self, other: "ElementaryFactorization") -> "ElementaryFactorization":
        """Concatenation; the value is the product of the two values."""
        if other.size != self.size or other.ring != self.ring:
            raise DimensionError("cannot concatenate factorizations of different size or ring")
        return ElementaryFactorization(self.ring, self.size, self.steps + other.steps)

    def map_ring(self, ring: Ring) -> "ElementaryFactorization":
        """Push integer-coefficient steps into ``ring`` via ``Z -> ring``."""
        if self.ring != ZZ:
            raise ValueError("only factorizations over Z can be mapped")
        return ElementaryFactorization(
            ring, self.size, tuple((i, j, ring.from_int(lam)) for i, j, lam in self.steps)
        )

    def to_json(self) -> dict:
        fmt = self.ring.format
        return {
            "ring": self.ring.descriptor,
            "size": self.size,
            "steps": [[i, j, fmt(lam)] for i, j, lam in self.steps],
        }

    @classmethod
    def from_json(cls, data, ring: Ring | None = None) -> "ElementaryFactorization":
        if isinstance(data, str):
            data = json.loads(data)
        if ring is None:
            ring = ring_parse(data["ring"])
        return cls(ring, int(data["size"]), tuple(tuple(s) for s in data["steps"]))


def eval_factorization(F: ElementaryFactorization) -> Matrix:
    return F.evaluate()


def identity_factorization(ring: Ring, size: int) -> ElementaryFactorization:
    return ElementaryFactorization(ring, size, ())


def _rotation_steps(i: int, j: int, sign: int):
    """Three steps whose product acts on the (i, j) plane as [[0, s], [-s, 0]]."""
    return [(i, j, sign), (j, i, -sign), (i, j, sign)]


def whitehead_factorization(A: Matrix) -> ElementaryFactorization:
    """Elementary factorization of the block matrix ``A ⊥ A^-1``.

    Uses ``[[A,0],[0,A^-1]] = [[1,A],[0,1]] [[1,0],[-A^-1,1]] [[1,A],[0,1]] [[0,-1],[1,0]]``
    with every block factor written as single-entry steps.
    """
    if not A.is_square:
        raise DimensionError("Whitehead factorization needs a square matrix")
    R, k = A.ring, A.nrows
    Ainv = A.inverse()
    upper = [
        (i + 1, k + j + 1, A.rows[i][j])
        for i in range(k)
        for j in range(k)
        if not R.is_zero(A.rows[i][j])
    ]
    lower = [
        (k + i + 1, j + 1, R.neg(Ainv.rows[i][j]))
        for i in range(k)
        for j in range(k)
        if not R.is_zero(Ainv.rows[i][j])
    ]
    swap = []
    for i in range(1, k + 1):
        swap += [(a, b, R.from_int(s)) for a, b, s in _rotation_steps(i, k + i, -1)]
    return ElementaryFactorization(R, 2 * k, tuple(upper + lower + upper + swap))


def signed_permutation_factorization(target: Matrix) -> ElementaryFactorization:
    """Factor a signed permutation matrix of determinant 1 over ``Z``.

    Columns are sorted into place with rotations (each a transposition with
    one sign flip); the remaining diagonal of signs has an even number of
    ``-1`` entries which are cleared in pairs by squared rotations.
    """
    n = target.nrows
    R = target.ring
    # column j of target is sign[j] * e_perm[j]
    perm, sign = [], []
    for j in range(n):
        col = target.column(j)
        nz = [i for i, v in enumerate(col) if not R.is_zero(v)]
        if len(nz) != 1 or col[nz[0]] not in (R.one, R.neg(R.one)):
            raise ValueError("target is not a signed permutation matrix")
        perm.append(nz[0])
        sign.append(1 if col[nz[0]] == R.one else -1)
    if sorted(perm) != list(range(n)):
        raise ValueError("target is not a signed permutation matrix")

    steps = []
    # current matrix C starts at Id: column j is cur_sign[j] * e_cur[j]
    cur, cur_sign = list(range(n)), [1] * n
    for j in range(n):
        k = cur.index(perm[j])
        if k != j:
            # right multiplication by rotation on (j, k) with sign +1:
            # new col j = -old col k, new col k = old col j
            steps += _rotation_steps(j + 1, k + 1, 1)
            cur[j], cur[k] = cur[k], cur[j]
            cur_sign[j], cur_sign[k] = -cur_sign[k], cur_sign[j]
    flips = [j for j in range(n) if cur_sign[j] != sign[j]]
    if len(flips) % 2:
        raise NotInvertibleError("signed permutation has determinant -1")
    for a, b in zip(flips[::2], flips[1::2]):
        steps += _rotation_steps(a + 1, b + 1, 1) * 2
    return ElementaryFactorization(ZZ, n, tuple(steps))


def block_swap_matrix(r: int, s: int, ring: Ring = ZZ) -> Matrix:
    """``[[0, id_s], [id_r, 0]]`` of size ``r + s``."""
    n = r + s
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(s):
        rows[i][r + i] = ring.one
    for i in range(r):
        rows[s + i][i] = ring.one
    return Matrix(ring, rows)


def block_swap_factorization(r: int, s: int, ring: Ring = ZZ) -> ElementaryFactorization:
    """Elementary factorization of ``[[0, id_s], [id_r, 0]]``, defined when ``r*s`` is even."""
    if r < 1 or s < 1:
        raise DimensionError("block sizes must be positive")
    if (r * s) % 2:
        raise NotInvertibleError(f"block swap with r*s = {r * s} odd has determinant -1")
    F = signed_permutation_factorization(block_swap_matrix(r, s))
    return F if ring == ZZ else F.map_ring(ring)

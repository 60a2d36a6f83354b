"""Alternating forms, Pfaffians and representatives of the elementary
symplectic Witt group.

Classes of the Witt group are handled at the representative level: the
orthogonal sum adds, :func:`witt_inverse` negates, and equivalence is only
ever *checked* against an explicit elementary certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .elementary import ElementaryFactorization
from .exceptions import DimensionError, NotAlternatingError, NotInvertibleError, RingParseError
from .matrix import Matrix, direct_sum
from .rings import ZZ, Element, Ring


def is_alternating(M: Matrix) -> bool:
    """Zero diagonal and ``M^t == -M`` (stronger than skew in characteristic 2)."""
    if not M.is_square:
        return False
    R = M.ring
    n = M.nrows
    for i in range(n):
        if not R.is_zero(M.rows[i][i]):
            return False
        for j in range(i + 1, n):
            if M.rows[j][i] != R.neg(M.rows[i][j]):
                return False
    return True


class AlternatingMatrix:
    """Square alternating matrix of even size (possibly the empty 0x0 matrix)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        if not matrix.is_square or matrix.nrows % 2:
            raise NotAlternatingError(f"alternating matrices have even square shape, got {matrix.shape}")
        if not is_alternating(matrix):
            raise NotAlternatingError("matrix is not alternating")
        self.matrix = matrix

    @classmethod
    def from_entries(cls, ring: Ring, rows) -> "AlternatingMatrix":
        return cls(Matrix.from_entries(ring, rows))

    @classmethod
    def empty(cls, ring: Ring) -> "AlternatingMatrix":
        return cls(Matrix(ring, []))

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def rank(self) -> int:
        return self.matrix.nrows

    @property
    def rows(self):
        return self.matrix.rows

    def is_invertible(self) -> bool:
        return self.ring.is_unit(self.pfaffian().value)

    def pfaffian(self) -> Element:
        return pfaffian(self)

    def congruent(self, G: Matrix) -> "AlternatingMatrix":
        """``G^t M G``."""
        return AlternatingMatrix(G.T @ self.matrix @ G)

    def __matmul__(self, other):
        return self.matrix @ (other.matrix if isinstance(other, AlternatingMatrix) else other)

    def __eq__(self, other):
        if isinstance(other, AlternatingMatrix):
            return self.matrix == other.matrix
        if isinstance(other, Matrix):
            return self.matrix == other
        return NotImplemented

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"AlternatingMatrix({self.matrix!r})"

    def to_json(self) -> dict:
        return {**self.matrix.to_json(), "rank": self.rank}


def _as_matrix(M) -> Matrix:
    return M.matrix if isinstance(M, AlternatingMatrix) else M


def psi(rank: int, ring: Ring = ZZ, allow_empty: bool = False) -> AlternatingMatrix:
    """Standard form ``psi_2 ⊥ ... ⊥ psi_2`` with ``psi_2 = [[0, 1], [-1, 0]]``."""
    if rank % 2 or rank < 0 or (rank == 0 and not allow_empty):
        raise DimensionError(f"psi needs an even positive rank, got {rank}")
    psi2 = Matrix(ring, [[ring.zero, ring.one], [ring.neg(ring.one), ring.zero]])
    if rank == 0:
        return AlternatingMatrix.empty(ring)
    return AlternatingMatrix(direct_sum(*[psi2] * (rank // 2)))


def sigma(rank: int, ring: Ring = ZZ) -> Matrix:
    """``sigma_2 ⊥ ... ⊥ sigma_2`` with ``sigma_2 = [[0, 1], [1, 0]]``."""
    if rank % 2 or rank <= 0:
        raise DimensionError(f"sigma needs an even positive rank, got {rank}")
    sigma2 = Matrix(ring, [[ring.zero, ring.one], [ring.one, ring.zero]])
    return direct_sum(*[sigma2] * (rank // 2))


def split_form(t, ring: Ring) -> AlternatingMatrix:
    """``[[0, t], [-t, 0]]``, the representative attached to a unit ``t``."""
    t = ring.coerce(t)
    return AlternatingMatrix(Matrix(ring, [[ring.zero, t], [ring.neg(t), ring.zero]]))


def orthogonal_sum(*forms) -> AlternatingMatrix:
    mats = [_as_matrix(f) for f in forms]
    ring = mats[0].ring
    if any(m.ring != ring for m in mats):
        raise RingParseError("orthogonal sum of forms over different rings")
    mats = [m for m in mats if m.nrows]
    if not mats:
        return AlternatingMatrix.empty(ring)
    return AlternatingMatrix(direct_sum(*mats))


def pfaffian(M) -> Element:
    """Division-free Pfaffian by expansion along the first row.

    Normalized so that ``Pf(psi_2) = 1``; subproblems are memoized on the set
    of remaining indices, so rank ``2n`` costs ``O(2^(2n) * n)`` ring operations.
    """
    M = _as_matrix(M)
    if not is_alternating(M) or M.nrows % 2:
        raise NotAlternatingError("Pfaffian needs an alternating matrix of even size")
    R = M.ring
    a = M.rows
    memo = {}

    def pf(idx: tuple):
        if not idx:
            return R.one
        hit = memo.get(idx)
        if hit is not None:
            return hit
        first, rest = idx[0], idx[1:]
        total = R.zero
        for t, j in enumerate(rest):
            coeff = a[first][j]
            if R.is_zero(coeff):
                continue
            term = R.mul(coeff, pf(rest[:t] + rest[t + 1:]))
            total = R.add(total, term) if t % 2 == 0 else R.sub(total, term)
        memo[idx] = total
        return total

    return Element(R, pf(tuple(range(M.nrows))))


def hyperbolic(G: Matrix) -> AlternatingMatrix:
    """``G^t psi_2n G`` for invertible ``G`` of even size ``2n``."""
    if not G.is_square or G.nrows % 2 or G.nrows == 0:
        raise DimensionError(f"hyperbolic map needs an even-size square matrix, got {G.shape}")
    if not G.is_invertible():
        raise NotInvertibleError("hyperbolic map needs an invertible matrix")
    return psi(G.nrows, G.ring).congruent(G)


def witt_inverse(N) -> AlternatingMatrix:
    """``sigma_2n N^-1 sigma_2n``, representing the negative of the class of ``N``."""
    N = _as_matrix(N)
    if N.nrows == 0:
        return AlternatingMatrix(N)
    if not is_alternating(N):
        raise NotAlternatingError("Witt inverse needs an alternating matrix")
    s = sigma(N.nrows, N.ring)
    return AlternatingMatrix(s @ N.inverse() @ s)


def verify_equivalence_certificate(M, N, s: int, E: ElementaryFactorization) -> bool:
    """Check ``M ⊥ psi_(2n+2s) == E^t (N ⊥ psi_(2m+2s)) E`` for ``M`` of rank ``2m``
    and ``N`` of rank ``2n``."""
    M, N = _as_matrix(M), _as_matrix(N)
    if s < 0:
        raise DimensionError("stabilization level must be nonnegative")
    size = M.nrows + N.nrows + 2 * s
    if E.size != size:
        raise DimensionError(f"certificate has size {E.size}, relation needs {size}")
    if E.ring != M.ring or N.ring != M.ring:
        raise RingParseError("certificate and forms live over different rings")
    R = M.ring
    lhs = orthogonal_sum(M, psi(N.nrows + 2 * s, R, allow_empty=True))
    E_mat = E.evaluate()
    rhs = E_mat.T @ orthogonal_sum(N, psi(M.nrows + 2 * s, R, allow_empty=True)).matrix @ E_mat
    return lhs.matrix == rhs


class PfaffianClass(NamedTuple):
    pfaffian: Element
    in_kernel: bool


@dataclass(frozen=True)
class WittRepresentative:
    """An invertible alternating matrix standing for its Witt class."""

    form: AlternatingMatrix

    def __post_init__(self):
        if not self.form.is_invertible():
            raise NotInvertibleError("Witt representatives must be invertible")

    @property
    def rank(self) -> int:
        return self.form.rank

    def __add__(self, other: "WittRepresentative") -> "WittRepresentative":
        return WittRepresentative(orthogonal_sum(self.form, other.form))

    def __neg__(self) -> "WittRepresentative":
        return WittRepresentative(witt_inverse(self.form))

    def to_json(self) -> dict:
        return self.form.to_json()


def pfaffian_class(W) -> PfaffianClass:
    """Pfaffian of a representative, and whether its class lies in the kernel
    of the Pfaffian (the elementary symplectic Witt group proper)."""
    form = W.form if isinstance(W, WittRepresentative) else W
    pf = pfaffian(form)
    return PfaffianClass(pf, pf.value == pf.ring.one)

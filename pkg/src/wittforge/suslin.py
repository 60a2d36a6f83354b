"""Suslin matrices ``alpha_n(a, b)`` of size ``2^(n-1)``.

``alpha_1(a, b) = (a_1)`` and, for ``n >= 2`` with ``a' = a[1:]``, ``b' = b[1:]``::

    alpha_n(a, b) = [[ a_1 Id,              alpha_(n-1)(a', b') ],
                     [ -alpha_(n-1)(b', a')^t,  b_1 Id          ]]

Their determinant is ``(a . b)^(2^(n-2))`` for ``n >= 2``.
"""

from __future__ import annotations

from typing import NamedTuple

from .exceptions import DimensionError, InvariantViolation
from .matrix import Matrix
from .rings import Element, Ring, _dot

MAX_N = 8


def _alpha_rows(R: Ring, a, b):
    if len(a) == 1:
        return [[a[0]]]
    half = 1 << (len(a) - 2)
    top_right = _alpha_rows(R, a[1:], b[1:])
    lower_left = _alpha_rows(R, b[1:], a[1:])
    z = R.zero
    rows = []
    for i in range(half):
        rows.append([a[0] if i == j else z for j in range(half)] + top_right[i])
    for i in range(half):
        # row i of -(alpha(b', a'))^t is minus column i of alpha(b', a')
        rows.append([R.neg(lower_left[j][i]) for j in range(half)] + [b[0] if i == j else z for j in range(half)])
    return rows


def suslin_matrix(a, b, ring: Ring, max_n: int = MAX_N) -> Matrix:
    """Build ``alpha_n(a, b)`` from rows ``a`` and ``b`` of equal length ``n``.

    Raises:
        DimensionError: Lengths differ, ``n == 0``, or ``n > max_n``.
    """
    a = [ring.coerce(x) for x in a]
    b = [ring.coerce(x) for x in b]
    if len(a) != len(b):
        raise DimensionError(f"rows of different length: {len(a)} and {len(b)}")
    if not a:
        raise DimensionError("Suslin matrices need n >= 1")
    if len(a) > max_n:
        raise DimensionError(f"n = {len(a)} exceeds the cap {max_n} (size 2^(n-1))")
    return Matrix(ring, _alpha_rows(ring, a, b))


class DetCheck(NamedTuple):
    lhs: Element
    rhs: Element
    equal: bool


def suslin_det_check(a, b, ring: Ring) -> DetCheck:
    """Compare ``det(alpha_n(a, b))`` with ``(a . b)^(2^(n-2))``; defined for ``n >= 2``."""
    if len(a) < 2:
        raise DimensionError("the determinant law is stated for n >= 2")
    M = suslin_matrix(a, b, ring)
    lhs = M.det()
    ab = _dot(ring, [ring.coerce(x) for x in a], [ring.coerce(x) for x in b])
    rhs = Element(ring, ring.pow(ab, 1 << (len(a) - 2)))
    return DetCheck(lhs, rhs, lhs == rhs)


def suslin_sl_membership(a, b, ring: Ring) -> bool:
    """True iff ``a . b == 1``, in which case ``alpha_n(a, b)`` has determinant 1."""
    if len(a) < 2:
        raise DimensionError("SL membership is stated for n >= 2")
    ab = _dot(ring, [ring.coerce(x) for x in a], [ring.coerce(x) for x in b])
    if ab != ring.one:
        return False
    det = suslin_matrix(a, b, ring).det()
    if det.value != ring.one:
        raise InvariantViolation(f"det(alpha_n(a, b)) = {det} although a . b = 1")
    return True

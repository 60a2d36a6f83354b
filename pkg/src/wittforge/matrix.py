"""Dense exact matrices over a :class:`~wittforge.rings.Ring`.

Determinants are computed without dividing by non-units so the results are
valid over rings with zero divisors such as ``Z/6``:

* fields use Gaussian elimination,
* ``Z`` uses fraction-free Bareiss elimination,
* ``Z/n`` lifts to ``Z``, runs Bareiss and reduces (the determinant is an
  integer polynomial in the entries),
* everything else uses the Berkowitz characteristic polynomial.
"""

from __future__ import annotations

import json
from itertools import permutations

from .exceptions import DimensionError, NotInvertibleError, RingParseError
from .rings import Element, IntegerRing, IntegersMod, Ring, ring_parse


class Matrix:
    """Immutable dense matrix; ``rows`` is a tuple of tuples of payloads."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction -------------------------------------------------------

    @classmethod
    def from_entries(cls, ring: Ring, rows) -> "Matrix":
        """Build from ints, literal strings or :class:`Element` entries."""
        return cls(ring, [[ring.coerce(x) for x in row] for row in rows])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int) -> "Matrix":
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)])

    @classmethod
    def diag(cls, ring: Ring, values) -> "Matrix":
        values = [ring.coerce(v) for v in values]
        n = len(values)
        return cls(ring, [[values[i] if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def elementary(cls, ring: Ring, n: int, i: int, j: int, lam) -> "Matrix":
        """``Id + lam * e_ij`` with 1-based ``i != j``."""
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise DimensionError(f"invalid elementary position ({i}, {j}) in size {n}")
        rows = [list(r) for r in cls.identity(ring, n).rows]
        rows[i - 1][j - 1] = ring.coerce(lam)
        return cls(ring, rows)

    @classmethod
    def block(cls, blocks) -> "Matrix":
        """Assemble from a 2D grid of matrices sharing a ring."""
        ring = blocks[0][0].ring
        rows = []
        for brow in blocks:
            height = brow[0].nrows
            if any(b.nrows != height for b in brow):
                raise DimensionError("block heights differ within a block row")
            for k in range(height):
                rows.append(sum((b.rows[k] for b in brow), ()))
        return cls(ring, rows)

    # shape --------------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx) -> Element:
        i, j = idx
        return Element(self.ring, self.rows[i][j])

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix(self.ring, [[self.rows[i][j] for j in col_idx] for i in row_idx])

    # arithmetic ---------------------------------------------------------

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise RingParseError(f"ring mismatch: {self.ring} vs {other.ring}")

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, zip(*self.rows)) if self.rows else self

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        add = self.ring.add
        return Matrix(self.ring, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, [[neg(a) for a in r] for r in self.rows])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.ring.coerce(c)
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c, a) for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        add, mul, zero = R.add, R.mul, R.zero
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a != zero]
            row = []
            for c in cols:
                acc = zero
                for k, a in nz:
                    b = c[k]
                    if b != zero:
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        if not cols:
            out = [[] for _ in self.rows]
        return Matrix(R, out)

    def apply(self, vector) -> tuple:
        """Matrix times column vector of payloads."""
        R = self.ring
        out = []
        for r in self.rows:
            acc = R.zero
            for a, b in zip(r, vector):
                acc = R.add(acc, R.mul(a, b))
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring.descriptor, self.rows))

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.ring, self.nrows)

    # linear algebra -----------------------------------------------------

    def det(self, method: str | None = None) -> Element:
        """Determinant; ``method`` forces one of ``berkowitz``, ``bareiss``,
        ``gauss`` or ``leibniz`` (the last is a brute-force oracle)."""
        if not self.is_square:
            raise DimensionError(f"determinant of non-square {self.shape} matrix")
        return Element(self.ring, determinant(self.ring, self.rows, method))

    def adjugate(self) -> "Matrix":
        if not self.is_square:
            raise DimensionError(f"adjugate of non-square {self.shape} matrix")
        return Matrix(self.ring, adjugate_rows(self.ring, self.rows))

    def inverse(self) -> "Matrix":
        """Inverse as ``adj(M) * det(M)^-1``; raises if ``det(M)`` is not a unit."""
        if not self.is_square:
            raise DimensionError(f"inverse of non-square {self.shape} matrix")
        R = self.ring
        if R.is_field:
            return Matrix(R, _gauss_jordan_inverse(R, self.rows))
        d = self.det().value
        if not R.is_unit(d):
            raise NotInvertibleError(f"determinant {R.format(d)} is not a unit in {R.descriptor}")
        return self.adjugate().scale(R.inv(d))

    def is_invertible(self) -> bool:
        return self.is_square and self.ring.is_unit(self.det().value)

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        fmt = self.ring.format
        return {"ring": self.ring.descriptor, "rows": [[fmt(a) for a in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data, ring: Ring | None = None) -> "Matrix":
        """Parse ``{"ring": ..., "rows": [...]}`` or a bare list of rows."""
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            if ring is None:
                if "ring" not in data:
                    raise RingParseError("matrix JSON lacks a ring descriptor")
                ring = ring_parse(data["ring"])
            rows = data["rows"]
        else:
            rows = data
        if ring is None:
            raise RingParseError("no ring given for matrix")
        return cls.from_entries(ring, rows)

    def __repr__(self):
        body = "; ".join(", ".join(self.ring.format(a) for a in r) for r in self.rows)
        return f"Matrix({self.ring.descriptor}, [{body}])"


def direct_sum(*mats: Matrix) -> Matrix:
    """Block-diagonal (orthogonal) sum; zero-size summands are neutral."""
    ring = mats[0].ring
    n = sum(m.ncols for m in mats)
    rows = []
    offset = 0
    for m in mats:
        if m.ring != ring:
            raise RingParseError(f"ring mismatch: {ring} vs {m.ring}")
        for r in m.rows:
            rows.append((ring.zero,) * offset + r + (ring.zero,) * (n - offset - m.ncols))
        offset += m.ncols
    return Matrix(ring, rows)


# determinant kernels ----------------------------------------------------


def determinant(R: Ring, rows, method: str | None = None):
    n = len(rows)
    if n == 0:
        return R.one
    if method is None:
        if R.is_field:
            method = "gauss"
        elif isinstance(R, (IntegerRing, IntegersMod)):
            method = "bareiss"
        else:
            method = "berkowitz"
    if method == "gauss":
        return _det_gauss(R, rows)
    if method == "bareiss":
        if isinstance(R, IntegerRing):
            return _det_bareiss(rows)
        if isinstance(R, IntegersMod):
            return _det_bareiss(rows) % R.n
        raise ValueError(f"Bareiss elimination needs Z or Z/n, not {R.descriptor}")
    if method == "berkowitz":
        cp = charpoly(R, rows)
        d = cp[-1]
        return d if n % 2 == 0 else R.neg(d)
    if method == "leibniz":
        return _det_leibniz(R, rows)
    raise ValueError(f"unknown determinant method {method!r}")


def _det_gauss(R, rows):
    a = [list(r) for r in rows]
    n = len(a)
    det = R.one
    for k in range(n):
        piv = next((i for i in range(k, n) if not R.is_zero(a[i][k])), None)
        if piv is None:
            return R.zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = R.neg(det)
        pk = a[k][k]
        det = R.mul(det, pk)
        inv = R.inv(pk)
        for i in range(k + 1, n):
            if R.is_zero(a[i][k]):
                continue
            f = R.mul(a[i][k], inv)
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = R.sub(ai[j], R.mul(f, ak[j]))
    return det


def _det_bareiss(rows):
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            ai, ak, aik = a[i], a[k], a[i][k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_leibniz(R, rows):
    n = len(rows)
    total = R.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = R.one
        for i, p in enumerate(perm):
            term = R.mul(term, rows[i][p])
        total = R.add(total, term if inversions % 2 == 0 else R.neg(term))
    return total


def charpoly(R: Ring, rows):
    """Coefficients ``[1, c1, ..., cn]`` of ``det(x*Id - M)`` by Berkowitz's
    division-free algorithm."""
    n = len(rows)
    if n == 0:
        return [R.one]
    if n == 1:
        return [R.one, R.neg(rows[0][0])]
    a = rows[0][0]
    r = rows[0][1:]
    c = [rows[i][0] for i in range(1, n)]
    sub = [row[1:] for row in rows[1:]]
    # Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
    diags = [R.one, R.neg(a)]
    vec = c
    for k in range(n - 1):
        acc = R.zero
        for x, y in zip(r, vec):
            acc = R.add(acc, R.mul(x, y))
        diags.append(R.neg(acc))
        if k < n - 2:
            vec = [_dot(R, row, vec) for row in sub]
    inner = charpoly(R, sub)
    out = []
    for i in range(n + 1):
        acc = R.zero
        for j in range(min(i + 1, n)):
            acc = R.add(acc, R.mul(diags[i - j], inner[j]))
        out.append(acc)
    return out


def _dot(R, u, v):
    acc = R.zero
    for x, y in zip(u, v):
        acc = R.add(acc, R.mul(x, y))
    return acc


def adjugate_rows(R: Ring, rows):
    """Division-free adjugate from Cayley-Hamilton:
    ``adj(M) = (-1)^(n-1) (M^(n-1) + c1 M^(n-2) + ... + c_(n-1) Id)``."""
    n = len(rows)
    if n == 0:
        return ()
    cp = charpoly(R, rows)
    M = Matrix(R, rows)
    B = Matrix.identity(R, n)
    for k in range(1, n):
        B = M @ B
        ck = cp[k]
        B = Matrix(R, [[R.add(B.rows[i][j], ck) if i == j else B.rows[i][j] for j in range(n)] for i in range(n)])
    if n % 2 == 0:
        B = -B
    return B.rows


def _gauss_jordan_inverse(R, rows):
    n = len(rows)
    a = [list(r) + [R.one if i == j else R.zero for j in range(n)] for i, r in enumerate(rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if not R.is_zero(a[i][k])), None)
        if piv is None:
            raise NotInvertibleError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = R.inv(a[k][k])
        a[k] = [R.mul(inv, x) for x in a[k]]
        for i in range(n):
            if i != k and not R.is_zero(a[i][k]):
                f = a[i][k]
                a[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]

"""Commutative rings with exact arithmetic.

Rings operate on *raw* canonical payloads (Python ints, ``Fraction`` objects,
or coefficient tuples) through methods such as ``ring.add(a, b)``; this keeps
the matrix kernels fast. :class:`Element` wraps a payload together with its
ring for interactive use and operator syntax.

Supported descriptors::

    Z | Q | Z/<n> | GF(<q>) | <base>[x] | <base>[x]/(<monic poly>)
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import polyarith as P
from .exceptions import (
    NotInvertibleError,
    RingParseError,
    UnsupportedRingError,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int):
    """Return ``(p, k)`` with ``q == p**k`` for prime ``p``, or ``None``."""
    if q < 2:
        return None
    p = next(d for d in itertools.count(2) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


class Ring:
    """Abstract commutative ring with identity.

    Subclasses provide arithmetic on canonical payloads; equality of payloads
    is structural equality.
    """

    descriptor: str = "?"
    characteristic: int = 0
    is_finite: bool = False
    cardinality: int | None = None
    is_field: bool = False
    is_domain: bool = False
    var: str | None = None

    zero = 0
    one = 1

    # arithmetic on payloads
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def elements(self):
        raise UnsupportedRingError(f"{self.descriptor} is not finite")

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def coerce(self, x):
        """Turn an int, literal string or :class:`Element` into a payload."""
        if isinstance(x, Element):
            if x.ring != self:
                raise RingParseError(f"element of {x.ring} used in {self}")
            return x.value
        if isinstance(x, bool):
            raise RingParseError("booleans are not ring elements")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, str):
            return self.parse(x)
        return self._coerce_other(x)

    def _coerce_other(self, x):
        raise RingParseError(f"cannot interpret {x!r} as an element of {self}")

    def __call__(self, x) -> "Element":
        return Element(self, self.coerce(x))

    def __eq__(self, other):
        return isinstance(other, Ring) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"Ring({self.descriptor!r})"

    __str__ = lambda self: self.descriptor  # noqa: E731


class IntegerRing(Ring):
    descriptor = "Z"
    is_domain = True

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return int(n)

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if a not in (1, -1):
            raise NotInvertibleError(f"{a} is not a unit in Z")
        return a

    def parse(self, text):
        try:
            return int(str(text).strip())
        except ValueError:
            raise RingParseError(f"not an integer literal: {text!r}") from None

    def format(self, a):
        return str(a)

    def random_element(self, rng, bound=10):
        return rng.randint(-bound, bound)


class RationalField(Ring):
    descriptor = "Q"
    is_field = True
    is_domain = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return Fraction(n)

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotInvertibleError("0 is not a unit in Q")
        return 1 / a

    def parse(self, text):
        try:
            return Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise RingParseError(f"not a rational literal: {text!r}") from None

    def _coerce_other(self, x):
        if isinstance(x, Fraction):
            return x
        return super()._coerce_other(x)

    def format(self, a):
        return str(a)

    def random_element(self, rng, bound=10):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


class IntegersMod(Ring):
    """The residue ring ``Z/n`` with payloads in ``range(n)``."""

    def __init__(self, n: int):
        if n < 2:
            raise RingParseError(f"Z/{n} is the trivial ring or undefined")
        self.n = n
        self.descriptor = f"Z/{n}"
        self.characteristic = n
        self.is_finite = True
        self.cardinality = n
        self.is_field = is_prime(n)
        self.is_domain = self.is_field

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def neg(self, a):
        return -a % self.n

    def mul(self, a, b):
        return a * b % self.n

    def from_int(self, n):
        return int(n) % self.n

    def is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def inv(self, a):
        if math.gcd(a, self.n) != 1:
            raise NotInvertibleError(f"{a} is not a unit in {self.descriptor}")
        return pow(a, -1, self.n)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.n)
        return pow(a, e, self.n)

    def parse(self, text):
        try:
            return int(str(text).strip()) % self.n
        except ValueError:
            raise RingParseError(f"not an integer literal: {text!r}") from None

    def format(self, a):
        return str(a)

    def random_element(self, rng, bound=None):
        return rng.randrange(self.n)

    def elements(self):
        return list(range(self.n))


class PrimeField(IntegersMod):
    """``GF(p)``; arithmetic identical to ``Z/p`` but spelled as a field."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise RingParseError(f"GF({p}): {p} is not prime")
        super().__init__(p)
        self.descriptor = f"GF({p})"


class PolynomialRing(Ring):
    """Univariate polynomial ring over ``base``."""

    def __init__(self, base: Ring, var: str = "x"):
        if base.var == var:
            raise RingParseError(f"variable {var!r} already used by {base.descriptor}")
        self.base = base
        self.var = var
        self.descriptor = f"{base.descriptor}[{var}]"
        self.characteristic = base.characteristic
        self.is_domain = base.is_domain
        self.zero = ()
        self.one = (base.one,)

    def add(self, a, b):
        return P.add(self.base, a, b)

    def neg(self, a):
        return P.neg(self.base, a)

    def mul(self, a, b):
        return P.mul(self.base, a, b)

    def from_int(self, n):
        return P.trim(self.base, (self.base.from_int(n),))

    def from_base(self, c):
        return P.trim(self.base, (c,))

    def is_unit(self, a):
        if not a or not self.base.is_unit(a[0]):
            return False
        if self.base.is_domain:
            return len(a) == 1
        return all(self._nilpotent(c) for c in a[1:])

    def _nilpotent(self, c):
        if not self.base.is_finite:
            raise UnsupportedRingError(f"unit test in {self.descriptor} needs a finite or integral base")
        return self.base.is_zero(self.base.pow(c, self.base.cardinality.bit_length()))

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertibleError(f"{self.format(a)} is not a unit in {self.descriptor}")
        c0 = self.base.inv(a[0])
        # u = a0 (1 + m) with m nilpotent, so u^-1 = a0^-1 * sum (-m)^k
        m = P.scale(self.base, c0, (self.base.zero,) + a[1:])
        term, total = self.one, self.one
        while True:
            term = self.neg(self.mul(term, m))
            if not term:
                break
            total = self.add(total, term)
        return P.scale(self.base, c0, total)

    def parse(self, text):
        return P.parse_poly(self.base, str(text), self.var)

    def _coerce_other(self, x):
        if isinstance(x, tuple):
            return P.trim(self.base, tuple(self.base.coerce(c) for c in x))
        return super()._coerce_other(x)

    def format(self, a):
        return P.format_poly(self.base, a, self.var)

    def random_element(self, rng, max_degree=3):
        return P.trim(self.base, [self.base.random_element(rng) for _ in range(max_degree + 1)])

    def evaluate(self, a, point):
        """Substitute ``point`` (a payload of the base ring) for the variable."""
        return P.evaluate(self.base, a, point)


class QuotientRing(Ring):
    """``base[x]/(f)`` for a monic polynomial ``f`` of positive degree."""

    def __init__(self, base: Ring, modulus, var: str = "x"):
        self.poly = PolynomialRing(base, var)
        modulus = self.poly.coerce(modulus)
        if not modulus or modulus[-1] != base.one:
            raise RingParseError("quotient modulus must be monic")
        if len(modulus) < 2:
            raise RingParseError("quotient by a unit gives the trivial ring")
        self.base = base
        self.var = var
        self.modulus = modulus
        self.dim = len(modulus) - 1
        self.descriptor = f"{base.descriptor}[{var}]/({P.format_poly(base, modulus, var)})"
        self.characteristic = base.characteristic
        self.is_finite = base.is_finite
        self.cardinality = base.cardinality ** self.dim if base.is_finite else None
        self.zero = ()
        self.one = (base.one,)

    def _reduce(self, f):
        if len(f) <= self.dim:
            return f
        return P.rem(self.base, f, self.modulus)

    def add(self, a, b):
        return P.add(self.base, a, b)

    def neg(self, a):
        return P.neg(self.base, a)

    def mul(self, a, b):
        return self._reduce(P.mul(self.base, a, b))

    def from_int(self, n):
        return P.trim(self.base, (self.base.from_int(n),))

    def _multiplication_matrix(self, a):
        cols = []
        for k in range(self.dim):
            col = self.mul(a, P.monomial(self.base, self.base.one, k))
            cols.append(list(col) + [self.base.zero] * (self.dim - len(col)))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def is_unit(self, a):
        if not a:
            return False
        if self.base.is_field:
            return P.gcd(self.base, a, self.modulus) == (self.base.one,)
        from .matrix import Matrix

        # a is a unit iff multiplication by a is bijective on the free base-module
        return self.base.is_unit(Matrix(self.base, self._multiplication_matrix(a)).det().value)

    def inv(self, a):
        if self.base.is_field:
            if not a:
                raise NotInvertibleError("0 is not a unit")
            return P.inverse_mod(self.base, a, self.modulus)
        from .matrix import Matrix

        M = Matrix(self.base, self._multiplication_matrix(a))
        d = M.det().value
        if not self.base.is_unit(d):
            raise NotInvertibleError(f"{self.format(a)} is not a unit in {self.descriptor}")
        adj = M.adjugate()
        dinv = self.base.inv(d)
        return P.trim(self.base, [self.base.mul(adj.rows[i][0], dinv) for i in range(self.dim)])

    def parse(self, text):
        return self._reduce(P.parse_poly(self.base, str(text), self.var))

    def _coerce_other(self, x):
        if isinstance(x, tuple):
            return self._reduce(P.trim(self.base, tuple(self.base.coerce(c) for c in x)))
        return super()._coerce_other(x)

    def format(self, a):
        return P.format_poly(self.base, a, self.var)

    def random_element(self, rng, bound=None):
        return P.trim(self.base, [self.base.random_element(rng) for _ in range(self.dim)])

    def elements(self):
        base_elts = self.base.elements()
        return [
            P.trim(self.base, coeffs)
            for coeffs in itertools.product(base_elts, repeat=self.dim)
        ]


@lru_cache(maxsize=None)
def _first_irreducible(p: int, k: int):
    F = PrimeField(p)
    for tail in itertools.product(range(p), repeat=k):
        f = tuple(tail) + (1,)
        if is_irreducible_over_prime_field(F, f):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable: one always exists


def is_irreducible_over_prime_field(F: PrimeField, f) -> bool:
    """Distinct-degree test: ``f`` of degree ``d`` is irreducible iff
    ``gcd(x^(p^i) - x, f) = 1`` for all ``i <= d // 2``."""
    f = P.make_monic(F, f)
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    x = (0, 1)
    h = x
    for _ in range(d // 2):
        h = P.powmod(F, h, F.n, f)
        if P.gcd(F, P.sub(F, h, x), f) != (1,):
            return False
    return True


class ExtensionField(QuotientRing):
    """``GF(p^k)`` for ``k >= 2``, realized as ``GF(p)[g]/(f)`` with ``f`` the
    lexicographically first monic irreducible of degree ``k``."""

    def __init__(self, p: int, k: int):
        super().__init__(PrimeField(p), _first_irreducible(p, k), var="g")
        self.descriptor = f"GF({p ** k})"
        self.is_field = True
        self.is_domain = True

    def is_unit(self, a):
        return bool(a)


ZZ = IntegerRing()
QQ = RationalField()


def GF(q: int) -> Ring:
    pk = prime_power(q)
    if pk is None:
        raise RingParseError(f"GF({q}): {q} is not a prime power")
    p, k = pk
    return PrimeField(p) if k == 1 else ExtensionField(p, k)


def ring_parse(descriptor: str) -> Ring:
    """Build a ring from its textual descriptor, e.g. ``"GF(17)[x]/(x^8-3)"``."""
    text = str(descriptor).replace(" ", "")
    if not text:
        raise RingParseError("empty ring descriptor")
    marker = "[x]/("
    if text.endswith(")") and marker in text:
        cut = text.rindex(marker)
        base = ring_parse(text[:cut])
        return QuotientRing(base, P.parse_poly(base, text[cut + len(marker):-1], "x"))
    if text.endswith("[x]"):
        return PolynomialRing(ring_parse(text[:-3]), "x")
    if text == "Z":
        return ZZ
    if text == "Q":
        return QQ
    if text.startswith("Z/"):
        try:
            return IntegersMod(int(text[2:]))
        except ValueError:
            raise RingParseError(f"malformed modulus in {descriptor!r}") from None
    if text.startswith("GF(") and text.endswith(")"):
        try:
            q = int(text[3:-1])
        except ValueError:
            raise RingParseError(f"malformed field order in {descriptor!r}") from None
        return GF(q)
    raise RingParseError(f"unrecognized ring descriptor {descriptor!r}")


@dataclass(frozen=True)
class Element:
    """A ring element: owning ring plus canonical payload."""

    ring: Ring
    value: object

    def _other(self, other):
        if isinstance(other, Element):
            if other.ring != self.ring:
                raise RingParseError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return Element(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Element(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Element(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Element(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        return Element(self.ring, self.ring.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring == other.ring and self.value == other.value
        try:
            return self.value == self.ring.coerce(other)
        except (RingParseError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor, self.value))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def inverse(self) -> "Element":
        return Element(self.ring, self.ring.inv(self.value))

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"Element({self.ring.descriptor}, {self})"


def _int_xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def bezout_section(a, ring: Ring | None = None):
    """Find ``b`` with ``sum(a_i * b_i) == 1``, or ``None`` if ``a`` is not unimodular.

    Args:
        a: Row of payloads (or literals, or :class:`Element`).
        ring: Ring of the entries; inferred from :class:`Element` inputs if omitted.

    Returns:
        Tuple of payloads ``b``, or ``None``.

    Raises:
        UnsupportedRingError: The ring has no constructive gcd here (``Z[x]``,
            quotients over non-fields, ...); supply a section explicitly.
    """
    if ring is None:
        ring = next((x.ring for x in a if isinstance(x, Element)), None)
        if ring is None:
            raise RingParseError("cannot infer the ring: pass ring= or Element entries")
    a = [ring.coerce(x) for x in a]
    n = len(a)
    if n == 0:
        return None

    if isinstance(ring, IntegerRing) or (isinstance(ring, IntegersMod)):
        modulus = ring.n if isinstance(ring, IntegersMod) else 0
        g, coeffs = 0, [0] * n
        for i, v in enumerate(a):
            g2, s, t = _int_xgcd(g, v)
            coeffs = [c * s for c in coeffs]
            coeffs[i] = t
            g = g2
        if modulus:
            # unimodular mod n iff gcd(a_1, ..., a_k, n) == 1
            g2, s, t = _int_xgcd(g, modulus)
            if g2 not in (1, -1):
                return None
            b = tuple(ring.from_int(c * s * g2) for c in coeffs)
        else:
            if g not in (1, -1):
                return None
            b = tuple(c * g for c in coeffs)
    elif ring.is_field and not isinstance(ring, QuotientRing):
        idx = next((i for i, v in enumerate(a) if not ring.is_zero(v)), None)
        if idx is None:
            return None
        b = tuple(ring.inv(v) if i == idx else ring.zero for i, v in enumerate(a))
    elif isinstance(ring, PolynomialRing) and ring.base.is_field:
        b = _poly_field_section(ring.base, a, None)
        if b is None:
            return None
    elif isinstance(ring, QuotientRing) and ring.base.is_field:
        b = _poly_field_section(ring.base, a, ring.modulus)
        if b is None:
            return None
        b = tuple(ring._reduce(c) for c in b)
    else:
        raise UnsupportedRingError(
            f"no constructive section algorithm over {ring.descriptor}; supply a section"
        )
    assert _dot(ring, a, b) == ring.one
    return b


def _poly_field_section(F, a, modulus):
    values = list(a) + ([modulus] if modulus is not None else [])
    g, coeffs = (), []
    for v in values:
        d, s, t = P.xgcd(F, g, v) if g or v else ((), (), ())
        coeffs = [P.mul(F, c, s) for c in coeffs] + [t]
        g = d
    if g != (F.one,):
        return None
    return tuple(coeffs[: len(a)])


def _dot(ring, a, b):
    acc = ring.zero
    for x, y in zip(a, b):
        acc = ring.add(acc, ring.mul(x, y))
    return acc

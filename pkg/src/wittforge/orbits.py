"""Unimodular rows, right group actions and orbit enumeration over finite rings.

Group elements over finite rings are found by brute force under explicit
budgets; this is an exploration instrument for desk-scale rings, not a
decision procedure for transitivity over general rings.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field

from .alternating import AlternatingMatrix
from .elementary import ElementaryFactorization
from .exceptions import BudgetExceededError, DimensionError, NotInvertibleError
from .matrix import Matrix
from .rings import Ring, UnsupportedRingError, _dot, bezout_section

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    return int(os.environ.get("WITTFORGE_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class UnimodularRow:
    """Row ``a`` with an optional section ``b`` (a column with ``a . b = 1``)."""

    ring: Ring
    a: tuple
    section: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.ring.coerce(x) for x in self.a))
        if self.section is not None:
            b = tuple(self.ring.coerce(x) for x in self.section)
            if len(b) != len(self.a):
                raise DimensionError("section length differs from row length")
            object.__setattr__(self, "section", b)

    @classmethod
    def basis(cls, ring: Ring, n: int, i: int = 1) -> "UnimodularRow":
        """``(0, ..., 1, ..., 0)`` with 1 in slot ``i`` (1-based) and the matching section."""
        e = tuple(ring.one if k == i - 1 else ring.zero for k in range(n))
        return cls(ring, e, e)

    @classmethod
    def with_section(cls, ring: Ring, a) -> "UnimodularRow":
        """Attach a section found constructively (or by exhaustive search on finite rings)."""
        a = tuple(ring.coerce(x) for x in a)
        try:
            b = bezout_section(a, ring)
        except UnsupportedRingError:
            if not ring.is_finite:
                raise
            b = find_section_exhaustive(ring, a)
        if b is None:
            raise NotInvertibleError("row is not unimodular")
        return cls(ring, a, b)

    def __len__(self):
        return len(self.a)

    def to_json(self) -> dict:
        fmt = self.ring.format
        out = {"ring": self.ring.descriptor, "a": [fmt(x) for x in self.a]}
        if self.section is not None:
            out["section"] = [fmt(x) for x in self.section]
        return out


def verify_section(u: UnimodularRow) -> bool:
    if u.section is None:
        raise ValueError("row carries no section")
    return _dot(u.ring, u.a, u.section) == u.ring.one


def is_symplectic(g: Matrix, chi) -> bool:
    """``g^t chi g == chi``."""
    chi_m = chi.matrix if isinstance(chi, AlternatingMatrix) else chi
    if g.shape != chi_m.shape:
        raise DimensionError(f"rank mismatch: {g.shape} vs {chi_m.shape}")
    return g.T @ chi_m @ g == chi_m


def _row_times(R: Ring, a, g_cols):
    return tuple(_dot(R, a, c) for c in g_cols)


def act(u: UnimodularRow, g: Matrix) -> UnimodularRow:
    """Right action ``a -> a g``; a section ``b`` is transported to ``g^-1 b``."""
    if g.nrows != len(u.a) or not g.is_square:
        raise DimensionError(f"cannot act with {g.shape} on a row of length {len(u.a)}")
    a_new = _row_times(u.ring, u.a, g.T.rows)
    b_new = None
    if u.section is not None:
        b_new = g.inverse().apply(u.section)
    elif not g.is_invertible():
        raise NotInvertibleError("acting matrix is not invertible")
    return UnimodularRow(u.ring, a_new, b_new)


# exhaustive machinery --------------------------------------------------------


def _check_finite(ring: Ring):
    if not ring.is_finite:
        raise UnsupportedRingError(f"{ring.descriptor} is not finite")


def find_section_exhaustive(ring: Ring, a):
    """Section of ``a`` over a finite ring by closing the ideal ``(a_1, ..., a_n)``
    under addition of multiples, carrying a witness coefficient vector."""
    _check_finite(ring)
    a = tuple(ring.coerce(x) for x in a)
    n = len(a)
    elts = ring.elements()
    zero_vec = (ring.zero,) * n
    ideal = {ring.zero: zero_vec}
    for i, ai in enumerate(a):
        multiples = {}
        for r in elts:
            multiples.setdefault(ring.mul(r, ai), r)
        grown = {}
        for x, wx in ideal.items():
            for y, r in multiples.items():
                s = ring.add(x, y)
                if s not in grown:
                    w = list(wx)
                    w[i] = ring.add(w[i], r)
                    grown[s] = tuple(w)
        ideal = grown
    return ideal.get(ring.one)


def unimodular_rows(ring: Ring, n: int, budget: int | None = None):
    """All rows of length ``n`` admitting a section, in lexicographic order."""
    _check_finite(ring)
    budget = default_budget() if budget is None else budget
    if ring.cardinality ** n > budget:
        raise BudgetExceededError(f"{ring.cardinality}^{n} rows exceed budget {budget}")
    elts = sorted(ring.elements())
    return [a for a in itertools.product(elts, repeat=n) if find_section_exhaustive(ring, a) is not None]


def enumerate_group(ring: Ring, n: int, kind: str, form=None, budget: int | None = None):
    """All ``n x n`` matrices with determinant 1 (``special-linear``) or symplectic
    for ``form`` (``symplectic``), by filtered exhaustive search."""
    _check_finite(ring)
    budget = default_budget() if budget is None else budget
    if ring.cardinality ** (n * n) > budget:
        raise BudgetExceededError(f"{ring.cardinality}^{n * n} matrices exceed budget {budget}")
    elts = sorted(ring.elements())
    out = []
    for flat in itertools.product(elts, repeat=n * n):
        g = Matrix(ring, [flat[i * n:(i + 1) * n] for i in range(n)])
        if kind == "special-linear":
            if g.det().value == ring.one:
                out.append(g)
        elif kind == "symplectic":
            if is_symplectic(g, form):
                out.append(g)
        else:
            raise ValueError(f"unknown group kind {kind!r}")
    return out


def elementary_generators(ring: Ring, n: int):
    _check_finite(ring)
    nonzero = [x for x in sorted(ring.elements()) if not ring.is_zero(x)]
    return [
        Matrix.elementary(ring, n, i, j, lam)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j
        for lam in nonzero
    ]


def elementary_symplectic_generators(chi, depth: int = 2, budget: int | None = None, certificates: bool = False):
    """Elementary matrices, and products of up to ``depth`` of them, that are
    symplectic for ``chi``; a generator pool for ``E_n ∩ Sp(chi)``.

    With ``certificates=True`` each entry is a ``(matrix, factorization)`` pair.
    """
    chi_m = chi.matrix if isinstance(chi, AlternatingMatrix) else chi
    ring, n = chi_m.ring, chi_m.nrows
    _check_finite(ring)
    budget = default_budget() if budget is None else budget
    nonzero = [x for x in sorted(ring.elements()) if not ring.is_zero(x)]
    steps = [(i, j, lam) for i in range(1, n + 1) for j in range(1, n + 1) if i != j for lam in nonzero]
    if len(steps) ** depth > budget:
        raise BudgetExceededError(f"{len(steps)}^{depth} candidate products exceed budget {budget}")
    found = {}
    for k in range(1, depth + 1):
        for word in itertools.product(steps, repeat=k):
            F = ElementaryFactorization(ring, n, word)
            g = F.evaluate()
            if g.is_identity() or g in found:
                continue
            if is_symplectic(g, chi_m):
                found[g] = F
    if certificates:
        return list(found.items())
    return list(found)


# orbits -----------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    """Which group acts: ``elementary``, ``special-linear``, ``symplectic``,
    ``elementary-symplectic`` or ``custom`` (explicit ``generators``)."""

    kind: str
    form: AlternatingMatrix | None = None
    generators: tuple | None = field(default=None)
    depth: int = 2

    def __post_init__(self):
        kinds = {"elementary", "special-linear", "symplectic", "elementary-symplectic", "custom"}
        if self.kind not in kinds:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind in ("symplectic", "elementary-symplectic"):
            if self.form is None:
                raise ValueError(f"{self.kind} group needs an alternating form")
            if not self.form.is_invertible():
                raise NotInvertibleError("symplectic group needs an invertible form")
        if self.kind == "custom" and self.generators is None:
            raise ValueError("custom group needs explicit generators")

    @classmethod
    def trivial(cls) -> "GroupSpec":
        return cls("custom", generators=())

    def generator_list(self, ring: Ring, n: int, budget: int | None = None):
        if self.generators is not None:
            return list(self.generators)
        if self.form is not None and self.form.rank != n:
            raise DimensionError(f"form of rank {self.form.rank} cannot act on rows of length {n}")
        if self.kind == "symplectic" and n % 2:
            raise DimensionError("symplectic groups act on rows of even length")
        if self.kind == "elementary":
            return elementary_generators(ring, n)
        if self.kind == "special-linear":
            return enumerate_group(ring, n, "special-linear", budget=budget)
        if self.kind == "symplectic":
            return enumerate_group(ring, n, "symplectic", self.form, budget=budget)
        return elementary_symplectic_generators(self.form, self.depth, budget)

    def describe(self) -> str:
        return self.kind


@dataclass
class Orbit:
    representative: tuple
    members: list

    @property
    def size(self) -> int:
        return len(self.members)


def _bfs(ring, start, gen_cols):
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for cols in gen_cols:
            b = _row_times(ring, a, cols)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def orbit_enumerate(ring: Ring, n: int, group: GroupSpec, start=None, budget: int | None = None):
    """Partition ``Um_n(ring)`` into orbits under the right action of ``group``.

    Orbits are listed by their lexicographically least member. When ``start``
    is given only the orbit through that row is returned.
    """
    _check_finite(ring)
    if group.kind == "symplectic" and n % 2:
        raise DimensionError("symplectic orbits need even n")
    gens = group.generator_list(ring, n, budget)
    gen_cols = [g.T.rows for g in gens]
    if start is not None:
        a = start.a if isinstance(start, UnimodularRow) else tuple(ring.coerce(x) for x in start)
        members = sorted(_bfs(ring, a, gen_cols))
        return [Orbit(members[0], members)]
    remaining = unimodular_rows(ring, n, budget)
    assigned = set()
    orbits = []
    for a in remaining:
        if a in assigned:
            continue
        members = sorted(_bfs(ring, a, gen_cols))
        assigned.update(members)
        orbits.append(Orbit(members[0], members))
    orbits.sort(key=lambda o: o.representative)
    return orbits


def sl2_completion(u: UnimodularRow) -> Matrix:
    """``[[a1, a2], [-b2, b1]]`` for a row ``(a1, a2)`` with section ``(b1, b2)``;
    determinant ``a1 b1 + a2 b2 = 1`` and first row ``(a1, a2)``."""
    if len(u.a) != 2 or u.section is None:
        raise DimensionError("SL_2 completion needs a length-2 row with a section")
    R = u.ring
    (a1, a2), (b1, b2) = u.a, u.section
    return Matrix(R, [[a1, a2], [R.neg(b2), b1]])


def orbits_to_json(ring: Ring, n: int, group: GroupSpec, orbits) -> dict:
    fmt = ring.format
    return {
        "ring": ring.descriptor,
        "n": n,
        "group": group.describe(),
        "orbit_count": len(orbits),
        "orbits": [{"size": o.size, "representative": [fmt(x) for x in o.representative]} for o in orbits],
    }


"""Seeded property suites, one per area of the library.

Each suite takes a ``random.Random`` and returns a list of :class:`Check`
tallies. :func:`run_suites` runs them in name order with a per-suite seed
derived from the master seed, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .alternating import (
    is_alternating,
    orthogonal_sum,
    pfaffian,
    psi,
    verify_equivalence_certificate,
    witt_inverse,
)
from .elementary import (
    block_swap_factorization,
    block_swap_matrix,
    whitehead_factorization,
)
from .exceptions import NotAlternatingError
from .kummer import is_nonsquare, kummer_verify, low_degree_factor_search, x8_minus
from .lemmas import (
    cancel_hyperbolic_summand,
    random_cancellation_input,
    random_stabilization_input,
    symplectic_stabilization,
)
from .matrix import Matrix, direct_sum
from .orbits import (
    GroupSpec,
    UnimodularRow,
    act,
    elementary_generators,
    enumerate_group,
    find_section_exhaustive,
    orbit_enumerate,
    sl2_completion,
    unimodular_rows,
    verify_section,
)
from .rings import GF, ZZ, PolynomialRing, _dot, bezout_section, is_irreducible_over_prime_field, ring_parse
from .sampling import (
    random_alternating,
    random_elementary,
    random_invertible,
    random_invertible_alternating,
    random_matrix,
)
from .suslin import suslin_det_check, suslin_matrix

SMALL_RINGS = ("Z/4", "Z/6", "GF(2)", "GF(3)", "GF(4)")


@dataclass
class Check:
    name: str
    passed: int = 0
    total: int = 0

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def record(self, outcome: bool):
        self.total += 1
        self.passed += bool(outcome)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "total": self.total, "ok": self.ok}


def _tally(name, outcomes) -> Check:
    c = Check(name)
    for o in outcomes:
        c.record(o)
    return c


# ring-core --------------------------------------------------------------------


AXIOM_RINGS = ("Z", "Q", "Z/6", "GF(7)", "GF(4)", "Z[x]", "GF(7)[x]/(x^2+1)", "Z/4[x]/(x^2)")


def ring_axioms(ring, rng, count):
    for _ in range(count):
        a, b, c = (ring.random_element(rng) for _ in range(3))
        add, mul = ring.add, ring.mul
        yield (
            add(add(a, b), c) == add(a, add(b, c))
            and mul(mul(a, b), c) == mul(a, mul(b, c))
            and add(a, b) == add(b, a)
            and mul(a, b) == mul(b, a)
            and mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
            and add(a, ring.neg(a)) == ring.zero
            and mul(a, ring.one) == a
        )


def suite_ring_core(rng, count=1000):
    out = [_tally(f"axioms {d}", ring_axioms(ring_parse(d), rng, count)) for d in AXIOM_RINGS]

    def sections():
        for d in ("Z", "Z/6", "Z/9", "GF(7)", "GF(7)[x]", "GF(7)[x]/(x^2)"):
            R = ring_parse(d)
            for _ in range(100):
                a = [R.random_element(rng) for _ in range(rng.randint(1, 4))]
                b = bezout_section(a, R)
                if b is not None:
                    yield _dot(R, a, b) == R.one

    out.append(_tally("bezout sections verify", sections()))

    def inverses():
        for q in (2, 3, 4, 7, 8, 9, 17):
            F = GF(q)
            for x in F.elements():
                if not F.is_zero(x):
                    yield F.is_unit(x) and F.mul(x, F.inv(x)) == F.one

    out.append(_tally("GF(q) units and inverses", inverses()))
    return out


# exact-matrix -----------------------------------------------------------------


def suite_exact_matrix(rng, count=100):
    out = []

    def det_mult():
        for d in ("GF(7)", "Z/6"):
            R = ring_parse(d)
            for _ in range(count):
                n = rng.randint(1, 6)
                M, N = random_matrix(R, n, n, rng), random_matrix(R, n, n, rng)
                yield (M @ N).det() == M.det() * N.det()

    out.append(_tally("det(MN) = det(M)det(N)", det_mult()))

    def inverses():
        for d in ("GF(7)", "Z/6", "Q", "Z"):
            R = ring_parse(d)
            for _ in range(count // 2):
                n = rng.randint(1, 5)
                M = random_invertible(R, n, rng)
                Mi = M.inverse()
                I = Matrix.identity(R, n)
                yield Mi @ M == I and M @ Mi == I

    out.append(_tally("inverse(M) M = M inverse(M) = Id", inverses()))

    def elementary_det():
        for d in ("Z", "GF(7)", "Z/6", "GF(4)"):
            R = ring_parse(d)
            for _ in range(count // 2):
                F = random_elementary(R, rng.randint(1, 6), rng, max_steps=8)
                yield F.evaluate().det().value == R.one

    out.append(_tally("elementary products have det 1", elementary_det()))
    out.append(_tally("whitehead factorization", whitehead_outcomes(rng)))
    out.append(_tally("block swap factorization", block_swap_outcomes()))
    return out


def whitehead_outcomes(rng, count=200, fields=(2, 3, 7, 17)):
    """``count`` random invertible ``A`` of rank 1..3, cycling through ``GF(q)``."""
    for k in range(count):
        F = GF(fields[k % len(fields)])
        A = random_invertible(F, rng.randint(1, 3), rng)
        yield whitehead_factorization(A).evaluate() == direct_sum(A, A.inverse())


def block_swap_outcomes(limit=4):
    for r in range(1, limit + 1):
        for s in range(1, limit + 1):
            if r * s % 2 == 0:
                yield block_swap_factorization(r, s).evaluate() == block_swap_matrix(r, s)


# alternating-witt -------------------------------------------------------------


PFAFFIAN_RINGS = ("Z", "GF(7)", "Z/6")


def pfaffian_outcomes(rng, identity, count=500, rings=PFAFFIAN_RINGS):
    """``count`` instances of one Pfaffian identity, spread over ``rings``."""
    for k in range(count):
        R = ring_parse(rings[k % len(rings)])
        if identity == "orthogonal-sum":
            r1 = 2 * rng.randint(0, 3)
            r2 = 2 * rng.randint(0, 4 - r1 // 2)
            M, N = random_alternating(R, r1, rng), random_alternating(R, r2, rng)
            yield pfaffian(orthogonal_sum(M, N)) == pfaffian(M) * pfaffian(N)
        elif identity == "congruence":
            rank = 2 * rng.randint(1, 4)
            G = random_invertible(R, rank, rng)
            N = random_invertible_alternating(R, rank, rng)
            yield pfaffian(N.congruent(G)) == G.det() * pfaffian(N)
        elif identity == "square":
            N = random_alternating(R, 2 * rng.randint(0, 4), rng)
            yield pfaffian(N) ** 2 == N.matrix.det()
        elif identity == "standard":
            yield pfaffian(psi(2 * (k % 5 + 1), R)) == 1
        else:
            raise ValueError(f"unknown identity {identity!r}")


PFAFFIAN_IDENTITIES = ("orthogonal-sum", "congruence", "square", "standard")


def suite_alternating_witt(rng, count=500):
    out = [_tally(f"pfaffian {name}", pfaffian_outcomes(rng, name, count)) for name in PFAFFIAN_IDENTITIES]

    def witt_involution():
        for k in range(count // 5):
            R = ring_parse(PFAFFIAN_RINGS[k % 3])
            N = random_invertible_alternating(R, 2 * rng.randint(1, 3), rng)
            try:
                W = witt_inverse(N)
            except NotAlternatingError:
                yield False
                continue
            yield is_alternating(W.matrix) and witt_inverse(W) == N

    out.append(_tally("witt inverse is an alternating involution", witt_involution()))

    def certificates():
        for k in range(count // 5):
            R = ring_parse(PFAFFIAN_RINGS[k % 3])
            rank = 2 * rng.randint(1, 2)
            s = rng.randint(0, 1)
            N = random_invertible_alternating(R, rank, rng)
            size = 2 * rank + 2 * s
            if k % 2:
                # a genuine certificate: elementary congruence inside the first block
                e = random_elementary(R, rank, rng)
                M = N.congruent(e.evaluate())
                E = e.embed(size)
                yield verify_equivalence_certificate(M, N, s, E) and pfaffian(M) == pfaffian(N)
            else:
                M = random_invertible_alternating(R, rank, rng)
                E = random_elementary(R, size, rng)
                yield pfaffian(M) == pfaffian(N) or not verify_equivalence_certificate(M, N, s, E)

    out.append(_tally("certificates preserve the Pfaffian", certificates()))
    return out


# suslin -----------------------------------------------------------------------


SUSLIN_RINGS = ("Z", "GF(7)", "Z/6")


def suslin_outcomes(rng, count=200, ns=(2, 3, 4, 5), rings=SUSLIN_RINGS):
    for d in rings:
        R = ring_parse(d)
        for n in ns:
            for _ in range(count):
                a = [R.random_element(rng) for _ in range(n)]
                b = [R.random_element(rng) for _ in range(n)]
                yield suslin_det_check(a, b, R).equal


def suite_suslin(rng, count=200):
    out = [_tally("det law", suslin_outcomes(rng, count))]

    def basepoint():
        for d in SUSLIN_RINGS:
            R = ring_parse(d)
            for n in range(1, 6):
                e = [1] + [0] * (n - 1)
                yield suslin_matrix(e, e, R).det() == 1

    out.append(_tally("basepoint has det 1", basepoint()))

    def substitution():
        Zx = PolynomialRing(ZZ)
        for _ in range(count // 4):
            n = rng.randint(1, 4)
            a = [Zx.random_element(rng) for _ in range(n)]
            b = [Zx.random_element(rng) for _ in range(n)]
            t = rng.randint(-5, 5)
            generic = suslin_matrix(a, b, Zx)
            evaluated = Matrix(ZZ, [[Zx.evaluate(x, t) for x in row] for row in generic.rows])
            direct = suslin_matrix([Zx.evaluate(x, t) for x in a], [Zx.evaluate(x, t) for x in b], ZZ)
            yield evaluated == direct

    out.append(_tally("substitution commutes with construction", substitution()))
    return out


# unimodular-orbits -------------------------------------------------------------


def sl2_orbit_partition(R):
    return orbit_enumerate(R, 2, GroupSpec("special-linear"))


def reachability_partition(R):
    """Independent partition of ``Um_2`` into classes of the relation
    ``a ~ a g`` for ``g`` in ``SL_2``, closed transitively by union-find."""
    elts = sorted(R.elements())
    rows = [(x, y) for x in elts for y in elts if find_section_exhaustive(R, (x, y)) is not None]
    parent = {a: a for a in rows}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in enumerate_group(R, 2, "special-linear"):
        (p, q), (r, s) = g.rows
        for a in rows:
            b = (R.add(R.mul(a[0], p), R.mul(a[1], r)), R.add(R.mul(a[0], q), R.mul(a[1], s)))
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    classes = {}
    for a in rows:
        classes.setdefault(find(a), []).append(a)
    return sorted(sorted(c) for c in classes.values())


def completion_transitivity(R):
    """Every unimodular pair is ``e_1 g`` for the completion ``g`` built from its section."""
    e1 = UnimodularRow.basis(R, 2)
    for a in unimodular_rows(R, 2):
        u = UnimodularRow.with_section(R, a)
        g = sl2_completion(u)
        yield g.det().value == R.one and act(e1, g).a == u.a


def suite_unimodular_orbits(rng, count=50):
    out = []

    def act_preserves():
        for d in SMALL_RINGS:
            R = ring_parse(d)
            rows = unimodular_rows(R, 3)
            gens = elementary_generators(R, 3)
            for _ in range(count):
                u = UnimodularRow.with_section(R, rng.choice(rows))
                g = Matrix.identity(R, 3)
                for _ in range(3):
                    g = g @ rng.choice(gens)
                yield verify_section(act(u, g))

    out.append(_tally("action transports sections", act_preserves()))

    def partitions():
        for d in SMALL_RINGS:
            R = ring_parse(d)
            for group in (GroupSpec("elementary"), GroupSpec("special-linear")):
                orbits = orbit_enumerate(R, 2, group)
                members = [a for o in orbits for a in o.members]
                yield len(members) == len(set(members)) and sorted(members) == unimodular_rows(R, 2)

    out.append(_tally("orbits partition Um_2", partitions()))

    def closed():
        for d in SMALL_RINGS:
            R = ring_parse(d)
            gens = elementary_generators(R, 2)
            for o in orbit_enumerate(R, 2, GroupSpec("elementary")):
                members = set(o.members)
                yield all(tuple(_dot(R, a, c) for c in g.T.rows) in members for a in members for g in gens)

    out.append(_tally("orbits are closed under generators", closed()))

    def oracle():
        for d in SMALL_RINGS:
            R = ring_parse(d)
            yield [o.members for o in sl2_orbit_partition(R)] == reachability_partition(R)

    out.append(_tally("BFS orbits match reachability oracle", oracle()))

    def transitive():
        for d in SMALL_RINGS:
            R = ring_parse(d)
            yield len(sl2_orbit_partition(R)) == 1 and all(completion_transitivity(R))

    out.append(_tally("SL_2 transitive on Um_2 via completion", transitive()))
    return out


# constructive-lemmas ------------------------------------------------------------


KUMMER_PRIMES = (17, 41, 73, 89, 97)


def stabilization_outcomes(rng, count=50, fields=("GF(3)", "GF(7)")):
    shapes = [(1, 0), (1, 1), (2, 0), (2, 1)]
    for k in range(count):
        R = ring_parse(fields[k % len(fields)])
        n, s = shapes[(k // len(fields)) % len(shapes)]
        yield symplectic_stabilization(random_stabilization_input(R, n, s, rng))


def cancellation_outcomes(rng, count=50, fields=("GF(3)", "GF(7)")):
    for k in range(count):
        R = ring_parse(fields[k % len(fields)])
        yield cancel_hyperbolic_summand(random_cancellation_input(R, rng))


def kummer_outcomes(primes=KUMMER_PRIMES):
    for p in primes:
        for a in range(1, p):
            yield kummer_verify(p, a).implication_holds


def kummer_oracle_outcomes(p=17):
    F = GF(p)
    for a in range(1, p):
        report = kummer_verify(p, a)
        yield report.irreducible == (low_degree_factor_search(p, x8_minus(p, a)) is None)
        yield report.a_nonsquare == is_nonsquare(p, a)
    # a few non-binomial degree-8 polynomials as well
    rng = random.Random(p)
    for _ in range(20):
        f = tuple(rng.randrange(p) for _ in range(8)) + (1,)
        yield is_irreducible_over_prime_field(F, f) == (low_degree_factor_search(p, f) is None)


def suite_constructive_lemmas(rng, count=50):
    stab = list(stabilization_outcomes(rng, count))
    canc = list(cancellation_outcomes(rng, count))
    canc2 = list(cancellation_outcomes(rng, max(count // 5, 1), fields=("GF(2)",)))
    return [
        _tally("stabilization symplectic and det 1", (r.symplectic and r.det_one for r in stab)),
        _tally("stabilization K_1 witness", (r.witness_matches for r in stab)),
        _tally("cancellation conditions and det 1", (r.ok for r in canc + canc2)),
        _tally("kummer implication", kummer_outcomes()),
        _tally("kummer gcd criterion matches oracle", kummer_oracle_outcomes()),
    ]


SUITES = {
    "alternating-witt": suite_alternating_witt,
    "constructive-lemmas": suite_constructive_lemmas,
    "exact-matrix": suite_exact_matrix,
    "ring-core": suite_ring_core,
    "suslin": suite_suslin,
    "unimodular-orbits": suite_unimodular_orbits,
}


def run_suites(seed: int = 0, names=None) -> dict:
    """Run the named suites (all by default) in name order."""
    names = sorted(SUITES) if names is None else sorted(names)
    report = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        checks = SUITES[name](rng)
        report.append({"suite": name, "ok": all(c.ok for c in checks), "checks": [c.to_json() for c in checks]})
    return {"seed": seed, "ok": all(s["ok"] for s in report), "suites": report}

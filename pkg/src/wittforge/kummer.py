"""Irreducibility of ``X^8 - a`` over ``GF(p)`` for ``p = 1 mod 8`` and ``a`` a non-square.

The primary decision uses the distinct-degree criterion
``gcd(X^(p^i) - X, f) = 1`` for ``i = 1..4``; :func:`low_degree_factor_search`
is an independent brute-force oracle over all monic divisors of degree <= 4.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .exceptions import WittforgeError
from .rings import PrimeField, is_irreducible_over_prime_field, is_prime


def x8_minus(p: int, a: int):
    return ((-a) % p,) + (0,) * 7 + (1,)


def is_nonsquare(p: int, a: int) -> bool:
    """Euler's criterion: ``a^((p-1)/2) == -1`` for odd ``p``; nothing is a non-square mod 2."""
    if p == 2:
        return False
    return pow(a, (p - 1) // 2, p) == p - 1


def low_degree_factor_search(p: int, f, max_degree: int = 4):
    """Return some monic divisor of ``f`` with degree ``1..max_degree`` or ``None``.

    Enumerates every monic candidate ``g`` and long-divides ``f`` by all of
    them at once with numpy.
    """
    f = np.array(f, dtype=np.int64) % p
    deg_f = len(f) - 1
    for d in range(1, min(max_degree, deg_f) + 1):
        # all lower coefficient vectors (c_0, ..., c_{d-1})
        grids = np.meshgrid(*[np.arange(p)] * d, indexing="ij")
        C = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
        r = np.tile(f, (len(C), 1))
        for k in range(deg_f, d - 1, -1):
            lead = r[:, k].copy()
            r[:, k - d:k] = (r[:, k - d:k] - lead[:, None] * C) % p
            r[:, k] = 0
        hits = np.flatnonzero(~r.any(axis=1))
        if hits.size:
            return tuple(int(c) for c in C[hits[0]]) + (1,)
    return None


@dataclass
class KummerReport:
    p: int
    a: int
    p_congruent_1_mod_8: bool
    a_nonsquare: bool
    irreducible: bool
    hypotheses_hold: bool
    verdict: bool
    implication_holds: bool

    def to_json(self) -> dict:
        return asdict(self)


def kummer_verify(p: int, a: int) -> KummerReport:
    """Check the hypotheses (``p = 1 mod 8``, ``a`` a non-square) and decide
    irreducibility of ``X^8 - a`` over ``GF(p)``."""
    if not is_prime(p):
        raise WittforgeError(f"{p} is not prime")
    a = int(a) % p
    if a == 0:
        raise WittforgeError("a must be a nonzero element of GF(p)")
    F = PrimeField(p)
    cong = p % 8 == 1
    nonsq = is_nonsquare(p, a)
    irreducible = is_irreducible_over_prime_field(F, x8_minus(p, a))
    hyp = cong and nonsq
    return KummerReport(
        p=p,
        a=a,
        p_congruent_1_mod_8=cong,
        a_nonsquare=nonsq,
        irreducible=irreducible,
        hypotheses_hold=hyp,
        verdict=hyp and irreducible,
        implication_holds=(not hyp) or irreducible,
    )


@dataclass
class KummerSweep:
    p: int
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def sweep_kummer(p: int) -> KummerSweep:
    """Verify irreducibility of ``X^8 - a`` for every non-square ``a`` in ``GF(p)``."""
    if not is_prime(p) or p % 8 != 1 or p > 10**4:
        raise WittforgeError(f"sweep needs a prime p = 1 mod 8 below 10^4, got {p}")
    out = KummerSweep(p)
    for a in range(1, p):
        if not is_nonsquare(p, a):
            continue
        out.checked += 1
        if not kummer_verify(p, a).irreducible:
            out.counterexamples.append(a)
    return out


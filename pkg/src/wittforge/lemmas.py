"""Two explicit constructions with symplectic matrices over commutative rings.

:func:`symplectic_stabilization`
    Given ``phi`` whose hyperbolic image is stably elementary-equivalent to the
    standard form (witnessed by ``s`` and an elementary ``phi1``), build
    ``phi' = (phi ⊥ id)(phi^-1 ⊥ phi ⊥ id)(id ⊥ phi1)``, symplectic for
    ``chi ⊥ psi_2m`` with ``m = n + s`` and equal to ``phi ⊥ id`` modulo an
    explicit elementary factorization.

:func:`cancel_hyperbolic_summand`
    Given ``phi^t (chi1 ⊥ psi_2) phi = chi2 ⊥ psi_2`` and an elementary
    symplectic ``psi''`` with the same last column as ``phi``, cut
    ``psi' = psi''^-1 phi`` down to ``psi`` of rank ``2n`` with
    ``psi^t chi1 psi = chi2``.

Inputs are certificate-carrying records that are checked before use; the
``random_*`` helpers build valid inputs by search at desk scale.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .alternating import AlternatingMatrix, orthogonal_sum, psi, split_form
from .elementary import ElementaryFactorization, whitehead_factorization
from .exceptions import CertificateError, DimensionError, NotInvertibleError
from .matrix import Matrix, direct_sum
from .orbits import elementary_symplectic_generators, is_symplectic
from .rings import Ring
from .sampling import random_elementary, random_invertible, random_invertible_alternating, random_unit


def _identity(ring, n):
    return Matrix.identity(ring, n)


def _sum(ring, *mats):
    mats = [m for m in mats if m.nrows]
    return direct_sum(*mats) if mats else Matrix(ring, [])


# stabilization ----------------------------------------------------------------


@dataclass(frozen=True)
class StabilizationInput:
    phi: Matrix
    chi: AlternatingMatrix
    s: int
    phi1: ElementaryFactorization

    @property
    def n(self) -> int:
        return self.phi.nrows // 2

    def certificate_holds(self) -> bool:
        """``phi1^t (phi^t ⊥ id_2s) psi (phi ⊥ id_2s) phi1 == psi`` at rank ``2n + 2s``."""
        R = self.phi.ring
        size = self.phi.nrows + 2 * self.s
        lifted = _sum(R, self.phi, _identity(R, 2 * self.s)) @ self.phi1.evaluate()
        return psi(size, R).congruent(lifted) == psi(size, R)

    def validate(self):
        R = self.phi.ring
        if not self.phi.is_square or self.phi.nrows % 2 or self.phi.nrows == 0:
            raise DimensionError("phi must be square of even positive size")
        if self.chi.rank != self.phi.nrows or self.chi.ring != R or self.phi1.ring != R:
            raise DimensionError("chi must have the rank and ring of phi")
        if self.s < 0 or self.phi1.size != self.phi.nrows + 2 * self.s:
            raise DimensionError("phi1 must have size 2n + 2s")
        if not self.chi.is_invertible():
            raise NotInvertibleError("chi must be invertible")
        if not self.phi.is_invertible():
            raise NotInvertibleError("phi must be invertible")
        if not self.certificate_holds():
            raise CertificateError("phi1 does not witness that the hyperbolic image of phi is trivial")

    def to_json(self) -> dict:
        return {
            "ring": self.phi.ring.descriptor,
            "phi": self.phi.to_json()["rows"],
            "chi": self.chi.matrix.to_json()["rows"],
            "s": self.s,
            "phi1": self.phi1.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, ring: Ring) -> "StabilizationInput":
        return cls(
            Matrix.from_entries(ring, data["phi"]),
            AlternatingMatrix.from_entries(ring, data["chi"]),
            int(data["s"]),
            ElementaryFactorization.from_json(data["phi1"], ring),
        )


@dataclass
class StabilizationResult:
    m: int
    phi_prime: Matrix
    form: AlternatingMatrix
    symplectic: bool
    det_one: bool
    k1_witness: ElementaryFactorization
    witness_matches: bool

    @property
    def ok(self) -> bool:
        return self.symplectic and self.det_one and self.witness_matches

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "phi_prime": self.phi_prime.to_json()["rows"],
            "symplectic": self.symplectic,
            "det_one": self.det_one,
            "k1_witness": self.k1_witness.to_json(),
            "witness_matches": self.witness_matches,
        }


def symplectic_stabilization(inp: StabilizationInput) -> StabilizationResult:
    """Build ``phi'`` symplectic for ``chi ⊥ psi_2m`` with ``[phi'] = [phi]``.

    The K_1 equality is made explicit: ``phi' (phi ⊥ id_2m)^-1 = phi^-1 ⊥ (phi ⊥ id_2s) phi1``
    is emitted as the Whitehead factorization of ``phi^-1`` followed by ``id_2n ⊥ phi1``.
    """
    inp.validate()
    R, n, s = inp.phi.ring, inp.n, inp.s
    m = n + s
    size = 2 * n + 2 * m
    phi, phi_inv = inp.phi, inp.phi.inverse()
    first = _sum(R, phi, _identity(R, 2 * n + 2 * s))
    middle = _sum(R, phi_inv, phi, _identity(R, 2 * s))
    last = _sum(R, _identity(R, 2 * n), inp.phi1.evaluate())
    phi_prime = first @ middle @ last

    form = orthogonal_sum(inp.chi, psi(2 * m, R))
    symplectic = is_symplectic(phi_prime, form)
    det_one = phi_prime.det().value == R.one

    witness = whitehead_factorization(phi_inv).embed(size, 0) + inp.phi1.embed(size, 2 * n)
    expected = phi_prime @ _sum(R, phi_inv, _identity(R, 2 * m))
    return StabilizationResult(
        m=m,
        phi_prime=phi_prime,
        form=form,
        symplectic=symplectic,
        det_one=det_one,
        k1_witness=witness,
        witness_matches=witness.evaluate() == expected,
    )


# cancellation -----------------------------------------------------------------


@dataclass(frozen=True)
class CancellationInput:
    chi1: AlternatingMatrix
    chi2: AlternatingMatrix
    phi: Matrix
    psi2: Matrix
    psi2_certificate: ElementaryFactorization

    @property
    def n(self) -> int:
        return self.chi1.rank // 2

    @property
    def chi(self) -> AlternatingMatrix:
        return orthogonal_sum(self.chi1, psi(2, self.chi1.ring))

    def validate(self):
        R = self.phi.ring
        size = self.chi1.rank + 2
        if self.chi2.rank != self.chi1.rank or self.chi1.rank == 0:
            raise DimensionError("chi1 and chi2 must share a positive even rank")
        if self.phi.shape != (size, size) or self.psi2.shape != (size, size):
            raise DimensionError("phi and psi'' must have size 2n + 2")
        if not (self.chi1.is_invertible() and self.chi2.is_invertible()):
            raise NotInvertibleError("chi1 and chi2 must be invertible")
        if self.phi.det().value != R.one:
            raise CertificateError("phi must have determinant 1")
        if self.chi.congruent(self.phi) != orthogonal_sum(self.chi2, psi(2, R)):
            raise CertificateError("phi^t (chi1 ⊥ psi_2) phi != chi2 ⊥ psi_2")
        if self.psi2_certificate.evaluate() != self.psi2:
            raise CertificateError("elementary certificate does not evaluate to psi''")
        if not is_symplectic(self.psi2, self.chi):
            raise CertificateError("psi'' is not symplectic for chi1 ⊥ psi_2")
        if self.psi2.column(size - 1) != self.phi.column(size - 1):
            raise CertificateError("psi'' and phi have different last columns")

    def to_json(self) -> dict:
        return {
            "ring": self.phi.ring.descriptor,
            "chi1": self.chi1.matrix.to_json()["rows"],
            "chi2": self.chi2.matrix.to_json()["rows"],
            "phi": self.phi.to_json()["rows"],
            "psi2": self.psi2.to_json()["rows"],
            "psi2_certificate": self.psi2_certificate.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, ring: Ring) -> "CancellationInput":
        return cls(
            AlternatingMatrix.from_entries(ring, data["chi1"]),
            AlternatingMatrix.from_entries(ring, data["chi2"]),
            Matrix.from_entries(ring, data["phi"]),
            Matrix.from_entries(ring, data["psi2"]),
            ElementaryFactorization.from_json(data["psi2_certificate"], ring),
        )


@dataclass
class CancellationResult:
    psi: Matrix
    psi_prime: Matrix
    fixes_last_basis_vector: bool
    fixes_penultimate_row: bool
    congruence_chi1_to_chi2: bool
    congruence_chi2_to_chi1: bool
    det_one: bool

    @property
    def ok(self) -> bool:
        """Last column and penultimate row fixed, ``psi^t chi1 psi == chi2``, and ``det(psi) == 1``."""
        return (
            self.fixes_last_basis_vector
            and self.fixes_penultimate_row
            and self.congruence_chi1_to_chi2
            and self.det_one
        )

    def to_json(self) -> dict:
        return {
            "psi": self.psi.to_json()["rows"],
            "psi_prime": self.psi_prime.to_json()["rows"],
            "fixes_last_basis_vector": self.fixes_last_basis_vector,
            "fixes_penultimate_row": self.fixes_penultimate_row,
            "psi_t_chi1_psi_eq_chi2": self.congruence_chi1_to_chi2,
            "psi_t_chi2_psi_eq_chi1": self.congruence_chi2_to_chi1,
            "det_one": self.det_one,
        }


def cancel_hyperbolic_summand(inp: CancellationInput) -> CancellationResult:
    """Compute ``psi' = psi''^-1 phi`` and its upper-left block ``psi``.

    Both congruence directions are reported: ``psi^t chi1 psi == chi2`` is the
    one that follows from the construction, the reverse is recorded for
    comparison.
    """
    inp.validate()
    R = inp.phi.ring
    size = inp.chi1.rank + 2
    k = inp.chi1.rank
    psi_prime = inp.psi2.inverse() @ inp.phi
    e_last = tuple(R.one if i == size - 1 else R.zero for i in range(size))
    pi_pen = tuple(R.one if i == size - 2 else R.zero for i in range(size))
    block = psi_prime.submatrix(range(k), range(k))
    return CancellationResult(
        psi=block,
        psi_prime=psi_prime,
        fixes_last_basis_vector=psi_prime.apply(e_last) == e_last,
        fixes_penultimate_row=psi_prime.rows[size - 2] == pi_pen,
        congruence_chi1_to_chi2=inp.chi1.congruent(block) == inp.chi2,
        congruence_chi2_to_chi1=inp.chi2.congruent(block) == inp.chi1,
        det_one=block.det().value == R.one,
    )


# instance construction --------------------------------------------------------


@lru_cache(maxsize=64)
def symplectic_pool(chi: Matrix, depth: int = 2):
    """Cached ``(matrix, certificate)`` pool for ``E ∩ Sp(chi)``."""
    return tuple(elementary_symplectic_generators(chi, depth, certificates=True))


@lru_cache(maxsize=64)
def _column_tree(chi: Matrix):
    """BFS tree of the orbit of the last basis column under the pool, using the
    pool members whose certificate starts with coefficient 1 (their powers
    recover the rest)."""
    R, size = chi.ring, chi.nrows
    gens = [(g, F) for g, F in symplectic_pool(chi) if F.steps[0][2] == R.one]
    start = tuple(R.one if i == size - 1 else R.zero for i in range(size))
    parent = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for idx, (g, _) in enumerate(gens):
            w = g.apply(v)
            if w not in parent:
                parent[w] = (v, idx)
                queue.append(w)
    return parent, gens


def symplectic_column_witness(chi, column):
    """Search for ``h`` in ``E ∩ Sp(chi)`` with ``h e_last = column``.

    Returns ``(h, certificate)`` or ``None`` if the column is not reached.
    """
    chi_m = chi.matrix if isinstance(chi, AlternatingMatrix) else chi
    parent, gens = _column_tree(chi_m)
    column = tuple(column)
    if column not in parent:
        return None
    R, size = chi_m.ring, chi_m.nrows
    # v_k = g_k ... g_1 e_last, so h = g_k ... g_1
    cert = ElementaryFactorization(R, size, ())
    v = column
    while parent[v] is not None:
        v, idx = parent[v]
        cert = cert + gens[idx][1]
    return cert.evaluate(), cert


def _random_pool_word(chi: Matrix, rng: random.Random, max_len: int = 3) -> ElementaryFactorization:
    pool = symplectic_pool(chi)
    cert = ElementaryFactorization(chi.ring, chi.nrows, ())
    for _ in range(rng.randint(0, max_len)):
        cert = cert + rng.choice(pool)[1]
    return cert


def random_symplectic(ring: Ring, rank: int, rng: random.Random) -> Matrix:
    """Random element of ``Sp(psi_rank)``; ``SL_2`` directly for rank 2."""
    if rank == 2:
        return random_invertible(ring, 2, rng, det_one=True)
    return _random_pool_word(psi(rank, ring).matrix, rng, max_len=5).evaluate()


def random_stabilization_input(ring: Ring, n: int, s: int, rng: random.Random) -> StabilizationInput:
    """``phi = S e`` with ``S`` symplectic and ``e`` elementary; the certificate
    ``phi1 = (e ⊥ id)^-1 T`` with ``T`` a random elementary symplectic word."""
    rank = 2 * n
    S = random_symplectic(ring, rank, rng)
    e = random_elementary(ring, rank, rng)
    phi = S @ e.evaluate()
    chi = random_invertible_alternating(ring, rank, rng)
    T = _random_pool_word(psi(rank + 2 * s, ring).matrix, rng)
    phi1 = e.embed(rank + 2 * s).inverse() + T
    return StabilizationInput(phi, chi, s, phi1)


def random_cancellation_input(ring: Ring, rng: random.Random, n: int = 1) -> CancellationInput:
    """``phi = P (g ⊥ id_2)`` with ``P`` elementary symplectic for ``chi1 ⊥ psi_2``
    and ``g`` in ``SL_2n``; ``psi''`` is then found by searching the orbit of
    the last basis column."""
    rank = 2 * n
    base = orthogonal_sum(split_form(random_unit(ring, rng), ring), psi(rank - 2, ring, allow_empty=True))
    chi1 = base if n == 1 else base.congruent(random_invertible(ring, rank, rng))
    chi = orthogonal_sum(chi1, psi(2, ring)).matrix
    P = _random_pool_word(chi, rng).evaluate()
    g = random_invertible(ring, rank, rng, det_one=True)
    chi2 = chi1.congruent(g)
    phi = P @ _sum(ring, g, _identity(ring, 2))
    found = symplectic_column_witness(chi, phi.column(rank + 1))
    if found is None:
        raise CertificateError("no elementary symplectic matrix reaches the last column of phi")
    psi2, cert = found
    return CancellationInput(chi1, chi2, phi, psi2, cert)

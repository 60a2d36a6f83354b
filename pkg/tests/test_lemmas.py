import random

import pytest

from wittforge.alternating import AlternatingMatrix, orthogonal_sum, psi, split_form
from wittforge.elementary import ElementaryFactorization, whitehead_factorization
from wittforge.exceptions import CertificateError, DimensionError
from wittforge.lemmas import (
    CancellationInput,
    StabilizationInput,
    cancel_hyperbolic_summand,
    random_cancellation_input,
    random_stabilization_input,
    symplectic_column_witness,
    symplectic_pool,
    symplectic_stabilization,
)
from wittforge.matrix import Matrix, direct_sum
from wittforge.orbits import is_symplectic
from wittforge.rings import GF, ring_parse
from wittforge.sampling import random_invertible


# stabilization ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2])
def test_stabilization_identity(n):
    R = GF(5)
    inp = StabilizationInput(Matrix.identity(R, 2 * n), psi(2 * n, R), 0, ElementaryFactorization(R, 2 * n, ()))
    res = symplectic_stabilization(inp)
    assert res.m == n
    assert res.phi_prime.is_identity() and res.phi_prime.nrows == 4 * n
    assert res.ok


def test_stabilization_diagonal_unit():
    F = GF(7)
    phi = Matrix.diag(F, [3, 5])
    # phi1 undoes phi by the Whitehead steps for (3^-1)
    phi1 = whitehead_factorization(Matrix.from_entries(F, [[5]]))
    assert phi1.evaluate() == phi.inverse()
    res = symplectic_stabilization(StabilizationInput(phi, psi(2, F), 0, phi1))
    assert res.symplectic and res.det_one and res.witness_matches
    assert is_symplectic(res.phi_prime, orthogonal_sum(psi(2, F), psi(2, F)))


def test_stabilization_elementary_phi():
    F = GF(3)
    E = ElementaryFactorization(F, 2, ((1, 2, 1),))
    res = symplectic_stabilization(StabilizationInput(E.evaluate(), psi(2, F), 0, E.inverse()))
    assert res.ok


def test_stabilization_product_formula():
    F = GF(7)
    rng = random.Random(4)
    inp = random_stabilization_input(F, 1, 1, rng)
    res = symplectic_stabilization(inp)
    phi, I = inp.phi, lambda k: Matrix.identity(F, k)
    expected = (
        direct_sum(phi, I(4))
        @ direct_sum(phi.inverse(), phi, I(2))
        @ direct_sum(I(2), inp.phi1.evaluate())
    )
    assert res.phi_prime == expected
    assert res.k1_witness.evaluate() == res.phi_prime @ direct_sum(phi.inverse(), I(4))


def test_stabilization_rejects_bad_certificate():
    F = GF(7)
    phi = Matrix.diag(F, [2, 1])
    with pytest.raises(CertificateError):
        symplectic_stabilization(StabilizationInput(phi, psi(2, F), 0, ElementaryFactorization(F, 2, ())))
    with pytest.raises(DimensionError):
        symplectic_stabilization(StabilizationInput(phi, psi(2, F), 1, ElementaryFactorization(F, 2, ())))


@pytest.mark.parametrize("descriptor", ["GF(3)", "GF(7)", "Z/4"])
@pytest.mark.parametrize("n, s", [(1, 0), (1, 1), (2, 0), (2, 1)])
def test_stabilization_random(descriptor, n, s):
    R = ring_parse(descriptor)
    rng = random.Random(f"{descriptor}{n}{s}")
    for _ in range(3):
        inp = random_stabilization_input(R, n, s, rng)
        assert inp.certificate_holds()
        res = symplectic_stabilization(inp)
        assert res.m == n + s
        assert res.symplectic and res.det_one and res.witness_matches


def test_stabilization_json_roundtrip():
    F = GF(3)
    inp = random_stabilization_input(F, 1, 1, random.Random(0))
    again = StabilizationInput.from_json(inp.to_json(), F)
    assert symplectic_stabilization(again).phi_prime == symplectic_stabilization(inp).phi_prime


# cancellation -----------------------------------------------------------------


def _trivial_cancellation(R, n):
    I = Matrix.identity(R, 2 * n + 2)
    return CancellationInput(psi(2 * n, R), psi(2 * n, R), I, I, ElementaryFactorization(R, 2 * n + 2, ()))


def test_cancellation_identity():
    res = cancel_hyperbolic_summand(_trivial_cancellation(GF(5), 1))
    assert res.psi.is_identity() and res.ok


def test_cancellation_pool_element_gives_identity():
    F = GF(3)
    g, cert = symplectic_pool(psi(4, F).matrix)[7]
    inp = CancellationInput(psi(2, F), psi(2, F), g, g, cert)
    res = cancel_hyperbolic_summand(inp)
    assert res.psi_prime.is_identity()
    assert res.psi.is_identity() and res.ok


def test_cancellation_sl2_block():
    F = GF(7)
    rng = random.Random(2)
    chi = psi(4, F)
    for _ in range(5):
        g = random_invertible(F, 2, rng, det_one=True)
        chi2 = psi(2, F).congruent(g)
        phi = direct_sum(g, Matrix.identity(F, 2))
        psi2, cert = symplectic_column_witness(chi, phi.column(3))
        res = cancel_hyperbolic_summand(CancellationInput(psi(2, F), chi2, phi, psi2, cert))
        assert res.congruence_chi1_to_chi2 and res.det_one and res.ok


@pytest.mark.parametrize("descriptor", ["GF(2)", "GF(3)", "GF(7)"])
def test_cancellation_random_rank_four(descriptor):
    R = ring_parse(descriptor)
    rng = random.Random(descriptor)
    for _ in range(6):
        res = cancel_hyperbolic_summand(random_cancellation_input(R, rng))
        assert res.fixes_last_basis_vector and res.fixes_penultimate_row
        assert res.congruence_chi1_to_chi2 and res.det_one


def test_cancellation_rank_six_congruence_direction():
    # at rank 6 the two congruence directions genuinely differ; the one
    # produced by the construction is psi^t chi1 psi = chi2
    R = GF(3)
    rng = random.Random(11)
    results = [cancel_hyperbolic_summand(random_cancellation_input(R, rng, n=2)) for _ in range(6)]
    assert all(r.ok for r in results)
    assert not all(r.congruence_chi2_to_chi1 for r in results)


def test_cancellation_rejects_invalid_inputs():
    F = GF(7)
    good = _trivial_cancellation(F, 1)
    with pytest.raises(CertificateError):
        bad_phi = Matrix.diag(F, [2, 1, 1, 4])
        cancel_hyperbolic_summand(CancellationInput(good.chi1, good.chi2, bad_phi, good.psi2, good.psi2_certificate))
    with pytest.raises(CertificateError):
        wrong = ElementaryFactorization(F, 4, ((1, 2, 1),))
        cancel_hyperbolic_summand(CancellationInput(good.chi1, good.chi2, good.phi, good.psi2, wrong))
    with pytest.raises(CertificateError):
        # symplectic phi whose last column differs from that of psi'' = Id
        E = ElementaryFactorization(F, 4, ((3, 4, 1),))
        cancel_hyperbolic_summand(CancellationInput(good.chi1, good.chi2, E.evaluate(), good.psi2, good.psi2_certificate))
    with pytest.raises(DimensionError):
        cancel_hyperbolic_summand(CancellationInput(psi(2, F), psi(4, F), good.phi, good.psi2, good.psi2_certificate))


def test_cancellation_json_roundtrip():
    F = GF(3)
    inp = random_cancellation_input(F, random.Random(0))
    again = CancellationInput.from_json(inp.to_json(), F)
    assert cancel_hyperbolic_summand(again).psi == cancel_hyperbolic_summand(inp).psi


def test_column_witness_reaches_every_nonzero_column():
    F = GF(3)
    chi = orthogonal_sum(split_form(2, F), psi(2, F))
    for v in [(1, 0, 0, 0), (0, 2, 1, 0), (1, 1, 1, 1)]:
        h, cert = symplectic_column_witness(chi, v)
        assert cert.evaluate() == h
        assert is_symplectic(h, chi)
        assert h.column(3) == v
    assert symplectic_column_witness(chi, (0, 0, 0, 0)) is None

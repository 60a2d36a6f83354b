import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import matching_pfaffian
from wittforge.alternating import (
    AlternatingMatrix,
    WittRepresentative,
    hyperbolic,
    is_alternating,
    orthogonal_sum,
    pfaffian,
    pfaffian_class,
    psi,
    sigma,
    split_form,
    verify_equivalence_certificate,
    witt_inverse,
)
from wittforge.elementary import ElementaryFactorization, block_swap_factorization
from wittforge.exceptions import DimensionError, NotAlternatingError, NotInvertibleError
from wittforge.matrix import Matrix, direct_sum
from wittforge.rings import GF, ZZ, ring_parse
from wittforge.sampling import random_alternating, random_invertible, random_invertible_alternating

PF_RINGS = ["Z", "GF(7)", "Z/6", "GF(4)", "Z[x]"]


def test_psi_and_sigma_shapes():
    assert psi(2).rows == ((0, 1), (-1, 0))
    assert psi(4).matrix == direct_sum(psi(2).matrix, psi(2).matrix)
    assert sigma(2).rows == ((0, 1), (1, 0))
    assert sigma(4).det() == 1
    assert psi(0, allow_empty=True).rank == 0
    for bad in (3, 0, -2):
        with pytest.raises(DimensionError):
            psi(bad)
    with pytest.raises(DimensionError):
        sigma(3)


def test_orthogonal_sum_neutral_element():
    M = split_form(5, ZZ)
    assert orthogonal_sum(psi(2), psi(2)) == psi(4)
    assert orthogonal_sum(M, psi(0, allow_empty=True)) == M


def test_alternating_validation():
    F2 = GF(2)
    # symmetric = skew in characteristic 2, but the diagonal must still vanish
    assert not is_alternating(Matrix.from_entries(F2, [[1, 1], [1, 0]]))
    assert is_alternating(Matrix.from_entries(F2, [[0, 1], [1, 0]]))
    with pytest.raises(NotAlternatingError):
        AlternatingMatrix.from_entries(ZZ, [[0, 1], [1, 0]])
    with pytest.raises(NotAlternatingError):
        AlternatingMatrix.from_entries(ZZ, [[0]])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_pfaffian_of_standard_form(n):
    assert pfaffian(psi(2 * n)) == 1


def test_pfaffian_examples():
    assert pfaffian(split_form(5, ZZ)) == 5
    assert pfaffian(AlternatingMatrix.empty(ZZ)) == 1
    F = GF(7)
    G = Matrix.diag(F, [3, 5, 1, 1])
    assert pfaffian(hyperbolic(G)) == G.det() == 1


@pytest.mark.parametrize("descriptor", PF_RINGS)
def test_pfaffian_matches_matching_sum(descriptor):
    R = ring_parse(descriptor)
    rng = random.Random(descriptor)
    for rank in (0, 2, 4, 6, 8):
        N = random_alternating(R, rank, rng)
        assert pfaffian(N).value == matching_pfaffian(R, N.rows)


@pytest.mark.parametrize("descriptor", ["Z", "GF(7)", "Z/6"])
def test_pfaffian_identities(descriptor):
    R = ring_parse(descriptor)
    rng = random.Random(descriptor)
    for _ in range(40):
        M = random_alternating(R, 2 * rng.randint(0, 2), rng)
        N = random_alternating(R, 2 * rng.randint(0, 2), rng)
        assert pfaffian(orthogonal_sum(M, N)) == pfaffian(M) * pfaffian(N)
        assert pfaffian(N) ** 2 == N.matrix.det()
        G = random_invertible(R, 4, rng)
        K = random_alternating(R, 4, rng)
        assert pfaffian(K.congruent(G)) == G.det() * pfaffian(K)


def test_pfaffian_congruence_with_singular_g():
    # the identity is polynomial, so it also holds for non-invertible G
    G = Matrix.from_entries(ZZ, [[1, 2, 0, 0], [2, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    N = psi(4)
    assert pfaffian(N.congruent(G)) == G.det() == 0


def test_gt_psi_g_has_pfaffian_det_g_over_gf7():
    rng = random.Random(0)
    F = GF(7)
    for _ in range(20):
        G = random_invertible(F, 4, rng)
        assert pfaffian(hyperbolic(G)) == G.det()


def test_hyperbolic_rejects():
    with pytest.raises(NotInvertibleError):
        hyperbolic(Matrix.from_entries(ZZ, [[2, 0], [0, 1]]))
    with pytest.raises(DimensionError):
        hyperbolic(Matrix.identity(ZZ, 3))
    assert hyperbolic(Matrix.identity(ZZ, 4)) == psi(4)


@pytest.mark.parametrize("rank", [2, 4])
def test_witt_inverse_of_standard_form(rank):
    assert witt_inverse(psi(rank)) == psi(rank)


@pytest.mark.parametrize("descriptor", ["Z", "GF(7)", "Z/6", "GF(4)"])
def test_witt_inverse_involution(descriptor):
    R = ring_parse(descriptor)
    rng = random.Random(descriptor)
    for _ in range(15):
        N = random_invertible_alternating(R, 2 * rng.randint(1, 3), rng)
        W = witt_inverse(N)
        assert is_alternating(W.matrix)
        assert witt_inverse(W) == N
        # Pf(N^-1) = (-1)^n / Pf(N) and det(sigma) = (-1)^n, so the signs cancel
        assert pfaffian(W) * pfaffian(N) == 1


def test_equivalence_certificates():
    R = GF(7)
    empty = ElementaryFactorization(R, 4, ())
    assert verify_equivalence_certificate(psi(2, R), psi(2, R), 0, empty)
    assert verify_equivalence_certificate(psi(2, R), psi(2, R), 1, ElementaryFactorization(R, 6, ()))
    E0 = ElementaryFactorization(R, 2, ((1, 2, 3),))
    M = psi(2, R).congruent(E0.evaluate())
    assert verify_equivalence_certificate(M, psi(2, R), 0, E0.embed(4))
    N = split_form(5, R)
    rng = random.Random(1)
    for _ in range(30):
        E = ElementaryFactorization(R, 4, tuple((i, j, rng.randrange(7)) for i, j in [(1, 3), (2, 4), (3, 1)]))
        assert not verify_equivalence_certificate(psi(2, R), N, 0, E)
    with pytest.raises(DimensionError):
        verify_equivalence_certificate(psi(2, R), N, 0, ElementaryFactorization(R, 6, ()))


def test_equivalence_via_block_swap():
    # N ⊥ psi_2 is elementary-congruent to psi_2 ⊥ N via the block swap
    R = GF(7)
    N = split_form(3, R)
    M = orthogonal_sum(N, psi(2, R))
    swap = block_swap_factorization(2, 2, R)
    assert M.congruent(swap.evaluate()) == orthogonal_sum(psi(2, R), N)


def test_pfaffian_class():
    assert pfaffian_class(psi(6)) == (1, True)
    t = split_form(2, ring_parse("Z/9"))
    pc = pfaffian_class(t)
    assert pc.pfaffian == 2 and not pc.in_kernel
    G = Matrix.from_entries(GF(5), [[2, 1], [1, 1]])
    assert pfaffian_class(hyperbolic(G)) == (1, True)


def test_witt_representative_arithmetic():
    R = GF(7)
    a = WittRepresentative(split_form(3, R))
    b = WittRepresentative(psi(2, R))
    assert (a + b).rank == 4
    assert pfaffian((a + -a).form) == pfaffian(a.form) * pfaffian((-a).form)
    with pytest.raises(NotInvertibleError):
        WittRepresentative(split_form(0, R))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.data())
def test_pfaffian_square_is_det_over_integers(n, data):
    rank = 2 * n
    upper = data.draw(st.lists(st.integers(-9, 9), min_size=rank * (rank - 1) // 2, max_size=rank * (rank - 1) // 2))
    rows = [[0] * rank for _ in range(rank)]
    k = 0
    for i in range(rank):
        for j in range(i + 1, rank):
            rows[i][j], rows[j][i] = upper[k], -upper[k]
            k += 1
    N = AlternatingMatrix.from_entries(ZZ, rows)
    assert pfaffian(N).value ** 2 == N.matrix.det().value

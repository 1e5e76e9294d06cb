import itertools
import random

import pytest
from hypothesis import given

from conftest import scalar_from, seeds
from cqg.linalg import (
    DimensionMismatch,
    NonMonomialPivot,
    NotTriangularizable,
    RingMatrix,
    identity,
    kron,
    matmul,
    permutation_matrix,
    slot_embed,
    slot_embed_index_loop,
    triangular_inverse,
)
from cqg.scalar import ONE, Q, ZERO


def random_matrix(seed, n=4, m=None):
    rng = random.Random(seed)
    return RingMatrix.build(n, m or n, lambda i, j: scalar_from(rng.randint(0, 10**6), max_terms=2))


def test_kron_flattening():
    A = RingMatrix.from_rows([[ONE, Q], [ZERO, ONE]])
    B = RingMatrix.from_rows([[Q, ZERO], [ONE, Q]])
    K = kron(A, B)
    for i, j, k, l in itertools.product(range(2), repeat=4):
        assert K[2 * i + k, 2 * j + l] == A[i, j] * B[k, l]


def test_permutation_swaps_factors():
    P = permutation_matrix(2)
    A = RingMatrix.from_rows([[ONE, Q], [ZERO, ONE]])
    B = RingMatrix.from_rows([[Q, ZERO], [ONE, Q]])
    assert matmul(matmul(P, kron(A, B)), P) == kron(B, A)
    assert matmul(P, P) == identity(4)


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        matmul(identity(2), identity(3))
    with pytest.raises(DimensionMismatch):
        slot_embed(identity(2), "12")
    with pytest.raises(ValueError):
        slot_embed(identity(4), "21")


def test_triangular_inverse_errors():
    full = RingMatrix.from_rows([[ONE, Q], [Q, ONE]])
    with pytest.raises(NotTriangularizable):
        triangular_inverse(full)
    with pytest.raises(NonMonomialPivot):
        triangular_inverse(RingMatrix.from_rows([[ONE + Q, ZERO], [ONE, ONE]]))


@given(seeds)
def test_slot_embed_matches_index_loop(seed):
    R = random_matrix(seed)
    for slots in ("12", "13", "23"):
        assert slot_embed(R, slots) == slot_embed_index_loop(R, slots)


@given(seeds, seeds, seeds)
def test_matmul_associative_and_kron_mixed_product(s1, s2, s3):
    A, B, C = random_matrix(s1, 2), random_matrix(s2, 2), random_matrix(s3, 2)
    assert matmul(matmul(A, B), C) == matmul(A, matmul(B, C))
    assert matmul(kron(A, B), kron(C, A)) == kron(matmul(A, C), matmul(B, A))


@given(seeds)
def test_triangular_inverse_of_unitriangular(seed):
    rng = random.Random(seed)
    M = RingMatrix.build(3, 3, lambda i, j: (Q ** (i + 1) if i == j else
                                             scalar_from(rng.randint(0, 10**6)) if i > j else ZERO))
    inv = triangular_inverse(M)
    assert matmul(M, inv) == identity(3)


def test_to_json_is_strings():
    M = RingMatrix.from_rows([[ONE, Q], [ZERO, ONE]])
    assert M.to_json() == [["1", "q"], ["0", "1"]]

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpcommute import ComplexMatrix, ConvergenceFailure, adjoint, numerical_rank, svd
from mpcommute.gen import random_fixed_rank


def unitarity_defect(u):
    u = np.asarray(u)
    return np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0]))


def test_diagonal_and_identity():
    assert np.allclose(svd(ComplexMatrix.diag([2, 0])).sigma, [2, 0])
    assert np.allclose(svd(ComplexMatrix.identity(3)).sigma, [1, 1, 1])


def test_rank_one_against_gram_characteristic_polynomial():
    a = ComplexMatrix([[1, 1], [0, 0]])
    gram = a.array @ a.array.conj().T
    # lambda^2 - tr*lambda + det = 0
    tr, det = gram.trace().real, np.linalg.det(gram).real
    disc = math.sqrt(tr * tr - 4 * det)
    expected = sorted([math.sqrt(max((tr + disc) / 2, 0)), math.sqrt(max((tr - disc) / 2, 0))], reverse=True)
    assert expected == pytest.approx([math.sqrt(2), 0.0])
    assert svd(a).sigma == pytest.approx(expected, abs=1e-15)
    assert numerical_rank(svd(a)) == 1


def test_numerical_rank_examples():
    assert numerical_rank(svd(ComplexMatrix.zeros(3))) == 0
    assert numerical_rank(svd(ComplexMatrix.identity(3))) == 3


def test_noise_floor_suppresses_roundoff():
    f = svd(ComplexMatrix.diag([1e-13, 1e-14]))
    assert numerical_rank(f) == 2
    assert numerical_rank(f, floor=1e-12) == 0


@pytest.mark.parametrize("shape", [(1, 1), (1, 7), (7, 1), (3, 5), (5, 3), (8, 8), (16, 11), (33, 64)])
def test_factor_invariants(shape):
    r = np.random.default_rng(sum(shape))
    a = r.normal(size=shape) + 1j * r.normal(size=shape)
    f = svd(a)
    assert f.U.shape == (shape[0], shape[0])
    assert f.V.shape == (shape[1], shape[1])
    assert len(f.sigma) == min(shape)
    assert unitarity_defect(f.U) <= 1e-9
    assert unitarity_defect(f.V) <= 1e-9
    assert np.all(np.diff(f.sigma) <= 0) and np.all(f.sigma >= 0)
    assert np.linalg.norm(f.reconstruct().array - a) <= 1e-9 * np.linalg.norm(a)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_sigma_matches_eigensolver_oracle(rows, cols, data):
    rank = data.draw(st.integers(0, min(rows, cols)))
    seed = data.draw(st.integers(0, 2**63))
    a = random_fixed_rank(rows, cols, rank, seed)
    sigma = svd(a).sigma
    # Hermitian dilation [[0, A], [A*, 0]] has eigenvalues +-sigma, resolved to ~eps*sigma_1
    dilation = np.block([[np.zeros((rows, rows)), a.array], [a.array.conj().T, np.zeros((cols, cols))]])
    oracle = np.sort(np.linalg.eigvalsh(dilation))[::-1][: len(sigma)]
    top = max(oracle[0], 1e-300)
    assert np.all(np.abs(sigma - np.clip(oracle, 0, None)) <= 1e-8 * top)
    assert numerical_rank(svd(a)) == rank


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_rank_invariant_under_adjoint(rows, cols, data):
    rank = data.draw(st.integers(0, min(rows, cols)))
    a = random_fixed_rank(rows, cols, rank, data.draw(st.integers(0, 2**63)))
    assert numerical_rank(svd(a)) == numerical_rank(svd(adjoint(a)))


def test_rank_deficient_reconstruction_and_completion():
    a = random_fixed_rank(9, 6, 2, 3)
    f = svd(a)
    assert unitarity_defect(f.U) <= 1e-12
    assert np.linalg.norm(f.reconstruct().array - a.array) <= 1e-12 * np.linalg.norm(a.array)


def test_deterministic():
    a = random_fixed_rank(6, 6, 4, 11)
    f, g = svd(a), svd(a)
    assert np.array_equal(f.U.array, g.U.array)
    assert np.array_equal(f.sigma, g.sigma)
    assert np.array_equal(f.V.array, g.V.array)


def test_sweep_cap_raises():
    r = np.random.default_rng(0)
    with pytest.raises(ConvergenceFailure):
        svd(r.normal(size=(6, 6)), max_sweeps=1)

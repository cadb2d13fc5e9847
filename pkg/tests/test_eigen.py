import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spindistill.eigen import IntegrityError, symmetric_eigensystem, symmetric_eigenvalues


def char_poly_roots(M):
    """Eigenvalues via the characteristic polynomial, expanded exactly.

    The determinant of (M - x I) is accumulated over all permutations with
    numpy polynomial arithmetic, so nothing here shares code with the
    solver under test.  Only sensible for dim <= 5.
    """
    n = M.shape[0]
    poly = np.zeros(n + 1)
    for perm in itertools.permutations(range(n)):
        sign = 1.0
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = np.array([sign])
        for i in range(n):
            factor = np.array([-1.0, M[i, perm[i]]]) if i == perm[i] else np.array([M[i, perm[i]]])
            term = np.polymul(term, factor)
        poly[n + 1 - len(term):] += term
    return np.sort(np.roots(poly).real)


def test_identity_spectrum_is_exact():
    w = symmetric_eigenvalues(np.eye(3))
    assert np.array_equal(w, np.ones(3))


def test_exchange_matrix_spectrum_is_exact():
    w = symmetric_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.array_equal(w, np.array([-1.0, 1.0]))


def test_one_by_one_and_empty():
    assert symmetric_eigenvalues(np.array([[4.25]]))[0] == 4.25
    assert symmetric_eigenvalues(np.empty((0, 0))).size == 0


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_matches_characteristic_polynomial(dim):
    rng = np.random.default_rng(dim)
    A = rng.standard_normal((dim, dim))
    A = A + A.T
    got = symmetric_eigenvalues(A)
    expected = char_poly_roots(A)
    assert np.max(np.abs(got - expected)) < 1e-8


def test_reconstruction_residual_dim_20():
    rng = np.random.default_rng(20)
    A = rng.standard_normal((20, 20))
    A = A + A.T
    w, Q = symmetric_eigensystem(A)
    resid = np.linalg.norm(Q @ np.diag(w) @ Q.T - A) / np.linalg.norm(A)
    assert resid <= 1e-9
    assert np.allclose(Q.T @ Q, np.eye(20), atol=1e-12)


def test_eigenvalues_sorted_and_match_eigensystem():
    rng = np.random.default_rng(99)
    A = rng.standard_normal((37, 37))
    A = A + A.T
    w1 = symmetric_eigenvalues(A)
    w2, _ = symmetric_eigensystem(A)
    assert np.all(np.diff(w1) >= 0.0)
    assert np.max(np.abs(w1 - w2)) < 1e-11


def test_asymmetric_input_rejected():
    M = np.array([[1.0, 2.0], [2.0001, 1.0]])
    with pytest.raises(IntegrityError):
        symmetric_eigenvalues(M)


def test_non_finite_input_rejected():
    M = np.array([[1.0, np.nan], [np.nan, 1.0]])
    with pytest.raises(IntegrityError):
        symmetric_eigenvalues(M)


def test_non_square_rejected():
    with pytest.raises(ValueError):
        symmetric_eigenvalues(np.ones((2, 3)))


def test_input_matrix_is_not_clobbered():
    A = np.array([[2.0, 1.0], [1.0, 2.0]])
    before = A.copy()
    symmetric_eigenvalues(A)
    symmetric_eigensystem(A)
    assert np.array_equal(A, before)


def test_subnormal_scale_block_converges():
    # Blocks of strongly squeezed heralded states live entirely below
    # 1e-300; the solver has to rescale instead of spinning forever.
    rng = np.random.default_rng(5)
    A = rng.standard_normal((45, 45))
    A = (A + A.T) * 1e-306
    w = symmetric_eigenvalues(A)
    ref = np.linalg.eigvalsh(A * 1e300) * 1e-300
    assert np.max(np.abs(w - ref)) < 1e-318


@given(st.integers(min_value=2, max_value=40), st.integers(min_value=0, max_value=2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_agrees_with_lapack(dim, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((dim, dim))
    A = A + A.T
    got = symmetric_eigenvalues(A)
    ref = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.max(np.abs(ref))))
    assert np.max(np.abs(got - ref)) < 1e-10 * scale

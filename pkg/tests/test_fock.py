import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spindistill.fock import (
    LogBinomialTable,
    amplitude_matrix,
    bs_amplitude,
    log_binomial,
    mode_norm_sq,
)


class TestLogBinomialTable:
    def test_edges_are_exactly_zero(self):
        table = LogBinomialTable(200)
        for n in (0, 1, 7, 60, 200):
            assert table.log_binomial(n, 0) == 0.0
            assert table.log_binomial(n, n) == 0.0

    def test_matches_exact_integers_up_to_60(self):
        # Pascal's triangle is exact in int arithmetic; the log table must
        # agree to near machine precision on this range.
        table = LogBinomialTable(60)
        for n in range(61):
            for k in range(n + 1):
                expected = math.log(math.comb(n, k))
                assert table.log_binomial(n, k) == pytest.approx(expected, abs=1e-12)

    @given(st.integers(min_value=0, max_value=200), st.data())
    def test_relative_accuracy_up_to_200(self, n, data):
        k = data.draw(st.integers(min_value=0, max_value=n))
        got = log_binomial(n, k)
        exact = math.comb(n, k)
        assert math.isclose(math.exp(got), exact, rel_tol=1e-12)

    def test_out_of_range_rejected(self):
        table = LogBinomialTable(10)
        with pytest.raises(ValueError):
            table.log_binomial(11, 0)
        with pytest.raises(ValueError):
            table.log_binomial(5, 6)
        with pytest.raises(ValueError):
            table.log_binomial(5, -1)


def test_amplitude_convention_endpoints():
    # All excitations stay: (1 - phi^2)^n.  All transfer: phi^n.
    phi = 0.3
    for n in (0, 1, 5, 40):
        assert bs_amplitude(n, 0, phi) == pytest.approx((1 - phi**2) ** n, rel=1e-13)
        assert bs_amplitude(n, n, phi) == pytest.approx(phi**n, rel=1e-13)


def test_single_excitation_splits_linearly():
    phi = 0.17
    assert bs_amplitude(1, 1, phi) == pytest.approx(phi, rel=1e-14)
    assert bs_amplitude(1, 0, phi) == pytest.approx(1 - phi**2, rel=1e-14)


def test_phi_zero_is_the_identity_map():
    for n in range(6):
        for k in range(n + 1):
            assert bs_amplitude(n, k, 0.0) == (1.0 if k == 0 else 0.0)


def test_phi_out_of_range():
    for phi in (-0.2, 1.0, 2.0, float("nan")):
        with pytest.raises(ValueError):
            bs_amplitude(3, 1, phi)


@given(
    st.integers(min_value=0, max_value=120),
    st.floats(min_value=0.0, max_value=0.99),
)
@settings(max_examples=60)
def test_mode_norm_matches_row_sum(n, phi):
    # The map is a contraction, not a unitary: row norms follow the closed
    # form (phi^2 + (1-phi^2)^2)^n and never exceed one.
    row = sum(bs_amplitude(n, k, phi) ** 2 for k in range(n + 1))
    closed = mode_norm_sq(n, phi)
    assert row == pytest.approx(closed, rel=1e-10)
    assert closed <= 1.0 + 1e-12


def test_amplitude_matrix_agrees_with_scalar():
    phi = 0.22
    F = amplitude_matrix(30, phi)
    assert F.shape == (31, 31)
    for n in (0, 3, 17, 30):
        for k in range(n + 1):
            assert F[n, k] == pytest.approx(bs_amplitude(n, k, phi), rel=1e-13, abs=1e-300)
    # strictly upper part (k > n) must be vacant
    assert np.all(F[np.triu_indices(31, k=1)] == 0.0)


def test_amplitude_matrix_phi_zero():
    F = amplitude_matrix(12, 0.0)
    expected = np.zeros((13, 13))
    expected[:, 0] = 1.0
    assert np.array_equal(F, expected)

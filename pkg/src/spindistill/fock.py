"""Combinatorial kernels shared by all truncated Fock-space construction code.

Everything is evaluated in the log domain and exponentiated once at the end.
Amplitudes here mix binomial coefficients of order ~100 with high powers of
couplings like 0.01, so naive products would underflow long before the
physically relevant cutoffs are reached.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = [
    "LogBinomialTable",
    "log_binomial",
    "bs_amplitude",
    "mode_norm_sq",
    "amplitude_matrix",
]


class LogBinomialTable:
    """Natural logs of binomial coefficients C(n, k) up to a fixed cutoff.

    Backed by a cumulative log-factorial table, so ``ln C(n, 0)`` and
    ``ln C(n, n)`` come out as exactly ``0.0`` (the same float is subtracted
    from itself) and each query is O(1).
    """

    def __init__(self, max_n: int):
        max_n = int(max_n)
        if max_n < 0:
            raise ValueError(f"max_n must be nonnegative, got {max_n}")
        self.max_n = max_n
        lfact = np.zeros(max_n + 1)
        if max_n >= 1:
            np.cumsum(np.log(np.arange(1, max_n + 1, dtype=float)), out=lfact[1:])
        self._lfact = lfact

    def log_binomial(self, n: int, k: int) -> float:
        if not 0 <= n <= self.max_n:
            raise ValueError(f"n={n} outside [0, {self.max_n}]")
        if k < 0 or k > n:
            raise ValueError(f"k={k} outside [0, {n}]")
        lf = self._lfact
        return float(lf[n] - lf[k] - lf[n - k])

    def row(self, n: int) -> np.ndarray:
        """ln C(n, k) for k = 0..n."""
        if not 0 <= n <= self.max_n:
            raise ValueError(f"n={n} outside [0, {self.max_n}]")
        lf = self._lfact
        k = np.arange(n + 1)
        return lf[n] - lf[k] - lf[n - k]


@lru_cache(maxsize=8)
def _shared_table(max_n: int) -> LogBinomialTable:
    return LogBinomialTable(max_n)


def _table_for(n: int) -> LogBinomialTable:
    # round the cutoff up so repeated queries reuse a handful of tables
    size = 256
    while size < n:
        size *= 2
    return _shared_table(size)


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k), raising on out-of-range indices rather than returning -inf."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return _table_for(n).log_binomial(n, k)


def _check_phi(phi: float) -> None:
    if not math.isfinite(phi) or not 0.0 <= phi < 1.0:
        raise ValueError(f"interaction strength must lie in [0, 1), got {phi}")


def bs_amplitude(n: int, k: int, phi: float) -> float:
    """Per-mode amplitude of the effective atom-light beamsplitter.

    Takes ``|n>_atom |0>_light`` to ``|n-k>_atom |k>_light`` with weight
    ``sqrt(C(n,k)) phi^k (1-phi^2)^(n-k)``.  The map is deliberately not
    unitary (it is the weak-coupling reduction of a double-pass QND
    interaction); the missing norm is exactly what the heralding
    probability accounts for downstream.
    """
    _check_phi(phi)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if k < 0 or k > n:
        raise ValueError(f"k={k} outside [0, {n}]")
    if phi == 0.0:
        return 1.0 if k == 0 else 0.0
    lnc = log_binomial(n, k)
    return math.exp(0.5 * lnc + k * math.log(phi) + (n - k) * math.log1p(-phi * phi))


def mode_norm_sq(n: int, phi: float) -> float:
    """Squared norm of the beamsplitter image of ``|n>``.

    Equals ``sum_k C(n,k) phi^(2k) (1-phi^2)^(2(n-k))``, which the binomial
    theorem collapses to ``(phi^2 + (1-phi^2)^2)^n``.  Strictly below 1 for
    n >= 1 and 0 < phi < 1, and exactly 1 when phi = 0.
    """
    _check_phi(phi)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    base = phi * phi + (1.0 - phi * phi) ** 2
    return base ** n


def amplitude_matrix(n_max: int, phi: float) -> np.ndarray:
    """Dense table F[n, k] = bs_amplitude(n, k, phi) for 0 <= k <= n <= n_max.

    Entries above the diagonal (k > n) are zero.  Built in one vectorized
    log-domain pass; the heralded-state construction contracts against this
    table rather than recomputing scalar amplitudes.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    _check_phi(phi)
    F = np.zeros((n_max + 1, n_max + 1))
    if phi == 0.0:
        F[:, 0] = 1.0
        return F
    lf = _table_for(n_max)._lfact
    n = np.arange(n_max + 1)[:, None]
    k = np.arange(n_max + 1)[None, :]
    valid = k <= n
    nk = np.where(valid, n - k, 0)
    log_amp = (
        0.5 * (lf[n] - lf[k] - lf[nk])
        + k * math.log(phi)
        + nk * math.log1p(-phi * phi)
    )
    F[valid] = np.exp(log_amp[valid])
    return F

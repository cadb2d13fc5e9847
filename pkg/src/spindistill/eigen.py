"""Self-contained symmetric eigensolver used for the block diagonalization.

Householder tridiagonalization followed by implicit-shift QL iteration, the
classic EISPACK pairing, compiled with numba.  Two variants are kept: an
eigenvalue-only path (the hot loop of the negativity calculation) and one
that accumulates the orthogonal transform for residual checks.

The solver is deterministic: identical input bits always produce identical
spectra, which the byte-reproducibility of sweep outputs relies on.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

__all__ = [
    "IntegrityError",
    "symmetric_eigenvalues",
    "symmetric_eigensystem",
]

SYMMETRY_TOL = 1e-12
_EPS = 2.220446049250313e-16
_MAX_SWEEPS = 64


class IntegrityError(RuntimeError):
    """An internal consistency requirement of the pipeline was violated."""


@njit(cache=True)
def _tred1(A, d, e):
    # Householder reduction, eigenvalues only (no transform accumulation).
    n = A.shape[0]
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = 0.0
            for k in range(i):
                scale += abs(A[i, k])
            if scale == 0.0:
                e[i] = A[i, l]
            else:
                for k in range(i):
                    A[i, k] /= scale
                    h += A[i, k] * A[i, k]
                f = A[i, l]
                g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                A[i, l] = f - g
                f = 0.0
                for j in range(i):
                    g = 0.0
                    for k in range(j + 1):
                        g += A[j, k] * A[i, k]
                    for k in range(j + 1, i):
                        g += A[k, j] * A[i, k]
                    e[j] = g / h
                    f += e[j] * A[i, j]
                hh = f / (h + h)
                for j in range(i):
                    f = A[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(j + 1):
                        A[j, k] -= f * e[k] + g * A[i, k]
        else:
            e[i] = A[i, l]
        d[i] = h
    e[0] = 0.0
    for i in range(n):
        d[i] = A[i, i]


@njit(cache=True)
def _tred2(A, d, e):
    # Householder reduction; on exit A holds the accumulated orthogonal
    # transform Q with Q^T M Q tridiagonal.
    n = A.shape[0]
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = 0.0
            for k in range(i):
                scale += abs(A[i, k])
            if scale == 0.0:
                e[i] = A[i, l]
            else:
                for k in range(i):
                    A[i, k] /= scale
                    h += A[i, k] * A[i, k]
                f = A[i, l]
                g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                A[i, l] = f - g
                f = 0.0
                for j in range(i):
                    A[j, i] = A[i, j] / h
                    g = 0.0
                    for k in range(j + 1):
                        g += A[j, k] * A[i, k]
                    for k in range(j + 1, i):
                        g += A[k, j] * A[i, k]
                    e[j] = g / h
                    f += e[j] * A[i, j]
                hh = f / (h + h)
                for j in range(i):
                    f = A[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(j + 1):
                        A[j, k] -= f * e[k] + g * A[i, k]
        else:
            e[i] = A[i, l]
        d[i] = h
    d[0] = 0.0
    e[0] = 0.0
    for i in range(n):
        if d[i] != 0.0:
            for j in range(i):
                g = 0.0
                for k in range(i):
                    g += A[i, k] * A[k, j]
                for k in range(i):
                    A[k, j] -= g * A[k, i]
        d[i] = A[i, i]
        A[i, i] = 1.0
        for j in range(i):
            A[j, i] = 0.0
            A[i, j] = 0.0


@njit(cache=True)
def _tql1(d, e):
    # Implicit-shift QL on the tridiagonal (d, e); returns 0 on success.
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    # Absolute deflation floor: couplings this far below the matrix norm
    # shift no eigenvalue past machine precision, and without the floor the
    # relative test can spin forever on subnormal-scale trailing blocks.
    anorm = 0.0
    for i in range(n):
        t = abs(d[i]) + abs(e[i])
        if t > anorm:
            anorm = t
    floor = _EPS * anorm
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > _MAX_SWEEPS:
                return -1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


@njit(cache=True)
def _tql2(d, e, Z):
    # As _tql1 but rotating the columns of Z along, so that on success
    # Z diag(d) Z^T reconstructs the original matrix.
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    anorm = 0.0
    for i in range(n):
        t = abs(d[i]) + abs(e[i])
        if t > anorm:
            anorm = t
    floor = _EPS * anorm
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > _MAX_SWEEPS:
                return -1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(n):
                    f = Z[k, i + 1]
                    Z[k, i + 1] = s * Z[k, i] + c * f
                    Z[k, i] = c * Z[k, i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


def _validated_symmetric(matrix) -> np.ndarray:
    M = np.array(matrix, dtype=np.float64, copy=True, order="C")
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.size == 0:
        return M
    if not np.all(np.isfinite(M)):
        raise IntegrityError("matrix has non-finite entries")
    scale = float(np.max(np.abs(M)))
    if scale > 0.0:
        skew = float(np.max(np.abs(M - M.T)))
        if skew > SYMMETRY_TOL * scale:
            raise IntegrityError(
                f"matrix asymmetric beyond tolerance: relative skew {skew / scale:.3e}"
            )
    return M


def _rescale_exponent(M: np.ndarray) -> int:
    # Bring the largest entry into [0.5, 1) by a power of two, which is an
    # exact operation.  Heralded-state blocks can sit entirely at subnormal
    # magnitudes, where QL rotations stop behaving; working at unit scale
    # and scaling the spectrum back avoids that without changing any bits
    # for well-scaled input.
    scale = float(np.max(np.abs(M)))
    if scale == 0.0:
        return 0
    exp = math.frexp(scale)[1]
    np.ldexp(M, -exp, out=M)
    return exp


def _eig2(a: float, b: float, c: float) -> tuple[float, float]:
    # Closed form for [[a, b], [b, c]], ascending.  Exact on the hand-check
    # cases (diagonal, pure exchange) where iterative rotations leave an
    # ulp of drift.
    mean = 0.5 * (a + c)
    disc = math.hypot(0.5 * (a - c), b)
    return mean - disc, mean + disc


def symmetric_eigenvalues(matrix) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending."""
    M = _validated_symmetric(matrix)
    n = M.shape[0]
    if n == 0:
        return np.empty(0)
    if n == 1:
        return M[0, :1].copy()
    if n == 2:
        return np.array(_eig2(M[0, 0], M[0, 1], M[1, 1]))
    exp = _rescale_exponent(M)
    d = np.empty(n)
    e = np.empty(n)
    _tred1(M, d, e)
    if _tql1(d, e) != 0:
        raise RuntimeError("QL iteration did not converge")
    d.sort()
    return np.ldexp(d, exp)


def symmetric_eigensystem(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""
    M = _validated_symmetric(matrix)
    n = M.shape[0]
    if n == 0:
        return np.empty(0), np.empty((0, 0))
    if n == 1:
        return M[0, :1].copy(), np.ones((1, 1))
    if n == 2:
        a, b, c = M[0, 0], M[0, 1], M[1, 1]
        if b == 0.0:
            w = np.array([a, c])
            Q = np.eye(2)
            if a > c:
                return w[::-1].copy(), Q[:, ::-1].copy()
            return w, Q
        lo, hi = _eig2(a, b, c)
        v = np.array([b, lo - a])
        v /= math.hypot(v[0], v[1])
        return np.array([lo, hi]), np.column_stack([v, [-v[1], v[0]]])
    exp = _rescale_exponent(M)
    d = np.empty(n)
    e = np.empty(n)
    _tred2(M, d, e)
    if _tql2(d, e, M) != 0:
        raise RuntimeError("QL iteration did not converge")
    order = np.argsort(d, kind="stable")
    return np.ldexp(d[order], exp), M[:, order]

"""Construction of the entangled-ensemble states in a truncated Fock basis.

The resource is a two-mode squeezed state (TMSS) of the collective
excitations of two atomic ensembles,

    |psi> = sqrt(1 - lam^2) sum_n lam^n |n>|n>.

Each ensemble then couples weakly to its own light mode through an effective
beamsplitter of strength phi, and both light modes are watched by on-off
detectors.  A simultaneous click on both sides heralds success; conditioning
on it and tracing the light out leaves a mixed two-ensemble state whose trace
is the success probability.

The heralded density matrix obeys the selection rule a - b = c - d between
its ket indices (a, b) and bra indices (c, d): the trace over the light modes
forces both sides to have lost the same photon pair (k1, k2), and each click
pattern shifts the two ensembles by the same index difference.  Everything
here is therefore stored per difference D = a - b, one dense block each,
which is exactly the grouping the partial-transpose analysis wants later.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import amplitude_matrix, mode_norm_sq
from .params import InteractionStrength

__all__ = [
    "TMSSVector",
    "JointAmplitudeTable",
    "ConditionalAtomicState",
    "build_tmss",
    "apply_effective_beamsplitter",
    "condition_on_clicks_ideal",
    "success_probability_ideal",
    "tmss_density_matrix",
]


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or not 0.0 <= lam < 1.0:
        raise ValueError(f"squeezing weight must lie in [0, 1), got {lam}")
    return lam


@dataclass(frozen=True)
class TMSSVector:
    """Schmidt coefficients of the truncated two-mode squeezed state.

    ``coeffs[n] = sqrt(1 - lam^2) lam^n`` for n = 0..n_max.  The squared
    coefficients sum to ``1 - lam^(2(n_max+1))``, so ``tail_mass`` is the
    probability weight the truncation discards.
    """

    lam: float
    n_max: int
    coeffs: np.ndarray

    @property
    def tail_mass(self) -> float:
        return self.lam ** (2 * (self.n_max + 1))

    def norm_sq(self) -> float:
        return float(np.dot(self.coeffs, self.coeffs))


def build_tmss(lam: float, n_max: int) -> TMSSVector:
    """Truncated two-mode squeezed state with weight ``lam``."""
    lam = _check_lambda(lam)
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    coeffs = math.sqrt(1.0 - lam * lam) * lam ** np.arange(n_max + 1)
    return TMSSVector(lam=lam, n_max=n_max, coeffs=coeffs)


class JointAmplitudeTable:
    """Joint four-mode amplitudes after both concentration interactions.

    The (unnormalized, non-unit-norm) pure state is

        sum_n c_n sum_{k1,k2 <= n} f(n,k1) f(n,k2) |n-k1, n-k2, k1, k2>

    over (ensemble 1, ensemble 2, light 1, light 2), with c the squeezed
    coefficients and f the per-mode beamsplitter amplitude.  The table is
    kept factorized as c and the matrix F[n, k], so ``amp`` is an O(1)
    product and nothing cubic in n_max is materialized.
    """

    def __init__(self, tmss: TMSSVector, phi: float):
        phi = InteractionStrength(phi).phi
        self.n_max = tmss.n_max
        self.lam = tmss.lam
        self.phi = phi
        self.coeffs = tmss.coeffs
        self.F = amplitude_matrix(tmss.n_max, phi)

    def amp(self, n: int, k1: int, k2: int) -> float:
        """Amplitude of ``|n-k1, n-k2, k1, k2>``."""
        if not 0 <= n <= self.n_max:
            raise ValueError(f"n={n} outside [0, {self.n_max}]")
        if not (0 <= k1 <= n and 0 <= k2 <= n):
            raise ValueError(f"(k1, k2)=({k1}, {k2}) outside [0, {n}]")
        return float(self.coeffs[n] * self.F[n, k1] * self.F[n, k2])

    def total_norm_sq(self) -> float:
        """Squared norm of the four-mode state; below 1 for phi > 0."""
        per_mode = np.einsum("nk,nk->n", self.F, self.F)
        return float(np.dot(self.coeffs**2, per_mode**2))

    def closed_norm_sq(self) -> float:
        """Geometric-series limit of the squared norm as n_max grows."""
        A = mode_norm_sq(1, self.phi)
        l2 = self.lam * self.lam
        return (1.0 - l2) / (1.0 - l2 * A * A)


def apply_effective_beamsplitter(tmss: TMSSVector, phi: float) -> JointAmplitudeTable:
    """Couple each ensemble to its (vacuum) light mode with strength phi."""
    return JointAmplitudeTable(tmss, phi)


class ConditionalAtomicState:
    """Two-ensemble density matrix stored as one dense block per difference.

    Entries rho[a, b; c, d] satisfy the selection rule a - b = c - d or
    vanish.  For D = a - b >= 0 block ``sectors[D]`` holds the submatrix
    over a, c in [D, a_max] (storage offset a - D); the D < 0 entries follow
    from the ensemble-exchange symmetry rho[a, b; c, d] = rho[b, a; d, c].
    ``norm`` is the trace, i.e. the success probability while the state is
    unnormalized.
    """

    def __init__(self, sectors: list[np.ndarray], a_max: int, normalized: bool = False):
        self.sectors = sectors
        self.a_max = int(a_max)
        self.normalized = bool(normalized)
        self.norm = self.trace()

    def trace(self) -> float:
        total = float(np.trace(self.sectors[0])) if self.sectors else 0.0
        for block in self.sectors[1:]:
            total += 2.0 * float(np.trace(block))
        return total

    def entry(self, a: int, b: int, c: int, d: int) -> float:
        """rho[a, b; c, d]; zero off the selection rule or outside support."""
        if min(a, b, c, d) < 0:
            raise ValueError(f"negative Fock index in ({a}, {b}, {c}, {d})")
        if a - b != c - d:
            return 0.0
        if a - b < 0:
            a, b, c, d = b, a, d, c
        D = a - b
        if D >= len(self.sectors) or a > self.a_max or c > self.a_max:
            return 0.0
        return float(self.sectors[D][a - D, c - D])

    def items(self):
        """Yield ((a, b, c, d), value) over all stored nonzero entries."""
        for D, block in enumerate(self.sectors):
            rows, cols = np.nonzero(block)
            for i, j in zip(rows.tolist(), cols.tolist()):
                a, c = i + D, j + D
                value = float(block[i, j])
                yield (a, a - D, c, c - D), value
                if D > 0:
                    yield (a - D, a, c - D, c), value

    def normalize(self) -> "ConditionalAtomicState":
        """Unit-trace copy; rejects the zero state (nothing was heralded)."""
        if self.norm == 0.0:
            raise ValueError("cannot normalize a state of zero success probability")
        scaled = [block / self.norm for block in self.sectors]
        return ConditionalAtomicState(scaled, self.a_max, normalized=True)

    def to_dense(self, dim: int | None = None) -> np.ndarray:
        """Dense rho[a, b, c, d] array, mainly for small cross-checks."""
        m = self.a_max + 1 if dim is None else int(dim)
        rho = np.zeros((m, m, m, m))
        for (a, b, c, d), value in self.items():
            if max(a, b, c, d) < m:
                rho[a, b, c, d] = value
        return rho


def _conditioned_sectors(table: JointAmplitudeTable, eta: float) -> list[np.ndarray]:
    """Accumulate the heralded blocks as Gram matrices.

    For difference D, entry (a, c) of the block is a sum over the shared
    photon losses u = k1 >= 1, v = k1 + D of products of ket and bra
    amplitudes, with the detector-efficiency weight

        w(u) = (1 - (1-eta)^u) (1 - (1-eta)^(u+D))

    attached to the photon pair.  Writing G[u, a] for the ket factor and
    absorbing sqrt(w) into G turns each block into G^T G, which is
    symmetric and positive semidefinite by construction; at eta = 1 the
    weight is exactly 1 and the ideal state falls out of the same path.
    """
    n_max = table.n_max
    F = table.F
    c = table.coeffs
    miss = 1.0 - eta
    a_hi = n_max - 1
    sectors: list[np.ndarray] = []
    for D in range(a_hi + 1):
        u = np.arange(1, n_max - D + 1)
        a = np.arange(D, a_hi + 1)
        n = a[None, :] + u[:, None]
        valid = n <= n_max
        n = np.where(valid, n, 0)
        G = np.where(valid, c[n] * F[n, u[:, None]] * F[n, u[:, None] + D], 0.0)
        if eta != 1.0:
            w = (1.0 - miss**u) * (1.0 - miss ** (u + D))
            G *= np.sqrt(w)[:, None]
        block = G.T @ G
        sectors.append(0.5 * (block + block.T))
    return sectors


def condition_on_clicks_ideal(table: JointAmplitudeTable) -> ConditionalAtomicState:
    """Herald on simultaneous clicks of two perfect on-off detectors.

    Returns the unnormalized atomic state; its trace is the success
    probability and matches :func:`success_probability_ideal` up to the
    Fock-space truncation.
    """
    return ConditionalAtomicState(_conditioned_sectors(table, 1.0), table.n_max - 1)


def _success_closed(lam: float, phi: float, eta: float) -> float:
    """Closed form of the double-click probability.

    Summing the per-excitation click weights gives three geometric series in
    lam^2 with ratios built from A = phi^2 + (1-phi^2)^2 (any photon count
    at a detector) and B = phi^2 (1-eta) + (1-phi^2)^2 (none seen).  The
    expression is arranged so the degenerate couplings cancel exactly:
    phi = 0 and eta = 0 make A and B the same float and the bracket is
    then t - 2t + t = 0 with no rounding residue.
    """
    lam = _check_lambda(lam)
    phi = InteractionStrength(phi).phi
    if not math.isfinite(eta) or not 0.0 <= eta <= 1.0:
        raise ValueError(f"detector efficiency must lie in [0, 1], got {eta}")
    A = phi * phi + (1.0 - phi * phi) ** 2
    B = phi * phi * (1.0 - eta) + (1.0 - phi * phi) ** 2
    l2 = lam * lam
    t_click = 1.0 / (1.0 - l2 * A * A)
    t_cross = 1.0 / (1.0 - l2 * A * B)
    t_none = 1.0 / (1.0 - l2 * B * B)
    return (1.0 - l2) * (t_click - 2.0 * t_cross + t_none)


def success_probability_ideal(lam: float, phi: float) -> float:
    """Probability that both perfect detectors click at least once."""
    return _success_closed(lam, phi, 1.0)


def tmss_density_matrix(tmss: TMSSVector) -> ConditionalAtomicState:
    """Density matrix of the bare squeezed state in the same block layout.

    Only the D = 0 block is populated (the state is diagonal in the index
    difference), which lets the unmeasured state flow through the identical
    partial-transpose and negativity machinery as the heralded one.
    """
    # outer(c, c) is exactly symmetric already: IEEE multiplication commutes
    return ConditionalAtomicState([np.outer(tmss.coeffs, tmss.coeffs)], tmss.n_max)

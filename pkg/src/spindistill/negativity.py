"""Partial transpose and logarithmic negativity for number-correlated states.

The heralded two-ensemble states built in :mod:`spindistill.states` only
connect basis pairs whose excitation-number differences match, so their
partial transpose splits into finite blocks labelled by the total photon
number N = a + c of the transposed entry.  Each block is real symmetric and
at most (a_max + 1) x (a_max + 1); diagonalizing them one at a time replaces
one dense eigenproblem with a few hundred small ones.

Negativity is the absolute sum of negative eigenvalues of the partial
transpose; the logarithmic form is log(1 + 2 N).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigen import IntegrityError, symmetric_eigenvalues
from .states import ConditionalAtomicState

__all__ = [
    "PTBlockSet",
    "EntanglementReport",
    "partial_transpose_blocks",
    "negativity",
    "tmss_negativity_closed",
]

EIGEN_FLOOR_REL = 1e-12
TRACE_TOL = 1e-6


@dataclass(frozen=True)
class PTBlockSet:
    """Block decomposition of a partially transposed two-ensemble state.

    ``blocks[N]`` holds the coupling among basis pairs |a><c| with
    a + c = N.  Only populations with a, c <= a_max exist, so block N is
    indexed by a in [max(0, N - a_max), min(N, a_max)]; ``offsets[N]`` is
    that lower limit.
    """

    blocks: list[np.ndarray]
    offsets: list[int]
    a_max: int
    trace_total: float

    def block_count(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class EntanglementReport:
    negativity: float
    log_negativity: float
    per_block_negative_mass: list[float] = field(repr=False)
    n_max_used: int = 0
    convergence_delta: float | None = None


def partial_transpose_blocks(state: ConditionalAtomicState) -> PTBlockSet:
    """Assemble the fixed-N blocks of the partial transpose of ``state``.

    Transposing the second ensemble maps the stored entry rho[a, b; c, d]
    to position (a, d; c, b), and the number-difference selection rule turns
    the sum a + c of the new row/column labels into a conserved block label.
    Every stored entry lands in exactly one block and each block inherits
    exact symmetry from the sector matrices, which is verified up front.
    """
    a_max = state.a_max
    sectors = state.sectors
    for D, sec in enumerate(sectors):
        width = a_max - D + 1
        if sec.shape != (width, width):
            raise IntegrityError(
                f"sector {D} has shape {sec.shape}, expected ({width}, {width})"
            )
        if not np.array_equal(sec, sec.T):
            raise IntegrityError(f"sector {D} is not exactly symmetric")

    blocks: list[np.ndarray] = []
    offsets: list[int] = []
    trace_total = 0.0
    for N in range(2 * a_max + 1):
        lo = max(0, N - a_max)
        hi = min(N, a_max)
        dim = hi - lo + 1
        M = np.zeros((dim, dim))
        # Fill the half with a + c >= N, where D = a + c - N indexes a
        # stored sector directly.  Sectors past the end of the list are
        # identically zero (the diagonal-correlated input state stores only
        # D = 0) and contribute nothing.
        for D in range(min(2 * hi - N, len(sectors) - 1) + 1):
            sec = sectors[D]
            a_lo = max(lo, D, N + D - hi)
            a_hi = min(hi, N + D - max(lo, D))
            if a_hi < a_lo:
                continue
            a = np.arange(a_lo, a_hi + 1)
            c = N + D - a
            M[a - lo, c - lo] = sec[a - D, c - D]
        # The remaining half follows from the mirror symmetry of the state:
        # block entries satisfy M[a, c] = M[N - c, N - a], and lo + hi = N
        # makes that an anti-diagonal reflection of the array.
        idx = np.arange(lo, hi + 1)
        asum = idx[:, None] + idx[None, :]
        M = np.where(asum >= N, M, M[::-1, ::-1].T)
        blocks.append(M)
        offsets.append(lo)
        trace_total += float(np.trace(M))
    return PTBlockSet(blocks=blocks, offsets=offsets, a_max=a_max, trace_total=trace_total)


def negativity(blocks: PTBlockSet) -> EntanglementReport:
    """Log negativity of the normalized state behind ``blocks``.

    Eigenvalues are computed block by block; values above ``-floor`` with
    floor = 1e-12 times the block spectral norm count as zero, so truncation
    noise never masquerades as entanglement.
    """
    if abs(blocks.trace_total - 1.0) > TRACE_TOL:
        raise ValueError(
            f"partial transpose trace {blocks.trace_total!r} is not 1; "
            "normalize the state before measuring entanglement"
        )
    total = 0.0
    per_block: list[float] = []
    for M in blocks.blocks:
        w = symmetric_eigenvalues(M)
        if w.size == 0:
            per_block.append(0.0)
            continue
        floor = EIGEN_FLOOR_REL * float(np.max(np.abs(w)))
        mass = float(-np.sum(w[w < -floor]))
        per_block.append(mass)
        total += mass
    return EntanglementReport(
        negativity=total,
        log_negativity=math.log1p(2.0 * total),
        per_block_negative_mass=per_block,
        n_max_used=blocks.a_max,
    )


def tmss_negativity_closed(lam: float) -> tuple[float, float]:
    """Closed-form (negativity, log negativity) of a two-mode squeezed state.

    The partial transpose of the untruncated state has one negative
    eigenvalue family summing to lam / (1 - lam), giving
    E = log((1 + lam) / (1 - lam)).
    """
    if not 0.0 <= lam < 1.0 or not math.isfinite(lam):
        raise ValueError(f"lambda must lie in [0, 1), got {lam!r}")
    neg = lam / (1.0 - lam)
    return neg, math.log1p(lam) - math.log1p(-lam)

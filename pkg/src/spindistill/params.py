"""Scalar parameter conversions for the entangling and concentration couplings.

The entangling QND pass with coupling ``kappa`` prepares the two ensembles in
a two-mode squeezed state of squeezing ``r = ln(1 + 2 kappa^2) / 2`` and
Schmidt weight ``lam = tanh(r)``.  The later concentration passes are
characterized by an independent beamsplitter strength ``phi``; nothing here
assumes the two couplings share a physical origin.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

__all__ = [
    "PHI_TRUST_LIMIT",
    "SqueezingParams",
    "InteractionStrength",
    "squeezing_from_kappa",
    "lambda_from_r",
    "kappa_from_r",
]

# The effective-beamsplitter reduction of the double-pass interaction holds
# with fidelity ~0.99 up to roughly this coupling; beyond it results are
# still well defined but should be treated as qualitative.
PHI_TRUST_LIMIT = 0.35

_CONSISTENCY_TOL = 1e-12


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class SqueezingParams:
    """Consistent (kappa, r, lam) triple for the initial two-mode squeezing.

    ``lam = 1`` is rejected rather than clamped: the squeezed-state
    normalization ``1 - lam^2`` vanishes there and every geometric series
    downstream diverges, so failing fast beats producing infinities later.
    """

    kappa: float
    r: float
    lam: float

    def __post_init__(self):
        kappa = _require_finite("kappa", self.kappa)
        r = _require_finite("r", self.r)
        lam = _require_finite("lam", self.lam)
        if kappa < 0.0:
            raise ValueError(f"kappa must be nonnegative, got {kappa}")
        if r < 0.0:
            raise ValueError(f"r must be nonnegative, got {r}")
        if not 0.0 <= lam < 1.0:
            raise ValueError(f"lam must lie in [0, 1), got {lam}")
        if abs(r - 0.5 * math.log1p(2.0 * kappa * kappa)) > _CONSISTENCY_TOL:
            raise ValueError(
                f"inconsistent squeezing: r={r} does not match kappa={kappa}"
            )
        if abs(lam - math.tanh(r)) > _CONSISTENCY_TOL:
            raise ValueError(f"inconsistent squeezing: lam={lam} does not match r={r}")


def squeezing_from_kappa(kappa: float) -> SqueezingParams:
    """Populate the full parameter triple from the entangling coupling."""
    kappa = _require_finite("kappa", kappa)
    if kappa < 0.0:
        raise ValueError(f"kappa must be nonnegative, got {kappa}")
    r = 0.5 * math.log1p(2.0 * kappa * kappa)
    if not math.isfinite(r):
        raise ValueError(f"kappa={kappa} is too large to represent")
    return SqueezingParams(kappa=kappa, r=r, lam=math.tanh(r))


def lambda_from_r(r: float) -> float:
    """Schmidt weight tanh(r) of a two-mode squeezed state, in [0, 1)."""
    r = _require_finite("r", r)
    if r < 0.0:
        raise ValueError(f"r must be nonnegative, got {r}")
    return math.tanh(r)


def kappa_from_r(r: float) -> float:
    """Invert r = ln(1 + 2 kappa^2) / 2 for the entangling coupling."""
    r = _require_finite("r", r)
    if r < 0.0:
        raise ValueError(f"r must be nonnegative, got {r}")
    return math.sqrt(0.5 * math.expm1(2.0 * r))


@dataclass(frozen=True)
class InteractionStrength:
    """Coupling of a single concentration interaction, in [0, 1).

    Values above :data:`PHI_TRUST_LIMIT` are accepted with a warning: the
    amplitude map stays well defined, but it no longer approximates a
    physical beamsplitter faithfully.
    """

    phi: float

    def __post_init__(self):
        phi = _require_finite("phi", self.phi)
        if not 0.0 <= phi < 1.0:
            raise ValueError(f"phi must lie in [0, 1), got {phi}")
        if phi > PHI_TRUST_LIMIT:
            warnings.warn(
                f"phi={phi} exceeds the weak-coupling range; the effective "
                f"beamsplitter is only reliable up to about {PHI_TRUST_LIMIT}",
                stacklevel=2,
            )

    @property
    def beyond_trusted_range(self) -> bool:
        return self.phi > PHI_TRUST_LIMIT

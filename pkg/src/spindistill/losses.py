"""Detector inefficiency as a loss channel in front of ideal on-off detectors.

A detector of efficiency eta is modelled as a beamsplitter of transmittivity
eta = nu^2 mixing the light mode with vacuum, with the reflected share traced
out before the ideal click measurement.  For the heralded atomic state the
whole channel collapses to the scalar click weight 1 - (1-eta)^k per light
mode carrying k photons, so no eight-index intermediate is ever built here;
the dense reference construction in :mod:`spindistill.oracle` realizes the
loss physically instead and pins this reduction down.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .fock import log_binomial
from .states import (
    ConditionalAtomicState,
    JointAmplitudeTable,
    _conditioned_sectors,
    _success_closed,
)

__all__ = [
    "DetectorModel",
    "loss_transform_coeff",
    "condition_on_clicks_lossy",
    "success_probability_lossy",
]


@dataclass(frozen=True)
class DetectorModel:
    """On-off detector with efficiency eta in [0, 1]."""

    eta: float

    def __post_init__(self):
        eta = float(self.eta)
        if not math.isfinite(eta) or not 0.0 <= eta <= 1.0:
            raise ValueError(f"detector efficiency must lie in [0, 1], got {eta}")


def loss_transform_coeff(k: int, s: int, eta: float) -> float:
    """Amplitude for s of k photons to survive the loss beamsplitter.

    Equals sqrt(C(k,s)) nu^s (sqrt(1-nu^2))^(k-s) with nu = sqrt(eta); the
    squares sum to 1 over s, the channel is trace preserving.
    """
    DetectorModel(eta)
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if s < 0 or s > k:
        raise ValueError(f"s={s} outside [0, {k}]")
    if eta == 0.0:
        return 1.0 if s == 0 else 0.0
    if eta == 1.0:
        return 1.0 if s == k else 0.0
    lnc = log_binomial(k, s)
    return math.exp(0.5 * (lnc + s * math.log(eta) + (k - s) * math.log1p(-eta)))


def condition_on_clicks_lossy(
    table: JointAmplitudeTable, det: DetectorModel
) -> ConditionalAtomicState:
    """Herald on simultaneous clicks of two detectors of efficiency det.eta.

    Tracing the loss ancillas and applying the click element on each light
    mode attaches the weight

        (1 - (1-eta)^k1) (1 - (1-eta)^k2)

    to the photon pair (k1, k2) shared by ket and bra, and nothing else
    changes relative to the ideal conditioning.  At eta = 1 the weight is
    identically 1, so the ideal state is reproduced exactly; at eta = 0 it
    vanishes and so does the state.
    """
    return ConditionalAtomicState(
        _conditioned_sectors(table, det.eta), table.n_max - 1
    )


def success_probability_lossy(lam: float, phi: float, eta: float) -> float:
    """Closed-form double-click probability behind lossy detectors."""
    return _success_closed(lam, phi, eta)

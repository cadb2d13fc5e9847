"""Brute-force reference implementation on a tiny dense Fock lattice.

Everything here recomputes the heralded-state pipeline from first
principles: explicit multimode state vectors, loss realized as physical
beamsplitters into ancilla vacuum modes, detector clicks as projector
slices.  No code is shared with the production path (binomials come from
``math.comb``, amplitudes from direct powers), so agreement between the two
is a genuine cross-check rather than a tautology.

The price is exponential cost.  Six modes at n_max = 4 is a few hundred
thousand amplitudes and fine; anything past n_max = 6 is refused.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import IntegrityError
from .states import ConditionalAtomicState

__all__ = [
    "DenseMultiModeState",
    "oracle_conditional_state",
    "oracle_success_probability",
    "oracle_pre_detection_matrix",
]

N_MAX_LIMIT = 6
_NORM_SLACK = 1e-12


@dataclass(frozen=True)
class DenseMultiModeState:
    """A pure state on a product of truncated oscillator modes.

    ``amplitudes[n1, ..., nk]`` is the coefficient of |n1 ... nk>.  The
    flatten/unflatten pair defines the row-major basis ordering used when a
    matrix view of the state is needed.
    """

    mode_dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != self.mode_dims:
            raise ValueError(
                f"amplitude array shape {self.amplitudes.shape} does not match "
                f"mode dimensions {self.mode_dims}"
            )

    def norm_sq(self) -> float:
        return float(np.sum(self.amplitudes**2))

    def flatten_index(self, occupation: tuple[int, ...]) -> int:
        return int(np.ravel_multi_index(occupation, self.mode_dims))

    def unflatten_index(self, index: int) -> tuple[int, ...]:
        return tuple(int(v) for v in np.unravel_index(index, self.mode_dims))

    def check_norm(self, bound: float, label: str) -> None:
        n = self.norm_sq()
        if n > bound + _NORM_SLACK:
            raise IntegrityError(f"{label}: squared norm {n!r} exceeds {bound!r}")


def _check_point(lam: float, phi: float, eta: float, n_max: int) -> None:
    if not 0.0 <= lam < 1.0 or not math.isfinite(lam):
        raise ValueError(f"lambda must lie in [0, 1), got {lam!r}")
    if not 0.0 <= phi < 1.0 or not math.isfinite(phi):
        raise ValueError(f"phi must lie in [0, 1), got {phi!r}")
    if not 0.0 <= eta <= 1.0 or not math.isfinite(eta):
        raise ValueError(f"eta must lie in [0, 1], got {eta!r}")
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    if n_max > N_MAX_LIMIT:
        raise ValueError(
            f"n_max = {n_max} would allocate a {(n_max + 1) ** 6}-amplitude "
            f"lattice; the brute-force path is capped at n_max = {N_MAX_LIMIT}"
        )


def _transfer_amp(n: int, k: int, phi: float) -> float:
    # Amplitude for k of n excitations crossing to the light mode.
    return math.sqrt(math.comb(n, k)) * phi**k * (1.0 - phi**2) ** (n - k)


def _splitter_amp(k: int, s: int, t: float) -> float:
    # Unitary beamsplitter with transmissivity t: s photons kept, k - s lost.
    return math.sqrt(math.comb(k, s)) * math.sqrt(t) ** s * math.sqrt(1.0 - t) ** (k - s)


def _lossy_pure_state(lam: float, phi: float, eta: float, n_max: int) -> DenseMultiModeState:
    """Joint pure state of ensembles, light modes, and loss ancillas.

    Mode order (a1, a2, l1, l2, x1, x2): the two atomic ensembles, the two
    scattered light modes after their loss beamsplitters, and the two
    ancilla modes holding whatever the losses swallowed.
    """
    d = n_max + 1
    squeezed = np.zeros((d, d))
    for n in range(d):
        squeezed[n, n] = math.sqrt(1.0 - lam**2) * lam**n
    two_mode = DenseMultiModeState((d, d), squeezed)
    two_mode.check_norm(1.0, "squeezed ensembles")

    scattered = np.zeros((d, d, d, d))
    for n in range(d):
        for k1 in range(n + 1):
            for k2 in range(n + 1):
                amp = squeezed[n, n] * _transfer_amp(n, k1, phi) * _transfer_amp(n, k2, phi)
                scattered[n - k1, n - k2, k1, k2] = amp
    light = DenseMultiModeState((d, d, d, d), scattered)
    # The atom-light transfer is a contraction, never a gain.
    light.check_norm(two_mode.norm_sq(), "after light scattering")

    lossy = np.zeros((d, d, d, d, d, d))
    for a in range(d):
        for b in range(d):
            for k1 in range(d):
                for k2 in range(d):
                    amp = scattered[a, b, k1, k2]
                    if amp == 0.0:
                        continue
                    for s1 in range(k1 + 1):
                        for s2 in range(k2 + 1):
                            w = _splitter_amp(k1, s1, eta) * _splitter_amp(k2, s2, eta)
                            lossy[a, b, s1, s2, k1 - s1, k2 - s2] = amp * w
    full = DenseMultiModeState((d, d, d, d, d, d), lossy)
    if abs(full.norm_sq() - light.norm_sq()) > _NORM_SLACK:
        raise IntegrityError(
            "loss beamsplitters changed the total norm: "
            f"{light.norm_sq()!r} -> {full.norm_sq()!r}"
        )
    return full


def oracle_conditional_state(
    lam: float, phi: float, eta: float, n_max: int
) -> ConditionalAtomicState:
    """Unnormalized post-click atomic state, computed the expensive way.

    Both detectors fire when their mode holds at least one photon, so the
    click projector is a basis slice; tracing out light and ancillas is a
    single contraction of the sliced amplitudes.
    """
    _check_point(lam, phi, eta, n_max)
    d = n_max + 1
    psi = _lossy_pure_state(lam, phi, eta, n_max).amplitudes
    clicked = psi[:, :, 1:, 1:, :, :]
    rho = np.einsum("absylm,cdsylm->abcd", clicked, clicked)

    # The contraction must respect the excitation-difference selection rule
    # exactly; anything off it signals a bookkeeping bug.
    a, b, c, dd = np.indices(rho.shape)
    off_rule = rho[(a - b) != (c - dd)]
    if off_rule.size and float(np.max(np.abs(off_rule))) != 0.0:
        raise IntegrityError("click-conditioned matrix violates the selection rule")

    a_hi = n_max - 1
    sectors = []
    for D in range(a_hi + 1):
        idx = np.arange(D, a_hi + 1)
        sec = rho[idx[:, None], idx[:, None] - D, idx[None, :], idx[None, :] - D]
        sectors.append(0.5 * (sec + sec.T))
    return ConditionalAtomicState(sectors, a_hi)


def oracle_success_probability(lam: float, phi: float, eta: float, n_max: int) -> float:
    """Click probability on the truncated lattice (both detectors fire)."""
    _check_point(lam, phi, eta, n_max)
    psi = _lossy_pure_state(lam, phi, eta, n_max).amplitudes
    clicked = psi[:, :, 1:, 1:, :, :]
    return float(np.sum(clicked**2))


def oracle_pre_detection_matrix(lam: float, phi: float, eta: float, n_max: int) -> np.ndarray:
    """Joint atom-light density matrix just before the detectors.

    Ancillas are traced out, nothing is conditioned yet.  Returned as an
    eight-index array rho[a, b, s, y; c, d, t, z] over (ensemble 1,
    ensemble 2, light 1, light 2) bras and kets.  Capped harder than the
    other entry points because the result is dense in eight indices.
    """
    _check_point(lam, phi, eta, n_max)
    if n_max > 3:
        raise ValueError(
            f"pre-detection matrix is an eight-index object; n_max = {n_max} "
            "is past the n_max = 3 cap"
        )
    psi = _lossy_pure_state(lam, phi, eta, n_max).amplitudes
    return np.einsum("absylm,cdtzlm->absycdtz", psi, psi)

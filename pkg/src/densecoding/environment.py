"""Correlated Gaussian frequency environments and their dephasing action.

Each photon's polarization is dephased by its own frequency degree of
freedom; the two frequencies are jointly Gaussian with correlation
coefficient ``k``, so the two local noise stages share memory.  Every
coherence factor below is a value of the joint Gaussian characteristic
function, which is what makes the closed forms exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .states import validate_density_matrix

__all__ = [
    "DephasingTimes",
    "JointSpectrum",
    "StructuralError",
    "capacity_from_non_markovianity",
    "decoherence_function",
    "dephase_encoded_state",
    "evolve_post_encoding",
    "evolve_pre_encoding",
    "joint_dephasing_factor",
    "non_markovianity",
]


class StructuralError(ValueError):
    """Input state does not have the expected single-coherence-pair structure."""


@dataclass(frozen=True)
class JointSpectrum:
    """Second moments of the joint two-photon frequency distribution.

    Both marginals have mean ``omega0 / 2``; ``c_aa`` and ``c_bb`` are the
    marginal variances, ``k`` the correlation coefficient and ``delta_n``
    the birefringence difference that couples polarization to frequency.
    """

    omega0: float = 2.0
    c_aa: float = 1.0
    c_bb: float = 1.0
    k: float = -1.0
    delta_n: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c_aa) and self.c_aa > 0):
            raise ValueError(f"c_aa must be positive, got {self.c_aa}")
        if not (math.isfinite(self.c_bb) and self.c_bb > 0):
            raise ValueError(f"c_bb must be positive, got {self.c_bb}")
        if not (math.isfinite(self.k) and -1.0 <= self.k <= 1.0):
            raise ValueError(f"k must lie in [-1, 1], got {self.k}")
        if not math.isfinite(self.omega0):
            raise ValueError(f"omega0 must be finite, got {self.omega0}")
        if not math.isfinite(self.delta_n):
            raise ValueError(f"delta_n must be finite, got {self.delta_n}")


@dataclass(frozen=True)
class DephasingTimes:
    """Durations of the two local noise stages."""

    t_a: float
    t_b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_a) and self.t_a >= 0):
            raise ValueError(f"t_a must be non-negative, got {self.t_a}")
        if not (math.isfinite(self.t_b) and self.t_b >= 0):
            raise ValueError(f"t_b must be non-negative, got {self.t_b}")


def _characteristic_function(spec: JointSpectrum, u: float, v: float,
                             include_phase: bool = True) -> complex:
    """E[exp(i(u wA + v wB))] for the jointly Gaussian frequencies.

    The deterministic mean-phase factor exp(i (u+v) omega0 / 2) is dropped
    when ``include_phase`` is false (phase-compensated convention).
    """
    quad = (spec.c_aa * u * u + spec.c_bb * v * v
            + 2.0 * spec.k * math.sqrt(spec.c_aa * spec.c_bb) * u * v)
    phase = (u + v) * spec.omega0 / 2.0 if include_phase else 0.0
    return cmath.exp(complex(-quad / 2.0, phase))


def decoherence_function(spec: JointSpectrum, t_a: float) -> complex:
    """Coherence multiplier on the shared state after the sender-side stage.

    Closed Gaussian form exp(i t_a dn omega0 / 2) * exp(-c_aa dn^2 t_a^2 / 2);
    the modulus decays monotonically from 1.
    """
    if not (math.isfinite(t_a) and t_a >= 0):
        raise ValueError(f"t_a must be non-negative, got {t_a}")
    return _characteristic_function(spec, spec.delta_n * t_a, 0.0)


def joint_dephasing_factor(spec: JointSpectrum, times: DephasingTimes) -> complex:
    """Total coherence factor after both local stages, cross-correlation included.

    With equal times, equal variances and k = -1 the modulus is exactly 1:
    the receiver-side stage rebuilds the coherence the sender-side stage lost.
    """
    return _characteristic_function(spec, spec.delta_n * times.t_a, spec.delta_n * times.t_b)


def evolve_pre_encoding(spec: JointSpectrum, t_a: float) -> np.ndarray:
    """Shared state after sender-side dephasing of |Phi+> for duration t_a."""
    kappa = decoherence_function(spec, t_a)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = 0.5
    rho[0, 3] = kappa / 2.0
    rho[3, 0] = kappa.conjugate() / 2.0
    return rho


# Entries that carry the coherence forward with a positive frequency
# coefficient: (HH,VV) before encoding and (VH,HV) after an X/Y encoding.
_CARRIER_ENTRIES = ((0, 3), (2, 1))
_OFF_PAIR_ENTRIES = ((0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (3, 1), (2, 3), (3, 2))
_STRUCTURE_TOL = 1e-10


def evolve_post_encoding(rho_encoded: np.ndarray, spec: JointSpectrum,
                         times: DephasingTimes,
                         phase_compensation: bool = True) -> np.ndarray:
    """Receiver-side dephasing stage applied after the sender's encoding.

    The surviving coherence pair already carries the sender-stage factor, so
    it is multiplied by the conditional receiver-stage factor (including the
    cross term between the two environments); the total coherence factor then
    equals :func:`joint_dephasing_factor`.  With ``phase_compensation`` the
    deterministic phase exp(i dn (t_a + t_b) omega0 / 2) is removed, leaving
    the real magnitude.

    Raises :class:`StructuralError` if the input has coherences outside a
    single anti-diagonal pair.
    """
    rho = validate_density_matrix(rho_encoded, dim=4).copy()
    if any(abs(rho[i, j]) > _STRUCTURE_TOL for i, j in _OFF_PAIR_ENTRIES):
        raise StructuralError("coherences outside the two anti-diagonal pairs")
    if abs(rho[0, 3]) > _STRUCTURE_TOL and abs(rho[2, 1]) > _STRUCTURE_TOL:
        raise StructuralError("coherences present on both anti-diagonal pairs")

    dn = spec.delta_n
    cross = 2.0 * spec.k * math.sqrt(spec.c_aa * spec.c_bb) * times.t_a * times.t_b
    envelope_log = -(dn * dn) * (spec.c_bb * times.t_b ** 2 + cross) / 2.0
    phase = dn * times.t_b * spec.omega0 / 2.0
    if phase_compensation:
        # also strip the phase the sender stage already imprinted
        phase -= dn * (times.t_a + times.t_b) * spec.omega0 / 2.0
    factor = cmath.exp(complex(envelope_log, phase))

    for i, j in _CARRIER_ENTRIES:
        rho[i, j] *= factor
        rho[j, i] *= factor.conjugate()
    return validate_density_matrix(rho, dim=4)


def dephase_encoded_state(rho_encoded: np.ndarray, spec: JointSpectrum,
                          times: DephasingTimes,
                          phase_compensation: bool = True) -> np.ndarray:
    """Apply both correlated noise stages to an already-encoded state.

    This is the reordered protocol (sender noise after the encoding): every
    entry picks up the joint characteristic function evaluated with the
    frequency coefficients of its own bra/ket structure, so coherences in
    the Psi sector see the opposite sign of the cross term.
    """
    rho = validate_density_matrix(rho_encoded, dim=4).copy()
    dn = spec.delta_n
    # +1 for an H ket / -1 for an H bra contribution, per basis index a*2+b
    weight = (1, 0)  # H -> 1, V -> 0
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            u = dn * times.t_a * (weight[i >> 1] - weight[j >> 1])
            v = dn * times.t_b * (weight[i & 1] - weight[j & 1])
            rho[i, j] *= _characteristic_function(
                spec, u, v, include_phase=not phase_compensation)
    return validate_density_matrix(rho, dim=4)


def non_markovianity(kappa_abs: float, k: float) -> float:
    """Information-backflow measure in closed form: |kappa|^(1-k^2) - |kappa|."""
    if not 0.0 < kappa_abs < 1.0:
        raise ValueError(f"kappa_abs must lie strictly in (0, 1), got {kappa_abs}")
    if not -1.0 <= k <= 1.0:
        raise ValueError(f"k must lie in [-1, 1], got {k}")
    return kappa_abs ** (1.0 - k * k) - kappa_abs


def capacity_from_non_markovianity(n: float, kappa_abs: float) -> float:
    """Dense-coding capacity in bits expressed through the backflow measure.

    Inverts n = |kappa|^(1-k^2) - |kappa| for |k| and feeds the result into
    the joint-noise capacity formula; valid for anticorrelated environments
    (k <= 0), where |k| determines k.
    """
    from .protocol import capacity_bob_noise  # local import to avoid a cycle

    if not 0.0 < kappa_abs < 1.0:
        raise ValueError(
            f"kappa_abs must lie strictly in (0, 1), got {kappa_abs} (logarithm degenerate)")
    if n < 0.0 or n + kappa_abs > 1.0 + 1e-9:
        raise ValueError(
            f"n must satisfy 0 <= n <= 1 - kappa_abs, got n={n}, kappa_abs={kappa_abs}")
    log_ratio = min(math.log(min(n + kappa_abs, 1.0)) / math.log(kappa_abs), 1.0)
    k_abs = math.sqrt(1.0 - log_ratio)
    return capacity_bob_noise(kappa_abs, -k_abs)

"""Encoding schemes, Bell-measurement statistics and capacity formulas.

The dephasing channel couples each encoded Bell state only to its partner
within the same sector (Phi+ <-> Phi-, Psi+ <-> Psi-), so every conditional
distribution is a two-point mixture controlled by a single visibility
``m = kappa_abs ** (2 (1 + k))``.  The closed-form mutual-information
expressions below are exact for that channel; :func:`simulate_protocol` is
the independent density-matrix route used to check them.
"""

from __future__ import annotations

import csv
import enum
import io
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .environment import (
    DephasingTimes,
    JointSpectrum,
    dephase_encoded_state,
    evolve_post_encoding,
    evolve_pre_encoding,
)
from .states import (
    PAULI_FOR_BELL,
    BellLabel,
    Party,
    apply_pauli,
    bell_state,
    binary_entropy,
)

__all__ = [
    "BELL_OUTPUT_ORDER",
    "ConditionalTable",
    "EncodingScheme",
    "MeasurementModel",
    "NoiseOrder",
    "SECTOR_PARTNER",
    "SchemeVariant",
    "capacity_bob_noise",
    "capacity_pre_encoding",
    "closed_form_mi",
    "closed_form_mi3",
    "closed_form_mi4",
    "conditional_probabilities",
    "effective_visibility",
    "mutual_information",
    "simulate_protocol",
]

_ROW_SUM_TOL = 1e-12

#: Fixed ordering of measurement outcomes in every conditional table.
BELL_OUTPUT_ORDER = (
    BellLabel.PHI_PLUS,
    BellLabel.PHI_MINUS,
    BellLabel.PSI_PLUS,
    BellLabel.PSI_MINUS,
)

#: Coherence partner of each Bell state under the dephasing channel.
SECTOR_PARTNER = {
    BellLabel.PHI_PLUS: BellLabel.PHI_MINUS,
    BellLabel.PHI_MINUS: BellLabel.PHI_PLUS,
    BellLabel.PSI_PLUS: BellLabel.PSI_MINUS,
    BellLabel.PSI_MINUS: BellLabel.PSI_PLUS,
}


class SchemeVariant(enum.Enum):
    THREE_STATE = "THREE_STATE"
    FOUR_STATE = "FOUR_STATE"


class NoiseOrder(enum.Enum):
    NOISE_BEFORE_ENCODING = "NOISE_BEFORE_ENCODING"
    NOISE_AFTER_ENCODING = "NOISE_AFTER_ENCODING"


class MeasurementModel(enum.Enum):
    """Outcome model of the receiver; only the ideal four-outcome projective
    Bell measurement is implemented, with residual imperfections absorbed
    into the scalar offset ``s`` of the mutual-information formulas."""

    IDEAL_PROJECTIVE_4 = "IDEAL_PROJECTIVE_4"


_ALPHABETS = {
    SchemeVariant.THREE_STATE: (
        BellLabel.PHI_PLUS, BellLabel.PHI_MINUS, BellLabel.PSI_PLUS),
    SchemeVariant.FOUR_STATE: BELL_OUTPUT_ORDER,
}


@dataclass(frozen=True)
class EncodingScheme:
    """Alphabet of encoded Bell states with a prior distribution."""

    variant: SchemeVariant
    priors: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        n = len(_ALPHABETS[self.variant])
        priors = self.priors if self.priors else tuple([1.0 / n] * n)
        if len(priors) != n:
            raise ValueError(f"{self.variant.value} needs {n} priors, got {len(priors)}")
        if any(p < 0 for p in priors):
            raise ValueError("priors must be non-negative")
        if abs(sum(priors) - 1.0) > _ROW_SUM_TOL:
            raise ValueError(f"priors must sum to 1, got {sum(priors)!r}")
        object.__setattr__(self, "priors", tuple(float(p) for p in priors))

    @property
    def alphabet(self) -> tuple[BellLabel, ...]:
        return _ALPHABETS[self.variant]

    @classmethod
    def three_state(cls, priors: tuple[float, ...] = ()) -> EncodingScheme:
        return cls(SchemeVariant.THREE_STATE, priors)

    @classmethod
    def four_state(cls, priors: tuple[float, ...] = ()) -> EncodingScheme:
        return cls(SchemeVariant.FOUR_STATE, priors)


@dataclass(frozen=True)
class ConditionalTable:
    """Outcome distribution p(y|x) over Bell measurement results."""

    inputs: tuple[BellLabel, ...]
    outputs: tuple[BellLabel, ...]
    p_y_given_x: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.p_y_given_x, dtype=float)
        if p.shape != (len(self.inputs), len(self.outputs)):
            raise ValueError(
                f"probability matrix shape {p.shape} does not match "
                f"{len(self.inputs)} inputs x {len(self.outputs)} outputs")
        if np.any(p < -_ROW_SUM_TOL):
            raise ValueError("conditional probabilities must be non-negative")
        sums = p.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > _ROW_SUM_TOL):
            raise ValueError(f"every row must sum to 1, got sums {sums}")
        p = np.clip(p, 0.0, None)
        p.setflags(write=False)
        object.__setattr__(self, "p_y_given_x", p)
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))

    def to_csv(self) -> str:
        """Serialize as "input,output,p" rows, probabilities at 17 significant digits."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["input", "output", "p"])
        for i, x in enumerate(self.inputs):
            for j, y in enumerate(self.outputs):
                writer.writerow([x.value, y.value, f"{self.p_y_given_x[i, j]:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> ConditionalTable:
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["input", "output", "p"]:
            raise ValueError('expected header "input,output,p"')
        inputs: list[BellLabel] = []
        outputs: list[BellLabel] = []
        entries: dict[tuple[BellLabel, BellLabel], float] = {}
        for row in rows[1:]:
            if len(row) != 3:
                raise ValueError(f"malformed row {row!r}")
            x, y, p = BellLabel(row[0]), BellLabel(row[1]), float(row[2])
            if x not in inputs:
                inputs.append(x)
            if y not in outputs:
                outputs.append(y)
            entries[x, y] = p
        mat = np.array([[entries[x, y] for y in outputs] for x in inputs])
        return cls(tuple(inputs), tuple(outputs), mat)


def effective_visibility(kappa_abs: float, k: float) -> float:
    """Coherence magnitude kappa_abs ** (2 (1 + k)) surviving both noise stages.

    Valid in the equal-time, equal-variance regime.  The convention 0**0 = 1
    keeps the k = -1 curve continuous; the doubly degenerate point
    (kappa_abs = 0, k = -1) returns 1 with a warning.
    """
    if not 0.0 <= kappa_abs <= 1.0:
        raise ValueError(f"kappa_abs must lie in [0, 1], got {kappa_abs}")
    if not -1.0 <= k <= 1.0:
        raise ValueError(f"k must lie in [-1, 1], got {k}")
    if kappa_abs == 0.0 and k == -1.0:
        warnings.warn(
            "effective_visibility(0, -1) is doubly degenerate; returning the "
            "k = -1 limit value 1", stacklevel=2)
        return 1.0
    return kappa_abs ** (2.0 * (1.0 + k))


def conditional_probabilities(scheme: EncodingScheme, m: float) -> ConditionalTable:
    """Outcome table of the dephasing channel at visibility m.

    Each encoded state is detected as itself with probability (1+m)/2 and as
    its sector partner with probability (1-m)/2; cross-sector outcomes never
    occur.  Outputs always span all four Bell labels.
    """
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {m}")
    rows = np.zeros((len(scheme.alphabet), 4))
    for i, x in enumerate(scheme.alphabet):
        rows[i, BELL_OUTPUT_ORDER.index(x)] = (1.0 + m) / 2.0
        rows[i, BELL_OUTPUT_ORDER.index(SECTOR_PARTNER[x])] = (1.0 - m) / 2.0
    return ConditionalTable(scheme.alphabet, BELL_OUTPUT_ORDER, rows)


def mutual_information(scheme: EncodingScheme, table: ConditionalTable,
                       s: float = 0.0) -> float:
    """Mutual information in bits between encoded symbol and outcome, minus s.

    Computes sum_x p1(x) sum_y p(y|x) log2(p(y|x) / p2(y)) with
    p2(y) = sum_x p1(x) p(y|x); cells with p(y|x) = 0 contribute nothing.
    The imperfection offset s is subtracted and the result clamped at 0.
    """
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s}")
    if table.inputs != scheme.alphabet:
        raise ValueError("table inputs do not match the scheme alphabet")
    p1 = np.asarray(scheme.priors)
    p = table.p_y_given_x
    p2 = p1 @ p
    weights = p1[:, None] * p
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log2(np.where(p > 0, p, 1.0)) - np.log2(np.where(p2 > 0, p2, 1.0))[None, :]
    value = float(np.where(weights > 0, weights * logs, 0.0).sum())
    return max(0.0, value - s)


def capacity_pre_encoding(kappa_abs: float) -> float:
    """Capacity in bits with noise on the sender side only: 2 - H((1+kappa)/2)."""
    if not 0.0 <= kappa_abs <= 1.0:
        raise ValueError(f"kappa_abs must lie in [0, 1], got {kappa_abs}")
    return 2.0 - binary_entropy((1.0 + kappa_abs) / 2.0)


def capacity_bob_noise(kappa_abs: float, k: float) -> float:
    """Capacity in bits with both noise stages: 2 - H((1 + kappa^(2(1+k)))/2).

    For strongly anticorrelated environments this exceeds the sender-only
    value: the receiver-side noise rebuilds the lost coherence.
    """
    return 2.0 - binary_entropy((1.0 + effective_visibility(kappa_abs, k)) / 2.0)


def _mi3_from_x(x):
    """Three-state mutual information (bits, no offset) as a function of the
    visibility x, in the natural-log form with 1/ln 8 prefactor."""
    x = np.asarray(x, dtype=float)
    near_one = 1.0 - x < 1e-12
    safe = np.where(near_one, 0.5, x)
    bracket = (2.0 * safe * np.arctanh(safe)
               + np.log(27.0 / 4.0 * (1.0 - safe))
               + np.log(1.0 + safe))
    return np.where(near_one, np.log2(3.0), bracket / np.log(8.0))


def _mi4_from_x(x):
    """Four-state mutual information (bits, no offset) as a function of the
    visibility x, in the natural-log form with 1/ln 4 prefactor."""
    x = np.asarray(x, dtype=float)
    bracket = xlogy(1.0 - x, 2.0 - 2.0 * x) + xlogy(1.0 + x, 2.0 + 2.0 * x)
    return bracket / np.log(4.0)


def closed_form_mi3(kappa_abs: float, k: float, s: float = 0.0) -> float:
    """Closed-form three-state mutual information in bits, minus the offset s.

    Evaluated at visibility x = kappa_abs**(2+2k); the x -> 1 limit value
    log2(3) - s is returned analytically when 1 - x < 1e-12.
    """
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s}")
    x = effective_visibility(kappa_abs, k)
    return max(0.0, float(_mi3_from_x(x)) - s)


def closed_form_mi4(kappa_abs: float, k: float, s: float = 0.0) -> float:
    """Closed-form four-state mutual information in bits, minus the offset s."""
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s}")
    x = effective_visibility(kappa_abs, k)
    return max(0.0, float(_mi4_from_x(x)) - s)


def closed_form_mi(variant: SchemeVariant, kappa_abs: float, k: float,
                   s: float = 0.0) -> float:
    """Dispatch to the closed form matching the encoding variant."""
    if variant is SchemeVariant.THREE_STATE:
        return closed_form_mi3(kappa_abs, k, s)
    return closed_form_mi4(kappa_abs, k, s)


def _bell_projectors() -> dict[BellLabel, np.ndarray]:
    projectors = {label: bell_state(label) for label in BELL_OUTPUT_ORDER}
    for p in projectors.values():
        p.setflags(write=False)
    return projectors


_PROJECTORS = _bell_projectors()


def simulate_protocol(spec: JointSpectrum, times: DephasingTimes,
                      scheme: EncodingScheme,
                      noise_order: NoiseOrder = NoiseOrder.NOISE_BEFORE_ENCODING,
                      ) -> ConditionalTable:
    """Full density-matrix pipeline from shared state to Bell-outcome table.

    For every alphabet symbol: prepare |Phi+>, apply the sender-side
    dephasing stage before or after the Pauli encoding according to
    ``noise_order``, apply the receiver-side stage with the correlated cross
    term, and project onto the four Bell states.  Rows are Born-rule
    probabilities, independent of the closed-form visibility expressions.
    """
    rows = np.zeros((len(scheme.alphabet), 4))
    for i, symbol in enumerate(scheme.alphabet):
        pauli = PAULI_FOR_BELL[symbol]
        if noise_order is NoiseOrder.NOISE_BEFORE_ENCODING:
            rho = evolve_pre_encoding(spec, times.t_a)
            rho = apply_pauli(rho, pauli, Party.ALICE)
            rho = evolve_post_encoding(rho, spec, times)
        else:
            rho = apply_pauli(bell_state(BellLabel.PHI_PLUS), pauli, Party.ALICE)
            rho = dephase_encoded_state(rho, spec, times)
        for j, outcome in enumerate(BELL_OUTPUT_ORDER):
            rows[i, j] = max(0.0, float(np.trace(_PROJECTORS[outcome] @ rho).real))
    return ConditionalTable(scheme.alphabet, BELL_OUTPUT_ORDER, rows)

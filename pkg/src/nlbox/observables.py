"""The two parties' four-outcome two-qubit measurements and their bit masks.

Each setting is a projective measurement onto an orthonormal basis of the
party's qubit pair.  An outcome carries two sign bits; the label order is
fixed as ++, +-, -+, -- and every basis below is listed in that order.
Masking an observable keeps the first bit, the second bit, or their
product, which always yields a +-1-valued two-qubit observable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import states
from .states import BellLabel

# Outcome labels in canonical order and the sign bits they carry.
OUTCOMES = ("++", "+-", "-+", "--")
OUTCOME_BITS = ((1, 1), (1, -1), (-1, 1), (-1, -1))

# The three masks: keep the first bit, the second bit, or their product.
MASKS = ("10", "01", "11")


def mask_value(outcome: int, mask: str) -> int:
    """Sign assigned to an outcome index under a mask."""
    first, second = OUTCOME_BITS[outcome]
    if mask == "10":
        return first
    if mask == "01":
        return second
    if mask == "11":
        return first * second
    raise ValueError(f"invalid mask {mask!r}, expected one of {MASKS}")


@dataclass(frozen=True)
class FourOutcomeObservable:
    """A four-outcome projective measurement on two qubits."""

    party: str
    setting: int
    projectors: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.projectors) != 4:
            raise ValueError("expected one projector per outcome label")


def _projectors_from_kets(kets) -> tuple[np.ndarray, ...]:
    projs = []
    for ket in kets:
        v = np.asarray(ket, dtype=complex).reshape(-1)
        projs.append(np.outer(v, v.conj()))
    return tuple(projs)


def _alice_kets(setting: int):
    k0, k1 = states.KET_0, states.KET_1
    kp, km = states.KET_PLUS, states.KET_MINUS
    if setting == 0:
        return [np.kron(k0, k0), np.kron(k0, k1), np.kron(k1, k0), np.kron(k1, k1)]
    if setting == 1:
        return [np.kron(kp, kp), np.kron(km, kp), np.kron(kp, km), np.kron(km, km)]
    if setting == 2:
        return [
            states.chi_omega("chi+").amplitudes,
            states.chi_omega("chi-").amplitudes,
            states.chi_omega("omega+").amplitudes,
            states.chi_omega("omega-").amplitudes,
        ]
    raise ValueError(f"setting {setting} outside 0..2")


def _bob_kets(setting: int):
    k0, k1 = states.KET_0, states.KET_1
    kp, km = states.KET_PLUS, states.KET_MINUS
    if setting == 0:
        return [np.kron(k0, kp), np.kron(k0, km), np.kron(k1, kp), np.kron(k1, km)]
    if setting == 1:
        return [np.kron(kp, k0), np.kron(km, k0), np.kron(kp, k1), np.kron(km, k1)]
    if setting == 2:
        return [
            states.bell(BellLabel.PHI_PLUS).amplitudes,
            states.bell(BellLabel.PHI_MINUS).amplitudes,
            states.bell(BellLabel.PSI_PLUS).amplitudes,
            states.bell(BellLabel.PSI_MINUS).amplitudes,
        ]
    raise ValueError(f"setting {setting} outside 0..2")


def alice_observable(setting: int) -> FourOutcomeObservable:
    """Alice's measurement for a setting in 0..2.

    Setting 0 is the computational product basis, setting 1 the diagonal
    product basis (with the mixed outcomes +- and -+ attached to |-+> and
    |+-> respectively), and setting 2 the chi/omega basis.
    """
    return FourOutcomeObservable(
        "alice", setting, _projectors_from_kets(_alice_kets(setting))
    )


def bob_observable(setting: int) -> FourOutcomeObservable:
    """Bob's measurement for a setting in 0..2.

    Setting 0 pairs a computational first qubit with a diagonal second one,
    setting 1 the other way round, and setting 2 is the Bell basis.
    """
    return FourOutcomeObservable(
        "bob", setting, _projectors_from_kets(_bob_kets(setting))
    )


def masked_operator(obs: FourOutcomeObservable, mask: str) -> np.ndarray:
    """The +-1-valued observable obtained by masking the outcome bits."""
    if mask not in MASKS:
        raise ValueError(f"invalid mask {mask!r}, expected one of {MASKS}")
    out = np.zeros_like(obs.projectors[0])
    for outcome in range(4):
        out = out + mask_value(outcome, mask) * obs.projectors[outcome]
    return out

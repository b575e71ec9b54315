"""The sixteen Bell expressions and their evaluation on states and behaviors.

Each expression is a signed sum over a 3x3 grid of setting pairs.  In cell
(i, j) Alice measures her setting i and Bob his setting j; the correlator
multiplies Alice's bits masked by the column mask mu(j) with Bob's bits
masked by the row mask mu(i), where mu = (10, 01, 11).  Every expression
is bounded by 7 for local deterministic models and by 9 algebraically;
each of the sixteen Bell-state products reaches 9 on exactly one
expression.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import observables, states
from .observables import MASKS, mask_value
from .qla import ATOL_STRUCT, StateVector, embed, expectation, tensor

NUM_EXPRESSIONS = 16

# Sign tables come in mirror pairs: expanding the upper signs of a row
# yields the lower-numbered expression, the lower signs the higher one.
# Entries are row-major over cells (0,0) .. (2,2).
_PAIRED_ROWS = (
    ((1, 16), ("pm", "pm", "+", "pm", "pm", "+", "+", "+", "-")),
    ((2, 15), ("pm", "pm", "+", "mp", "pm", "-", "-", "+", "+")),
    ((3, 14), ("pm", "mp", "-", "pm", "pm", "+", "+", "-", "+")),
    ((4, 13), ("pm", "mp", "-", "mp", "pm", "-", "-", "-", "-")),
    ((5, 12), ("pm", "pm", "+", "pm", "mp", "-", "+", "-", "+")),
    ((6, 11), ("pm", "pm", "+", "mp", "mp", "+", "-", "-", "-")),
    ((7, 10), ("pm", "mp", "-", "pm", "mp", "-", "+", "+", "-")),
    ((8, 9), ("pm", "mp", "-", "mp", "mp", "+", "-", "+", "+")),
)


def _expand_sign_tables() -> np.ndarray:
    tables = np.zeros((NUM_EXPRESSIONS, 3, 3), dtype=np.int64)
    expand = {
        "upper": {"pm": 1, "mp": -1, "+": 1, "-": -1},
        "lower": {"pm": -1, "mp": 1, "+": 1, "-": -1},
    }
    for (upper_idx, lower_idx), entries in _PAIRED_ROWS:
        for variant, idx in (("upper", upper_idx), ("lower", lower_idx)):
            row = [expand[variant][e] for e in entries]
            tables[idx - 1] = np.array(row, dtype=np.int64).reshape(3, 3)
    return tables


SIGN_TABLES = _expand_sign_tables()
SIGN_TABLES.flags.writeable = False


def sign_table(index: int) -> np.ndarray:
    """3x3 sign table of expression ``index`` (1-based)."""
    if not 1 <= index <= NUM_EXPRESSIONS:
        raise ValueError(f"expression index {index} outside 1..{NUM_EXPRESSIONS}")
    return SIGN_TABLES[index - 1]


def mask_pattern(i: int, j: int) -> tuple[str, str]:
    """(alice_mask, bob_mask) for cell (i, j) of every expression.

    Alice's mask follows Bob's setting j and vice versa: cell (i, j) uses
    (mu(j), mu(i)) with mu = (10, 01, 11).
    """
    if not (0 <= i <= 2 and 0 <= j <= 2):
        raise ValueError(f"cell ({i}, {j}) outside the 3x3 grid")
    return MASKS[j], MASKS[i]


def _default_pairs(state: StateVector) -> tuple[tuple[int, int], tuple[int, int]]:
    if state.labels == (1, 2, 3, 4):
        return (1, 3), (2, 4)
    if state.labels == (1, 3, 6, 8):
        return (1, 3), (6, 8)
    raise ValueError(
        f"cannot infer measurement pairs for labels {state.labels}; "
        "pass alice_pair and bob_pair explicitly"
    )


def cell_operator(
    i: int,
    j: int,
    alice_pair: tuple[int, int],
    bob_pair: tuple[int, int],
    context: tuple[int, ...],
) -> np.ndarray:
    """Product of the two masked observables of cell (i, j) on a register."""
    alice_mask, bob_mask = mask_pattern(i, j)
    ma = observables.masked_operator(observables.alice_observable(i), alice_mask)
    mb = observables.masked_operator(observables.bob_observable(j), bob_mask)
    return embed(tensor(ma, mb), tuple(alice_pair) + tuple(bob_pair), context)


def correlator_quantum(
    state: StateVector,
    i: int,
    j: int,
    alice_pair: tuple[int, int] | None = None,
    bob_pair: tuple[int, int] | None = None,
) -> float:
    """Masked correlator of cell (i, j) on a four-qubit pure state."""
    if alice_pair is None or bob_pair is None:
        alice_pair, bob_pair = _default_pairs(state)
    op = cell_operator(i, j, alice_pair, bob_pair, state.labels)
    return expectation(state, op)


def beta_quantum(
    state: StateVector,
    index: int,
    alice_pair: tuple[int, int] | None = None,
    bob_pair: tuple[int, int] | None = None,
) -> float:
    """Value of expression ``index`` on a four-qubit pure state."""
    signs = sign_table(index)
    total = 0.0
    for i in range(3):
        for j in range(3):
            total += signs[i, j] * correlator_quantum(state, i, j, alice_pair, bob_pair)
    return total


@dataclass(frozen=True)
class Behavior:
    """Conditional outcome table p(a, b | x, y), indexed [x, y, a, b]."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.probs, dtype=float)
        if arr.shape != (3, 3, 4, 4):
            raise ValueError(f"behavior shape {arr.shape}, expected (3, 3, 4, 4)")
        if arr.min() < -ATOL_STRUCT:
            raise ValueError("behavior has a negative probability")
        sums = arr.sum(axis=(2, 3))
        if np.max(np.abs(sums - 1.0)) > 1e-9:
            raise ValueError("behavior columns are not normalized")
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    def no_signaling_defect(self) -> float:
        """Largest change of either party's marginal across the other's settings."""
        alice = self.probs.sum(axis=3)  # [x, y, a]
        bob = self.probs.sum(axis=2)  # [x, y, b]
        d_alice = np.max(np.abs(alice - alice[:, :1, :]))
        d_bob = np.max(np.abs(bob - bob[:1, :, :]))
        return float(max(d_alice, d_bob))


def behavior_from_state(
    state: StateVector,
    alice_pair: tuple[int, int] | None = None,
    bob_pair: tuple[int, int] | None = None,
) -> Behavior:
    """Joint outcome table induced by measuring a four-qubit pure state."""
    if alice_pair is None or bob_pair is None:
        alice_pair, bob_pair = _default_pairs(state)
    probs = np.zeros((3, 3, 4, 4))
    for x in range(3):
        pa = observables.alice_observable(x).projectors
        for y in range(3):
            pb = observables.bob_observable(y).projectors
            for a in range(4):
                for b in range(4):
                    op = embed(
                        tensor(pa[a], pb[b]),
                        tuple(alice_pair) + tuple(bob_pair),
                        state.labels,
                    )
                    v = op @ state.amplitudes
                    probs[x, y, a, b] = float(np.vdot(state.amplitudes, v).real)
    return Behavior(probs)


def correlator_behavior(behavior: Behavior, i: int, j: int) -> float:
    """Masked correlator of cell (i, j) read off a behavior table."""
    alice_mask, bob_mask = mask_pattern(i, j)
    total = 0.0
    for a in range(4):
        for b in range(4):
            total += (
                mask_value(a, alice_mask)
                * mask_value(b, bob_mask)
                * behavior.probs[i, j, a, b]
            )
    return total


def beta_behavior(behavior: Behavior, index: int) -> float:
    """Value of expression ``index`` on an explicit behavior."""
    signs = sign_table(index)
    total = 0.0
    for i in range(3):
        for j in range(3):
            total += signs[i, j] * correlator_behavior(behavior, i, j)
    return total


def bob_bit_conditionals(behavior: Behavior, i: int, j: int) -> np.ndarray:
    """P(Bob's masked bit = +1 | Alice's outcome) for cell (i, j).

    Entries for Alice outcomes of zero probability are returned as nan.
    On a product of Bell states these conditionals are all 0 or 1: either
    party's full outcome fixes the other's masked bit with certainty.
    """
    _, bob_mask = mask_pattern(i, j)
    cond = np.full(4, np.nan)
    for a in range(4):
        p_a = float(behavior.probs[i, j, a, :].sum())
        if p_a <= ATOL_STRUCT:
            continue
        p_plus = sum(
            behavior.probs[i, j, a, b]
            for b in range(4)
            if mask_value(b, bob_mask) == 1
        )
        cond[a] = p_plus / p_a
    return cond


def matched_state(index: int) -> StateVector:
    """The Bell-state product that reaches 9 on expression ``index``."""
    first, second = states.PRODUCT_LABELS[index - 1]
    return states.four_qubit_product(first, second)

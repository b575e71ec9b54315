"""Seeded simulation of the full run: robot swap, then local measurements.

Reproducibility contract: run ``k`` draws from its own substream, derived
from the user seed as SeedSequence(seed, spawn_key=(k,)).  Within a run
the draw order is fixed: Alice's setting, Bob's setting, the robot's two
Bell results, Alice's outcome, Bob's outcome.  Identical (shots, seed,
sources) therefore reproduce identical event lists, and adding shots
never changes earlier runs.

All outcome draws compare a uniform variate against cumulative Born
probabilities.  The robot's measurements commute with the local ones
(disjoint qubits), so simulating the robot first is a faithful ordering;
the distributions are precomputed once per source choice and are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import observables, states, swap
from .inequalities import mask_pattern, sign_table
from .observables import mask_value
from .qla import StateVector, embed
from .states import BELL_ORDER, BellLabel
from .swap import ROBOT_OUTCOMES, RobotOutcome


@dataclass(frozen=True)
class EventRecord:
    """One full run: settings, local outcomes, and the robot's Bell results."""

    run_id: int
    alice_setting: int
    alice_outcome: int
    bob_setting: int
    bob_outcome: int
    robot: RobotOutcome


class InsufficientSamplesError(ValueError):
    """An estimate needs at least one event in every cell of the 3x3 grid."""

    def __init__(self, cells: list[tuple[int, int]]):
        self.cells = cells
        super().__init__(f"no events in cells {cells}")


def run_rng(seed: int, run_id: int) -> np.random.Generator:
    """The dedicated random substream of one run."""
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(run_id,)))
    )


class ProtocolTables:
    """Exact Born distributions of every stage, for one source choice."""

    def __init__(self, sources: tuple[BellLabel, BellLabel] = swap.DEFAULT_SOURCES):
        self.sources = sources
        initial = states.source_product(*sources)

        # Robot stage: marginal of the (2,5) result and the conditional
        # distribution of the (4,7) result given it.
        joint = swap.robot_outcome_distribution(initial)
        marginal = joint.sum(axis=1)
        conditional = joint / marginal[:, None]
        self.robot_first_cum = np.cumsum(marginal)
        self.robot_second_cum = np.cumsum(conditional, axis=1)

        # Post-robot products on (1,3,6,8), indexed by 4*first + second.
        self.entries = swap.class_map(sources)
        self.class_states: list[StateVector] = [
            swap.resulting_state_vector(e) for e in self.entries
        ]

        context = swap.KEPT_QUBITS
        alice_projs = [
            [
                embed(p, swap.ALICE_PAIR, context)
                for p in observables.alice_observable(x).projectors
            ]
            for x in range(3)
        ]
        bob_projs = [
            [
                embed(p, swap.BOB_PAIR, context)
                for p in observables.bob_observable(y).projectors
            ]
            for y in range(3)
        ]

        # Alice's outcome distribution and Bob's conditional on her result.
        self.alice_cum = np.zeros((16, 3, 4))
        self.bob_cum = np.zeros((16, 3, 4, 3, 4))
        for c, state in enumerate(self.class_states):
            psi = state.amplitudes
            for x in range(3):
                probs_a = np.array(
                    [float(np.vdot(psi, p @ psi).real) for p in alice_projs[x]]
                )
                self.alice_cum[c, x] = np.cumsum(probs_a)
                for a in range(4):
                    if probs_a[a] <= 0.0:
                        self.bob_cum[c, x, a] = 1.0
                        continue
                    collapsed = (alice_projs[x][a] @ psi) / np.sqrt(probs_a[a])
                    for y in range(3):
                        probs_b = np.array(
                            [
                                float(np.vdot(collapsed, p @ collapsed).real)
                                for p in bob_projs[y]
                            ]
                        )
                        self.bob_cum[c, x, a, y] = np.cumsum(probs_b)


def _pick(cum: np.ndarray, rand: float) -> int:
    """Smallest index whose cumulative probability exceeds the variate."""
    return int(min(np.searchsorted(cum, rand, side="right"), cum.size - 1))


def sample_events(
    shots: int,
    seed: int,
    sources: tuple[BellLabel, BellLabel] = swap.DEFAULT_SOURCES,
    tables: ProtocolTables | None = None,
) -> list[EventRecord]:
    """Simulate ``shots`` full runs of the protocol."""
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    if tables is None or tables.sources != sources:
        tables = ProtocolTables(sources)
    events = []
    for run_id in range(shots):
        rng = run_rng(seed, run_id)
        x = int(rng.integers(0, 3))
        y = int(rng.integers(0, 3))
        r1 = _pick(tables.robot_first_cum, rng.random())
        r2 = _pick(tables.robot_second_cum[r1], rng.random())
        c = 4 * r1 + r2
        a = _pick(tables.alice_cum[c, x], rng.random())
        b = _pick(tables.bob_cum[c, x, a, y], rng.random())
        events.append(
            EventRecord(
                run_id=run_id,
                alice_setting=x,
                alice_outcome=a,
                bob_setting=y,
                bob_outcome=b,
                robot=RobotOutcome(BELL_ORDER[r1], BELL_ORDER[r2]),
            )
        )
    return events


def sort_events(events: list[EventRecord]) -> dict[RobotOutcome, list[EventRecord]]:
    """Partition events by robot outcome; all 16 classes are always present."""
    classes: dict[RobotOutcome, list[EventRecord]] = {
        outcome: [] for outcome in ROBOT_OUTCOMES
    }
    for event in events:
        classes[event.robot].append(event)
    return classes


def event_masked_product(event: EventRecord) -> int:
    """The +-1 product of the masked bits of one event's cell."""
    alice_mask, bob_mask = mask_pattern(event.alice_setting, event.bob_setting)
    return mask_value(event.alice_outcome, alice_mask) * mask_value(
        event.bob_outcome, bob_mask
    )


def estimate_beta(
    events: list[EventRecord], index: int
) -> tuple[float, np.ndarray]:
    """Estimate an expression value from events of a single class.

    Returns the estimate and the 3x3 matrix of per-cell event counts.
    Raises InsufficientSamplesError when any cell has no event at all;
    an empty cell cannot be silently skipped without biasing the sum.
    """
    sums = np.zeros((3, 3))
    counts = np.zeros((3, 3), dtype=np.int64)
    for event in events:
        i, j = event.alice_setting, event.bob_setting
        sums[i, j] += event_masked_product(event)
        counts[i, j] += 1
    empty = [(i, j) for i in range(3) for j in range(3) if counts[i, j] == 0]
    if empty:
        raise InsufficientSamplesError(empty)
    signs = sign_table(index)
    beta_hat = float(np.sum(signs * (sums / counts)))
    return beta_hat, counts

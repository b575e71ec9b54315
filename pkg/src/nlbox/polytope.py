"""Local deterministic polytope: bounds, vertices, and facet certificates.

The scenario has two parties, three settings each, four outcomes each, so
a party has 4**3 = 64 deterministic strategies and the local polytope has
4096 vertices.  Everything here is exact: expression values over
strategies are integer arithmetic, and ranks are computed by fraction-free
integer elimination, never floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import inequalities, observables
from .inequalities import NUM_EXPRESSIONS, beta_quantum, matched_state, sign_table

NUM_PARTY_STRATEGIES = 64
NUM_JOINT_STRATEGIES = NUM_PARTY_STRATEGIES**2


@dataclass(frozen=True)
class DeterministicStrategy:
    """One deterministic outcome assignment per party, setting -> outcome."""

    alice: tuple[int, int, int]
    bob: tuple[int, int, int]


@dataclass(frozen=True)
class FacetReport:
    index: int
    lhv_max: int
    polytope_affine_dim: int
    saturator_affine_dim: int
    num_saturators: int
    is_facet: bool


def party_strategies() -> tuple[tuple[int, int, int], ...]:
    """All 64 single-party strategies, in lexicographic order."""
    return tuple(itertools.product(range(4), repeat=3))


def enumerate_strategies():
    """Iterate all 4096 joint deterministic strategies (Alice-major order)."""
    singles = party_strategies()
    for alice in singles:
        for bob in singles:
            yield DeterministicStrategy(alice, bob)


@lru_cache(maxsize=1)
def _mask_tables() -> tuple[np.ndarray, np.ndarray]:
    """Per-party masked sign tables.

    ta[f, i, j] is Alice's masked sign in cell (i, j) when her strategy f
    answers setting i; tb[g, i, j] is Bob's counterpart for setting j.
    """
    singles = party_strategies()
    ta = np.zeros((NUM_PARTY_STRATEGIES, 3, 3), dtype=np.int64)
    tb = np.zeros((NUM_PARTY_STRATEGIES, 3, 3), dtype=np.int64)
    for s, strat in enumerate(singles):
        for i in range(3):
            for j in range(3):
                alice_mask, bob_mask = inequalities.mask_pattern(i, j)
                ta[s, i, j] = observables.mask_value(strat[i], alice_mask)
                tb[s, i, j] = observables.mask_value(strat[j], bob_mask)
    return ta, tb


def strategy_beta_matrix(signs: np.ndarray) -> np.ndarray:
    """Expression values for an arbitrary 3x3 sign table on all strategies.

    Returns a 64x64 integer matrix indexed [alice strategy, bob strategy].
    """
    signs = np.asarray(signs, dtype=np.int64)
    if signs.shape != (3, 3):
        raise ValueError(f"sign table shape {signs.shape}, expected (3, 3)")
    ta, tb = _mask_tables()
    weighted = (ta * signs).reshape(NUM_PARTY_STRATEGIES, 9)
    return weighted @ tb.reshape(NUM_PARTY_STRATEGIES, 9).T


@lru_cache(maxsize=NUM_EXPRESSIONS)
def _beta_matrix(index: int) -> np.ndarray:
    mat = strategy_beta_matrix(sign_table(index))
    mat.flags.writeable = False
    return mat


def lhv_bound(index: int) -> tuple[int, DeterministicStrategy]:
    """Exact deterministic maximum of an expression and a witness strategy."""
    mat = _beta_matrix(index)
    flat = int(np.argmax(mat))
    f, g = divmod(flat, NUM_PARTY_STRATEGIES)
    singles = party_strategies()
    witness = DeterministicStrategy(singles[f], singles[g])
    return int(mat[f, g]), witness


def lhv_value(index: int, strategy: DeterministicStrategy) -> int:
    """Exact expression value of one deterministic strategy."""
    signs = sign_table(index)
    total = 0
    for i in range(3):
        for j in range(3):
            alice_mask, bob_mask = inequalities.mask_pattern(i, j)
            total += int(signs[i, j]) * observables.mask_value(
                strategy.alice[i], alice_mask
            ) * observables.mask_value(strategy.bob[j], bob_mask)
    return total


def ns_bound(index: int, atol: float = 1e-9) -> int:
    """Algebraic maximum of an expression, checked to be quantum-attainable.

    The bound is the sum of the absolute sign entries.  The matched
    Bell-state product must reach it; a miss signals a construction bug.
    """
    bound = int(np.abs(sign_table(index)).sum())
    attained = beta_quantum(matched_state(index), index)
    if abs(attained - bound) > atol:
        raise RuntimeError(
            f"expression {index}: matched state reaches {attained}, "
            f"expected the algebraic bound {bound}"
        )
    return bound


@lru_cache(maxsize=1)
def vertex_matrix() -> np.ndarray:
    """All 4096 vertex behaviors as rows of a 0/1 matrix.

    Row order matches the flattening of the 64x64 strategy grid
    (Alice-major).  Column layout: cell (x, y) contributes the 16 entries
    p(a, b | x, y) at offset 16*(3x + y) + 4a + b.
    """
    singles = party_strategies()
    onehot = np.zeros((NUM_PARTY_STRATEGIES, 3, 4), dtype=np.int64)
    for s, strat in enumerate(singles):
        for setting in range(3):
            onehot[s, setting, strat[setting]] = 1
    rows = np.zeros((NUM_JOINT_STRATEGIES, 144), dtype=np.int64)
    joint = 0
    for f in range(NUM_PARTY_STRATEGIES):
        for g in range(NUM_PARTY_STRATEGIES):
            cells = np.einsum("xa,yb->xyab", onehot[f], onehot[g])
            rows[joint] = cells.reshape(-1)
            joint += 1
    rows.flags.writeable = False
    return rows


def integer_rank(mat: np.ndarray) -> int:
    """Exact rank over the rationals of an integer matrix.

    Fraction-free Gaussian elimination with gcd normalization; rows are
    promoted to Python integers if entries would overflow 64-bit products,
    so the result is never a floating-point estimate.
    """
    a = np.array(mat, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        prow = a[rank].copy()
        pval = int(prow[col])
        below = a[rank + 1 :]
        coeffs = below[:, col]
        hit = coeffs != 0
        if hit.any():
            # int64 products must stay below 2**62; the guard promotes to
            # arbitrary precision instead of wrapping around.  The bound is
            # computed in Python integers so it cannot itself overflow.
            bound = int(np.abs(below[hit]).max()) * abs(pval) + int(
                np.abs(coeffs[hit]).max()
            ) * int(np.abs(prow).max())
            if a.dtype == np.int64 and bound >= 2**62:
                a = a.astype(object)
                prow = a[rank].copy()
                below = a[rank + 1 :]
                coeffs = below[:, col]
            below[hit] = below[hit] * pval - np.outer(coeffs[hit], prow)
            if a.dtype == np.int64:
                reduced = np.abs(below[hit])
                big = reduced.max(axis=1) >= 2**20
                if big.any():
                    idx = np.nonzero(hit)[0][big]
                    g = np.gcd.reduce(np.abs(below[idx]), axis=1)
                    g[g == 0] = 1
                    below[idx] //= g[:, None]
        rank += 1
    return rank


def affine_dimension(points: np.ndarray) -> int:
    """Affine dimension of a set of integer points (rank of differences)."""
    points = np.asarray(points)
    if points.shape[0] == 0:
        raise ValueError("no points given")
    if points.shape[0] == 1:
        return 0
    return integer_rank(points[1:] - points[0])


@lru_cache(maxsize=1)
def polytope_affine_dim() -> int:
    """Affine dimension of the local polytope, from all 4096 vertices."""
    return affine_dimension(vertex_matrix())


def saturating_vertices(index: int) -> np.ndarray:
    """Vertex rows whose expression value equals the deterministic maximum."""
    mat = _beta_matrix(index)
    bound, _ = lhv_bound(index)
    mask = (mat == bound).reshape(-1)
    return vertex_matrix()[mask]


def facet_check(index: int) -> FacetReport:
    """Certify whether an expression supports a facet of the local polytope.

    The expression is a facet iff its saturating vertices span an affine
    subspace of dimension exactly one less than the polytope's.
    """
    bound, _ = lhv_bound(index)
    sat = saturating_vertices(index)
    if sat.shape[0] == 0:
        raise RuntimeError(f"expression {index} has no saturating vertex")
    d = polytope_affine_dim()
    sat_dim = affine_dimension(sat)
    return FacetReport(
        index=index,
        lhv_max=bound,
        polytope_affine_dim=d,
        saturator_affine_dim=sat_dim,
        num_saturators=int(sat.shape[0]),
        is_facet=sat_dim == d - 1,
    )

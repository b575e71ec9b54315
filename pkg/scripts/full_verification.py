"""End-to-end verification report, printed for a human reader.

Covers the same ground as the test suite but in one pass: the 256
reference expression values, deterministic and algebraic bounds with
facet certificates, the swap class map, the premeasurement marginal,
and a seeded sampling run.  Exits nonzero if any section fails.

Usage: python scripts/full_verification.py [--shots N] [--seed S]
"""

import argparse
import sys
import time

import numpy as np

from nlbox import cli, inequalities, polytope, sampler, swap
from nlbox.inequalities import NUM_EXPRESSIONS, beta_quantum, matched_state


def check_reference_values() -> bool:
    reference = np.array(cli.load_reference_table()["values"], dtype=float)
    start = time.perf_counter()
    worst = 0.0
    for row in range(16):
        state = matched_state(row + 1)
        for col in range(16):
            value = beta_quantum(state, col + 1)
            worst = max(worst, abs(value - reference[row, col]))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9
    print(f"  256 values recomputed in {elapsed:.2f}s, max error {worst:.2e}")
    return ok


def check_bounds() -> bool:
    ok = True
    d = polytope.polytope_affine_dim()
    print(f"  local polytope affine dimension: {d}")
    for k in range(1, NUM_EXPRESSIONS + 1):
        report = polytope.facet_check(k)
        ns = polytope.ns_bound(k)
        line = (
            f"  expression {k:2d}: lhv_max={report.lhv_max} ns={ns} "
            f"saturators={report.num_saturators:4d} "
            f"sat_dim={report.saturator_affine_dim} facet={report.is_facet}"
        )
        print(line)
        ok = ok and report.lhv_max == 7 and ns == 9 and report.is_facet
    return ok


def check_swap_map() -> bool:
    entries = swap.class_map()
    ok = True
    for entry in entries:
        beta = swap.matched_beta(entry)
        r1, r2 = entry.outcome.codes
        s1, s2 = (label.code for label in entry.resulting_state)
        print(
            f"  robot ({r1},{r2}) -> state ({s1},{s2})  "
            f"expression {entry.matched_inequality:2d}  "
            f"p={entry.probability:.6f}  beta={beta:.6f}"
        )
        ok = ok and abs(entry.probability - 1 / 16.0) <= 1e-10
        ok = ok and abs(beta - 9.0) <= 1e-9
    matched = sorted(e.matched_inequality for e in entries)
    ok = ok and matched == list(range(1, 17))
    return ok


def check_marginal() -> bool:
    rho = swap.premeasurement_marginal()
    err = float(np.max(np.abs(rho.entries - np.eye(16) / 16.0)))
    print(f"  marginal of (1,3,6,8) vs I/16: max deviation {err:.2e}")
    totals = []
    for k in range(1, NUM_EXPRESSIONS + 1):
        signs = inequalities.sign_table(k)
        total = 0.0
        for i in range(3):
            for j in range(3):
                op = inequalities.cell_operator(
                    i, j, swap.ALICE_PAIR, swap.BOB_PAIR, swap.KEPT_QUBITS
                )
                total += signs[i, j] * float(
                    np.trace(rho.entries @ op).real
                )
        totals.append(total)
    worst = max(abs(t) for t in totals)
    print(f"  all 16 expressions on the marginal: max |beta| = {worst:.2e}")
    return err <= 1e-10 and worst <= 1e-9


def check_sampling(shots: int, seed: int) -> bool:
    start = time.perf_counter()
    events = sampler.sample_events(shots, seed)
    elapsed = time.perf_counter() - start
    classes = sampler.sort_events(events)
    by_outcome = {e.outcome: e for e in swap.class_map()}
    violations = 0
    exact = 0
    for outcome, members in classes.items():
        entry = by_outcome[outcome]
        signs = inequalities.sign_table(entry.matched_inequality)
        for event in members:
            i, j = event.alice_setting, event.bob_setting
            if sampler.event_masked_product(event) != signs[i, j]:
                violations += 1
        beta_hat, _ = sampler.estimate_beta(members, entry.matched_inequality)
        if beta_hat == 9.0:
            exact += 1
    print(
        f"  {shots} shots in {elapsed:.2f}s (seed {seed}): "
        f"{violations} saturation violations, "
        f"{exact}/16 class estimates equal to 9.0 exactly"
    )
    return violations == 0 and exact == 16


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--shots", type=int, default=20000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    sections = [
        ("reference expression values", check_reference_values),
        ("deterministic / algebraic bounds and facets", check_bounds),
        ("swap class map", check_swap_map),
        ("premeasurement marginal", check_marginal),
        ("seeded sampling", lambda: check_sampling(args.shots, args.seed)),
    ]
    failures = []
    for title, check in sections:
        print(f"[{title}]")
        if check():
            print("  OK")
        else:
            print("  FAILED")
            failures.append(title)
        print()
    if failures:
        print(f"FAILED sections: {', '.join(failures)}")
        return 1
    print("all sections passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Dense sweep of the construction verifiers over order and family parameter.

The bundled `wracah report` command checks a fixed grid; this script walks a
denser, configurable one and prints the worst residual seen per suite, which
is handy when hunting for parameter regions that stress the numerics.
"""

import argparse
import math
import sys
import time

from wracah import (
    HalfInt,
    ShiftParams,
    quon_operators,
    verify_quon_relations,
    verify_shift_eigenbasis,
    verify_sine_algebra,
    verify_su2,
)


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k-max", type=int, default=9, help="largest order to test (default 9)")
    p.add_argument("--r-steps", type=int, default=12, help="r samples per unit interval")
    p.add_argument("--r-span", type=float, default=4.0, help="sweep r in [0, span)")
    p.add_argument(
        "--irrational",
        action="store_true",
        help="offset every r sample by 1/pi to leave the rational lattice",
    )
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    offset = 1.0 / math.pi if args.irrational else 0.0
    rs = [i / args.r_steps + offset for i in range(int(args.r_span * args.r_steps))]

    worst = {}
    failures = 0
    t0 = time.time()
    for k in range(2, args.k_max + 1):
        quon = verify_quon_relations(quon_operators(k))
        worst["quon"] = max(worst.get("quon", 0.0), quon.max_residual)
        failures += not quon.passed
        for r in rs:
            for rep in (
                verify_su2(ShiftParams(k, r)),
                verify_shift_eigenbasis(HalfInt(k - 1), r),
            ):
                worst[rep.suite] = max(worst.get(rep.suite, 0.0), rep.max_residual)
                if not rep.passed:
                    failures += 1
                    bad = [c.name for c in rep.checks if not c.passed]
                    print(f"FAIL {rep.suite} k={k} r={r}: {bad}")
        if k in (3, 5):
            for r in rs[:: max(1, len(rs) // 4)]:
                rep = verify_sine_algebra(ShiftParams(k, r), index_range=range(-2, 3))
                worst[rep.suite] = max(worst.get(rep.suite, 0.0), rep.max_residual)
                failures += not rep.passed

    print(f"\nswept k = 2..{args.k_max}, {len(rs)} r values in {time.time() - t0:.1f}s")
    for suite in sorted(worst):
        print(f"  {suite:20s} worst residual {worst[suite]:.3e}")
    if failures:
        print(f"{failures} suite(s) FAILED")
        return 1
    print("all suites passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())

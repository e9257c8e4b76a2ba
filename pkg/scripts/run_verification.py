#!/usr/bin/env python3
"""Run the full verification battery over the built-in instances.

Equivalent to ``twistres verify`` but prints a compact per-instance table
with timings, suitable for leaving running after changes to the kernel.
"""

import argparse
import sys
import time

from twistres.instances import BUILTIN_NAMES, builtin_instance
from twistres.suite import group_closed_form_reports, run_suite


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", nargs="*", default=list(BUILTIN_NAMES))
    parser.add_argument("--field", default=None)
    parser.add_argument("--hdeg", type=int, default=None)
    parser.add_argument("--gdeg", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    failures = 0
    grand_start = time.perf_counter()
    for name in args.instances:
        t0 = time.perf_counter()
        instance = builtin_instance(name, field=args.field,
                                    hdeg=args.hdeg, gdeg=args.gdeg)
        reports = run_suite(instance, hdeg=args.hdeg, gdeg=args.gdeg,
                            seed=args.seed)
        if instance.action is not None and name != "corrupted-twist":
            reports.extend(group_closed_form_reports(instance))
        bad = [r for r in reports if not r.ok]
        failures += len(bad)
        elapsed = time.perf_counter() - t0
        print(f"{name:<18} {len(reports):>3} checks  "
              f"{len(bad):>2} unexpected  {elapsed:7.1f}s")
        for r in bad:
            print("   " + r.line())
    total = time.perf_counter() - grand_start
    print(f"total: {total:.1f}s, unexpected outcomes: {failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

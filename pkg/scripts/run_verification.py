#!/usr/bin/env python3
"""Run a verification suite and print the report; exits 1 on any failing check.

Usage: python scripts/run_verification.py [trees|forests|identities|all] [jobs]
"""

import sys
import time

from mckaygraphs.verify import SUITES, run_suite


def main() -> int:
    suite = sys.argv[1] if len(sys.argv) > 1 else "all"
    jobs = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    if suite not in SUITES:
        print(f"unknown suite {suite!r}; choose from {SUITES}", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    report = run_suite(suite, jobs=jobs)
    print(report.render_text())
    print(f"total wall time: {time.perf_counter() - t0:.1f}s")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())

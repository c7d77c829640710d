"""Run every verification suite with default settings and summarize."""
import sys
import time

from kahlerstar.suites import SUITES, SuiteConfig, run_suite

failed = 0
for name in SUITES:
    t0 = time.perf_counter()
    reports = run_suite(name, SuiteConfig())
    bad = [r for r in reports if not r.passed]
    failed += len(bad)
    print(f"{name:<24} {len(reports) - len(bad):>3}/{len(reports):<3} {time.perf_counter() - t0:6.1f}s")
    for r in bad:
        print("   ", r.line())
sys.exit(1 if failed else 0)

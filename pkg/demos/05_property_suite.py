"""Running the randomized property suite.

Every invariant the library promises is exercised on seeded random trees
and measures; a failing property would carry a shrunk, reproducible
counterexample. The same suite backs the `treeradon verify` command.
"""

from treeradon import SuiteConfig, run_suite

config = SuiteConfig(seed=2024, trials=15, max_vertices=9, max_atoms=4)
report = run_suite(config)

width = max(len(r.name) for r in report.properties)
for result in report.properties:
    status = "ok" if result.failures == 0 else "FAIL"
    print(f"{status:4s} {result.name:<{width}} {result.passes}/{result.trials}")
    if result.counterexample:
        print("     counterexample:", result.counterexample)

print(f"\nsuite {'passed' if report.ok else 'FAILED'} "
      f"({report.duration_seconds:.2f}s, seed {report.seed})")

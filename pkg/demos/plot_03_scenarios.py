"""
Filtration obstructions, branch by branch
=========================================

Each scripted scenario runs its checks on every branch of the available
decomposition data.  A scenario counts as obstructed only when every
branch is.
"""

from weylforge import tmc_scenario
from weylforge.filtrate import SCENARIOS

for sid in SCENARIOS:
    v = tmc_scenario(sid)
    print(f"{sid:12s} {v.overall:26s} fixture-dependent={v.fixture_dependent}")
    for b in v.branches:
        print("    ", b.label, "->", b.witness)

# the full report for one scenario
print()
print(tmc_scenario("C3p3").report())

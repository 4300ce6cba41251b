"""
Cross-checking against brute force
==================================

The brute-force counter works on a flat frame of monomials and shares
nothing with the Groebner machinery except the parser.
"""

import time

from polarmult import fixtures
from polarmult.hilbert import hilbert_table
from polarmult.oracle import all_suites, brute_hilbert

p = fixtures.load("twisted-module")
table = hilbert_table(p.module_object(), 0, 0, 5, 1)
bad = [k for k, val in table.values.items() if brute_hilbert(p, *k) != val]
print(f"twisted-module: {len(table.values)} cells, {len(bad)} mismatches")

t0 = time.perf_counter()
for report in all_suites(trials=10, seed=1):
    print(report.summary())
    for failure in report.failures[:3]:
        print("   ", failure["detail"])
print(f"total {time.perf_counter() - t0:.1f}s")

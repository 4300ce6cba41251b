"""
Polar vectors of small graded algebras
======================================

Tables of lengths, the fitted vectors, and the second route through
general sequences.  Run with ``python3 demos/polar_vectors.py``.
"""

from polarmult import fixtures
from polarmult.graded import polynomial_ring
from polarmult.hilbert import hilbert_table
from polarmult.polar import polar_vector
from polarmult.svlength import cross_validate

# R[x, y] over R = Q[u] localized at (u): length of B_v / m^(n+1) B_v
B = polynomial_ring(["u"], ["x", "y"])
table = hilbert_table(B, 0, 0, 4, 1)
for v in range(5):
    print(v, [table.values[(v, n)] for n in range(5)])

print("R[x, y]:", polar_vector(B).as_list())

# a few corpus entries, with both routes
for name in ["line", "cross", "degenerate-plane", "twisted-module"]:
    M = fixtures.load(name).module_object()
    cv = cross_validate(M, [0, 1, 2])
    print(f"{name:18} {cv.reference.as_list()}  routes agree: {cv.all_agree}")

# over a field only the first entry survives
for name in ["field-line", "field-plane", "double-line"]:
    print(name, polar_vector(fixtures.load(name).module_object()).as_list())

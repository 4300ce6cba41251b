"""
Integrality, birationality and reductions
=========================================

Each verdict carries the vectors it was decided from.
"""

from polarmult import fixtures
from polarmult.criteria import buchsbaum_rim, check_birational, check_integral, check_reduction_module


def show(label, verdict):
    print(f"{label}: {verdict.outcome} ({verdict.reason})")
    for key, vec in verdict.vectors().items():
        print(f"    {key} = {vec.as_list()}")


p = fixtures.load("scaled-line")
show("R[ux] in R[x]", check_integral(p.subalgebra(), p.algebra()))

p = fixtures.load("double-line")
show("k[y] in k[x,y]/(x^2), integral", check_integral(p.subalgebra(), p.algebra()))
show("k[y] in k[x,y]/(x^2), birational", check_birational(p.subalgebra(), p.algebra()))

# Buchsbaum-Rim vectors of m and m^2 in Q[u1, u2]
print("br(m)   =", buchsbaum_rim(fixtures.load("rees-m").pair()).as_list())
print("br(m^2) =", buchsbaum_rim(fixtures.load("rees-m2").pair()).as_list())

show("(u1^2, u2^2) in m^2", check_reduction_module(fixtures.load("module-reduction").pair()))
show("m^2 in m", check_reduction_module(fixtures.load("module-non-reduction").pair()))

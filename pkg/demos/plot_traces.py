"""
Partition numbers from singular moduli
======================================

Sum the non-holomorphic function P over the level 6 Heegner points of
discriminant 1 - 24n and divide by 24n - 1.  Then put the traces and the
Rademacher expansions of J_d together to rebuild Z_3.
"""

import mpmath

from extremal.modular import zk_build
from extremal.singular_moduli import corollary2_assemble, enumerate_forms, trace_P

print("forms for n = 1:", [(f.a, f.b, f.c) for f in enumerate_forms(1)])

for n in (1, 2, 5, 10):
    tr = trace_P(n)
    print(f"n={n:2d}: {tr.class_count} points, Tr/(24n-1) = {float(tr.scaled):.12f} -> {tr.p_candidate}")

num = corollary2_assemble(3, 6)
exact = zk_build(3, 7).series
for e in range(-3, 7):
    print(f"q^{e:<2d} {mpmath.nstr(num[e], 30):>34}  {exact[e]}")

"""
Exact formulas as convergent sums
=================================

Partition numbers from the Rademacher series and coefficients of J_d
from Kloosterman-Bessel sums.  Each value is accepted only when it lies
within 1/4 of an integer.
"""

from extremal.modular import faber_and_jd
from extremal.rademacher import jd_coeff_rademacher, p_rademacher
from extremal.series import partition_numbers

p = partition_numbers(100)
for n in (1, 10, 50, 100):
    est = p_rademacher(n)
    print(f"p({n}) ~ {float(est.value):.6f} -> {est.nearest} (exact {p[n]}), {est.terms} terms")

_, jds = faber_and_jd(3, 4)
for d, n in ((1, 1), (2, 1), (3, 2)):
    est = jd_coeff_rademacher(d, n)
    print(f"J_{d} at q^{n}: {est.nearest}, exact {jds[d][n]}, off by {float(est.distance):.3g}")

"""
Extremal partition functions as polynomials in J
================================================

Build Z_1 .. Z_5, print their polynomial in J and the first few
coefficients, and confirm the leading block matches partitions into
parts of size at least 2.
"""

from extremal.modular import zk_build
from extremal.series import restricted_partition_series

for k in range(1, 6):
    z = zk_build(k, 6)
    print(f"Z_{k} = {str(z.jpoly_J).replace('X', 'J')}")
    print("   w_k(n), n = -k..5:", z.series.coefficients(-k, 6))

# the principal part is q^-k times the parts >= 2 generating function
r = restricted_partition_series(6)
print("parts >= 2:", r.coefficients(0, 6))

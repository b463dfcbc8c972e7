"""
Faber polynomials two ways
==========================

F_d(X) comes out of greedy reduction against powers of J, and again as
the q^d coefficient of the generating function with polynomial
coefficients.  The Hecke route reproduces J_d as a third check.
"""

from extremal.modular import faber_and_jd, jd_via_hecke, omega_series

fabers, jds = faber_and_jd(6, 12)
omega = omega_series(6)

for d, (f, o) in enumerate(zip(fabers, omega)):
    print(f"F_{d}(X) = {f}", "(agrees)" if f == o else "(MISMATCH)")

# J_3 from T_3 applied to J
h = jd_via_hecke(3, 12)
print("J_3 coefficients q^1..q^4:", h.coefficients(1, 5))
print("same as greedy route:", h.agrees_with(jds[3]))

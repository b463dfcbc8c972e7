"""
Ramanujan-type congruences for w_k(pn)
======================================

Check every admissible k for p = 2, 3, 5 at the Sturm bound, then look at
the weight 12kp witness form after U(p).
"""

from extremal.congruences import admissible_k, modulus_for, sturm_witness, verify_theorem3

for p in (2, 3, 5):
    m = modulus_for(p)
    for k in admissible_k(p):
        rep = verify_theorem3(p, k)
        print(f"p={p:2d} k={k}: mod {m:5d}, {rep.bound:4d} terms,", "ok" if rep.ok else rep.failures[:3])

# Z_k * Delta(p tau)^{kp} | U(p), constant term of Z_k removed
w = sturm_witness(3, 2)
print("witness (3, 2), first 10 residues:", w.coefficients(0, 10))

"""Atkin U(p) and verification of the Ramanujan-type congruences for Z_k."""

from __future__ import annotations

from dataclasses import dataclass, field

from .modular import zk_series
from .series import QSeries, ResidueSeries, delta_series

MODULI = {2: 2**11, 3: 3**5, 5: 5**2, 7: 7, 11: 11}


def modulus_for(p):
    """Modulus of the congruence ``w_k(pn) = 0`` for the prime ``p``."""
    try:
        return MODULI[p]
    except KeyError:
        raise ValueError(f"no congruence recorded for p={p}; expected one of {sorted(MODULI)}") from None


def admissible_k(p):
    """The indices ``k`` covered for ``p``: ``1..p-1`` and ``p+1``."""
    modulus_for(p)
    return list(range(1, p)) + [p + 1]


def sturm_bound(p, k):
    """Number of terms ``k p (p+1)`` that settles the congruence for ``(p, k)``."""
    return k * p * (p + 1)


def _ceil_div(a, b):
    return -(-a // b)


def u_operator(f, p):
    """``sum a(n) q^n  ->  sum a(pn) q^n``.

    Works for :class:`QSeries` and :class:`ResidueSeries`.  The new window is
    ``ceil(valuation/p) .. ceil(order/p)``, the exponents ``n`` whose ``pn``
    lies in the old window.
    """
    if p < 1:
        raise ValueError("p must be positive")
    lo = _ceil_div(f.valuation, p)
    if f.order is None:
        hi = (f.valuation + len(f.coeffs) - 1) // p + 1 if f.coeffs else lo
    else:
        hi = _ceil_div(f.order, p)
    hi = max(hi, lo)
    return f._new([f[p * n] for n in range(lo, hi)], lo, f.order if f.order is None else hi)


@dataclass
class CongruenceReport:
    p: int
    k: int
    modulus: int
    bound: int
    failures: list = field(default_factory=list)
    negative_checked: int = 0

    @property
    def ok(self):
        return not self.failures


def check_congruence(z, p, k, n_max):
    """Record every ``n != 0`` with ``-k <= pn`` and ``n <= n_max`` where
    ``w(pn)`` is not divisible by the modulus for ``p``."""
    m = modulus_for(p)
    u = u_operator(z, p)
    report = CongruenceReport(p, k, m, n_max)
    for n in range(_ceil_div(-k, p), n_max + 1):
        if n == 0:
            continue
        if n < 0:
            report.negative_checked += 1
        r = u[n] % m
        if r:
            report.failures.append((n, r))
    return report


def verify_theorem3(p, k, n_max=None, z=None):
    """Check ``w_k(pn) = 0 (mod m_p)`` for ``1 <= n <= n_max`` and all negative ``n``.

    ``n_max`` defaults to ``k p (p+1)``.  ``z`` may supply a precomputed
    (or deliberately altered) series for Z_k.
    """
    if k not in admissible_k(p):
        raise ValueError(f"k={k} is not covered for p={p}")
    if n_max is None:
        n_max = sturm_bound(p, k)
    if z is None:
        z = zk_series(k, p * n_max + 1)
    return check_congruence(z, p, k, n_max)


def sturm_witness(p, k, N=None, subtract_constant=True):
    """``(Z_k * Delta(p tau)^{kp}) | U(p)`` reduced mod ``m_p``, for ``p`` in 2, 3, 5.

    The product is a holomorphic form of weight ``12kp`` on Gamma_0(p); the
    coefficients of ``q^0 .. q^{kp(p+1)}`` after ``U(p)`` are returned
    (``N`` overrides the count).  With ``subtract_constant`` the constant term
    ``w_k(0)`` is removed from Z_k first; it is not covered by the
    congruence and is nonzero for every ``k >= 2``.
    """
    if p not in (2, 3, 5):
        raise ValueError("Sturm witness is only used for p in 2, 3, 5")
    if k not in admissible_k(p):
        raise ValueError(f"k={k} is not covered for p={p}")
    m = modulus_for(p)
    count = sturm_bound(p, k) + 1 if N is None else N
    order = p * count
    e = k * p
    z = zk_series(k, order - e * p + 1)
    if subtract_constant:
        z = z - z[0]
    rel = (order + k) // p + 1
    dp = (delta_series(rel).reduce(m) ** e).truncate(rel).scale(p)
    prod = z.reduce(m) * dp
    return u_operator(prod.truncate(order), p)

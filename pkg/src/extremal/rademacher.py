"""Kloosterman sums, modified Bessel functions and Rademacher-type exact formulas.

All high-precision work uses :mod:`mpmath` at an explicit working precision
(``prec``, in bits).  A truncated series is only trusted when the
integrality gate passes: the value must lie within 0.25 of an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from mpmath import mp, mpf

GATE = 0.25
GUARD_BITS = 20
# terms whose magnitude stays below 2**FLOAT_TERM_BITS are summed in double precision
FLOAT_TERM_BITS = 30


class InconclusiveError(ArithmeticError):
    """A truncated numerical sum failed its integrality gate."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass
class RademacherEstimate:
    value: mpf
    nearest: int
    terms: int
    last_term: mpf
    prec: int

    @property
    def distance(self):
        with mp.workprec(self.prec):
            return abs(self.value - self.nearest)

    @property
    def gate_ok(self):
        return self.distance < GATE


# ---------------------------------------------------------------------------
# symbols and exponential sums


def kronecker(a, n):
    """Kronecker symbol ``(a/n)``."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker12(d):
    """``(12/d)``; zero exactly when ``d`` shares a factor with 6."""
    return kronecker(12, d)


@lru_cache(maxsize=None)
def _square_roots_table(modulus):
    roots = {}
    for d in range(modulus):
        roots.setdefault(d * d % modulus, []).append(d)
    return roots


def kloosterman_A(c, n, prec=mp.prec):
    """``A_c(n) = 1/2 sqrt(c/12) sum (12/d) exp(pi i d / 6c)`` over ``d mod 24c``
    with ``d^2 = -24n + 1 (mod 24c)``.  Returns an ``mpc``.
    """
    if c < 1:
        raise ValueError("c must be positive")
    m = 24 * c
    with mp.workprec(prec):
        total = mpmath.mpc(0)
        for d in _square_roots_table(m).get((1 - 24 * n) % m, ()):
            chi = kronecker12(d)
            if chi:
                x = mpf(d % (12 * c)) / (6 * c)
                total += chi * mpmath.mpc(mpmath.cospi(x), mpmath.sinpi(x))
        return total * mpmath.sqrt(mpf(c) / 12) / 2


@lru_cache(maxsize=4096)
def _units_and_inverses(c):
    if c == 1:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
    r = [x for x in range(1, c) if math.gcd(x, c) == 1]
    inv = [pow(x, -1, c) for x in r]
    return np.array(r, dtype=np.int64), np.array(inv, dtype=np.int64)


def _kloosterman_phases(d, n, c):
    """Histogram ``h[k] = #{r : n r - d rbar = k (mod c)}``."""
    r, rbar = _units_and_inverses(c)
    k = (n * r - d * rbar) % c
    return np.bincount(k, minlength=c)


def kloosterman_K(d, n, c, prec=mp.prec):
    """``K(n; c) = sum_{r mod c, (r,c)=1} exp(2 pi i (-d rbar + n r) / c)`` as an ``mpc``."""
    if c < 1:
        raise ValueError("c must be positive")
    hist = _kloosterman_phases(d, n, c)
    with mp.workprec(prec):
        re = mpf(0)
        im = mpf(0)
        for k in np.nonzero(hist)[0]:
            x = mpf(2 * int(k)) / c
            re += int(hist[k]) * mpmath.cospi(x)
            im += int(hist[k]) * mpmath.sinpi(x)
        return mpmath.mpc(re, im)


def _kloosterman_K_float(d, n, c):
    hist = _kloosterman_phases(d, n, c)
    return float(np.dot(hist, np.cos(2 * np.pi * np.arange(c) / c)))


# ---------------------------------------------------------------------------
# Bessel functions


def bessel_I1(x, prec=mp.prec):
    """``I_1(x) = sum_{m>=0} (x/2)^{2m+1} / (m! (m+1)!)``."""
    with mp.workprec(prec + GUARD_BITS):
        x = mpf(x)
        if x <= 0:
            raise ValueError("x must be positive")
        h = x / 2
        h2 = h * h
        term = h
        total = term
        eps = mpf(2) ** (-(prec + GUARD_BITS))
        m = 0
        while term > eps * total:
            m += 1
            term = term * h2 / (m * (m + 1))
            total += term
    with mp.workprec(prec):
        return +total


def bessel_I32(x, prec=mp.prec):
    """``I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)``."""
    x = mpf(x)
    if x <= 0:
        raise ValueError("x must be positive")
    # cosh x - sinh x / x ~ x^2/3 for small x: pay for the cancellation up front
    extra = GUARD_BITS + max(0, 2 * int(-math.log2(float(x)))) if x < 1 else GUARD_BITS
    with mp.workprec(prec + extra):
        x = mpf(x)
        val = mpmath.sqrt(2 / (mp.pi * x)) * (mpmath.cosh(x) - mpmath.sinh(x) / x)
    with mp.workprec(prec):
        return +val


def bessel_I(order, x, prec=mp.prec):
    """Modified Bessel function of the first kind for order 1 or 3/2."""
    if order == 1:
        return bessel_I1(x, prec)
    if order == 1.5 or order == mpf(3) / 2:
        return bessel_I32(x, prec)
    raise ValueError("only orders 1 and 3/2 are implemented")


def _bessel_I1_float(x):
    h = x / 2
    h2 = h * h
    term = total = h
    m = 0
    while term > 1e-18 * total:
        m += 1
        term *= h2 / (m * (m + 1))
        total += term
    return total


# ---------------------------------------------------------------------------
# Rademacher sums


def default_cmax_partition(n):
    return 5 * math.isqrt(n - 1) + 5 if n > 1 else 5


def default_cmax_jd(d, n):
    return 256 * (math.isqrt(d * n - 1) + 1)


def _default_prec(log2_magnitude):
    return 64 + max(0, math.ceil(log2_magnitude))


def _gate(value, terms, last, prec, what):
    with mp.workprec(prec):
        nearest = int(mpmath.nint(value))
    est = RademacherEstimate(value, nearest, terms, last, prec)
    if not est.gate_ok:
        raise InconclusiveError(
            f"{what}: value {mpmath.nstr(value, 15)} is {mpmath.nstr(est.distance, 3)} "
            f"from the nearest integer after {terms} terms",
            est,
        )
    return est


def p_rademacher(n, c_max=None, prec=None):
    """``p(n)`` from ``2 pi (24n-1)^{-3/4} sum_c A_c(n)/c I_{3/2}(pi sqrt(24n-1) / 6c)``."""
    if n < 1:
        raise ValueError("n must be positive")
    if c_max is None:
        c_max = default_cmax_partition(n)
    if prec is None:
        x1 = math.pi * math.sqrt(24 * n - 1) / 6
        prec = _default_prec(x1 / math.log(2))
    with mp.workprec(prec):
        D = mpf(24 * n - 1)
        sq = mpmath.sqrt(D)
        total = mpf(0)
        last = mpf(0)
        for c in range(1, c_max + 1):
            a = kloosterman_A(c, n, prec).real
            if a == 0:
                last = mpf(0)
                continue
            last = a / c * bessel_I32(mp.pi * sq / (6 * c), prec)
            total += last
        value = 2 * mp.pi / D ** (mpf(3) / 4) * total
        last = 2 * mp.pi / D ** (mpf(3) / 4) * last
    return _gate(value, c_max, last, prec, f"p({n})")


def jd_coeff_rademacher(d, n, c_max=None, prec=None):
    """Coefficient of ``q^n`` in ``J_d`` from
    ``2 pi sqrt(d/n) sum_{c>0} K(n;c)/c I_1(4 pi sqrt(dn) / c)``.

    Terms small enough for double precision (the long tail, where the Bessel
    argument is small) are summed in floating point; the rest at ``prec`` bits.
    """
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    if c_max is None:
        c_max = default_cmax_jd(d, n)
    x1 = 4 * math.pi * math.sqrt(d * n)
    if prec is None:
        prec = _default_prec(x1 / math.log(2))
    with mp.workprec(prec):
        lead = 2 * mp.pi * mpmath.sqrt(mpf(d) / n)
        total = mpf(0)
        tail = []
        last = mpf(0)
        for c in range(1, c_max + 1):
            x = x1 / c
            if x / math.log(2) + math.log2(c) > FLOAT_TERM_BITS:
                k = kloosterman_K(d, n, c, prec).real
                last = k / c * bessel_I1(mpmath.mpf(4) * mp.pi * mpmath.sqrt(d * n) / c, prec)
                total += last
            else:
                t = _kloosterman_K_float(d, n, c) / c * _bessel_I1_float(x)
                tail.append(t)
                last = mpf(t)
        value = lead * (total + mpf(math.fsum(tail)))
        last = lead * last
    return _gate(value, c_max, last, prec, f"J_{d} coefficient of q^{n}")

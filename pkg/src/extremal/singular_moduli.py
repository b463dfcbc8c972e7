"""Traces of the non-holomorphic level-6 function P over Heegner points.

``G`` is the weight -2 eta quotient built from E_2, and ``P`` is its image
under the raising operator.  Summing ``P`` over representatives of the
classes of forms ``[a, b, c]`` with ``6 | a``, ``b = 1 (mod 12)`` and
discriminant ``1 - 24n`` gives ``(24n - 1) p(n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from .rademacher import GATE, GUARD_BITS, InconclusiveError, default_cmax_jd, jd_coeff_rademacher
from .series import QSeries, e2_series, eta_product

__all__ = [
    "HeegnerForm",
    "CMPoint",
    "TraceResult",
    "EnumerationIncompleteError",
    "PrecisionInfeasibleError",
    "class_number_oracle",
    "reduced_forms",
    "reduce_form",
    "enumerate_forms",
    "forms_inequivalent",
    "g_series",
    "evaluate_P",
    "trace_P",
    "corollary2_assemble",
]


class EnumerationIncompleteError(RuntimeError):
    pass


class PrecisionInfeasibleError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# quadratic forms


@dataclass(frozen=True, order=True)
class HeegnerForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    def is_member(self, n):
        """Membership in the level-6 set for ``n``."""
        return (
            self.a > 0
            and self.a % 6 == 0
            and self.b % 12 == 1
            and self.discriminant == 1 - 24 * n
        )

    def cm_point(self, prec=None):
        return CMPoint(self, prec or mp.prec)


@dataclass(frozen=True)
class CMPoint:
    """Root ``(-b + i sqrt(|D|)) / 2a`` of ``a x^2 + b x + c`` in the upper half plane."""

    form: HeegnerForm
    prec: int

    @property
    def tau(self):
        with mp.workprec(self.prec):
            f = self.form
            return mpmath.mpc(mpf(-f.b) / (2 * f.a), mpmath.sqrt(-f.discriminant) / (2 * f.a))

    @property
    def im(self):
        with mp.workprec(self.prec):
            f = self.form
            return mpmath.sqrt(-f.discriminant) / (2 * f.a)


def class_number_oracle(D):
    """Number of reduced forms ``[A, B, C]`` of discriminant ``D < 0``
    (``|B| <= A <= C``, ``B >= 0`` if ``|B| = A`` or ``A = C``), primitive or not."""
    return len(reduced_forms(D))


@lru_cache(maxsize=256)
def reduced_forms(D):
    if D >= 0:
        raise ValueError("discriminant must be negative")
    if D % 4 not in (0, 1):
        raise ValueError("discriminant must be 0 or 1 mod 4")
    out = []
    A = 1
    while 3 * A * A <= -D:
        for B in range(-A + 1, A + 1):
            if (B * B - D) % (4 * A):
                continue
            C = (B * B - D) // (4 * A)
            if C < A or (C == A and B < 0):
                continue
            out.append((A, B, C))
        A += 1
    return tuple(out)


def reduce_form(a, b, c):
    """SL_2(Z)-reduced representative of the positive definite form ``[a, b, c]``."""
    while True:
        # translate b into (-a, a]
        k = (a - b) // (2 * a)
        c = a * k * k + b * k + c
        b = b + 2 * a * k
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            continue
        return a, b, c


def enumerate_forms(n, max_a=None):
    """One level-6 form per class, taking the smallest ``a`` available.

    Scans ``a = 6, 12, ...`` and ``-a < b <= a`` with ``b = 1 (mod 12)``,
    keeping the first form found in each SL_2(Z)-class, until the class
    count of ``1 - 24n`` is reached.  Forms are returned sorted.
    """
    if n < 1:
        raise ValueError("n must be positive")
    D = 1 - 24 * n
    h = class_number_oracle(D)
    if max_a is None:
        max_a = 6 * (-D)
    found = {}
    a = 6
    while len(found) < h:
        if a > max_a:
            raise EnumerationIncompleteError(f"found {len(found)} of {h} classes with a <= {max_a}")
        start = -a + 1
        b = start + (1 - start) % 12
        while b <= a:
            if (b * b - D) % (4 * a) == 0:
                c = (b * b - D) // (4 * a)
                found.setdefault(reduce_form(a, b, c), HeegnerForm(a, b, c))
            b += 12
        a += 6
    return sorted(found.values())


def forms_inequivalent(forms, prec=64):
    """True if no two forms are SL_2(Z)-equivalent (hence not Gamma_0(6)-equivalent).

    The CM points are first moved into the standard fundamental domain and
    compared numerically; points that land close together are then decided
    by exact reduction of the forms.
    """
    pts = []
    with mp.workprec(prec):
        tol = mpf(2) ** (-prec // 2)
        for f in forms:
            pts.append(_reduce_point(f.cm_point(prec).tau))
        for i in range(len(forms)):
            for j in range(i):
                if _near_in_domain(pts[i], pts[j], tol):
                    fi, fj = forms[i], forms[j]
                    if reduce_form(fi.a, fi.b, fi.c) == reduce_form(fj.a, fj.b, fj.c):
                        return False
    return True


def _near_in_domain(z, w, tol):
    # the edges Re = -1/2, 1/2 and the two halves of the unit arc are identified
    return any(abs(z - u) < tol for u in (w, w + 1, w - 1, -1 / w))


def _reduce_point(z):
    while True:
        z = z - mpmath.nint(z.real)
        if abs(z) < 1:
            z = -1 / z
            continue
        # boundary conventions: Re z in [-1/2, 1/2), reflect |z| = 1 to Re z <= 0
        if z.real >= mpf(1) / 2:
            z = z - 1
        return z


# ---------------------------------------------------------------------------
# G and P


@lru_cache(maxsize=16)
def g_series(N):
    """``G = (E_2(t) - 2E_2(2t) - 3E_2(3t) + 6E_2(6t)) / (2 eta(t)^2 eta(2t)^2 eta(3t)^2 eta(6t)^2)``
    known to ``O(q^N)``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    M = N + 1
    num = QSeries([], M, M)
    for m, w in ((1, 1), (2, -2), (3, -3), (6, 6)):
        num = num + w * e2_series(-(-M // m)).scale(m).truncate(M)
    if any(c % 2 for c in num.coeffs):
        raise ArithmeticError("numerator of G is not divisible by 2")
    num = QSeries([c // 2 for c in num.coeffs], num.valuation, num.order)
    den = eta_product([(1, 2), (2, 2), (3, 2), (6, 2)], N + 2)
    return (num * den.inverse()).truncate(N)


def _terms_needed(y, prec):
    # |q|^N with the coefficient growth of G folded in as a generous margin
    bits = prec + GUARD_BITS
    return int(bits * math.log(2) / (2 * math.pi * y)) + 20


def evaluate_P(tau, prec=None, N=None):
    """``P(tau) = (i/2pi) G'(tau) - G(tau) / (2 pi Im tau)``.

    On ``q^m`` the operator ``(i/2pi) d/dtau`` acts as multiplication by
    ``-m``, so ``P = sum g_m q^m (-m - 1/(2 pi y))``.  The truncation point is
    grown until the last terms fall below ``2^-(prec+guard)``.
    """
    prec = prec or mp.prec
    with mp.workprec(prec + GUARD_BITS):
        tau = mpmath.mpc(tau)
        y = tau.imag
        if y <= 0:
            raise ValueError("tau must lie in the upper half plane")
        if N is None:
            N = _terms_needed(float(y), prec)
        eps = mpf(2) ** (-(prec + GUARD_BITS))
        while True:
            if N > 20000:
                raise PrecisionInfeasibleError(f"Im tau = {mpmath.nstr(y, 5)} too small for {prec} bits")
            g = g_series(N)
            q = mpmath.expjpi(2 * tau)
            shift = 1 / (2 * mp.pi * y)
            qm = 1 / q
            total = mpmath.mpc(0)
            tail = mpf(0)
            for m in range(-1, N):
                c = g[m]
                if c:
                    t = c * qm * (-m - shift)
                    total += t
                    if m >= N - 5:
                        tail = max(tail, abs(t))
                qm *= q
            if tail < eps:
                break
            N *= 2
    with mp.workprec(prec):
        return +total


@dataclass
class TraceResult:
    n: int
    class_count: int
    trace: mpmath.mpc
    p_candidate: int
    prec: int
    forms: list = field(default_factory=list)

    @property
    def scaled(self):
        with mp.workprec(self.prec):
            return self.trace.real / (24 * self.n - 1)

    @property
    def distance(self):
        """``|Tr/(24n-1) - p_candidate|``."""
        with mp.workprec(self.prec):
            return abs(self.scaled - self.p_candidate)

    @property
    def integer_distance(self):
        """``|Tr - (24n-1) p_candidate|``."""
        with mp.workprec(self.prec):
            return abs(self.trace.real - (24 * self.n - 1) * self.p_candidate)


def default_trace_prec(n):
    # estimate p(n) from the leading Hardy-Ramanujan term
    est = math.pi * math.sqrt(2 * n / 3) / math.log(2) + math.log2(24 * n)
    return 64 + math.ceil(est)


def trace_P(n, prec=None):
    """``Tr(P; n)`` over :func:`enumerate_forms` and the resulting candidate for ``p(n)``."""
    if prec is None:
        prec = default_trace_prec(n)
    forms = enumerate_forms(n)
    with mp.workprec(prec):
        total = mpmath.mpc(0)
        for f in forms:
            total += evaluate_P(f.cm_point(prec).tau, prec)
        p_candidate = int(mpmath.nint(total.real / (24 * n - 1)))
    result = TraceResult(n, len(forms), total, p_candidate, prec, forms)
    with mp.workprec(prec):
        imag_ok = abs(total.imag) < mpf(2) ** (-prec // 2)
    if result.distance >= GATE or not imag_ok:
        raise InconclusiveError(
            f"Tr(P;{n}) = {mpmath.nstr(total, 20)} fails the integrality gate at {prec} bits",
            result,
        )
    return result


# ---------------------------------------------------------------------------
# assembling Z_k from traces and Rademacher sums


@dataclass
class NumericSeries:
    """Real-valued q-expansion ``{exponent: value}`` over ``valuation .. order-1``."""

    terms: dict
    valuation: int
    order: int
    prec: int

    def __getitem__(self, e):
        return self.terms.get(e, mpf(0))

    def rounded(self):
        with mp.workprec(self.prec):
            return QSeries.from_dict({e: int(mpmath.nint(v)) for e, v in self.terms.items()}, self.order)

    def max_distance(self):
        with mp.workprec(self.prec):
            return max((abs(v - mpmath.nint(v)) for v in self.terms.values()), default=mpf(0))


def corollary2_assemble(k, N, prec=None, c_max_scale=1):
    """Z_k through ``q^N`` from the trace values ``Tr(P;n)/(24n-1)`` and the
    Rademacher expansions ``R_d = q^{-d} + sum r_{d,m} q^m``.

    ``c_max_scale`` multiplies the default Rademacher truncation.
    """
    if k < 1:
        raise ValueError("k must be positive")
    # the traces multiply coefficients as large as exp(4 pi sqrt(kN)), so they
    # need that many extra bits on top of their own
    big = math.ceil(4 * math.pi * math.sqrt(k * N) / math.log(2))
    work = max(prec or 0, 64 + big)
    traces = {n: trace_P(n, max(work, default_trace_prec(n) + big)) for n in range(1, k + 1)}
    with mp.workprec(work + GUARD_BITS):
        t = {0: mpf(1)}
        t.update({n: tr.scaled for n, tr in traces.items()})
        R = {0: {0: mpf(1)}}
        for d in range(1, k + 1):
            R[d] = {-d: mpf(1)}
            for m in range(1, N + 1):
                est = jd_coeff_rademacher(d, m, c_max=c_max_scale * default_cmax_jd(d, m), prec=work)
                R[d][m] = est.value
        # Z_k = t_k + sum_{n=0}^{k-1} t_n (R_{k-n} - R_{k-n-1})
        terms = {0: t[k]}
        for n in range(k):
            for e, v in R[k - n].items():
                terms[e] = terms.get(e, mpf(0)) + t[n] * v
            for e, v in R[k - n - 1].items():
                terms[e] = terms.get(e, mpf(0)) - t[n] * v
    return NumericSeries(terms, -k, N + 1, work + GUARD_BITS)

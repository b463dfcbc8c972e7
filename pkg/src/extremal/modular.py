"""j, J = j - 744, Faber polynomials, the basis J_d and the extremal functions Z_k.

Everything here is exact integer arithmetic on :class:`~extremal.series.QSeries`.
Polynomials in the formal variable ``X`` stand for polynomials in ``j``;
:attr:`JPolynomial.in_J` rewrites them in ``J = X - 744``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd

from .series import (
    PrecisionError,
    QSeries,
    delta_series,
    partition_numbers,
    restricted_partition_series,
    sigma_list,
    sigma_series,
)

J_SHIFT = 744


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class JPolynomial:
    """Integer polynomial ``sum coeffs[i] * X**i``."""

    coeffs: tuple = (0,)

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c) or (0,))

    @property
    def degree(self):
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def is_monic(self):
        return self.coeffs[-1] == 1

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return JPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, int):
            return JPolynomial(tuple(other * c for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return JPolynomial(tuple(out))

    __rmul__ = __mul__

    def translate(self, t):
        """The polynomial ``Y -> self(Y + t)``."""
        n = len(self.coeffs)
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            if c:
                for k in range(i + 1):
                    out[k] += c * comb(i, k) * t ** (i - k)
        return JPolynomial(tuple(out))

    @property
    def in_J(self):
        """Coefficients in the variable ``J = X - 744``."""
        return self.translate(J_SHIFT)

    def evaluate(self, x):
        """Horner evaluation; ``x`` may be an int or a :class:`QSeries`."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        if isinstance(x, QSeries) and not isinstance(acc, QSeries):
            acc = QSeries([acc])
        return acc

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c and len(self.coeffs) > 1:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def from_J_form(coeffs):
    """JPolynomial in ``X`` from coefficients given in ``J = X - 744``."""
    return JPolynomial(tuple(coeffs)).translate(-J_SHIFT)


# ---------------------------------------------------------------------------
# j and J

_J_CACHE = {}


def J_series(N):
    """``J = E_4^3 / Delta - 744 = q^-1 + 196884 q + ...``, known to ``O(q^N)``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    cached = _J_CACHE.get("J")
    if cached is not None and cached.order >= N:
        return cached.truncate(N)
    e4 = 1 + 240 * sigma_series(3, N + 1)
    J = e4**3 * delta_series(N + 2).inverse() - J_SHIFT
    _J_CACHE["J"] = J
    return J


def j_series(N):
    """``j = J + 744`` known to ``O(q^N)``."""
    return J_series(N) + J_SHIFT


def clear_cache():
    _J_CACHE.clear()


def principal_part(f):
    """``{m: a_{-m}}`` for every nonzero coefficient of ``q^{-m}``, ``m >= 0``.

    The keys are the indices of the formal symbols ``X_m``.
    """
    if f.order is not None and f.order <= 0:
        raise PrecisionError("window does not reach the constant term")
    return {-e: f[e] for e in range(f.valuation, 1) if f[e]}


# ---------------------------------------------------------------------------
# Faber polynomials and the J_d basis


def _reduce_against_powers(f, powers, top):
    """Cancel the coefficients of ``q^{-top} .. q^0`` in ``f`` using ``powers[e] = J^e``.

    Returns ``(remainder, a)`` with ``f = remainder + sum a[e] J^e``.
    """
    a = [0] * (top + 1)
    for e in range(top, 0, -1):
        c = f[-e]
        if c:
            a[e] = c
            f = f - c * powers[e]
    a[0] = f[0]
    f = f - a[0]
    return f, a


def _J_powers(max_power, N):
    J = J_series(N + max(max_power, 1))
    powers = [QSeries([1], 0, None), J]
    for _ in range(2, max_power + 1):
        powers.append(powers[-1] * J)
    return [p if p.order is None else p.truncate(N) for p in powers]


def faber_and_jd(d_max, N):
    """Faber polynomials ``F_0..F_{d_max}`` and the series ``J_0..J_{d_max}`` to ``O(q^N)``.

    ``J_d`` is obtained from ``J^d`` by subtracting integer multiples of lower
    powers of ``J`` until only ``q^{-d} + O(q)`` is left.
    """
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    if N < 1:
        raise PrecisionError("need N >= 1 to certify the O(q) tail")
    powers = _J_powers(d_max, N)
    fabers = [JPolynomial((1,))]
    jds = [QSeries([1], 0, None)]
    for d in range(1, d_max + 1):
        rem, a = _reduce_against_powers(powers[d], powers, d - 1)
        # rem = J_d, and J^d = J_d + sum a[e] J^e, so J_d = J^d - sum a[e] J^e
        jform = [-x for x in a[:d]] + [1]
        if principal_part(rem) != {d: 1}:
            raise ArithmeticError(f"greedy reduction failed for d={d}")
        fabers.append(from_J_form(jform))
        jds.append(rem)
    return fabers, jds


def jd_via_hecke(d, N):
    """``J_d = d * (J | T_d)`` to ``O(q^N)`` from the coefficients of ``J``.

    Uses ``b(n) = sum_{e | gcd(d, n)} (d/e) c(d n / e^2)`` for ``n >= 1``.
    """
    if d < 1:
        raise ValueError("d must be positive")
    J = J_series(max(d * (N - 1) + 1, 2))
    terms = {-d: 1}
    for n in range(1, N):
        g = gcd(d, n)
        terms[n] = sum((d // e) * J[d * n // (e * e)] for e in range(1, g + 1) if g % e == 0)
    return QSeries.from_dict(terms, order=N)


def omega_series(d_max):
    """``F_0(X), ..., F_{d_max}(X)`` read off as q-coefficients of
    ``E_14(tau) / Delta(tau) * 1 / (j(tau) - X)`` over ``Z[X]``.
    """
    n = d_max + 1
    j = j_series(n + 1)
    # u = q (j - X) = 1 + (744 - X) q + 196884 q^2 + ...
    u = [JPolynomial((j[e - 1],)) for e in range(n)]
    if n > 1:
        u[1] = JPolynomial((j[0], -1))
    v = [JPolynomial((1,))]
    for m in range(1, n):
        acc = JPolynomial((0,))
        for i in range(1, m + 1):
            acc = acc + u[i] * v[m - i]
        v.append(acc * -1)
    # q E_14 / Delta, a power series with integer coefficients
    e14 = 1 - 24 * sigma_series(13, n)
    w = e14 * delta_series(n + 1).inverse().shift(1)
    out = []
    for d in range(n):
        acc = JPolynomial((0,))
        for i in range(d + 1):
            if w[i]:
                acc = acc + v[d - i] * w[i]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Z_k


@dataclass(frozen=True)
class ZkFunction:
    """Witten's extremal function ``Z_k = q^{-k} prod_{n>=2} (1-q^n)^{-1} + O(q)``."""

    k: int
    series: QSeries
    jpoly: JPolynomial
    routes: tuple = field(default=(), compare=False)

    @property
    def jpoly_J(self):
        return self.jpoly.in_J

    def w(self, n):
        return self.series[n]


def extremal_principal_part(k):
    """Principal part of ``q^{-k} prod_{n>=2} (1-q^n)^{-1}`` as ``{m: a_{-m}}``."""
    r = restricted_partition_series(k + 1)
    return principal_part(r.shift(-k))


def zk_route_partitions(k, jds):
    """``p(k) + (J_k - J_{k-1}) + sum_{n=1}^{k-1} p(n) (J_{k-n} - J_{k-n-1})``."""
    p = partition_numbers(k)
    z = p[k] + (jds[k] - jds[k - 1])
    for n in range(1, k):
        z = z + p[n] * (jds[k - n] - jds[k - n - 1])
    return z


def zk_route_pp(k, jds):
    """``Omega_k(J_0, J_1, ...)``: the principal part with ``X_m`` replaced by ``J_m``."""
    z = QSeries([], 0, None)
    for m, a in extremal_principal_part(k).items():
        z = z + a * jds[m]
    return z


def zk_build(k, N):
    """Z_k known to ``O(q^N)``, built by both partition-function routes.

    Raises ``ArithmeticError`` if the two routes disagree.
    """
    if k < 1:
        raise ValueError("k must be positive")
    fabers, jds = faber_and_jd(k, N)
    zi = zk_route_partitions(k, jds)
    zii = zk_route_pp(k, jds)
    if zi != zii:
        raise ArithmeticError(f"Z_{k}: routes disagree")
    jpoly = JPolynomial((0,))
    for m, a in extremal_principal_part(k).items():
        jpoly = jpoly + fabers[m] * a
    return ZkFunction(k, zi, jpoly, routes=("partitions", "principal-part"))


def zk_jpoly(k):
    """The polynomial ``P`` (in ``X = j``) with ``Z_k = P(j)``."""
    return zk_build(k, 2).jpoly


def zk_series(k, N):
    """Z_k to ``O(q^N)`` by Horner evaluation of its J-polynomial at ``J``.

    Keeps only one big series alive at a time, which matters for the
    congruence checks at windows of several thousand terms.
    """
    poly = zk_jpoly(k).in_J
    return poly.evaluate(J_series(N + k))


# ---------------------------------------------------------------------------
# two-variable identity


@dataclass
class IdentityReport:
    ok: bool
    compared: int
    mismatches: list = field(default_factory=list)


def omega_identity_check(M):
    """Check ``sum_{n>=0} J_n(tau) p^n = Omega(j(tau); z)`` through ``p^M``, ``q^M``.

    Two comparisons are made, with ``p = e^{2 pi i z}`` and ``q = e^{2 pi i tau}``:

    * each ``p^n`` coefficient ``F_n(j(tau))`` of the right side equals ``J_n(tau)``;
    * with denominators cleared, ``Delta(z) (j(z) - j(tau)) sum J_n(tau) p^n``
      equals ``E_14(z)``, i.e. every ``p^a`` coefficient is the constant
      ``E_14``-coefficient with no q-dependence.
    """
    if M < 1:
        raise ValueError("M must be positive")
    Nq = M + 1
    fabers, jds = faber_and_jd(M, Nq + M + 1)
    omega = omega_series(M)
    j_q = j_series(Nq + M + 1)
    mismatches = []
    compared = 0

    for n in range(M + 1):
        lhs = jds[n]
        rhs = omega[n].evaluate(j_q)
        for b in range(-n, Nq):
            compared += 1
            if lhs[b] != rhs[b]:
                mismatches.append(("generating", n, b, lhs[b], rhs[b]))

    e4 = 1 + 240 * sigma_series(3, M + 1)
    e4cubed = (e4**3).coefficients(0, M + 1)
    delta = delta_series(M + 1).coefficients(0, M + 1)
    e14 = [1] + [-24 * s for s in sigma_list(13, M + 1)[1:]]
    for a in range(M + 1):
        acc = QSeries([], 0, None)
        for i in range(a + 1):
            acc = acc + (e4cubed[i] - delta[i] * j_q) * jds[a - i]
        for b in range(min(-a - 1, 0), Nq):
            compared += 1
            want = e14[a] if b == 0 else 0
            if acc[b] != want:
                mismatches.append(("cleared", a, b, acc[b], want))
    return IdentityReport(not mismatches, compared, mismatches)

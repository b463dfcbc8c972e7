"""Exact truncated Laurent series in q over the integers.

A series knows the window on which its coefficients are determined:
exponents ``valuation .. order-1`` are stored, anything below the valuation
is zero, and anything at or beyond ``order`` is unknown.  Asking for an
unknown coefficient raises :class:`PrecisionError`.  An ``order`` of ``None``
marks an exact Laurent polynomial (for instance ``1 - q``).
"""

from __future__ import annotations

try:
    import gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    gmpy2 = None

__all__ = [
    "PrecisionError",
    "NotInvertibleError",
    "UnsupportedEtaProduct",
    "QSeries",
    "ResidueSeries",
    "convolve",
    "sigma_list",
    "sigma_series",
    "euler_product",
    "eta_product",
    "e2_series",
    "partition_numbers",
    "restricted_partition_series",
    "delta_series",
]


class PrecisionError(ArithmeticError):
    """A coefficient outside the known window was requested."""


class NotInvertibleError(ArithmeticError):
    """Leading coefficient is not a unit of the coefficient ring."""


class UnsupportedEtaProduct(ValueError):
    """Eta product whose q-prefactor has a fractional exponent."""


# ---------------------------------------------------------------------------
# convolution

_SCHOOLBOOK_CUTOFF = 40


def _schoolbook(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        lim = min(len(b), n - i)
        for j in range(lim):
            out[i + j] += x * b[j]
    return out


def _pack(coeffs, nbytes):
    pos = bytearray()
    neg = bytearray()
    zero = bytes(nbytes)
    for c in coeffs:
        if c >= 0:
            pos += c.to_bytes(nbytes, "little")
            neg += zero
        else:
            pos += zero
            neg += (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a, b, n):
    bits = max(x.bit_length() for x in a) + max(x.bit_length() for x in b)
    bits += min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    slot = 8 * nbytes
    A = _pack(a, nbytes)
    B = _pack(b, nbytes)
    if gmpy2 is not None:
        P = gmpy2.mpz(A) * gmpy2.mpz(B)
    else:
        P = A * B
    # balanced digits: add 2^(slot-1) to every slot, then read fixed-width chunks
    width = n * nbytes
    offset = int.from_bytes((bytes(nbytes - 1) + b"\x80") * n, "little")
    mask = (1 << (slot * n)) - 1
    M = int(((P & mask) + offset) & mask)
    raw = M.to_bytes(width, "little")
    half = 1 << (slot - 1)
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - half
        for i in range(0, width, nbytes)
    ]


def convolve(a, b, n):
    """First ``n`` coefficients of the product of integer sequences ``a`` and ``b``.

    Small inputs use the schoolbook loop; large ones go through Kronecker
    substitution so the work lands in a single big-integer multiply.  Both
    paths return identical results.
    """
    a = a[:n]
    b = b[:n]
    if n <= 0:
        return []
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _schoolbook(a, b, n)
    if not any(a) or not any(b):
        return [0] * n
    out = _kronecker(a, b, min(n, len(a) + len(b) - 1))
    out.extend([0] * (n - len(out)))
    return out


# ---------------------------------------------------------------------------
# series


def _min_order(*orders):
    known = [o for o in orders if o is not None]
    return min(known) if known else None


class QSeries:
    """Truncated Laurent series ``sum c_n q^n + O(q^order)`` with integer coefficients.

    Instances are immutable.  ``coeffs[i]`` is the coefficient of
    ``q^(valuation + i)``.
    """

    __slots__ = ("valuation", "order", "coeffs")

    def __init__(self, coeffs, valuation=0, order=None):
        coeffs = [self._reduce(int(c)) for c in coeffs]
        if order is None:
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        else:
            if order < valuation:
                raise ValueError("order below valuation")
            del coeffs[order - valuation :]
            coeffs.extend([0] * (order - valuation - len(coeffs)))
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        if start:
            coeffs = coeffs[start:]
            valuation += start
        if order is not None and valuation > order:
            valuation = order
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # hooks for subclasses working over other coefficient rings
    def _reduce(self, c):
        return c

    def _new(self, coeffs, valuation, order):
        return QSeries(coeffs, valuation, order)

    @classmethod
    def from_dict(cls, terms, order=None):
        """Build from ``{exponent: coefficient}``."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls([], 0 if order is None else order, order)
        lo = min(terms)
        hi = max(terms) + 1 if order is None else order
        return cls([terms.get(e, 0) for e in range(lo, hi)], lo, order)

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls([coefficient], exponent, None)

    # -- inspection ---------------------------------------------------------

    def is_exact(self):
        return self.order is None

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, e):
        if self.order is not None and e >= self.order:
            raise PrecisionError(f"coefficient of q^{e} unknown (series is O(q^{self.order}))")
        i = e - self.valuation
        if i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def coefficients(self, start, stop):
        """Coefficients of ``q^start .. q^(stop-1)``."""
        return [self[e] for e in range(start, stop)]

    def to_dict(self):
        return {self.valuation + i: c for i, c in enumerate(self.coeffs) if c}

    def leading_coefficient(self):
        if not self.coeffs:
            raise PrecisionError("series is zero on its window")
        return self.coeffs[0]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.order == other.order
            and self.valuation == other.valuation
            and self.coeffs == other.coeffs
            and getattr(self, "modulus", None) == getattr(other, "modulus", None)
        )

    def __hash__(self):
        return hash((self.valuation, self.order, self.coeffs))

    def agrees_with(self, other, upto=None):
        """True if both series agree on their common window (capped at ``upto``)."""
        hi = _min_order(self.order, other.order, upto)
        if hi is None:
            hi = max(self.valuation + len(self.coeffs), other.valuation + len(other.coeffs))
        lo = min(self.valuation, other.valuation)
        return all(self[e] == other[e] for e in range(lo, hi))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:6]):
            if c:
                terms.append(f"{c}*q^{self.valuation + i}")
        body = " + ".join(terms) or "0"
        if len(self.coeffs) > 6:
            body += " + ..."
        tail = "" if self.order is None else f" + O(q^{self.order})"
        return f"{type(self).__name__}({body}{tail})"

    # -- window manipulation -------------------------------------------------

    def truncate(self, order):
        if self.order is not None and order > self.order:
            raise PrecisionError(f"cannot extend O(q^{self.order}) to O(q^{order})")
        if order <= self.valuation:
            return self._new([], order, order)
        return self._new(self.coeffs[: order - self.valuation], self.valuation, order)

    def shift(self, m):
        """Multiply by ``q^m``."""
        order = None if self.order is None else self.order + m
        return self._new(self.coeffs, self.valuation + m, order)

    def scale(self, m):
        """Substitute ``q -> q^m``."""
        if m < 1:
            raise ValueError("scale factor must be positive")
        if m == 1:
            return self
        out = [0] * ((len(self.coeffs) - 1) * m + 1) if self.coeffs else []
        out[::m] = self.coeffs
        order = None if self.order is None else self.order * m
        return self._new(out, self.valuation * m, order)

    def theta(self):
        """``q d/dq``: multiplies the coefficient of ``q^n`` by ``n``."""
        v = self.valuation
        return self._new([(v + i) * c for i, c in enumerate(self.coeffs)], v, self.order)

    # -- ring operations -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, int):
            return self._new([other], 0, None)
        return NotImplemented

    def __neg__(self):
        return self._new([-c for c in self.coeffs], self.valuation, self.order)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = _min_order(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        if order is None:
            hi = max(self.valuation + len(self.coeffs), other.valuation + len(other.coeffs))
        else:
            hi = order
        hi = max(hi, lo)
        out = [0] * (hi - lo)
        for s in (self, other):
            base = s.valuation - lo
            for i, c in enumerate(s.coeffs[: max(0, hi - s.valuation)]):
                out[base + i] += c
        return self._new(out, lo, order)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new([other * c for c in self.coeffs], self.valuation, self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        v = self.valuation + other.valuation
        if self.order is None and other.order is None:
            n = len(self.coeffs) + len(other.coeffs) - 1 if self.coeffs and other.coeffs else 0
            order = None
        else:
            cands = []
            if self.order is not None:
                cands.append(self.order + other.valuation)
            if other.order is not None:
                cands.append(other.order + self.valuation)
            order = min(cands)
            n = order - v
        if order is not None and n <= 0:
            return self._new([], order, order)
        if self.is_zero() or other.is_zero():
            return self._new([], v if order is None else order, order)
        return self._new(convolve(list(self.coeffs), list(other.coeffs), max(n, 0)), v, order)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self._new([1], 0, None)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self, prec=None):
        """Multiplicative inverse; requires a leading coefficient of ``+-1``.

        For a truncated series the relative precision is preserved.  An exact
        polynomial has an infinite inverse, so ``prec`` (number of
        coefficients wanted) must then be given.
        """
        if self.is_zero():
            raise NotInvertibleError("zero series")
        lead = self.coeffs[0]
        if not self._is_unit(lead):
            raise NotInvertibleError(f"leading coefficient {lead} is not a unit")
        rel = prec if self.order is None else self.order - self.valuation
        if rel is None:
            raise ValueError("inverting an exact polynomial needs prec")
        if self.order is not None and prec is not None:
            rel = min(rel, prec)
        f = list(self.coeffs[:rel]) + [0] * max(0, rel - len(self.coeffs))
        inv_lead = self._unit_inverse(lead)
        g = [inv_lead]
        n = 1
        # Newton: g <- g + g*(1 - f*g)
        while n < rel:
            n = min(2 * n, rel)
            fg = self._conv(f[:n], g, n)
            err = [-c for c in fg]
            err[0] += 1
            corr = self._conv(g, err, n)
            g = [self._reduce(x) for x in g + [0] * (n - len(g))]
            g = [self._reduce(x + y) for x, y in zip(g, corr)]
        return self._new(g[:rel], -self.valuation, -self.valuation + rel)

    def _is_unit(self, c):
        return c in (1, -1)

    def _unit_inverse(self, c):
        return c

    def _conv(self, a, b, n):
        return [self._reduce(x) for x in convolve(a, b, n)]

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_exact():
            rel = None if self.order is None else self.order - self.valuation
            return self * other.inverse(rel)
        return self * other.inverse()

    def reduce(self, modulus):
        """Coefficients reduced mod ``modulus`` as a :class:`ResidueSeries`."""
        return ResidueSeries(self.coeffs, self.valuation, self.order, modulus)


class ResidueSeries(QSeries):
    """Truncated Laurent series with coefficients in Z/mZ, stored as ``0..m-1``."""

    __slots__ = ("modulus",)

    def __init__(self, coeffs, valuation=0, order=None, modulus=None):
        if modulus is None or modulus < 2:
            raise ValueError("modulus must be at least 2")
        object.__setattr__(self, "modulus", modulus)
        super().__init__(coeffs, valuation, order)

    def _reduce(self, c):
        return c % self.modulus

    def _new(self, coeffs, valuation, order):
        return ResidueSeries(coeffs, valuation, order, self.modulus)

    def _coerce(self, other):
        if isinstance(other, ResidueSeries):
            if other.modulus != self.modulus:
                raise ValueError("moduli differ")
            return other
        if isinstance(other, QSeries):
            return other.reduce(self.modulus)
        return super()._coerce(other)

    def __mul__(self, other):
        if isinstance(other, int):
            return super().__mul__(other % self.modulus)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return super().__mul__(other)

    __rmul__ = __mul__

    def _is_unit(self, c):
        from math import gcd

        return gcd(c, self.modulus) == 1

    def _unit_inverse(self, c):
        return pow(c, -1, self.modulus)

    def lift(self):
        """Integer series with the stored representatives ``0..m-1``."""
        return QSeries(self.coeffs, self.valuation, self.order)

    def __repr__(self):
        return super().__repr__()[:-1] + f" mod {self.modulus})"


# ---------------------------------------------------------------------------
# building blocks


def sigma_list(r, N):
    """``[sigma_r(0), sigma_r(1), ..., sigma_r(N-1)]`` with ``sigma_r(0) = 0``, by sieving."""
    out = [0] * max(N, 0)
    for d in range(1, N):
        dr = d**r
        for m in range(d, N, d):
            out[m] += dr
    return out


def sigma_series(r, N):
    """``sum_{n=1}^{N-1} sigma_r(n) q^n + O(q^N)``."""
    if N < 1:
        raise ValueError("N must be positive")
    return QSeries(sigma_list(r, N), 0, N)


def euler_product(N):
    """``prod_{n>=1} (1 - q^n) + O(q^N)`` from the pentagonal number theorem."""
    out = [0] * N
    k = 0
    while True:
        sign = -1 if k % 2 else 1
        hit = False
        for g in {k * (3 * k - 1) // 2, k * (3 * k + 1) // 2}:
            if g < N:
                out[g] = sign
                hit = True
        if not hit:
            break
        k += 1
    return QSeries(out, 0, N)


def eta_product(factors, N):
    """``prod eta(m tau)^e`` for ``factors = [(m, e), ...]``, known to ``O(q^N)``.

    The total q-prefactor exponent ``sum(m*e)/24`` must be an integer.
    """
    weight = sum(m * e for m, e in factors)
    if weight % 24:
        raise UnsupportedEtaProduct(f"prefactor exponent {weight}/24 is not an integer")
    v = weight // 24
    rel = N - v
    if rel <= 0:
        return QSeries([], N, N)
    result = QSeries([1], 0, rel)
    for m, e in factors:
        if m < 1:
            raise ValueError("eta scale must be positive")
        if e == 0:
            continue
        base = euler_product((rel - 1) // m + 1).scale(m).truncate(rel)
        if e < 0:
            base = base.inverse()
        result = result * base ** abs(e)
    return result.shift(v)


def delta_series(N):
    """The discriminant ``q prod (1-q^n)^24 + O(q^N)``."""
    return eta_product([(1, 24)], N)


def e2_series(N):
    """``E_2 = 1 - 24 sum sigma_1(n) q^n + O(q^N)``."""
    if N < 1:
        raise ValueError("N must be positive")
    return 1 - 24 * sigma_series(1, N)


def partition_numbers(N):
    """``p(0), ..., p(N)`` by Euler's pentagonal recurrence.

    ``p(n) = sum_{k>=1} (-1)^(k+1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]``
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    p = [1] + [0] * N
    pent = []
    k = 1
    while k * (3 * k - 1) // 2 <= N:
        s = 1 if k % 2 else -1
        pent.append((k * (3 * k - 1) // 2, s))
        pent.append((k * (3 * k + 1) // 2, s))
        k += 1
    for n in range(1, N + 1):
        total = 0
        for g, s in pent:
            if g > n:
                break
            total += s * p[n - g]
        p[n] = total
    return tuple(p)


def restricted_partition_series(N):
    """``prod_{n>=2} 1/(1-q^n) + O(q^N)``: partitions into parts of size at least 2."""
    if N < 1:
        raise ValueError("N must be positive")
    return euler_product(N).inverse() * QSeries([1, -1])

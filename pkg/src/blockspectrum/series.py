"""Truncated power series with exact coefficients.

Coefficients are Python ``int`` whenever possible and ``fractions.Fraction``
otherwise.  Products of integer series go through Kronecker substitution: both
operands are packed into one big integer, multiplied once (by GMP when
``gmpy2`` is importable) and unpacked again.  That keeps order-1000 series with
thousand-digit coefficients cheap.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

try:
    import gmpy2

    def _bigmul(a: int, b: int) -> int:
        return int(gmpy2.mpz(a) * gmpy2.mpz(b))

except ImportError:  # pragma: no cover - gmpy2 ships with the declared deps
    def _bigmul(a: int, b: int) -> int:
        return a * b

_SCHOOLBOOK_CUTOFF = 24


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _pack(digits: Sequence[int], nbytes: int) -> int:
    """Pack nonnegative ``digits`` (little endian) into one integer."""
    return int.from_bytes(b"".join(d.to_bytes(nbytes, "little") for d in digits), "little")


def _pack_signed(coeffs: Sequence[int], nbytes: int) -> int:
    pos = _pack([c if c > 0 else 0 for c in coeffs], nbytes)
    neg = _pack([-c if c < 0 else 0 for c in coeffs], nbytes)
    return pos - neg


def _kronecker_mul(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    na, nb = len(a), len(b)
    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    if amax == 0 or bmax == 0:
        return [0] * order
    # |c_k| <= min(na, nb) * amax * bmax, plus one sign bit
    bits = amax.bit_length() + bmax.bit_length() + min(na, nb).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _bigmul(_pack_signed(a, nbytes), _pack_signed(b, nbytes))
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * order, "little")
    mask = (1 << (8 * nbytes * order)) - 1
    raw = ((prod + bias) & mask).to_bytes(nbytes * order, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(order)
    ]


def _schoolbook_mul(a: Sequence, b: Sequence, order: int) -> list:
    out = [0] * order
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), order - i)):
            out[i + j] += ai * b[j]
    return out


def _integer_mul(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    a = a[:order]
    b = b[:order]
    # trailing zeros cost nothing in the product but widen the packing
    while a and a[-1] == 0:
        a = a[:-1]
    while b and b[-1] == 0:
        b = b[:-1]
    if not a or not b:
        return [0] * order
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _schoolbook_mul(a, b, order)
    out = _kronecker_mul(a, b, min(order, len(a) + len(b) - 1))
    return out + [0] * (order - len(out))


def _scale_to_integers(coeffs: Sequence) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    if den == 1:
        return list(coeffs), 1
    return [int(c * den) for c in coeffs], den


def mul_coeffs(a: Sequence, b: Sequence, order: int) -> list:
    """Exact truncated product of two coefficient lists."""
    ia, da = _scale_to_integers(a)
    ib, db = _scale_to_integers(b)
    out = _integer_mul(ia, ib, order)
    den = da * db
    if den == 1:
        return out
    return [_normalize(Fraction(c, den)) for c in out]


class PowerSeries:
    """Immutable series ``c_0 + c_1 z + ... + c_{N-1} z^{N-1} + O(z^N)``.

    Binary operations require both operands to share the same order; nothing
    changes the truncation silently.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [_normalize(x) for x in coeffs]
        for x in c:
            if not isinstance(x, Rational):
                raise TypeError(f"coefficient {x!r} is not an exact rational")
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            c = c[:order] + [0] * (order - len(c))
        self._c = tuple(c)

    # construction helpers
    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "PowerSeries":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [coeff], order)

    @classmethod
    def polynomial(cls, coeffs: Sequence, order: int) -> "PowerSeries":
        return cls(coeffs, order)

    @classmethod
    def _raw(cls, coeffs) -> "PowerSeries":
        s = cls.__new__(cls)
        s._c = tuple(coeffs)
        return s

    # container protocol
    @property
    def order(self) -> int:
        return len(self._c)

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self._c[n]
        if n < 0:
            raise IndexError("negative index")
        if n >= len(self._c):
            raise IndexError(f"coefficient {n} is beyond the truncation order {len(self._c)}")
        return self._c[n]

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._c[:8])
        more = ", ..." if len(self._c) > 8 else ""
        return f"PowerSeries([{head}{more}], order={self.order})"

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    # arithmetic
    def _check(self, other: "PowerSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            self._check(other)
            return other
        if isinstance(other, Rational):
            return PowerSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PowerSeries._raw(_normalize(a + b) for a, b in zip(self._c, other._c))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries._raw(-a for a in self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PowerSeries._raw(_normalize(a - b) for a, b in zip(self._c, other._c))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            self._check(other)
            return PowerSeries._raw(mul_coeffs(self._c, other._c, self.order))
        if isinstance(other, Rational):
            return PowerSeries._raw(_normalize(a * other) for a in self._c)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return PowerSeries._raw(_normalize(Fraction(a) / other) for a in self._c)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return self.reciprocal() * other
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = PowerSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def reciprocal(self) -> "PowerSeries":
        """Inverse of a unit series by Newton iteration ``h <- h (2 - a h)``."""
        n = self.order
        if n == 0:
            return self
        a0 = self._c[0]
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        h = [_normalize(Fraction(1) / a0) if a0 not in (1, -1) else a0]
        prec = 1
        while prec < n:
            prec = min(2 * prec, n)
            e = mul_coeffs(self._c[:prec], h, prec)
            e = [-c for c in e]
            e[0] += 2
            h = mul_coeffs(h, e, prec)
        return PowerSeries._raw(h)

    # structural operations
    def truncate(self, order: int) -> "PowerSeries":
        """Reduce (never extend) the truncation order."""
        if order > self.order:
            raise ValueError("cannot raise the order of a truncated series")
        return PowerSeries._raw(self._c[:order])

    def extend(self, order: int) -> "PowerSeries":
        """Zero-pad a series that is known to be a polynomial."""
        if order < self.order:
            raise ValueError("extend cannot lower the order")
        return PowerSeries._raw(self._c + (0,) * (order - self.order))

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by ``z**k`` (k >= 0), keeping the order."""
        if k < 0:
            raise ValueError("negative shift")
        return PowerSeries._raw(((0,) * k + self._c)[: self.order])

    def polynomial_part(self, degree: int) -> "PowerSeries":
        """Keep coefficients of degree <= ``degree``; zero out the rest."""
        keep = max(0, min(degree + 1, self.order))
        return PowerSeries._raw(self._c[:keep] + (0,) * (self.order - keep))

    def valuation(self) -> int | None:
        for i, c in enumerate(self._c):
            if c != 0:
                return i
        return None

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(z))``; ``inner`` must have positive valuation."""
        self._check(inner)
        if inner.order and inner._c[0] != 0:
            raise ValueError("inner series must have zero constant term")
        return horner(self._c, inner)

    def derivative(self) -> "PowerSeries":
        """Formal derivative; the top coefficient is unknown and set to zero."""
        d = [i * c for i, c in enumerate(self._c)][1:]
        return PowerSeries(d, self.order)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._c)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._c)


def horner(poly: Sequence, x: PowerSeries) -> PowerSeries:
    """Evaluate a polynomial with rational (or series) coefficients at ``x``."""
    order = x.order
    acc = PowerSeries.zero(order)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def poly_mul(a: Sequence, b: Sequence) -> list:
    """Product of two coefficient lists (untruncated polynomials)."""
    if not a or not b:
        return []
    return mul_coeffs(a, b, len(a) + len(b) - 1)


def poly_pow(a: Sequence, e: int) -> list:
    out = [1]
    for _ in range(e):
        out = poly_mul(out, a)
    return out

"""The algebraic equation ``Q(z, G(z)) = 0`` satisfied by the structure series."""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache


from .params import ConsistencyError, StructureParams
from .series import PowerSeries
from .system import shadow_sum, solve_system

VALIDATION_ORDER = 200


class BivariatePolynomial:
    """Integer polynomial ``sum q[a, b] z^a X^b`` stored sparsely."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (a, b), c in dict(terms or {}).items():
            if c:
                clean[(a, b)] = c
        self.terms = clean

    @classmethod
    def z_poly(cls, coeffs) -> "BivariatePolynomial":
        return cls({(a, 0): c for a, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> "BivariatePolynomial":
        return cls({(a, b): c})

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = defaultdict(int, self.terms)
        for k, c in other.terms.items():
            out[k] += c
        return BivariatePolynomial(out)

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariatePolynomial({k: c * other for k, c in self.terms.items()})
        out = defaultdict(int)
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                out[(a1 + a2, b1 + b2)] += c1 * c2
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BivariatePolynomial.monomial(0, 0)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, BivariatePolynomial) and self.terms == other.terms

    def __repr__(self):
        return f"BivariatePolynomial(deg_z={self.deg_z}, deg_X={self.deg_x}, terms={len(self.terms)})"

    @property
    def deg_x(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    @property
    def deg_z(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def diff_x(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(a, b - 1): b * c for (a, b), c in self.terms.items() if b})

    def diff_z(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(a - 1, b): a * c for (a, b), c in self.terms.items() if a})

    def x_coefficients(self) -> list[list[int]]:
        """``out[b]`` is the z-polynomial multiplying ``X^b``."""
        out = [[0] * (self.deg_z + 1) for _ in range(self.deg_x + 1)]
        for (a, b), c in self.terms.items():
            out[b][a] = c
        return out

    def __call__(self, z, X):
        """Evaluate at numbers (ints, Fractions or mpmath values)."""
        total = 0
        for zp in reversed(self.x_coefficients()):
            acc = 0
            for c in reversed(zp):
                acc = acc * z + c
            total = total * X + acc
        return total

    def eval_series(self, X: PowerSeries) -> PowerSeries:
        """``Q(z, X(z))`` as a truncated series."""
        N = X.order
        acc = PowerSeries.zero(N)
        for zp in reversed(self.x_coefficients()):
            acc = acc * X + PowerSeries(zp, N)
        return acc


def _z(coeffs) -> BivariatePolynomial:
    return BivariatePolynomial.z_poly(coeffs)


@lru_cache(maxsize=64)
def build_Q(p: StructureParams, validate: bool = True) -> BivariatePolynomial:
    """Clear all denominators from the block equations.

    With ``D = W - z^2r X^2`` and ``d = 6 gamma - 2``::

        Q = D^d (W (1 - X + z X) + z^2r (X - S) X) + W sum_m i(m) (z^2r X^2)^m D^(d-m)

    (for gamma = 0 the shadow sum is empty and ``D^d`` is dropped).  The
    result is checked against the solved series unless ``validate`` is off.
    """
    two_r = 2 * p.r
    w = [0] * (two_r + 1)
    w[0] += 1
    w[2] -= 1
    w[two_r] += 1
    W = _z(w)
    S = _z([1] * max(p.lam - 1, 0))
    X = BivariatePolynomial.monomial(0, 1)
    zX = BivariatePolynomial.monomial(1, 1)
    z2r = BivariatePolynomial.monomial(two_r, 0)
    base = W * (_z([1]) - X + zX) + z2r * (X - S) * X
    if p.gamma == 0:
        Q = base
    else:
        d = 6 * p.gamma - 2
        D = W - BivariatePolynomial.monomial(two_r, 2)
        inflated = BivariatePolynomial()
        unit = BivariatePolynomial.monomial(two_r, 2)
        for m, i_m in enumerate(shadow_sum(p.gamma)):
            if i_m:
                inflated = inflated + (unit ** m) * (D ** (d - m)) * i_m
        Q = (D ** d) * base + W * inflated
    if validate:
        G = solve_system(p, VALIDATION_ORDER).G
        if Q.eval_series(G) != PowerSeries.zero(VALIDATION_ORDER):
            raise ConsistencyError(f"Q(z, G) does not vanish for {p}")
        expected = 2 if p.gamma == 0 else 12 * p.gamma - 2
        if Q.deg_x != expected:
            raise ConsistencyError(f"deg_X Q = {Q.deg_x}, expected {expected}")
    return Q



"""Exact counting series of gamma-structures and their blocks.

The block decomposition gives, with ``W = 1 - z^2 + z^(2r)``,
``A = z^(2r)/W``, ``S = 1 + z + ... + z^(lam-2)`` and
``w(X) = A X^2 / (1 - A X^2)``::

    G  = 1 / (1 - F)
    F  = z + B0 + Bg
    B0 = A (G - S)
    Bg = G^-1 * sum_{1 <= g <= gamma} I_g(w(G))

where ``I_g`` counts irreducible shadows of genus ``g`` by arc number.
Everything here is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .params import ConsistencyError, StructureParams
from .series import PowerSeries, horner, poly_mul, poly_pow

BLOCK_TYPES = ("T", "H", "K", "L", "M")
# arc count of the irreducible shadow behind each genus-1 block type
SHADOW_ARCS = {"H": 2, "K": 3, "L": 3, "M": 4}


def _shadow_polynomials() -> dict[int, list[int]]:
    one_plus_z = [1, 1]
    i1 = poly_mul([0, 0, 1], poly_pow(one_plus_z, 2))
    i2 = poly_mul(poly_mul([0, 0, 0, 0, 1], poly_pow(one_plus_z, 4)), [17, 92, 96])
    return {1: i1, 2: i2}


SHADOW_POLYNOMIALS = _shadow_polynomials()


def shadow_polynomial(genus: int) -> list[int]:
    """Coefficients of ``I_g(z)``; index m is the number of genus-g irreducible shadows with m arcs."""
    try:
        return list(SHADOW_POLYNOMIALS[genus])
    except KeyError:
        raise ValueError(f"no shadow polynomial for genus {genus} (only 1 and 2)") from None


def shadow_sum(gamma: int) -> list[int]:
    """Coefficients of ``sum_{1 <= g <= gamma} I_g``."""
    out: list[int] = []
    for g in range(1, gamma + 1):
        p = SHADOW_POLYNOMIALS[g]
        out = [a + b for a, b in zip(out + [0] * (len(p) - len(out)), p + [0] * (len(out) - len(p)))]
    return out


def _poly_derivative(p: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(p)][1:]


class _Kernel:
    """The z-only building blocks ``W``, ``A`` and ``S`` at a fixed order."""

    def __init__(self, p: StructureParams, order: int):
        self.p = p
        self.order = order
        two_r = 2 * p.r
        w = [0] * (two_r + 1)
        w[0] += 1
        w[2] -= 1
        w[two_r] += 1
        self.W = PowerSeries(w, order)
        self.A = PowerSeries.monomial(two_r, order) / self.W
        self.S = PowerSeries([1] * max(p.lam - 1, 0), order)
        self.z = PowerSeries.monomial(1, order)
        self.isum = shadow_sum(p.gamma)
        self.disum = _poly_derivative(self.isum)

    def at(self, order: int) -> "_Kernel":
        return _Kernel(self.p, order)

    def w(self, X: PowerSeries) -> PowerSeries:
        ax2 = self.A * X * X
        return ax2 / (1 - ax2)

    def shadow_term(self, X: PowerSeries) -> PowerSeries:
        """``sum_g I_g(w(X))``."""
        if not self.isum:
            return PowerSeries.zero(self.order)
        return horner(self.isum, self.w(X))

    def phi(self, X: PowerSeries) -> PowerSeries:
        # G (1 - F) - 1 with F expressed through G
        return X * (1 - self.z) - self.A * (X - self.S) * X - self.shadow_term(X) - 1

    def phi_and_derivative(self, X: PowerSeries) -> tuple[PowerSeries, PowerSeries]:
        A = self.A
        base = X * (1 - self.z) - A * (X - self.S) * X - 1
        dbase = (1 - self.z) - A * (2 * X - self.S)
        if not self.isum:
            return base, dbase
        x2 = X * X
        den = (1 - A * x2).reciprocal()
        w = A * x2 * den
        dw = 2 * A * X * den * den
        return base - horner(self.isum, w), dbase - horner(self.disum, w) * dw


def _newton_solve(k: _Kernel) -> PowerSeries:
    N = k.order
    X = PowerSeries.one(1)
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        kp = k.at(prec) if prec < N else k
        X = X.extend(prec)
        val, der = kp.phi_and_derivative(X)
        X = X - val / der
    return X


def _fixed_point_solve(k: _Kernel) -> PowerSeries:
    """Iterate ``G <- 1/(1 - F(G))``; each round fixes at least one more coefficient."""
    N = k.order
    G = PowerSeries.one(N)
    for _ in range(N + 1):
        F = k.z + k.A * (G - k.S) + k.shadow_term(G) / G
        nxt = (1 - F).reciprocal()
        if nxt == G:
            return G
        G = nxt
    raise ConsistencyError("fixed-point iteration did not stabilise")


@dataclass(frozen=True)
class SeriesBundle:
    G: PowerSeries
    F: PowerSeries
    B0: PowerSeries
    Bgamma: PowerSeries
    params: StructureParams
    order: int

    def g(self, n: int) -> int:
        return self.G[n]

    def f(self, n: int) -> int:
        return self.F[n]


def _check_counting(name: str, s: PowerSeries, p: StructureParams) -> None:
    for n, c in enumerate(s):
        if not isinstance(c, int) or c < 0:
            raise ConsistencyError(
                f"{name} has coefficient {c!r} at n={n} for {p}; counting series must be nonnegative integers"
            )


def check_bundle(b: SeriesBundle) -> None:
    """Assert every defining identity of the bundle exactly at its order."""
    k = _Kernel(b.params, b.order)
    z2r = PowerSeries.monomial(2 * b.params.r, b.order)
    one = PowerSeries.one(b.order)
    if b.G * (one - b.F) != one:
        raise ConsistencyError("G != 1/(1 - F)")
    if b.F != k.z + b.B0 + b.Bgamma:
        raise ConsistencyError("F != z + B0 + Bgamma")
    # unsolved form of the 0-block equation: (1 - z^2) B0 = z^2r (G - B0 - S)
    if b.B0 * (one - k.z * k.z) != z2r * (b.G - b.B0 - k.S):
        raise ConsistencyError("B0 violates its defining equation")
    if b.Bgamma * b.G != k.shadow_term(b.G):
        raise ConsistencyError("Bgamma * G != sum I_g(w)")
    for name in ("G", "F", "B0", "Bgamma"):
        _check_counting(name, getattr(b, name), b.params)


@lru_cache(maxsize=64)
def solve_system(p: StructureParams, order: int, method: str = "newton") -> SeriesBundle:
    """Solve the block equations to ``order`` coefficients.

    ``method`` is ``"newton"`` (precision doubling, the default) or
    ``"fixed-point"`` (one coefficient per round; slow, kept as a cross-check).
    The returned bundle has been checked exactly; any failure raises
    :class:`ConsistencyError`.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    k = _Kernel(p, order)
    if method == "newton":
        G = _newton_solve(k)
    elif method == "fixed-point":
        G = _fixed_point_solve(k)
    else:
        raise ValueError(f"unknown method {method!r}")
    if k.phi(G) != PowerSeries.zero(order):
        raise ConsistencyError(f"solver residual is nonzero for {p}")
    F = 1 - G.reciprocal()
    B0 = k.A * (G - k.S)
    Bg = k.shadow_term(G) / G
    bundle = SeriesBundle(G=G, F=F, B0=B0, Bgamma=Bg, params=p, order=order)
    check_bundle(bundle)
    return bundle


def h_function(p: StructureParams, block_type: str, X: PowerSeries) -> PowerSeries:
    """The rational map ``h^I(z, X)`` evaluated at a series ``X``."""
    k = _Kernel(p, X.order)
    if block_type == "T":
        return k.A * (X - k.S)
    try:
        m = SHADOW_ARCS[block_type]
    except KeyError:
        raise ValueError(f"unknown block type {block_type!r}; expected one of {BLOCK_TYPES}") from None
    return k.w(X) ** m / X


@lru_cache(maxsize=256)
def block_type_series(p: StructureParams, block_type: str, order: int) -> PowerSeries:
    """Generating function of blocks of one type (T, H, K, L or M).

    For gamma = 0 only rainbow (T) blocks exist; the other types are zero.
    """
    if block_type not in BLOCK_TYPES:
        raise ValueError(f"unknown block type {block_type!r}; expected one of {BLOCK_TYPES}")
    if p.gamma == 0 and block_type != "T":
        return PowerSeries.zero(order)
    G = solve_system(p, order).G
    s = h_function(p, block_type, G)
    _check_counting(f"B^{block_type}", s, p)
    return s


def other_block_series(p: StructureParams, order: int) -> PowerSeries:
    """Blocks whose maximal component has genus >= 2 (nonzero only for gamma = 2)."""
    b = solve_system(p, order)
    if p.gamma < 2:
        return PowerSeries.zero(order)
    rest = b.Bgamma
    for t in ("H", "K", "L", "M"):
        rest = rest - block_type_series(p, t, order)
    _check_counting("B^other", rest, p)
    return rest


def truncated_structure_series(p: StructureParams, m: int, order: int) -> PowerSeries:
    """Structures all of whose blocks have length <= m: ``1/(1 - F_{<=m})``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    F = solve_system(p, order).F
    return (1 - F.polynomial_part(m)).reciprocal()


def block_count(p: StructureParams, k: int, block_type: str | None, order: int) -> int:
    """``f(k)`` or, with a type, ``b^I(k)``."""
    if k >= order:
        raise ValueError(f"k={k} needs series order > {k}")
    if block_type is None:
        return solve_system(p, order).F[k]
    return block_type_series(p, block_type, order)[k]


def bivariate_block_count_series(
    p: StructureParams, k: int, block_type: str | None, order: int, bmax: int
) -> list[PowerSeries]:
    """Series ``S_b`` with ``[z^n] S_b`` = structures having exactly b (type-I) blocks of length k.

    Expands ``1/(1 - F - (u - 1) a_k z^k)`` in ``u``: with ``H = 1/(1 - F + a_k z^k)``
    the coefficient of ``u^b`` is ``(a_k z^k)^b H^(b+1)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if bmax < 0:
        raise ValueError("bmax must be >= 0")
    F = solve_system(p, order).F
    a = block_count(p, k, block_type, order) if k < order else 0
    mark = PowerSeries.monomial(k, order, a) if k < order else PowerSeries.zero(order)
    H = (1 - F + mark).reciprocal()
    step = mark * H
    out = [H]
    for _ in range(bmax):
        out.append(out[-1] * step)
    return out

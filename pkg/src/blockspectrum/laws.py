"""Exact finite-n laws and their limits: longest block, short blocks, block types.

Finite-n laws are exact rationals computed from the counting series; limit
laws are mpmath values built from :class:`SingularityData`.  The two never
mix, so comparisons between them are meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

import mpmath

from .params import StructureParams
from .series import PowerSeries
from .singularity import SingularityData
from .system import BLOCK_TYPES, block_count, bivariate_block_count_series, solve_system

EXACT_BOUND = 800
KL_COMBINED, KL_SEPARATE = "combined", "separate"
ARC_WEIGHTS = {"T": Fraction(1), "H": Fraction(1, 2), "K": Fraction(1, 3), "L": Fraction(1, 3), "M": Fraction(1, 3)}


class OrderError(ValueError):
    """Series order too small for the requested law."""


@dataclass(frozen=True)
class Pmf:
    """Probabilities over an integer support (missing points have mass 0).

    ``truncation_error`` is the mass a limit law puts outside ``probs``.
    """

    probs: Mapping[int, object]
    truncation_error: object = 0

    def __getitem__(self, k: int):
        return self.probs.get(k, 0)

    @property
    def support(self) -> list[int]:
        return sorted(self.probs)

    def total(self):
        return sum(self.probs.values())

    def mean(self):
        return sum(k * v for k, v in self.probs.items())

    def cdf(self, k: int):
        return sum(v for j, v in self.probs.items() if j <= k)

    def as_floats(self) -> "Pmf":
        return Pmf({k: float(v) for k, v in self.probs.items()}, float(self.truncation_error))


def kolmogorov_distance(a: Pmf, b: Pmf) -> float:
    """``sup_k |A(k) - B(k)|`` over the union of supports (plus the tails)."""
    pts = sorted(set(a.probs) | set(b.probs))
    fa = fb = 0
    worst = 0.0
    for k in pts:
        fa += a[k]
        fb += b[k]
        worst = max(worst, abs(float(fa) - float(fb)))
    # mass either law keeps beyond its support
    worst = max(worst, abs(float(1 - fa) - float(1 - fb)))
    return worst


def total_variation(a: Pmf, b: Pmf) -> float:
    """Half the l1 distance; mass outside both supports is counted once."""
    pts = set(a.probs) | set(b.probs)
    diff = sum(abs(float(a[k]) - float(b[k])) for k in pts)
    outside = abs(float(1 - a.total()) - float(1 - b.total()))
    return (diff + outside) / 2


def _bundle(p: StructureParams, n: int, order: Optional[int]):
    order = n + 1 if order is None else order
    if order < n + 1:
        raise OrderError(f"series order {order} cannot reach n={n}; need at least {n + 1}")
    return solve_system(p, order)


def _check_n(n: int, bound: int) -> None:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > bound:
        raise ValueError(f"n={n} exceeds the exact-law bound {bound}")


def _g_at_most(F: PowerSeries, m: int, n: int) -> int:
    """``[z^n] 1/(1 - F_{<=m})`` for ``F`` of order ``n + 1``."""
    if m <= 0:
        return 1 if n == 0 else 0
    return (1 - F.polynomial_part(m)).reciprocal()[n]


# ---------------------------------------------------------------- longest block


def longest_block_exact_dist(
    p: StructureParams, n: int, method: str = "auto", order: Optional[int] = None, bound: int = EXACT_BOUND
) -> Pmf:
    """Exact law of the longest block length ``m`` at length ``n``.

    ``method="truncation"`` takes every value from ``G_{<=m} - G_{<=m-1}``;
    ``"auto"`` uses ``[z^k]G^2 f(n-k) / g(n)`` with ``k = n - m`` whenever
    ``k < n/2`` (at most one block is that long) and truncation elsewhere.
    """
    if method not in ("auto", "truncation"):
        raise ValueError(f"unknown method {method!r}")
    _check_n(n, bound)
    b = _bundle(p, n, order)
    if n == 0:
        return Pmf({0: Fraction(1)})
    g_n = b.G[n]
    F = b.F.truncate(n + 1)
    G2 = None
    out = {}
    prev = _g_at_most(F, 0, n)
    for m in range(1, n + 1):
        k = n - m
        if method == "auto" and 2 * k < n:
            if G2 is None:
                G2 = b.G.truncate(n + 1) * b.G.truncate(n + 1)
            count = G2[k] * F[m]
        else:
            cur = _g_at_most(F, m, n)
            count = cur - prev
            prev = cur
        if count:
            out[m] = Fraction(count, g_n)
    return Pmf(out)


def longest_block_fast_path(p: StructureParams, n: int, k: int, order: Optional[int] = None) -> Fraction:
    """``P(B = n - k) = [z^k]G^2 [z^(n-k)]F / [z^n]G``, valid for ``k < n/2``."""
    if not 0 <= k or 2 * k >= n:
        raise ValueError(f"the fast path needs 0 <= k < n/2 (n={n}, k={k})")
    b = _bundle(p, n, order)
    G = b.G.truncate(n + 1)
    return Fraction((G * G)[k] * b.F[n - k], b.G[n])


def _b_coeffs(p: StructureParams, kmax: int) -> PowerSeries:
    G = solve_system(p, kmax + 1).G
    return G * G


def longest_block_limit_pmf(p: StructureParams, k: int, data: SingularityData):
    """``lim P(n - B = k) = tau^-2 b_k rho^k`` with ``b_k = [z^k] G^2``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    b_k = _b_coeffs(p, k)[k]
    with mpmath.workdps(data.precision):
        return b_k * data.rho**k / data.tau**2


def longest_block_limit_dist(p: StructureParams, kmax: int, data: SingularityData) -> Pmf:
    """The limit law of ``n - B`` on ``0..kmax``; ``truncation_error`` is the remaining mass.

    The law sums to 1 because ``sum_k b_k rho^k = G(rho)^2 = tau^2``.
    """
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    bk = _b_coeffs(p, kmax)
    with mpmath.workdps(data.precision):
        scale = 1 / data.tau**2
        probs = {}
        x = mpmath.mpf(1)
        for k in range(kmax + 1):
            probs[k] = bk[k] * x * scale
            x *= data.rho
        rest = 1 - mpmath.fsum(probs.values())
    return Pmf(probs, rest)


def tail_probability(p: StructureParams, t: int, data: SingularityData):
    """``lim P(B >= n - t) = sum_{k <= t} tau^-2 b_k rho^k``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    law = longest_block_limit_dist(p, t, data)
    with mpmath.workdps(data.precision):
        return mpmath.fsum(law.probs.values())


def longest_block_moments(n: int, data: SingularityData):
    """Leading-order ``(E[B], Var[B]) = (n - alpha n^1/2, beta n^3/2)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    with mpmath.workdps(data.precision):
        n = mpmath.mpf(n)
        return n - data.alpha * mpmath.sqrt(n), data.beta * n ** mpmath.mpf(1.5)


def longest_block_asymptotic_pmf(n: int, k: int, data: SingularityData):
    """``P(B = n - k) ~ 2 c tau^-1 (1 - k/n)^-3/2 k^-3/2`` for ``1 <= k < n``."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    with mpmath.workdps(data.precision):
        x = mpmath.mpf(k) / n
        return 2 * data.c / data.tau * (1 - x) ** mpmath.mpf(-1.5) * mpmath.mpf(k) ** mpmath.mpf(-1.5)


# ---------------------------------------------------------------- short blocks


@dataclass(frozen=True)
class NegBinomialParams:
    """NB(2, t): ``P(b) = (b + 1) t^b (1 - t)^2``."""

    t: object
    a_k: int
    expectation: object

    def pmf(self, b: int):
        if b < 0:
            return 0 * self.t
        return (b + 1) * self.t**b * (1 - self.t) ** 2

    def mean(self):
        return 2 * self.t / (1 - self.t)

    def dist(self, bmax: int) -> Pmf:
        probs = {b: self.pmf(b) for b in range(bmax + 1)}
        return Pmf(probs, 1 - sum(probs.values()))


def _check_type(block_type: Optional[str]) -> None:
    if block_type is not None and block_type not in BLOCK_TYPES:
        raise ValueError(f"unknown block type {block_type!r}; expected one of {BLOCK_TYPES}")


def short_block_limit_law(
    p: StructureParams, k: int, data: SingularityData, block_type: Optional[str] = None
) -> NegBinomialParams:
    """Limit law of the number of (type-I) blocks of length ``k``.

    ``t = a_k rho^k / (1 - tau' + a_k rho^k)`` and expectation
    ``2 a_k rho^k / (1 - tau')``, where ``a_k = f(k)`` or ``b^I(k)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_type(block_type)
    a_k = block_count(p, k, block_type, k + 1)
    with mpmath.workdps(data.precision):
        x = a_k * data.rho**k
        t = x / (1 - data.tau_prime + x)
        expectation = 2 * x / (1 - data.tau_prime)
    return NegBinomialParams(t, a_k, expectation)


def short_block_exact_dist(
    p: StructureParams,
    k: int,
    n: int,
    block_type: Optional[str] = None,
    order: Optional[int] = None,
    bound: int = EXACT_BOUND,
) -> Pmf:
    """Exact law of the number of (type-I) blocks of length ``k`` at length ``n``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_type(block_type)
    _check_n(n, bound)
    b = _bundle(p, n, order)
    bmax = n // k
    series = bivariate_block_count_series(p, k, block_type, n + 1, bmax)
    g_n = b.G[n]
    return Pmf({j: Fraction(s[n], g_n) for j, s in enumerate(series) if s[n]})


# ---------------------------------------------------------------- block types


@dataclass(frozen=True)
class TypeProbabilities:
    """Limit probabilities that the longest block has each type.

    ``eta_form`` and ``rho_tau_form`` are two closed forms of the same values;
    ``conditional`` renormalises over T, H, K, L, M (K and L separate).
    """

    eta_form: dict
    rho_tau_form: dict
    conditional: dict

    def max_form_gap(self):
        return max(abs(self.eta_form[t] - self.rho_tau_form[t]) for t in BLOCK_TYPES)


_ARCS = {"H": 2, "K": 3, "L": 3, "M": 4}


def block_type_limit_prob(p: StructureParams, data: SingularityData) -> TypeProbabilities:
    with mpmath.workdps(data.precision):
        if p.gamma == 0:
            # every block of a secondary structure is a rainbow
            probs = {t: mpmath.mpf(t == "T") for t in BLOCK_TYPES}
            return TypeProbabilities(probs, dict(probs), dict(probs))
        eta = data.eta
        rho, tau, r = data.rho, data.tau, p.r
        W = 1 - rho**2 + rho ** (2 * r)
        u = rho ** (2 * r) * tau**2
        eta_form = {"T": eta}
        rt_form = {"T": u / W}
        for t, m in _ARCS.items():
            eta_form[t] = eta**m * (2 * m - 1 + eta) / (1 - eta) ** (m + 1)
            rt_form[t] = u**m * ((2 * m - 1) * W + u) / (W - u) ** (m + 1)
        total = mpmath.fsum(eta_form.values())
        conditional = {t: v / total for t, v in eta_form.items()}
    return TypeProbabilities(eta_form, rt_form, conditional)


@dataclass(frozen=True)
class ArcBound:
    convention: str
    value: object


def longest_arc_bound(probs: TypeProbabilities, convention: str = KL_COMBINED) -> ArcBound:
    """``sum_I d_I P(I)`` with ``d_T = 1``, ``d_H = 1/2``, ``d_K = d_L = d_M = 1/3``.

    ``"combined"`` takes the K and L types as one entry of mass P(K) (this
    gives 0.487 for gamma = 1); ``"separate"`` weights K and L individually.
    """
    pr = probs.eta_form
    if convention == KL_COMBINED:
        kinds = ("T", "H", "K", "M")
    elif convention == KL_SEPARATE:
        kinds = BLOCK_TYPES
    else:
        raise ValueError(f"convention must be {KL_COMBINED!r} or {KL_SEPARATE!r}")
    value = sum(pr[t] * ARC_WEIGHTS[t].numerator / ARC_WEIGHTS[t].denominator for t in kinds)
    return ArcBound(convention, value)

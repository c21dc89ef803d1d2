"""Dominant singularity and the asymptotic constants built from it."""
from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache

import mpmath

from .algebraic import BivariatePolynomial, build_Q
from .params import StructureParams
from .system import SeriesBundle, solve_system

DEFAULT_DIGITS = 60
HINT_ORDER = 200
# relative agreement required between rho and the coefficient-ratio estimate
RATIO_TOLERANCE = 1e-3


class SingularityError(RuntimeError):
    """Root finding failed or produced a point that is not the dominant singularity."""

    def __init__(self, message: str, residuals=None):
        super().__init__(message if residuals is None else f"{message}; residuals={residuals}")
        self.residuals = residuals


class SchemaError(SingularityError):
    """The square-root singular schema does not apply at the located point."""


@dataclass(frozen=True)
class SingularityData:
    params: StructureParams
    rho: mpmath.mpf
    tau: mpmath.mpf
    tau_prime: mpmath.mpf
    delta: mpmath.mpf
    delta_prime: mpmath.mpf
    c: mpmath.mpf
    c_prime: mpmath.mpf
    eta: mpmath.mpf
    alpha: mpmath.mpf
    beta: mpmath.mpf
    precision: int
    residual_q: mpmath.mpf
    residual_qx: mpmath.mpf

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def ratio_estimate(bundle: SeriesBundle, dps: int = DEFAULT_DIGITS):
    """``rho`` from the last two coefficients, corrected for the ``n^-3/2`` factor."""
    n = bundle.order - 2
    with mpmath.workdps(dps):
        g0 = mpmath.mpf(bundle.G[n])
        g1 = mpmath.mpf(bundle.G[n + 1])
        return g0 / g1 * (mpmath.mpf(n) / (n + 1)) ** mpmath.mpf(1.5)


def _truncated_value(bundle: SeriesBundle, z, dps: int):
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for c in reversed(bundle.G.coeffs):
            total = total * z + c
        return total


def find_dominant_singularity(
    Q: BivariatePolynomial, hint: SeriesBundle, digits: int = DEFAULT_DIGITS, max_iter: int = 200
):
    """Solve ``Q = Q_X = 0`` by two-dimensional Newton iteration.

    The start point comes from the series: ``rho0`` from successive
    coefficient ratios, ``tau0`` from the truncated sum plus a
    ``2 c N^-1/2`` tail estimate.  The result is accepted only if ``rho``
    agrees with ``rho0`` to :data:`RATIO_TOLERANCE` and both residuals are
    below ``10^-(digits - 10)``.
    """
    if hint.order < 100:
        raise ValueError("hint series needs order >= 100")
    Qx = Q.diff_x()
    Qz = Q.diff_z()
    Qxx = Qx.diff_x()
    Qxz = Qx.diff_z()
    work = digits + 15
    with mpmath.workdps(work):
        rho0 = ratio_estimate(hint, work)
        N = hint.order - 1
        c_est = mpmath.mpf(hint.G[N]) * mpmath.mpf(N) ** 1.5 * rho0 ** N
        tau0 = _truncated_value(hint, rho0, work) + 2 * c_est / mpmath.sqrt(N)
        z, x = rho0, tau0
        tol = mpmath.mpf(10) ** (-(digits + 5))
        converged = False
        for _ in range(max_iter):
            f1, f2 = Q(z, x), Qx(z, x)
            a, b = Qz(z, x), Qx(z, x)
            c, d = Qxz(z, x), Qxx(z, x)
            det = a * d - b * c
            if det == 0:
                raise SingularityError("singular Jacobian in Newton iteration", (f1, f2))
            dz = (f1 * d - b * f2) / det
            dx = (a * f2 - c * f1) / det
            z, x = z - dz, x - dx
            if not (mpmath.isfinite(z) and mpmath.isfinite(x)):
                raise SingularityError("Newton iteration diverged", (f1, f2))
            if abs(dz) < tol * (1 + abs(z)) and abs(dx) < tol * (1 + abs(x)):
                converged = True
                break
        res = (abs(Q(z, x)), abs(Qx(z, x)))
        if not converged:
            raise SingularityError("Newton iteration did not converge", res)
        bound = mpmath.mpf(10) ** (-(digits - 10))
        if res[0] > bound or res[1] > bound:
            raise SingularityError("residuals above tolerance", res)
        if not (0 < z < 1 and x > 1):
            raise SingularityError(f"root (rho={z}, tau={x}) is outside 0<rho<1, tau>1", res)
        if abs(z / rho0 - 1) > RATIO_TOLERANCE:
            raise SingularityError(
                f"rho={mpmath.nstr(z, 12)} disagrees with ratio estimate {mpmath.nstr(rho0, 12)}", res
            )
    with mpmath.workdps(digits):
        return +z, +x


def singular_constants(
    Q: BivariatePolynomial, rho, tau, bundle: SeriesBundle, digits: int = DEFAULT_DIGITS
) -> SingularityData:
    """Square-root expansion ``G = tau + delta (rho - z)^1/2 + ...`` and derived constants."""
    p = bundle.params
    Qx = Q.diff_x()
    with mpmath.workdps(digits + 10):
        rho = mpmath.mpf(rho)
        tau = mpmath.mpf(tau)
        qz = Q.diff_z()(rho, tau)
        qxx = Qx.diff_x()(rho, tau)
        if abs(qxx) < mpmath.mpf(10) ** (-(digits // 2)):
            raise SchemaError("Q_XX vanishes at the singularity", (qz, qxx))
        ratio = 2 * qz / qxx
        if ratio <= 0:
            raise SchemaError("2 Q_z / Q_XX is not positive", (qz, qxx))
        delta = -mpmath.sqrt(ratio)
        c = delta * mpmath.sqrt(rho) / mpmath.gamma(mpmath.mpf(-0.5))
        tau_prime = 1 - 1 / tau
        u = rho ** (2 * p.r) / (1 - rho ** 2 + rho ** (2 * p.r))
        eta = u * tau ** 2
        alpha = 4 * c / tau
        beta = (1 - mpmath.pi / 4) * alpha
        res_q = abs(Q(rho, tau))
        res_qx = abs(Qx(rho, tau))
    with mpmath.workdps(digits):
        return SingularityData(
            params=p,
            rho=+rho,
            tau=+tau,
            tau_prime=+tau_prime,
            delta=+delta,
            delta_prime=+(delta / tau ** 2),
            c=+c,
            c_prime=+(c / tau ** 2),
            eta=+eta,
            alpha=+alpha,
            beta=+beta,
            precision=digits,
            residual_q=+res_q,
            residual_qx=+res_qx,
        )


@lru_cache(maxsize=128)
def singularity_data(p: StructureParams, digits: int = DEFAULT_DIGITS) -> SingularityData:
    """Build ``Q``, locate ``(rho, tau)`` and return every constant for ``p``."""
    Q = build_Q(p)
    bundle = solve_system(p, HINT_ORDER)
    rho, tau = find_dominant_singularity(Q, bundle, digits)
    return singular_constants(Q, rho, tau, bundle, digits)


def coefficient_asymptotics(data: SingularityData, n: int, series: str = "G"):
    """``c n^-3/2 rho^-n`` (``series="G"``) or the block analogue with ``c'`` (``"F"``)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    const = {"G": data.c, "F": data.c_prime}[series]
    with mpmath.workdps(data.precision):
        return const * mpmath.mpf(n) ** mpmath.mpf(-1.5) * data.rho ** (-n)

"""CSV/TSV writers.  All numbers leave as decimal strings, never in exponent form.

Columns
-------
series     n, g, f, b0, bgamma, bT, bH, bK, bL, bM  (exact integers)
constants  gamma, r, lambda, rho, tau, tau_prime, delta, delta_prime, c, c_prime,
           eta, alpha, beta, precision, residual_q, residual_qx, tau_check
pmf        index, probability, exact          (finite-n rational laws; exact is p/q)
limit pmf  index, probability, truncation_error
samples    one line per sample of ``length:type`` tokens joined by ``;``
"""
from __future__ import annotations

import csv
import io
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .params import StructureParams
from .system import BLOCK_TYPES, block_type_series, solve_system

PMF_DIGITS = 40


def decimal_string(x, digits: int = PMF_DIGITS) -> str:
    """Plain positional decimal for ints, Fractions and mpmath numbers."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        with localcontext() as ctx:
            ctx.prec = digits
            d = Decimal(x.numerator) / Decimal(x.denominator)
        return format(d, "f")
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    return format(Decimal(repr(float(x))), "f")


def write_rows(header: Sequence[str], rows: Iterable[Sequence], out, fmt: str = "csv") -> None:
    delim = {"csv": ",", "tsv": "\t"}[fmt]
    w = csv.writer(out, delimiter=delim, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)


def rows_to_text(header, rows, fmt: str = "csv") -> str:
    buf = io.StringIO()
    write_rows(header, rows, buf, fmt)
    return buf.getvalue()


SERIES_HEADER = ("n", "g", "f", "b0", "bgamma") + tuple(f"b{t}" for t in BLOCK_TYPES)


def series_rows(p: StructureParams, order: int):
    b = solve_system(p, order)
    typed = [block_type_series(p, t, order) for t in BLOCK_TYPES]
    for n in range(order):
        yield [n, b.G[n], b.F[n], b.B0[n], b.Bgamma[n]] + [s[n] for s in typed]


CONSTANT_FIELDS = (
    "rho", "tau", "tau_prime", "delta", "delta_prime", "c", "c_prime",
    "eta", "alpha", "beta", "precision", "residual_q", "residual_qx",
)
CONSTANTS_HEADER = ("gamma", "r", "lambda") + CONSTANT_FIELDS + ("tau_check",)


def constants_row(data) -> list:
    """``tau_check`` is ``|tau (1 - tau') - 1|``, zero up to working precision."""
    p = data.params
    with mpmath.workdps(data.precision):
        check = abs(data.tau * (1 - data.tau_prime) - 1)
        row = [p.gamma, p.r, p.lam]
        for name in CONSTANT_FIELDS:
            v = getattr(data, name)
            if name.startswith("residual"):
                row.append(mpmath.nstr(v, 5))
            elif isinstance(v, int):
                row.append(v)
            else:
                row.append(decimal_string(v, data.precision))
        row.append(mpmath.nstr(check, 5))
    return row


def pmf_rows(pmf, limit: bool = False):
    """Rows for a finite-n law, or for a limit law when ``limit`` is set.

    The limit-law truncation error of row k is the mass beyond k.
    """
    if not limit:
        for k in pmf.support:
            v = pmf[k]
            exact = f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else ""
            yield [k, decimal_string(v), exact]
        return
    ks = pmf.support
    rest = pmf.truncation_error
    tail = [None] * len(ks)
    for i in range(len(ks) - 1, -1, -1):
        tail[i] = rest
        rest = rest + pmf[ks[i]]
    for k, t in zip(ks, tail):
        yield [k, decimal_string(pmf[k], 25), mpmath.nstr(t, 10)]


PMF_HEADER = ("index", "probability", "exact")
LIMIT_PMF_HEADER = ("index", "probability", "truncation_error")


def sample_lines(samples) -> str:
    return "".join(s.format() + "\n" for s in samples)

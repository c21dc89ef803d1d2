"""Command line front end.  Every command writes plot-ready CSV (or TSV).

Exit codes: 0 success, 2 invalid configuration, 3 internal consistency
failure, 4 verification failure.
"""
from __future__ import annotations

import argparse
import sys

import mpmath

from . import export
from .params import ConsistencyError, InvalidParameters, StructureParams
from .singularity import DEFAULT_DIGITS, SingularityError

EXIT_OK, EXIT_CONFIG, EXIT_CONSISTENCY, EXIT_VERIFY = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


def _params(args) -> StructureParams:
    return StructureParams(args.gamma, args.stack, args.arclen)


def _data(args):
    from .singularity import singularity_data

    return singularity_data(_params(args), args.digits)


def _emit(args, header, rows) -> None:
    export.write_rows(header, rows, args.out, args.format)


def cmd_series(args) -> int:
    if args.order < 1:
        raise ConfigError("--order must be >= 1")
    _emit(args, export.SERIES_HEADER, export.series_rows(_params(args), args.order))
    return EXIT_OK


def cmd_constants(args) -> int:
    _emit(args, export.CONSTANTS_HEADER, [export.constants_row(_data(args))])
    return EXIT_OK


def cmd_longest(args) -> int:
    from .laws import longest_block_exact_dist, longest_block_limit_dist

    p = _params(args)
    if args.n is not None:
        _emit(args, export.PMF_HEADER, export.pmf_rows(longest_block_exact_dist(p, args.n)))
    else:
        law = longest_block_limit_dist(p, args.tail, _data(args))
        _emit(args, export.LIMIT_PMF_HEADER, export.pmf_rows(law, limit=True))
    return EXIT_OK


def cmd_tail(args) -> int:
    from .laws import tail_probability

    value = tail_probability(_params(args), args.tail, _data(args))
    _emit(args, ("gamma", "r", "lambda", "t", "probability"),
          [[args.gamma, args.stack, args.arclen, args.tail, export.decimal_string(value, 20)]])
    return EXIT_OK


def cmd_short(args) -> int:
    from .laws import short_block_exact_dist, short_block_limit_law

    p = _params(args)
    if args.k < 1:
        raise ConfigError("--k must be >= 1")
    data = _data(args)
    nb = short_block_limit_law(p, args.k, data, args.type)
    print(
        f"# NB(2,t) t={mpmath.nstr(nb.t, 15)} a_k={nb.a_k} expectation={mpmath.nstr(nb.expectation, 15)}",
        file=args.out,
    )
    if args.n is not None:
        pmf = short_block_exact_dist(p, args.k, args.n, args.type)
        _emit(args, export.PMF_HEADER, export.pmf_rows(pmf))
    else:
        _emit(args, export.LIMIT_PMF_HEADER, export.pmf_rows(nb.dist(args.bmax), limit=True))
    return EXIT_OK


def cmd_types(args) -> int:
    from .laws import KL_COMBINED, KL_SEPARATE, block_type_limit_prob, longest_arc_bound
    from .system import BLOCK_TYPES

    p = _params(args)
    data = _data(args)
    probs = block_type_limit_prob(p, data)
    rows = []
    for t in BLOCK_TYPES:
        rows.append([t] + [export.decimal_string(m[t], 20)
                           for m in (probs.eta_form, probs.rho_tau_form, probs.conditional)])
    _emit(args, ("type", "probability", "rho_tau_form", "conditional"), rows)
    if p.gamma == 1:
        for conv in (KL_COMBINED, KL_SEPARATE):
            b = longest_arc_bound(probs, conv)
            print(f"# longest-arc bound ({b.convention} K&L): {mpmath.nstr(b.value, 6)} n", file=args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import DEFAULT_BOUND, enumerate_structures
    from .system import solve_system

    p = _params(args)
    nmax = 12 if args.n is None else args.n
    if nmax > DEFAULT_BOUND:
        raise ConfigError(f"--n {nmax} exceeds the enumeration bound {DEFAULT_BOUND}")
    G = solve_system(p, nmax + 1).G
    rows = []
    ok = True
    for n in range(nmax + 1):
        count = enumerate_structures(n, p).count
        ok &= count == G[n]
        rows.append([n, count, G[n], "yes" if count == G[n] else "NO"])
    _emit(args, ("n", "oracle", "series", "match"), rows)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_sample(args) -> int:
    from .sampler import BlockSampler

    if args.n is None:
        raise ConfigError("sample needs --n")
    if args.samples < 0:
        raise ConfigError("--samples must be >= 0")
    sampler = BlockSampler(_params(args), args.n, args.seed)
    args.out.write(export.sample_lines(sampler.stream(args.n, args.samples)))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all(args.only, echo=lambda line: print(line, file=args.out, flush=True))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blockspectrum", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", type=int, default=1, help="maximal component genus (0..2)")
    common.add_argument("--stack", type=int, default=2, help="minimum stack length r")
    common.add_argument("--arclen", type=int, default=2, help="minimum arc length lambda")
    common.add_argument("--out", type=argparse.FileType("w", encoding="utf-8"), default=sys.stdout)
    common.add_argument("--format", choices=("csv", "tsv"), default="csv")

    digits = argparse.ArgumentParser(add_help=False)
    digits.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="working precision")

    def add(name, fn, parents, help_):
        sp = sub.add_parser(name, parents=parents, help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("series", cmd_series, [common], "counting sequences g, f, b0, bgamma, b^I")
    sp.add_argument("--order", type=int, default=30, help="number of coefficients")

    add("constants", cmd_constants, [common, digits], "singularity constants")

    sp = add("longest", cmd_longest, [common, digits], "longest block law (exact with --n, else limit)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--tail", type=int, default=100, help="limit law support 0..t")

    sp = add("tail", cmd_tail, [common, digits], "lim P(B >= n - t)")
    sp.add_argument("--tail", type=int, default=100)

    sp = add("short", cmd_short, [common, digits], "number of length-k blocks")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--type", choices=("T", "H", "K", "L", "M"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--bmax", type=int, default=30, help="limit law support 0..bmax")

    add("types", cmd_types, [common, digits], "block type limit probabilities")

    sp = add("oracle", cmd_oracle, [common], "exhaustive counts against the series")
    sp.add_argument("--n", type=int, help="largest length (default 12)")

    sp = add("sample", cmd_sample, [common], "block sequences of uniform random structures")
    sp.add_argument("--n", type=int)
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("verify", help="run the acceptance criteria")
    sp.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    sp.add_argument("--out", type=argparse.FileType("w", encoding="utf-8"), default=sys.stdout)
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameters, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConsistencyError, SingularityError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

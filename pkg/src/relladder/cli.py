"""Command-line front end: ``relladder {rel2,sweep,gf,zeros,freq,verify}``.

Exit codes: 0 ok, 1 usage or input error, 2 numerical failure,
3 verification failure.  ``RELLADDER_PRECISION`` sets the default working
precision (bits) of the root finder.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import RelLadderError, TooLarge, ZeroAvailability
from .ladder import LadderConfig, expand_graph
from .oracle import oracle_enumerate, oracle_factoring
from .spectral import asymptotic_rate, dominant_eigenvalue, failure_frequency, gf_extract
from .transfer import rel2, rel2_gradient
from .verify import run_checks
from .zeros import case_preset, find_roots, limit_curve, poly_in_p, write_curve_csv, write_roots_csv

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_PRECISION = 256


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_precision() -> int:
    raw = os.environ.get("RELLADDER_PRECISION")
    if not raw:
        return DEFAULT_PRECISION
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"RELLADDER_PRECISION must be an integer, got {raw!r}") from None
    if bits < 53:
        raise UsageError("RELLADDER_PRECISION must be at least 53")
    return bits


def _exact(text: str) -> Fraction:
    """Parse ``"1/3"``, ``"0.25"`` or ``"2"`` as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.15g}{x.imag:+.15g}j"
    return f"{float(x) + 0.0:.15g}"


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load_config(path: str) -> LadderConfig:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: config must be a JSON object")
    try:
        return LadderConfig.from_json(doc)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"{path}: {exc}") from None


# --- commands ----------------------------------------------------------------


def cmd_rel2(args, out) -> int:
    cfg = _load_config(args.config)
    value = rel2(cfg)
    out.write(f"rel2 {_fmt(value)}\n")
    if isinstance(value, Fraction):
        out.write(f"exact {value}\n")
    if args.gradient:
        w = csv.writer(out)
        w.writerow(["component", "cell", "derivative"])
        for (f, i), g in rel2_gradient(cfg).items():
            w.writerow([f, i, _fmt(g)])
    status = EXIT_OK
    if args.oracle:
        graph = expand_graph(cfg)
        try:
            ref = oracle_enumerate(graph)
        except TooLarge:
            try:
                ref = oracle_factoring(graph)
            except TooLarge as exc:
                print(f"warning: oracle skipped: {exc}", file=sys.stderr)
                return status
        dev = abs(float(value) - float(ref))
        out.write(f"oracle {_fmt(ref)}\n")
        out.write(f"max_deviation {dev:.3e}\n")
        if dev > args.tol:
            print(f"oracle deviation {dev:.3e} exceeds tolerance {args.tol:g}", file=sys.stderr)
            status = EXIT_VERIFY
    return status


def _grid(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise UsageError("--step must be positive")
    if lo > hi:
        raise UsageError(f"empty range {lo}:{hi}")
    k = int((hi - lo) / step + Fraction(1, 10**9))
    return [lo + j * step for j in range(k + 1)]


def _range(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = Fraction(parts[0])
            return v, v
        if len(parts) == 2:
            return Fraction(parts[0]), Fraction(parts[1])
    except (ValueError, ZeroDivisionError):
        pass
    raise UsageError(f"range must look like 'lo:hi' or a single value, got {text!r}")


def _sweep_row(task):
    preset, n, p, rho, lam = task
    row = [_fmt(p), _fmt(rho)]
    try:
        row.append(_fmt(rel2(LadderConfig.uniform(preset, n, float(p), float(rho)))))
    except (RelLadderError, ArithmeticError):
        row.append("")
    try:
        row.append(_fmt(dominant_eigenvalue(preset, p, rho)))
    except (RelLadderError, ArithmeticError):
        row.append("")
    try:
        row.append(_fmt(asymptotic_rate(preset, float(p), rho, lam)[1]))
    except (RelLadderError, ArithmeticError, ValueError):
        row.append("")
    return row


def cmd_sweep(args, out) -> int:
    preset = case_preset(args.preset)
    p_lo, p_hi = _range(args.p_range)
    r_lo, r_hi = _range(args.rho_range)
    if not (0 <= p_lo <= p_hi <= 1 and 0 <= r_lo <= r_hi <= 1):
        raise UsageError("p and rho ranges must lie within [0, 1]")
    step = Fraction(args.step)
    tasks = [(preset, args.n, p, r, args.lam) for r in _grid(r_lo, r_hi, step) for p in _grid(p_lo, p_hi, step)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks, chunksize=8))
    else:
        rows = [_sweep_row(t) for t in tasks]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["p", "rho", "rel2", "zeta_plus", "lambda_slope"])
    w.writerows(rows)
    return EXIT_OK


def cmd_gf(args, out) -> int:
    gf = gf_extract(case_preset(args.preset), args.p, args.rho)
    out.write(f"order {gf.order}\n")
    out.write("N " + " ".join(str(c) for c in gf.N.coeffs) + "\n")
    out.write("D " + " ".join(str(c) for c in gf.D.coeffs) + "\n")
    out.write(f"N(z) = {gf.N.format('z')}\n")
    out.write(f"D(z) = {gf.D.format('z')}\n")
    return EXIT_OK


def _list(text: str, conv):
    try:
        return [conv(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse list {text!r}") from None


def cmd_zeros(args, out) -> int:
    preset = case_preset(args.preset)
    ns = _list(args.n, int)
    rhos = _list(args.rho, Fraction)
    sets = []
    for rho in rhos:
        for n in ns:
            sets.append(find_roots(poly_in_p(preset, n, rho), args.precision, n=n, rho=rho))
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_roots_csv(sets, fh)
    else:
        write_roots_csv(sets, out)
    if args.curve:
        try:
            region = tuple(float(x) for x in args.region.split(","))
        except ValueError:
            raise UsageError(f"--region must be re_min,re_max,im_min,im_max, got {args.region!r}") from None
        if len(region) != 4:
            raise UsageError("--region needs four numbers")
        with open(args.curve, "w", newline="", encoding="utf-8") as fh:
            for rho in rhos:
                sample = limit_curve(preset, rho, region, args.grid, tolerance=max(args.tol, 1e-12))
                write_curve_csv(sample, fh)
    return EXIT_OK


def _rate(value):
    """A rate as a number, an exact string, or a ``[lambda, mu]`` pair."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise UsageError(f"rate pair must be [lambda, mu], got {value!r}")
        return (_rate(value[0]), _rate(value[1]))
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise UsageError(f"not a rate: {value!r}")
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not a rate: {value!r}") from None
    if value < 0:
        raise UsageError(f"rates must be non-negative, got {value}")
    return value


def _rates(doc, cfg: LadderConfig) -> dict:
    """Rates JSON: ``{"schema": 1, "edges": l, "nodes": l, "components": [...]}``.

    ``edges`` / ``nodes`` give a default failure rate (or ``[lambda, mu]``)
    per component class; entries of ``components`` override single
    components as ``{"field": "a", "cell": 1, "lambda": ..., "mu": ...}``.
    """
    if not isinstance(doc, dict):
        raise UsageError("rates must be a JSON object")
    if doc.get("schema", 1) != 1:
        raise UsageError(f"unsupported rates schema {doc.get('schema')!r}")
    edge = doc.get("edges", doc.get("default"))
    node = doc.get("nodes", doc.get("default"))
    rates = {}
    for key in cfg.components():
        f, _ = key
        val = node if f in ("S", "T") else edge
        if val is not None:
            rates[key] = _rate(val)
    for item in doc.get("components", []):
        try:
            key = (item["field"], int(item["cell"]))
            lam = item["lambda"]
        except (KeyError, TypeError, ValueError):
            raise UsageError(f"bad component rate entry {item!r}") from None
        rates[key] = _rate([lam, item["mu"]] if "mu" in item else lam)
    missing = [k for k in cfg.components() if k not in rates]
    if missing:
        raise UsageError(f"no rate for components {missing[:5]}{' ...' if len(missing) > 5 else ''}")
    return rates


def cmd_freq(args, out) -> int:
    cfg = _load_config(args.config)
    rates = _rates(_load_json(args.rates), cfg)
    try:
        res = failure_frequency(cfg, rates)
    except ZeroAvailability as exc:
        out.write("availability 0\n")
        out.write(f"frequency {_fmt(exc.nu)}\n")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    out.write(f"availability {_fmt(res.availability)}\n")
    out.write(f"frequency {_fmt(res.frequency)}\n")
    out.write(f"rate {_fmt(res.rate)}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    checks = run_checks(seed=args.seed, quick=args.quick, precision_bits=args.precision)
    ok = all(c.passed for c in checks)
    if args.json:
        json.dump({"passed": ok, "checks": [c.as_dict() for c in checks]}, out, indent=2)
        out.write("\n")
    else:
        for c in checks:
            out.write(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}\n")
    return EXIT_OK if ok else EXIT_VERIFY


# --- parser ------------------------------------------------------------------


def build_parser(precision: int) -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision", type=int, default=precision, help="working precision in bits (default %(default)s)")
    common.add_argument("--tol", type=float, default=1e-12, help="tolerance for cross-checks (default %(default)s)")

    parser = _Parser(prog="relladder", description="Two-terminal reliability of K4 ladders.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rel2", parents=[common], help="reliability of a ladder config")
    p.add_argument("config", help="JSON ladder config")
    p.add_argument("--gradient", action="store_true", help="also print per-component derivatives")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force when small enough")
    p.set_defaults(func=cmd_rel2)

    p = sub.add_parser("sweep", parents=[common], help="CSV of rel2, zeta_plus and rate slope over a (p, rho) grid")
    p.add_argument("--preset", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-range", default="0:1")
    p.add_argument("--rho-range", default="1")
    p.add_argument("--step", default="1/10", help="grid step, exact (default %(default)s)")
    p.add_argument("--lam", type=float, default=1.0, help="edge failure rate for the slope column")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gf", parents=[common], help="exact generating function N(z)/D(z)")
    p.add_argument("--preset", required=True, help="preset, or 'directed'/'undirected' for the Angele ladders")
    p.add_argument("--p", type=_exact, required=True)
    p.add_argument("--rho", type=_exact, required=True)
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("zeros", parents=[common], help="complex zeros of Rel2 as a polynomial in p")
    p.add_argument("--preset", required=True, help="preset, or 'directed'/'undirected' for the Angele ladders")
    p.add_argument("--n", required=True, help="ladder length(s), comma separated")
    p.add_argument("--rho", required=True, help="node reliability(ies), exact, comma separated")
    p.add_argument("--out", help="roots CSV path (default stdout)")
    p.add_argument("--curve", help="also write limit-curve points to this CSV")
    p.add_argument("--region", default="-3,5,-3,3")
    p.add_argument("--grid", type=int, default=241)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("freq", parents=[common], help="availability, failure frequency and rate")
    p.add_argument("config", help="JSON ladder config")
    p.add_argument("rates", help="JSON failure rates")
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("verify", parents=[common], help="oracle and printed-formula self-checks")
    p.add_argument("--json", action="store_true", help="machine-readable summary")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--seed", type=int, default=20240601)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        precision = _default_precision()
        try:
            args = build_parser(precision).parse_args(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
        if args.precision < 53:
            raise UsageError("--precision must be at least 53 bits")
        return args.func(args, out)
    except UsageError as exc:
        print(f"relladder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RelLadderError as exc:
        print(f"relladder: {type(exc).__name__}: {exc}", file=sys.stderr)
        if type(exc).__name__ == "PresetViolation":
            return EXIT_USAGE
        return EXIT_NUMERIC
    except (ArithmeticError, OverflowError) as exc:
        print(f"relladder: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

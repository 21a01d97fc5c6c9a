"""Command-line front end: ``jacobi-spectra <command> ...``.

Commands
--------

analyze
    Propagate a generalized eigenvector and write its trace plus the
    commutator diagnostics trace, one pair of files per spectral
    parameter.
check
    Run a theorem hypothesis checker and emit a verdict report as JSON.
    Verdicts (pass/fail/inconclusive) are data, not exit codes, so batch
    sweeps over families always complete.
spectrum
    Eigenvalues of the N x N truncation (optionally with Gauss weights),
    or per-bin eigenvalue counts when a window and bin width are given.
transform
    Derived-sequence tables: sign flip, even/odd restrictions of the
    square, or birth-death generator conversion.

Every output directory receives a ``config.json`` with the serialized run
configuration and the tool version, and identical configurations produce
byte-identical outputs.  Numbers are written with 17 significant digits
and a '.' decimal separator regardless of locale.

Exit codes: 0 success (including failing verdicts), 2 spec/usage errors,
3 domain errors during evaluation.

The environment variable ``JACOBI_SPECTRA_THREADS`` caps internal
parallelism; the current implementation is sequential, so any cap is
honored trivially.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, asdict

from . import __version__
from .errors import DomainError, JacobiError, ParseError
from . import diagnostics, recurrence, spectra, transforms
from .sequences import WeightSequence, instantiate, parse_family

EXIT_OK = 0
EXIT_SPEC_ERROR = 2
EXIT_DOMAIN_ERROR = 3


@dataclass
class RunConfig:
    """Everything needed to reproduce one CLI run."""

    command: str
    seq: str | None = None
    rates: str | None = None
    lambdas: list = field(default_factory=list)
    n: int | None = None
    size: int | None = None
    alpha: str | None = None
    theorem: str | None = None
    K: int | None = None
    init: str | None = None
    window: str | None = None
    bin: float | None = None
    weights: bool = False
    tol: float | None = None
    format: str = "csv"
    out: str | None = None
    version: str = __version__


def _resolve_alpha(choice, seq):
    if choice is None or choice == "a":
        return WeightSequence.from_a(seq)
    if choice == "one":
        return WeightSequence.ones()
    if choice.startswith("iterlog"):
        _, _, k = choice.partition(":")
        return WeightSequence.iterlog_weight(seq, int(k) if k else 1)
    if choice.startswith("table:"):
        path = choice[len("table:"):]
        with open(path) as fh:
            values = [float(line.split(",")[-1]) for line in fh
                      if line.strip() and not line[0].isalpha()]
        return WeightSequence.from_table(values)
    raise ParseError("unknown alpha choice %r" % choice)


def _resolve_init(text, seq, lam):
    if text is None or text == "p":
        return recurrence.poly_init(seq, lam)
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("init must be 'p' or 'u0,u1', got %r" % text)
    return recurrence.EigvecInit(float(parts[0]), float(parts[1]))


def _resolve_rates(args):
    if getattr(args, "rates", None):
        if os.path.exists(args.rates):
            return transforms.load_rates_csv(args.rates)
        return transforms.parse_rates(args.rates)
    if getattr(args, "bd", None):
        return transforms.parse_rates(args.bd)
    raise ParseError("no rates given (use --rates or --bd)")


def _ensure_outdir(path):
    os.makedirs(path, exist_ok=True)
    return path


def _write_config(outdir, cfg):
    with open(os.path.join(outdir, "config.json"), "w") as fh:
        json.dump(asdict(cfg), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _lam_tag(lam):
    return ("%g" % lam).replace("-", "m").replace(".", "p")


def _emit_json(path_or_none, payload):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path_or_none:
        with open(path_or_none, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands --------------------------------------------------------------


def cmd_analyze(args):
    spec = parse_family(args.seq)
    seq = instantiate(spec)
    lams = args.lambdas
    cfg = RunConfig(command="analyze", seq=args.seq, lambdas=lams, n=args.n,
                    alpha=args.alpha or "a", init=args.init or "p",
                    format=args.format, out=args.out)
    outdir = _ensure_outdir(args.out or ".")
    alpha = _resolve_alpha(args.alpha, seq)
    for lam in lams:
        init = _resolve_init(args.init, seq, lam)
        states = list(recurrence.propagate(seq, lam, init, args.n))
        tag = _lam_tag(lam)
        recurrence.write_trace_csv(
            os.path.join(outdir, "eigvec_lambda_%s.csv" % tag), states)
        trace = diagnostics.s_sequence(seq, alpha, lam, init, args.n)
        diagnostics.write_trace_csv(
            os.path.join(outdir, "diagnostics_lambda_%s.csv" % tag), trace)
    _write_config(outdir, cfg)
    return EXIT_OK


def cmd_check(args):
    theorem = args.theorem
    cfg = RunConfig(command="check", seq=args.seq, rates=args.bd or args.rates,
                    n=args.n, alpha=args.alpha, theorem=theorem, K=args.k,
                    out=args.out)
    extra = {"theorem": theorem, "n": args.n, "version": __version__}
    if theorem == "51":
        rates = _resolve_rates(args)
        verdicts, conclusion = transforms.bd_check_theorem_51(rates, args.n)
        extra["rates"] = rates.name
        extra["conclusion"] = conclusion
    else:
        seq = instantiate(parse_family(args.seq))
        extra["seq"] = args.seq
        if theorem == "A":
            alpha = _resolve_alpha(args.alpha, seq)
            verdicts = diagnostics.check_theorem_A(seq, alpha, args.n)
        elif theorem == "B":
            verdicts = diagnostics.check_corollary_B(seq, args.n)
        elif theorem == "C":
            result = diagnostics.check_corollary_C(seq, args.n)
            verdicts = result.verdicts
            extra["M"] = result.M
            extra["M_dispersion"] = result.M_dispersion
            extra["ratio_tail"] = result.ratio_tail
            extra["undefined_ratios"] = result.undefined_ratios
        elif theorem == "42":
            verdicts = diagnostics.check_theorem_42(seq, args.n)
        elif theorem == "43":
            verdicts = diagnostics.check_theorem_43(seq, args.k or 1, args.n)
        else:
            raise ParseError("unknown theorem %r" % theorem)
    report = diagnostics.verdicts_to_json(verdicts, extra=extra)
    if args.out:
        outdir = _ensure_outdir(args.out)
        _write_config(outdir, cfg)
        _emit_json(os.path.join(outdir, "verdict.json"), report)
    else:
        _emit_json(None, report)
    return EXIT_OK


def cmd_spectrum(args):
    if args.size < 1:
        raise ParseError("--size must be >= 1, got %d" % args.size)
    seq = instantiate(parse_family(args.seq))
    cfg = RunConfig(command="spectrum", seq=args.seq, size=args.size,
                    window=args.window, bin=args.bin, weights=args.weights,
                    tol=args.tol, format=args.format, out=args.out)
    outdir = _ensure_outdir(args.out or ".")
    if args.window is not None:
        if args.bin is None:
            raise ParseError("--window requires --bin")
        lo, _, hi = args.window.partition(",")
        rows = spectra.density_report(seq, args.size,
                                      (float(lo), float(hi)), args.bin)
        path = os.path.join(outdir, "density.csv")
        spectra.write_density_csv(path, rows)
    else:
        t = spectra.truncate(seq, args.size)
        spectrum = spectra.eigenvalues(t, tol=args.tol, weights=args.weights)
        path = os.path.join(outdir, "spectrum.csv")
        spectra.write_spectrum_csv(path, spectrum)
    _write_config(outdir, cfg)
    return EXIT_OK


def cmd_transform(args):
    import csv as _csv

    cfg = RunConfig(command="transform", seq=args.seq,
                    rates=args.rates or args.bd, n=args.n,
                    theorem=None, out=args.out)
    outdir = _ensure_outdir(args.out or ".")
    kind = args.kind
    path = os.path.join(outdir, "%s.csv" % kind)
    with open(path, "w", newline="") as fh:
        writer = _csv.writer(fh)
        if kind == "bd":
            rates = _resolve_rates(args)
            pair, pi = transforms.bd_to_jacobi(rates)
            writer.writerow(["n", "abar", "bbar", "log_pi"])
            for n in range(args.n):
                writer.writerow([n, "%.17g" % pair.a(n), "%.17g" % pair.b(n),
                                 "%.17g" % pi.log_pi(n)])
        else:
            seq = instantiate(parse_family(args.seq))
            derived = {"flip": transforms.flip,
                       "even": transforms.square_even,
                       "odd": transforms.square_odd}[kind](seq)
            writer.writerow(["n", "a", "b"])
            for n in range(args.n):
                writer.writerow([n, "%.17g" % derived.a(n),
                                 "%.17g" % derived.b(n)])
    _write_config(outdir, cfg)
    return EXIT_OK


# --- argument parsing ------------------------------------------------------


def _parse_lambdas(values):
    out = []
    for chunk in values or []:
        out.extend(float(v) for v in chunk.split(",") if v)
    return out or [0.0]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jacobi-spectra",
        description="Numerical spectral analysis of semi-infinite Jacobi matrices.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="eigenvector and diagnostics traces")
    p.add_argument("--seq", required=True, help="sequence family spec")
    p.add_argument("--lambda", dest="lambdas", action="append", metavar="LAM",
                   help="spectral parameter(s), repeatable or comma-separated")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="a",
                   help="weight choice: a | one | iterlog:K | table:FILE")
    p.add_argument("--init", default="p", help="'p' or 'u0,u1'")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="theorem hypothesis checkers")
    p.add_argument("--theorem", required=True,
                   choices=["A", "B", "C", "42", "43", "51"])
    p.add_argument("--seq")
    p.add_argument("--bd", help="rates mini-language, e.g. lam=linear,mu=linear")
    p.add_argument("--rates", help="rates CSV file or mini-language")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="a")
    p.add_argument("--k", type=int, help="iterated-log depth for theorem 43")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("spectrum", help="truncation eigenvalues / densities")
    p.add_argument("--seq", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--window", help="x_lo,x_hi for a density report")
    p.add_argument("--bin", type=float)
    p.add_argument("--weights", action="store_true")
    p.add_argument("--tol", type=float)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("transform", help="derived-sequence tables")
    p.add_argument("kind", choices=["flip", "even", "odd", "bd"])
    p.add_argument("--seq")
    p.add_argument("--rates")
    p.add_argument("--bd")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_transform)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "lambdas"):
        args.lambdas = _parse_lambdas(args.lambdas)
    try:
        return args.func(args)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_SPEC_ERROR
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except JacobiError as exc:  # pragma: no cover - catch-all
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())

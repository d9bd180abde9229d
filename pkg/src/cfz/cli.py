"""Command-line front end.

    cfz cf-solve --taus 1,1
    cfz compare --taus -0.5,0.75 --n 24
    cfz sweep --taus 1,1 --n 6:47:1 --jobs 4 --out sweep.json --csv sweep.csv
    cfz landau --l 2

Coefficient lists are comma-separated; each entry is "a", "a+bi" or
"a-bi" (a trailing i or j marks the imaginary part).  The report is
printed as JSON unless --out is given.  Set CFZ_LOG=info or debug for
diagnostics on stderr.
"""

import argparse
import logging
import os
import sys

import numpy as np

from . import functionals, remez
from .blaschke import AsymZolotarev, BlaschkeDatum, sample_grid, sup_norm
from .cf_schur import CFFailure, as_sequence, solve_cf
from .numerics import ConvergenceError
from .reports import ExperimentReport, Record, RunConfig, fit_sweep, metadata, sweep, write_csv

log = logging.getLogger("cfz")

COEFF_FLAGS = ("--taus", "--mus")


def parse_complex_list(text):
    """Parse "1,-0.5+2i,3j" into complex numbers; errors name the bad token."""
    out = []
    col = 0
    for pos, tok in enumerate(text.split(","), start=1):
        t = tok.strip().replace(" ", "")
        if t.endswith("i"):
            t = t[:-1] + "j"
        try:
            if not t:
                raise ValueError
            v = complex(t)
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"entry {pos} {tok!r} (column {col + 1}) is not of the form a, a+bi or a-bi"
            ) from None
        if not np.isfinite(v):
            raise argparse.ArgumentTypeError(f"entry {pos} {tok!r} (column {col + 1}) is not finite")
        out.append(v)
        col += len(tok) + 1
    return out


def parse_n(text):
    """Either a single degree or start:stop[:step] (stop exclusive)."""
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree {text!r}: expected N or start:stop[:step]") from None
    if len(nums) == 1:
        return nums[0]
    if len(nums) not in (2, 3):
        raise argparse.ArgumentTypeError(f"bad range {text!r}: expected start:stop[:step]")
    start, stop, step = (nums + [1])[:3]
    if step <= 0 or not range(start, stop, step):
        raise argparse.ArgumentTypeError(f"range {text!r} is empty")
    return [start, stop, step]


def _fix_negative(argv):
    """Let "--taus -0.5,0.75" through argparse, which would read it as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in COEFF_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] in ".ij"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def build_parser():
    ap = argparse.ArgumentParser(prog="cfz", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p, taus=False, mus=False, n=False):
        if taus:
            p.add_argument("--taus", type=parse_complex_list, required=True, help="leading coefficients tau_0,...,tau_l")
        if mus:
            p.add_argument("--mus", type=parse_complex_list, required=True, help="weights mu_0,...,mu_l")
        if n:
            p.add_argument("--n", type=parse_n, required=True, help="degree N or range start:stop[:step]")
        p.add_argument("--tol", type=float, default=1e-10, help="Remez convergence tolerance")
        p.add_argument("--polish", type=int, default=2, help="extra Remez exchanges after convergence")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--csv", help="write plot data here")
        p.add_argument("--seed", type=int, default=0)

    common(sub.add_parser("cf-solve", help="Schur/CF datum for tau"), taus=True)
    p = sub.add_parser("zolotarev-exact", help="minimal polynomial by Remez exchange")
    common(p, taus=True, n=True)
    p.add_argument("--points", type=int, help="CSV sample count (default 16 n)")
    p = sub.add_parser("zolotarev-asym", help="asymptotic minimal polynomial from the CF datum")
    common(p, taus=True, n=True)
    p.add_argument("--points", type=int, help="CSV sample count (default 16 n)")
    common(sub.add_parser("compare", help="exact vs asymptotic at one degree"), taus=True, n=True)
    p = sub.add_parser("sweep", help="compare over a range of degrees, with geometric fits")
    common(p, taus=True, n=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    common(sub.add_parser("eta", help="sharp coefficient-functional bound"), mus=True)
    p = sub.add_parser("landau", help="Landau constant G_l")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p = sub.add_parser("clenshaw", help="head norm over E_n for real tau")
    common(p, n=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--taus", type=parse_complex_list)
    src.add_argument("--random", type=int, metavar="K", help="K random heads in [-1, 1]^(l+1)")
    p.add_argument("--l", type=int, default=1, help="head degree for --random")
    common(sub.add_parser("l1check", help="L1 minimal deviation vs 4 sum |lambda_j|^2"), mus=True, n=True)
    return ap


def _config(args):
    n = args.n if hasattr(args, "n") else None
    return RunConfig(
        subcommand=args.subcommand,
        taus=getattr(args, "taus", None),
        mus=getattr(args, "mus", None),
        n=n if isinstance(n, int) else None,
        n_range=n if isinstance(n, list) else None,
        l=getattr(args, "l", None),
        tol=args.tol,
        polish=args.polish,
        seed=args.seed,
        random=getattr(args, "random", None),
        jobs=getattr(args, "jobs", 1),
        points=getattr(args, "points", None),
        out=args.out,
        csv=args.csv,
    )


def _single_n(cfg):
    if cfg.n is None:
        raise ValueError(f"{cfg.subcommand} needs a single degree, not a range")
    return cfg.n


def _datum(taus):
    return BlaschkeDatum.from_cf(solve_cf(as_sequence(taus)))


def cmd_cf_solve(cfg):
    sol = solve_cf(as_sequence(cfg.taus))
    result = {"l": sol.l, "p": sol.p.coeffs, "gamma": complex(sol.gamma), "gamma_abs": sol.gamma_abs,
              "residual": sol.residual, "zero_margin": sol.zero_margin}
    return result, None


def _trig_dict(t):
    return {"a": t.a, "b": t.b}


def cmd_exact(cfg):
    n = _single_n(cfg)
    res = remez.solve(remez.FixedHead(n, cfg.taus), tol=cfg.tol, polish=cfg.polish)
    result = {"n": n, "E_n": res.E_n, "levelled_error": res.levelled_error, "iterations": res.iterations,
              "reference": res.reference, "alternation_ok": remez.check_alternation(res),
              "correction": _trig_dict(res.correction)}
    K = cfg.points or 16 * n
    phi = 2 * np.pi * np.arange(K) / K
    return result, (("phi", "value"), zip(phi, res(phi)))


def cmd_asym(cfg):
    n = _single_n(cfg)
    az = AsymZolotarev(_datum(cfg.taus), n)
    sup, _ = sup_norm(az, n + az.datum.l)
    result = {"n": n, "l": az.datum.l, "gamma": complex(az.datum.gamma), "r": az.datum.r, "sup": sup}
    K = max(cfg.points or 16 * n, 2 * (n + az.datum.l) + 2)
    phi, vals = sample_grid(az, K)
    return result, (("phi", "value"), zip(phi, vals))


def cmd_compare(cfg):
    recs = sweep(cfg.taus, [_single_n(cfg)], tol=cfg.tol, polish=cfg.polish)
    return {}, recs


def cmd_sweep(cfg):
    return {}, sweep(cfg.taus, cfg.ns(), tol=cfg.tol, polish=cfg.polish, jobs=cfg.jobs)


def cmd_eta(cfg):
    sol = functionals.eta(cfg.mus)
    l = len(cfg.mus) - 1
    result = {"eta": sol.eta, "branch": sol.branch, "p": sol.extremal.p.coeffs,
              "gamma": complex(sol.extremal.gamma), "coefficients": sol.coefficients(l)}
    if sol.lambdas is not None:
        result["lambdas"] = sol.lambdas
    return result, None


def cmd_landau(cfg):
    result = {"l": cfg.l, "G": functionals.landau_constant(cfg.l)}
    if cfg.l >= 1:
        result["extremal_coefficients"] = functionals.landau_extremal(cfg.l).taylor(cfg.l).taus
    return result, None


def cmd_clenshaw(cfg):
    n = _single_n(cfg)
    if cfg.taus is not None:
        heads = [np.asarray(cfg.taus)]
    else:
        rng = np.random.default_rng(cfg.seed)
        heads = [rng.uniform(-1, 1, cfg.l + 1) for _ in range(cfg.random)]
    ratios = [functionals.clenshaw_ratio(h, n, tol=cfg.tol, polish=cfg.polish) for h in heads]
    l = heads[0].size - 1
    result = {"n": n, "ratios": ratios, "max_ratio": max(ratios), "landau_constant": functionals.landau_constant(l)}
    rows = ((k, np.real(h).tolist(), r) for k, (h, r) in enumerate(zip(heads, ratios)))
    return result, (("index", "taus", "ratio"), ((k, " ".join(repr(x) for x in h), r) for k, h, r in rows))


def cmd_l1check(cfg):
    n = _single_n(cfg)
    computed, predicted = functionals.l1_min_deviation(cfg.mus, n)
    return {"n": n, "computed": computed, "predicted": predicted,
            "relative_error": abs(computed - predicted) / predicted}, None


COMMANDS = {
    "cf-solve": cmd_cf_solve,
    "zolotarev-exact": cmd_exact,
    "zolotarev-asym": cmd_asym,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "eta": cmd_eta,
    "landau": cmd_landau,
    "clenshaw": cmd_clenshaw,
    "l1check": cmd_l1check,
}


def run(cfg):
    """Execute one configured command; returns the report (files written as requested)."""
    result, data = COMMANDS[cfg.subcommand](cfg)
    report = ExperimentReport(cfg, result, metadata=metadata(cfg))
    if data is not None and data and isinstance(data, list) and isinstance(data[0], Record):
        report.records = data
        if len(data) >= 5:
            report.fits = fit_sweep(data)
        rows = ([getattr(r, f) for f in Record.CSV_FIELDS] for r in data)
        data = (Record.CSV_FIELDS, rows)
    if cfg.csv and data is not None:
        write_csv(cfg.csv, *data)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report.to_json() + "\n")
    return report


def _setup_logging():
    level = os.environ.get("CFZ_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    _setup_logging()
    argv = _fix_negative(sys.argv[1:] if argv is None else list(argv))
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    try:
        report = run(cfg)
    except (ValueError, ArithmeticError, RuntimeError, ConvergenceError, CFFailure, np.linalg.LinAlgError, OSError) as exc:
        print(f"cfz {cfg.subcommand}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if cfg.out:
        print(f"wrote {cfg.out}")
    else:
        print(report.to_json())
    return 0


if __name__ == "__main__":
    sys.exit(main())

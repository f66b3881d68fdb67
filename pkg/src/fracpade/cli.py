"""Command-line front end.

Exit codes: 0 success, 2 usage or domain error, 3 numerical failure.
"""

import argparse
import math
import sys

import numpy as np

from .error_model import theorem1_estimate, theorem2_estimate
from .experiments import (
    EXPERIMENTS,
    ConfigError,
    choose_tau,
    default_config,
    example3_vector,
    parse_config_file,
    run_figure,
    write_csv,
)
from .jacobi import build_rule
from .krylov import generalized_residuals, project_resolvent, rational_arnoldi, rkm_shifts, sikm_shifts
from .operators import exact_resolvent_spectral, make_operator, operator_error_2norm
from .pade import build_pade
from .resolvent import build_resolvent_form, resolvent_defects
from .selection import k_bar, tau_bounded, tau_reference_unbounded, tau_unbounded

EXIT_USAGE = 2
EXIT_NUMERIC = 3

# flag name -> (type, fallback default)
_FLAGS = {
    "alpha": (str, "0.5"),
    "h": (float, 1e-2),
    "c": (float, 1.0),
    "lambda_max": (float, None),
    "k": (str, "10"),
    "tau": (float, None),
    "tau_strategy": (str, "optimal"),
    "operator": (str, "diagpow"),
    "n": (int, 100),
    "p": (int, 7),
    "entries": (str, None),
    "out": (str, None),
}


class UsageError(Exception):
    pass


def parse_k(text):
    """``"7"`` -> (7, 7); ``"3:9"`` -> (3, 9). Both ends must be >= 1."""
    try:
        if ":" in text:
            lo, hi = (int(part) for part in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"--k expects an integer or a:b range, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"--k range must satisfy 1 <= a <= b, got {text!r}")
    return lo, hi


def parse_alphas(text):
    try:
        alphas = tuple(float(part) for part in str(text).split(","))
    except ValueError:
        raise UsageError(f"--alpha expects comma-separated reals, got {text!r}") from None
    for a in alphas:
        if not 0.0 < a < 1.0:
            raise UsageError(f"alpha must lie in (0, 1), got {a!r}")
    return alphas


def _add_common(p):
    p.add_argument("--config", help="file of 'key = value' lines; flags override it")
    p.add_argument("--alpha", help="fractional exponent in (0, 1); comma list allowed")
    p.add_argument("--h", type=float, help="step size h > 0")
    p.add_argument("--c", type=float, help="lower spectral bound c > 0")
    p.add_argument("--lambda-max", type=float, help="upper spectral bound")
    p.add_argument("--k", help="rule size, single value or a:b range")
    p.add_argument("--tau", type=float, help="explicit Pade centre (overrides --tau-strategy)")
    p.add_argument(
        "--tau-strategy", choices=["optimal", "reference", "switching", "sikm"], help="rule for tau"
    )
    p.add_argument("--operator", choices=["diag", "diagpow", "lap1d", "dense"])
    p.add_argument("--n", type=int, help="operator dimension")
    p.add_argument("--p", type=int, help="exponent for diagpow")
    p.add_argument("--entries", help="comma-separated diagonal entries for --operator diag")
    p.add_argument("--out", help="output directory or CSV path")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fracpade",
        description="Rational approximation of (I + h A^alpha)^-1 with tuned Pade centres.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("rule", "Gauss-Jacobi nodes and weights"),
        ("pade", "partial fractions and numerator zeros of the Pade form"),
        ("poles", "poles and residues of the resolvent approximant"),
        ("tau", "table of tau choices over a k range"),
        ("approx", "full pipeline on an operator, error vs estimate"),
        ("krylov", "rational Krylov approximation and generalized residuals"),
    ]:
        _add_common(sub.add_parser(name, help=helptext))
    fig = sub.add_parser("figure", help="regenerate a reference figure as CSV")
    fig.add_argument("experiment", choices=EXPERIMENTS)
    _add_common(fig)
    fig.add_argument("--full", action="store_true", help="fig5 at N=3000 instead of 1000")
    fig.add_argument("--plot-script", action="store_true", help="also write gnuplot scripts")
    return parser


def resolve(args):
    """Merge flags over the config file over built-in defaults."""
    file_values = parse_config_file(args.config) if args.config else {}
    unknown = set(file_values) - set(_FLAGS) - {"experiment", "full"}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    merged = {}
    given = set()
    for name, (conv, default) in _FLAGS.items():
        flag = getattr(args, name)
        if flag is not None:
            merged[name] = flag
            given.add(name)
        elif name in file_values:
            given.add(name)
            try:
                merged[name] = conv(file_values[name])
            except ValueError:
                raise UsageError(f"config key {name!r}: cannot parse {file_values[name]!r}") from None
        else:
            merged[name] = default
    merged["full"] = getattr(args, "full", False) or file_values.get("full", "").lower() in (
        "1", "true", "yes",
    )
    merged["given"] = given
    merged["alphas"] = parse_alphas(merged["alpha"])
    merged["k_range"] = parse_k(str(merged["k"]))
    h = merged["h"]
    if not (h > 0.0 and math.isfinite(h)):
        raise UsageError(f"h must be positive, got {h!r}")
    return merged


def _emit(rows, header):
    print("\t".join(header))
    for row in rows:
        print("\t".join(r if isinstance(r, str) else f"{r:.16e}" if isinstance(r, float) else str(r) for r in row))


def _single(opts, name="k"):
    lo, hi = opts["k_range"]
    if lo != hi:
        raise UsageError(f"this command takes a single --{name}")
    return lo


def _tau_for(opts, k, alpha, c, lambda_max):
    if opts["tau"] is not None:
        return opts["tau"]
    strategy = opts["tau_strategy"]
    if strategy == "sikm":
        raise UsageError("tau strategy 'sikm' only applies to the krylov command")
    return choose_tau(strategy, k, alpha, opts["h"], c, lambda_max)


def cmd_rule(opts):
    k, alpha = _single(opts), opts["alphas"][0]
    rule = build_rule(k, alpha)
    _emit([(float(t), float(w)) for t, w in zip(rule.nodes, rule.weights)], ["node", "weight"])


def cmd_pade(opts):
    k, alpha = _single(opts), opts["alphas"][0]
    tau = _tau_for(opts, k, alpha, opts["c"], opts["lambda_max"])
    form = build_pade(k, alpha, tau)
    print(f"# tau={tau!r} chi={form.leading_chi!r}")
    _emit([(float(g), float(e)) for g, e in zip(form.pf_coeffs, form.pf_shifts)], ["gamma", "eta"])
    if form.num_zeros.size:
        _emit([(float(e),) for e in form.num_zeros], ["eps"])


def cmd_poles(opts):
    k, alpha = _single(opts), opts["alphas"][0]
    tau = _tau_for(opts, k, alpha, opts["c"], opts["lambda_max"])
    form = build_resolvent_form(build_pade(k, alpha, tau), opts["h"])
    defects = resolvent_defects(form)
    print(f"# tau={tau!r} h={opts['h']!r}")
    rows = [(float(-p), float(r), float(d)) for p, r, d in zip(form.poles_neg, form.residues, defects)]
    _emit(rows, ["pole", "residue", "defect"])


def cmd_tau(opts):
    alpha, h, c, lam_n = opts["alphas"][0], opts["h"], opts["c"], opts["lambda_max"]
    lo, hi = opts["k_range"]
    kb = None if lam_n is None else k_bar(alpha, h, c, lam_n)
    rows = []
    for k in range(lo, hi + 1):
        tk = tau_unbounded(k, alpha, h, c).tau
        tt = tau_reference_unbounded(k, alpha, c).tau
        if lam_n is None:
            rows.append((k, tk, tt, "", ""))
        else:
            regime = "bounded" if k >= kb else "unbounded"
            rows.append((k, tk, tt, tau_bounded(k, alpha, h, c, lam_n).tau, f"{kb:.6g} ({regime})"))
    _emit(rows, ["k", "tau_k", "tau_tilde_k", "tau_kN", "k_bar"])


def _operator(opts):
    entries = None
    if opts["entries"] is not None:
        try:
            entries = [float(x) for x in opts["entries"].split(",")]
        except ValueError:
            raise UsageError(f"--entries expects comma-separated reals, got {opts['entries']!r}") from None
    matrix = None
    if opts["operator"] == "dense":
        # reproducible SPD test matrix
        rng = np.random.default_rng(0)
        m = rng.standard_normal((opts["n"], opts["n"]))
        matrix = m @ m.T + opts["n"] * np.eye(opts["n"])
    return make_operator(opts["operator"], n=opts["n"], p=opts["p"], entries=entries, matrix=matrix)


def cmd_approx(opts):
    op = _operator(opts)
    alpha, h = opts["alphas"][0], opts["h"]
    c = op.c
    lam_n = opts["lambda_max"]
    if opts["tau_strategy"] == "switching" and lam_n is None:
        lam_n = op.lambda_max
    lo, hi = opts["k_range"]
    rows = []
    for k in range(lo, hi + 1):
        tau = _tau_for(opts, k, alpha, c, lam_n)
        try:
            pade = build_pade(k, alpha, tau)
        except (RuntimeError, ArithmeticError) as exc:
            raise RuntimeError(f"stage pade (k={k}): {exc}") from exc
        try:
            form = build_resolvent_form(pade, h)
        except (RuntimeError, ArithmeticError) as exc:
            raise RuntimeError(f"stage resolvent (k={k}): {exc}") from exc
        err = operator_error_2norm(form, op)
        if lam_n is None:
            est = theorem1_estimate(k, alpha, h, c)
        else:
            est = theorem2_estimate(k, alpha, h, c, lam_n)
        ratio = err / est if est and math.isfinite(est) else math.nan
        rows.append((k, tau, err, est, ratio))
    header = ["k", "tau", "error", "estimate", "ratio"]
    _emit(rows, header)
    if opts["out"]:
        prov = {"command": "approx", "alpha": repr(alpha), "h": repr(h), "operator": opts["operator"],
                "n": op.dim, "c": repr(c), "lambda_max": repr(lam_n)}
        write_csv(opts["out"], header, rows, prov)


def cmd_krylov(opts):
    op = _operator(opts)
    alpha, h = opts["alphas"][0], opts["h"]
    k = _single(opts)
    v = example3_vector(op.dim)
    if opts["tau_strategy"] == "sikm":
        shifts = sikm_shifts(k, h, alpha)
    else:
        tau = _tau_for(opts, k, alpha, op.c, opts["lambda_max"])
        shifts = rkm_shifts(build_resolvent_form(build_pade(k, alpha, tau), h))
    state = rational_arnoldi(op, v, shifts)
    omega = project_resolvent(state, h, alpha)
    exact = exact_resolvent_spectral(op, h, alpha, v)
    print(f"# dim={state.dim} breakdown={state.breakdown}")
    print(f"# error={float(np.linalg.norm(exact - omega)):.16e}")
    res = generalized_residuals(state, h, alpha)
    _emit([(j, float(r)) for j, r in enumerate(res, start=1)], ["j", "generalized_residual"])


def cmd_figure(args, opts):
    config = default_config(args.experiment, full=opts["full"])
    # only values given by flag or config file override the experiment defaults
    given = opts["given"]
    overrides = {
        "alpha": ("alphas", opts["alphas"]),
        "h": ("h", opts["h"]),
        "k": ("k_range", opts["k_range"]),
        "tau_strategy": ("tau_strategy", opts["tau_strategy"]),
        "operator": ("operator", opts["operator"]),
        "n": ("n", opts["n"]),
        "p": ("p", opts["p"]),
        "lambda_max": ("lambda_max", opts["lambda_max"]),
        "c": ("c", opts["c"]),
    }
    for key, (attr, value) in overrides.items():
        if key in given:
            setattr(config, attr, value)
    config.out = opts["out"] or "."
    config.plot_script = args.plot_script
    for path in run_figure(config):
        print(path)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = resolve(args)
        if args.command == "figure":
            cmd_figure(args, opts)
        else:
            {
                "rule": cmd_rule,
                "pade": cmd_pade,
                "poles": cmd_poles,
                "tau": cmd_tau,
                "approx": cmd_approx,
                "krylov": cmd_krylov,
            }[args.command](opts)
    except (UsageError, ConfigError, ValueError, OSError) as exc:
        print(f"fracpade: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RuntimeError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"fracpade: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Parameter sweeps that regenerate the reference figures as CSV files."""

from dataclasses import dataclass
import math
from pathlib import Path
from typing import Optional

import numpy as np

from .error_model import (
    g_k,
    lambda2_estimate,
    theorem1_estimate,
    theorem2_estimate,
)
from .krylov import (
    project_resolvent,
    rational_arnoldi,
    rkm_shifts,
    sikm_shifts,
)
from .operators import (
    Laplacian1D,
    exact_resolvent_spectral,
    make_operator,
    operator_error_2norm,
)
from .pade import build_pade
from .resolvent import build_resolvent_form
from .selection import (
    SpectrumBounds,
    tau_bounded,
    tau_reference_bounded,
    tau_reference_unbounded,
    tau_switching,
    tau_unbounded,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "EXPERIMENTS",
    "TAU_STRATEGIES",
    "parse_config_file",
    "default_config",
    "choose_tau",
    "write_csv",
    "run_figure",
    "example3_vector",
]

EXPERIMENTS = ("fig1", "fig2", "fig3", "fig4", "fig5", "custom")
TAU_STRATEGIES = ("optimal", "reference", "switching", "sikm")
FIG5_K = (10, 15, 20, 25, 30)
FIG1_POINTS = 400


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass
class ExperimentConfig:
    experiment: str = "custom"
    alphas: tuple = (0.5,)
    h: float = 1e-2
    operator: str = "diagpow"
    n: int = 100
    p: int = 7
    k_range: tuple = (10, 60)
    tau_strategy: str = "optimal"
    out: str = "."
    full: bool = False
    plot_script: bool = False
    c: Optional[float] = None
    lambda_max: Optional[float] = None

    def validate(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.tau_strategy not in TAU_STRATEGIES:
            raise ConfigError(f"unknown tau strategy {self.tau_strategy!r}")
        lo, hi = self.k_range
        if not 1 <= lo <= hi:
            raise ConfigError(f"k range must satisfy 1 <= lo <= hi, got {lo}:{hi}")
        for a in self.alphas:
            if not 0.0 < a < 1.0:
                raise ConfigError(f"alpha must lie in (0, 1), got {a!r}")
        if not (self.h > 0.0 and math.isfinite(self.h)):
            raise ConfigError(f"h must be positive, got {self.h!r}")
        if self.operator != "none" and self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n!r}")
        return self


def parse_config_file(path):
    """Read ``key = value`` lines; blank lines and ``#`` comments are skipped.

    Keys are normalised to lower case with dashes replaced by underscores.
    """
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.lower().replace("-", "_")] = value
    return out


def default_config(experiment, full=False):
    """Parameters of the reference experiment ``experiment``."""
    if experiment == "fig1":
        return ExperimentConfig("fig1", (0.75,), 1e-2, "none", 0, 0, (15, 15), "optimal", c=1.0)
    if experiment == "fig2":
        return ExperimentConfig("fig2", (0.2, 0.4, 0.6, 0.8), 1e-2, "diagpow", 100, 7, (10, 60), "optimal")
    if experiment == "fig3":
        return ExperimentConfig("fig3", (0.2, 0.4, 0.6, 0.8), 1e-2, "diagpow", 100, 3, (10, 60), "switching")
    if experiment == "fig4":
        return ExperimentConfig("fig4", (0.6,), 1e-2, "lap1d", 1000, 0, (10, 60), "switching")
    if experiment == "fig5":
        n = 3000 if full else 1000
        return ExperimentConfig("fig5", (0.6,), 1e-2, "lap1d", n, 0, (10, 30), "optimal", full=full)
    if experiment == "custom":
        return ExperimentConfig()
    raise ConfigError(f"unknown experiment {experiment!r}")


def choose_tau(strategy, k, alpha, h, c, lambda_max=None):
    """tau for one of the named strategies.

    ``optimal`` uses the bounded formula whenever ``lambda_max`` is given,
    ``switching`` applies the k_bar threshold, ``reference`` is the
    h-independent choice.
    """
    if strategy == "optimal":
        if lambda_max is None:
            return tau_unbounded(k, alpha, h, c).tau
        return tau_bounded(k, alpha, h, c, lambda_max).tau
    if strategy == "reference":
        if lambda_max is None:
            return tau_reference_unbounded(k, alpha, c).tau
        return tau_reference_bounded(k, alpha, c, lambda_max).tau
    if strategy == "switching":
        return tau_switching(k, alpha, h, SpectrumBounds(c, lambda_max)).tau
    raise ConfigError(f"tau strategy {strategy!r} does not define a Pade centre")


def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    return format(x, ".16e")


def write_csv(path, header, rows, provenance):
    """Write a provenance comment, a header row and the data rows."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    prov = " ".join(f"{key}={value}" for key, value in provenance.items())
    lines = [f"# {prov}", ",".join(header)]
    lines += [",".join(_fmt(x) for x in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def _write_plot_script(csv_path, header, logy=True):
    # companion gnuplot script; column 1 is the abscissa
    csv_path = Path(csv_path)
    plots = ", ".join(
        f"'{csv_path.name}' using 1:{i + 1} with lines title '{name}'"
        for i, name in enumerate(header[1:], start=1)
    )
    text = (
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        + ("set logscale y\n" if logy else "")
        + f"plot {plots}\n"
    )
    script = csv_path.with_suffix(".gp")
    script.write_text(text)
    return script


def _k_values(config):
    lo, hi = config.k_range
    return range(lo, hi + 1)


def _operator_error(k, alpha, h, tau, op):
    form = build_resolvent_form(build_pade(k, alpha, tau), h)
    return operator_error_2norm(form, op)


def _provenance(config, **more):
    prov = {
        "experiment": config.experiment,
        "h": repr(config.h),
        "operator": config.operator,
        "n": config.n,
        "p": config.p,
        "k": f"{config.k_range[0]}:{config.k_range[1]}",
        "tau_strategy": config.tau_strategy,
    }
    prov.update({key: (repr(v) if isinstance(v, float) else v) for key, v in more.items()})
    return prov


def _fig1(config, out):
    alpha, h = config.alphas[0], config.h
    k = config.k_range[0]
    c = 1.0 if config.c is None else config.c
    tau = tau_unbounded(k, alpha, h, c).tau
    lam2, _ = lambda2_estimate(k, alpha, h, tau)
    lam = np.geomspace(c, 100.0 * lam2, FIG1_POINTS)
    rows = list(zip(lam, g_k(lam, k, alpha, h, tau)))
    prov = _provenance(config, alpha=alpha, c=c, tau=tau)
    return [write_csv(out / "fig1.csv", ["lambda", "g_k"], rows, prov)]


def _fig_operator(config, out, bounded):
    op = make_operator(config.operator, n=config.n, p=config.p)
    c, lam_n = op.c, op.lambda_max
    paths = []
    for alpha in config.alphas:
        rows = []
        for k in _k_values(config):
            if bounded:
                tau = choose_tau(config.tau_strategy, k, alpha, config.h, c, lam_n)
                tau_ref = tau_reference_bounded(k, alpha, c, lam_n).tau
                est = theorem2_estimate(k, alpha, config.h, c, lam_n)
            else:
                tau = choose_tau(config.tau_strategy, k, alpha, config.h, c)
                tau_ref = tau_reference_unbounded(k, alpha, c).tau
                est = theorem1_estimate(k, alpha, config.h, c)
            err = _operator_error(k, alpha, config.h, tau, op)
            err_ref = _operator_error(k, alpha, config.h, tau_ref, op)
            rows.append((k, err, err_ref, est))
        header = ["k", "error_tau_k", "error_tau_tilde", "estimate"]
        prov = _provenance(config, alpha=alpha, c=c, lambda_max=lam_n)
        paths.append(write_csv(out / f"{config.experiment}_alpha{alpha:g}.csv", header, rows, prov))
    return paths


def example3_vector(n):
    """Samples of x(1 - x) on the interior grid points j / (n + 1)."""
    x = np.arange(1, n + 1) / (n + 1)
    return x * (1.0 - x)


def _fig5(config, out):
    alpha, h = config.alphas[0], config.h
    op = Laplacian1D(config.n) if config.operator == "lap1d" else make_operator(
        config.operator, n=config.n, p=config.p
    )
    c = op.c
    v = example3_vector(op.dim)
    exact = exact_resolvent_spectral(op, h, alpha, v)
    lo, hi = config.k_range
    ks = [k for k in FIG5_K if lo <= k <= hi] or list(range(lo, hi + 1))
    rows = []
    for k in ks:
        errs = []
        for tau in (tau_unbounded(k, alpha, h, c).tau, tau_reference_unbounded(k, alpha, c).tau):
            form = build_resolvent_form(build_pade(k, alpha, tau), h)
            state = rational_arnoldi(op, v, rkm_shifts(form))
            errs.append(np.linalg.norm(exact - project_resolvent(state, h, alpha)))
        state = rational_arnoldi(op, v, sikm_shifts(k, h, alpha))
        errs.append(np.linalg.norm(exact - project_resolvent(state, h, alpha)))
        rows.append((k, *errs))
    header = ["k", "err_rkm_tau_k", "err_rkm_tau_tilde", "err_sikm"]
    prov = _provenance(config, alpha=alpha, c=c)
    return [write_csv(out / "fig5.csv", header, rows, prov)]


def _custom(config, out):
    op = make_operator(config.operator, n=config.n, p=config.p)
    c = op.c if config.c is None else config.c
    lam_n = config.lambda_max
    if config.tau_strategy == "switching" and lam_n is None:
        lam_n = op.lambda_max
    paths = []
    for alpha in config.alphas:
        rows = []
        for k in _k_values(config):
            tau = choose_tau(config.tau_strategy, k, alpha, config.h, c, lam_n)
            err = _operator_error(k, alpha, config.h, tau, op)
            if lam_n is None:
                est = theorem1_estimate(k, alpha, config.h, c)
            else:
                est = theorem2_estimate(k, alpha, config.h, c, lam_n)
            rows.append((k, tau, err, est))
        prov = _provenance(config, alpha=alpha, c=c, lambda_max=lam_n)
        paths.append(
            write_csv(out / f"custom_alpha{alpha:g}.csv", ["k", "tau", "error", "estimate"], rows, prov)
        )
    return paths


def run_figure(config):
    """Run one experiment and return the paths of the CSV files written."""
    config.validate()
    out = Path(config.out)
    exp = config.experiment
    if exp == "fig1":
        paths = _fig1(config, out)
    elif exp in ("fig2", "fig3", "fig4"):
        paths = _fig_operator(config, out, bounded=exp != "fig2")
    elif exp == "fig5":
        paths = _fig5(config, out)
    else:
        paths = _custom(config, out)
    if config.plot_script:
        for path in list(paths):
            header = path.read_text().splitlines()[1].split(",")
            _write_plot_script(path, header, logy=exp != "fig1")
    return paths

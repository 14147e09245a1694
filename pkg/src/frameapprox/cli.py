"""Command line driver for the approximation experiments.

Each subcommand runs one experiment over a parameter sweep and writes a
CSV file (comma delimiter, LF endings, 17 significant digits) that a
generic plotter can consume.  ``selftest`` runs seeded analytic checks
and prints one pass/fail line per check.

Exit codes: 0 success, 1 invalid configuration, 2 numerical failure.
"""

import argparse
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import diagnostics, frames, gram, orthopoly, sampling, solver

DEFAULT_PROBES = (0.2, 0.5, 0.9, 1.0)

_SCHEME_CHOICES = ("chebyshev", "chebyshev-weighted", "legendre", "equispaced", "inner")
_EXPERIMENTS = ("pointwise_error", "oversampling", "constants", "ssr", "single_approx")


class ConfigError(ValueError):
    """Invalid experiment configuration; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2) on usage errors; route them to exit 1 instead
    def error(self, message):
        raise ConfigError(message)


def _parse_int_range(text: str) -> List[int]:
    """Parse '40' or an inclusive 'start:step:stop' range like '5:5:60'."""
    text = text.strip()
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [int(parts[0])]
        if len(parts) == 3:
            start, step, stop = (int(p) for p in parts)
        else:
            raise ValueError
    except ValueError:
        raise ConfigError(f"expected an integer or start:step:stop range, got {text!r}") from None
    if step <= 0 or stop < start:
        raise ConfigError(f"empty or descending range {text!r}")
    return list(range(start, stop + 1, step))


def _parse_float_list(text: str, name: str) -> List[float]:
    try:
        values = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"could not parse {name} list {text!r}") from None
    if not values:
        raise ConfigError(f"{name} list is empty")
    return values


def _parse_m_rule(text: str) -> Callable[[int], int]:
    """Parse an M rule: '2N', '1.5N', 'N', or a fixed integer like '80'."""
    raw = text.strip()
    body = raw[:-1] if raw and raw[-1] in "nN" else None
    try:
        if body is not None:
            coeff = 1.0 if body == "" else float(body)
            if coeff <= 0:
                raise ValueError
            return lambda n: max(1, math.ceil(coeff * n))
        fixed = int(raw)
        if fixed < 1:
            raise ValueError
        return lambda n: fixed
    except ValueError:
        raise ConfigError(f"could not parse M rule {text!r}") from None


@dataclass
class ExperimentConfig:
    """Resolved settings for one experiment run."""

    experiment: str
    frame: str = "onbk"
    K: int = 1
    normalize_psi: Optional[bool] = None
    nodes: str = "chebyshev"
    N_values: List[int] = field(default_factory=list)
    M_values: List[int] = field(default_factory=list)
    M_rule: str = "2N"
    gammas: List[float] = field(default_factory=lambda: [2.0])
    epsilons: List[float] = field(default_factory=lambda: [1e-13])
    theta: float = 2.0
    probes: List[float] = field(default_factory=lambda: list(DEFAULT_PROBES))
    out: Optional[Path] = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.experiment not in _EXPERIMENTS + ("selftest",):
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.frame not in ("onbk", "onb"):
            raise ConfigError(f"unknown frame {self.frame!r}")
        if self.nodes not in _SCHEME_CHOICES:
            raise ConfigError(f"unknown node family {self.nodes!r}")
        if self.K < 0:
            raise ConfigError("K must be nonnegative")
        for eps in self.epsilons:
            if not eps > 0:
                raise ConfigError("epsilon values must be positive")
        if not self.epsilons:
            raise ConfigError("epsilon sweep is empty")
        for p in self.probes:
            if not 0 < p <= 1:
                raise ConfigError(f"probe point {p} outside (0, 1]")
        if not self.probes:
            raise ConfigError("probe list is empty")
        if self.theta <= 1:
            raise ConfigError("theta must exceed 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")

    def frame_for(self, N: int) -> frames.FrameSpec:
        if self.frame == "onb" or self.K == 0:
            return frames.legendre_onb(N)
        return frames.onb_plus_k(N, self.K, normalize_psi=self.normalize_psi)

    def scheme_family(self) -> sampling.SchemeFamily:
        if self.nodes == "chebyshev":
            return sampling.chebyshev_points()
        if self.nodes == "chebyshev-weighted":
            return sampling.chebyshev_points(weighted=True)
        if self.nodes == "legendre":
            return sampling.legendre_points()
        if self.nodes == "equispaced":
            return sampling.equispaced_points()
        return sampling.inner_products()

    def out_path(self) -> Path:
        return self.out if self.out is not None else Path(f"{self.experiment}.csv")


def _read_config_file(path: str) -> dict:
    """Read 'key = value' lines; '#' starts a comment, blank lines ignored."""
    entries = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        entries[key.replace("-", "_")] = value
    return entries


_CONFIG_KEYS = {
    "experiment", "frame", "K", "normalize_psi", "nodes", "N", "M", "M_rule",
    "gammas", "eps", "theta", "probes", "out", "seed", "workers",
}


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    values = {}
    if getattr(args, "config", None):
        values.update(_read_config_file(args.config))
        unknown = set(values) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "experiment" in values and values["experiment"] != args.experiment:
            raise ConfigError(
                f"config file names experiment {values['experiment']!r} "
                f"but subcommand is {args.experiment!r}"
            )
    # command-line flags win over config file entries
    for key in ("frame", "K", "normalize_psi", "nodes", "N", "M", "M_rule",
                "gammas", "eps", "theta", "probes", "out", "seed", "workers"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag

    def _get(key, default=None):
        return values.get(key, default)

    try:
        K = int(_get("K", 1))
        seed = int(_get("seed", 0))
        theta = float(_get("theta", 2.0))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None

    normalize = _get("normalize_psi")
    if isinstance(normalize, str):
        lowered = normalize.lower()
        if lowered in ("auto", ""):
            normalize = None
        elif lowered in ("1", "true", "on", "yes"):
            normalize = True
        elif lowered in ("0", "false", "off", "no"):
            normalize = False
        else:
            raise ConfigError(f"could not parse normalize_psi value {normalize!r}")

    workers_raw = _get("workers", 1)
    workers = int(workers_raw)
    env_cap = os.environ.get("FRAMEAPPROX_THREADS")
    if env_cap:
        try:
            workers = min(workers, max(1, int(env_cap)))
        except ValueError:
            raise ConfigError(f"FRAMEAPPROX_THREADS is not an integer: {env_cap!r}") from None

    return ExperimentConfig(
        experiment=args.experiment,
        frame=_get("frame", "onbk"),
        K=K,
        normalize_psi=normalize,
        nodes=_get("nodes", "chebyshev"),
        N_values=_parse_int_range(_get("N")) if _get("N") is not None else [],
        M_values=_parse_int_range(_get("M")) if _get("M") is not None else [],
        M_rule=_get("M_rule", "2N"),
        gammas=_parse_float_list(_get("gammas"), "gamma") if _get("gammas") is not None else [2.0],
        epsilons=_parse_float_list(_get("eps"), "epsilon") if _get("eps") is not None else [1e-13],
        theta=theta,
        probes=_parse_float_list(_get("probes"), "probe") if _get("probes") is not None else list(DEFAULT_PROBES),
        out=Path(_get("out")) if _get("out") is not None else None,
        seed=seed,
        workers=workers,
    )


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", newline="")


def _require_sweep(values: List[int], name: str) -> List[int]:
    if not values:
        raise ConfigError(f"experiment requires a {name} sweep (use --{name})")
    for v in values:
        if v < 1:
            raise ConfigError(f"{name} values must be positive, got {v}")
    return values


def run_pointwise_error(cfg: ExperimentConfig) -> Path:
    """Pointwise error at probe points along an N sweep with M tied to N."""
    Ns = _require_sweep(cfg.N_values, "N")
    rule = _parse_m_rule(cfg.M_rule)
    eps = cfg.epsilons[0]
    family = cfg.scheme_family()
    rows = []
    for N in Ns:
        frame = cfg.frame_for(N)
        M = rule(N)
        approx = solver.approximate(frames.target_function, frame, family, M=M, epsilon=eps)
        report = solver.error_report(approx, frames.target_function, cfg.probes)
        for probe, err in zip(report.probes, report.errors):
            rows.append((N, M, probe, err, report.coefficient_norm))
    path = cfg.out_path()
    _write_csv(path, ("N", "M", "probe", "error", "coeff_norm"), rows)
    return path


def run_oversampling(cfg: ExperimentConfig) -> Path:
    """Error against M at fixed N; exposes the oversampling plateau."""
    Ns = _require_sweep(cfg.N_values, "N")
    if len(Ns) != 1:
        raise ConfigError("oversampling takes a single N")
    Ms = _require_sweep(cfg.M_values, "M")
    N = Ns[0]
    eps = cfg.epsilons[0]
    frame = cfg.frame_for(N)
    family = cfg.scheme_family()
    rows = []
    for M in Ms:
        approx = solver.approximate(frames.target_function, frame, family, M=M, epsilon=eps)
        report = solver.error_report(approx, frames.target_function, cfg.probes)
        rows.append((N, M, report.max_error, report.coefficient_norm))
    path = cfg.out_path()
    _write_csv(path, ("N", "M", "max_error", "coeff_norm"), rows)
    return path


def run_constants(cfg: ExperimentConfig) -> Path:
    """Stability constants over a (gamma, N, epsilon) grid."""
    Ns = _require_sweep(cfg.N_values, "N")
    for gamma in cfg.gammas:
        if gamma < 1:
            raise ConfigError(f"gamma must be at least 1, got {gamma}")
    sweep = diagnostics.constants_sweep(
        cfg.frame_for, cfg.scheme_family(), cfg.gammas, Ns, cfg.epsilons,
        workers=cfg.workers,
    )
    rows = [
        (r.gamma, r.N, r.M, r.epsilon, r.kappa, r.lam, r.kept_rank, r.A_prime_MN)
        for r in sweep
    ]
    path = cfg.out_path()
    _write_csv(path, ("gamma", "N", "M", "eps", "kappa", "lambda", "kept_rank", "A_prime"), rows)
    return path


def run_ssr(cfg: ExperimentConfig) -> Path:
    """Stable sampling rate along an N sweep; -1 marks an unreachable target."""
    Ns = _require_sweep(cfg.N_values, "N")
    family = cfg.scheme_family()
    rows = []
    for N in Ns:
        frame = cfg.frame_for(N)
        for eps in cfg.epsilons:
            theta_M = diagnostics.stable_sampling_rate(frame, family, N, cfg.theta, eps)
            rows.append((N, cfg.theta, eps, -1 if theta_M is None else theta_M))
    path = cfg.out_path()
    _write_csv(path, ("N", "theta", "eps", "M_theta"), rows)
    return path


def run_single_approx(cfg: ExperimentConfig) -> Path:
    """One approximation at fixed N and M; per-probe errors to CSV."""
    Ns = _require_sweep(cfg.N_values, "N")
    Ms = _require_sweep(cfg.M_values, "M")
    if len(Ns) != 1 or len(Ms) != 1:
        raise ConfigError("single_approx takes a single N and a single M")
    N, M = Ns[0], Ms[0]
    eps = cfg.epsilons[0]
    approx = solver.approximate(
        frames.target_function, cfg.frame_for(N), cfg.scheme_family(), M=M, epsilon=eps
    )
    report = solver.error_report(approx, frames.target_function, cfg.probes)
    rows = list(zip(report.probes, report.errors))
    path = cfg.out_path()
    _write_csv(path, ("probe", "error"), rows)
    print(
        f"N={N} M={M} eps={eps:g} kept_rank={approx.solution.kept_rank} "
        f"max_error={report.max_error:.6e} coeff_norm={report.coefficient_norm:.6e}"
    )
    return path


# ---------------------------------------------------------------------------
# selftest


def _check_gl_exactness():
    rule = orthopoly.gauss_legendre_rule(2)
    dev = abs(rule.integrate(lambda x: x ** 3) - 0.25)
    return dev < 1e-15, f"cubic dev {dev:.3e}"


def _check_log_integrals():
    # per-cell order must cover degree 20 times the log factor
    rule = orthopoly.hp_log_quadrature(order=32)
    worst = 0.0
    for n in range(1, 21):
        approx = rule.integrate(lambda x: orthopoly.legendre_shifted(n, x) * np.log(x))
        closed = np.sqrt(2 * n + 1) * (-1.0) ** (n + 1) / (n * (n + 1))
        worst = max(worst, abs(approx - closed))
    return worst < 1e-11, f"max dev {worst:.3e}"


def _check_log_square():
    rule = orthopoly.hp_log_quadrature()
    dev = abs(rule.integrate(lambda x: np.log(x) ** 2) - 2.0)
    return dev < 1e-11, f"dev {dev:.3e}"


def _check_orthonormality():
    rule = orthopoly.gauss_legendre_rule(16)
    table = orthopoly.legendre_table(10, rule.nodes)
    moments = (table * rule.weights) @ table.T
    dev = np.abs(moments - np.eye(11)).max()
    return dev < 1e-12, f"max dev {dev:.3e}"


def _check_gram_identity():
    frame = frames.legendre_onb(8)
    system = gram.build_system(frame, sampling.inner_product_scheme(12))
    target = np.zeros((12, 8))
    target[:8, :8] = np.eye(8)
    dev = np.abs(system.matrix - target).max()
    return dev < 1e-12, f"max dev {dev:.3e}"


def _check_tsvd_cutoff():
    system = gram.GramSystem.from_matrix(np.diag([2.0, 1.0, 0.5]))
    # strict cutoff: sigma equal to epsilon is discarded
    sol = solver.truncated_svd_solve(system, np.ones(3), epsilon=1.0)
    exact = solver.truncated_svd_solve(system, np.ones(3), epsilon=0.25)
    ok = sol.kept_rank == 1 and exact.kept_rank == 3
    ok = ok and np.allclose(exact.coefficients.values, [0.5, 1.0, 2.0])
    return ok, f"kept {sol.kept_rank} at tie, {exact.kept_rank} below"


def _check_projection_orthogonality():
    frame = frames.onb_plus_k(8, 1)
    system = gram.build_system(frame, sampling.legendre_point_scheme(16))
    sol = solver.truncated_svd_solve(
        system, sampling.sample(system.scheme, frames.target_function), epsilon=1e-8
    )
    kept = system.matrix @ system.Vt[: sol.kept_rank].T
    y = sampling.sample(system.scheme, frames.target_function).values
    residual = y - system.matrix @ sol.coefficients.values
    dev = np.abs(kept.T @ residual).max()
    return dev < 1e-9, f"max dev {dev:.3e}"


def _check_bound_invariants():
    worst = 0.0
    for gamma in (1, 2):
        frame = frames.onb_plus_k(10, 2)
        factor = gram.build_gram_factor(frame)
        system = gram.build_system(frame, sampling.legendre_point_scheme(10 * gamma))
        eps = 1e-5
        kappa = diagnostics.compute_kappa(system, factor, eps)
        lam = diagnostics.compute_lambda(system, factor, eps)
        cap_b = np.sqrt(frame.B_upper) / eps
        cap_a = 1.0 / np.sqrt(sampling.richness_estimate(system.scheme, frame, frame.N))
        worst = max(worst, kappa / cap_b, lam / cap_b,
                    kappa / (cap_a * (1 + 1e-9)), lam / (cap_a * (1 + 1e-9)))
    return worst <= 1.0, f"worst cap ratio {worst:.6f}"


def _check_error_bound(rng):
    frame = frames.onb_plus_k(12, 1)
    factor = gram.build_gram_factor(frame)
    eps = 1e-6
    approx = solver.approximate(
        frames.target_function, frame, sampling.legendre_points(), M=24, epsilon=eps
    )
    kappa = diagnostics.compute_kappa(approx.solution.system, factor, eps)
    lam = diagnostics.compute_lambda(approx.solution.system, factor, eps)
    for _ in range(5):
        z = rng.standard_normal(frame.N)
        err = solver.verify_error_bound(approx, frames.target_function, z, kappa, lam)
        coeff = solver.verify_coefficient_bound(approx.solution, frames.target_function, z)
        if not (err.holds and coeff.holds):
            return False, "inequality violated"
    return True, "5 random z ok"


def run_selftest(cfg: ExperimentConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    checks = [
        ("gauss-legendre-exactness", _check_gl_exactness),
        ("hp-log-integrals", _check_log_integrals),
        ("hp-log-square-norm", _check_log_square),
        ("legendre-orthonormality", _check_orthonormality),
        ("onb-gram-identity", _check_gram_identity),
        ("tsvd-strict-cutoff", _check_tsvd_cutoff),
        ("projection-orthogonality", _check_projection_orthogonality),
        ("stability-bound-invariants", _check_bound_invariants),
        ("error-bound-random-z", lambda: _check_error_bound(rng)),
    ]
    failures = 0
    for name, check in checks:
        try:
            ok, detail = check()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        print(f"{name}: {'pass' if ok else 'FAIL'} ({detail})")
        failures += not ok
    print(f"selftest: {len(checks) - failures}/{len(checks)} checks passed")
    return 1 if failures else 0


# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--frame", choices=("onbk", "onb"), default=None,
                        help="frame family: enriched (onbk) or plain polynomial (onb)")
    parser.add_argument("--K", type=int, default=None, help="number of enrichment elements")
    parser.add_argument("--normalize-psi", dest="normalize_psi", default=None,
                        help="normalize the K=1 enrichment element: auto, on, off")
    parser.add_argument("--nodes", choices=_SCHEME_CHOICES, default=None,
                        help="sampling scheme family")
    parser.add_argument("--N", default=None, help="N value or start:step:stop sweep")
    parser.add_argument("--M", default=None, help="M value or start:step:stop sweep")
    parser.add_argument("--M-rule", dest="M_rule", default=None,
                        help="M as a function of N, e.g. 2N, 1.5N, or a fixed integer")
    parser.add_argument("--gammas", default=None, help="comma list of oversampling ratios")
    parser.add_argument("--eps", default=None, help="comma list of truncation thresholds")
    parser.add_argument("--theta", type=float, default=None, help="stability target for ssr")
    parser.add_argument("--probes", default=None, help="comma list of probe points in (0, 1]")
    parser.add_argument("--out", default=None, help="output CSV path")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker threads for sweeps (capped by FRAMEAPPROX_THREADS)")
    parser.add_argument("--config", default=None, help="key = value config file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frameapprox", description=__doc__)
    sub = parser.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    for name, help_text in (
        ("pointwise_error", "error at probe points along an N sweep"),
        ("oversampling", "error against M at fixed N"),
        ("constants", "stability constants over a (gamma, N, eps) grid"),
        ("ssr", "stable sampling rate along an N sweep"),
        ("single_approx", "one approximation at fixed N and M"),
        ("selftest", "seeded analytic and invariant checks"),
    ):
        _add_common(sub.add_parser(name, help=help_text))
    return parser


_RUNNERS = {
    "pointwise_error": run_pointwise_error,
    "oversampling": run_oversampling,
    "constants": run_constants,
    "ssr": run_ssr,
    "single_approx": run_single_approx,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _build_config(args)
        if cfg.experiment == "selftest":
            return run_selftest(cfg)
        path = _RUNNERS[cfg.experiment](cfg)
        print(f"wrote {path}")
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except np.linalg.LinAlgError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

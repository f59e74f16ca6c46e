"""Command-line front end.

Settings resolve in the order: command-line flags, then the config file
(``--config`` or ``$QSLNOISE_CONFIG``), then built-in defaults.

Exit codes: 0 success, 1 validation findings, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .channels import (FAMILIES, PAPER_LITERAL, RtnParams, family_channel, max_trace_residual,
                       validate_cptp)
from .lindblad import (AtomicModel, apply_uncorrelated, case2_discrepancy, correlated_generator,
                       paper_case1_matrix, total_generator, uncorrelated_generator, x_ratio)
from .matops import bell_state, maximally_mixed, random_density_matrix
from .sweep import (CHANNEL_COLUMNS, LINDBLAD_COLUMNS, ConfigError, SweepConfig,
                    read_config_file, sweep_channel_csv, sweep_lindblad_csv)

CONFIG_ENV = "QSLNOISE_CONFIG"
TRACE_TOL = 1e-12

CHANNEL_HELP = f"""CSV columns: {', '.join(CHANNEL_COLUMNS)}.
ratio_R = tau_cor / tau_un = denom_uncorrelated / denom_correlated, where the
uncorrelated channel has mu = 0 and the correlated one uses --mu (default 1)."""

LINDBLAD_HELP = f"""CSV columns: {', '.join(LINDBLAD_COLUMNS)}.
ratio = ||L_un(rho0)|| / ||L_un(rho0) + L_cor(rho0)|| on the Bell state using the
reference generator matrices; lower/upper = 1/(1+x), 1/|1-x| ("inf" at x = 1)."""


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help=f"flat key = value file (fallback: ${CONFIG_ENV})")
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--time", type=float, help="evaluation time t (default 0.1)")
    p.add_argument("--theta", type=float, help="target angle in (0, pi/2] (default pi/2)")
    p.add_argument("--mu", type=float, help="memory parameter of the correlated channel (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qslnoise", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    ch = sub.add_parser("sweep-channel", help="sweep tau for a Kraus channel family",
                        description=CHANNEL_HELP,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(ch)
    ch.add_argument("--family", help=f"one of {', '.join(FAMILIES)}")
    ch.add_argument("--variant", help="amplitude damping: standard or paper-literal")
    ch.add_argument("--tau-min", type=float)
    ch.add_argument("--tau-max", type=float)
    ch.add_argument("--tau-steps", type=int)

    li = sub.add_parser("sweep-lindblad", help="sweep the collective factor a",
                        description=LINDBLAD_HELP,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(li)
    li.add_argument("--a-min", type=float)
    li.add_argument("--a-max", type=float)
    li.add_argument("--a-steps", type=int)
    li.add_argument("--gamma", type=float, help="decay rate (default 1)")
    li.add_argument("--nbar", type=float, help="Planck occupation N (default 1)")
    li.add_argument("--omega", type=float)
    li.add_argument("--temperature", type=float)

    va = sub.add_parser("validate", help="CPTP / trace-preservation report for one parameter point")
    _common(va)
    va.add_argument("--family", help=f"one of {', '.join(FAMILIES)}, lindblad")
    va.add_argument("--variant")
    va.add_argument("--tau", type=float, help="memory time (default 0.2)")
    va.add_argument("--gamma", type=float)
    va.add_argument("--nbar", type=float)
    va.add_argument("--omega", type=float)
    va.add_argument("--temperature", type=float)
    va.add_argument("--a", type=float, default=None)
    va.add_argument("--corrupt-k1", type=float, default=None, help=argparse.SUPPRESS)
    return parser


def resolve_config(args: argparse.Namespace, env=None) -> SweepConfig:
    env = os.environ if env is None else env
    config = SweepConfig()
    path = args.config or env.get(CONFIG_ENV)
    if path:
        try:
            config = config.with_overrides(read_config_file(path))
        except OSError as exc:
            raise ConfigError("config", str(exc)) from None
    skip = {"command", "config", "corrupt_k1", "a"}
    flags = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    return config.with_overrides(flags)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _validate_channel(config: SweepConfig, corrupt: float | None) -> int:
    if config.family not in FAMILIES:
        raise ConfigError("family", f"unknown family {config.family!r}")
    if not config.tau > 0 or config.t_eval < 0:
        raise ConfigError("tau", "need tau > 0 and time >= 0")
    params = RtnParams(config.tau, config.t_eval)
    rng = np.random.default_rng(0)
    states = [bell_state(), maximally_mixed(4)] + [random_density_matrix(4, rng) for _ in range(20)]
    ok = True
    lines = [f"family={config.family} variant={config.variant} tau={config.tau:g} t={config.t_eval:g}"]
    for mu in sorted({0.0, config.mu, 1.0}):
        try:
            k = family_channel(config.family, params, mu, config.variant)
        except ValueError as exc:
            raise ConfigError("tau", str(exc)) from None
        if corrupt is not None:
            k = k.with_scaled_operator(0, corrupt)
        report = validate_cptp(k)
        residual = max_trace_residual(k, states)
        passed = report.ok() and residual <= TRACE_TOL
        ok &= passed
        lines.append(f"mu={mu:g} operators={len(k)} completeness_defect={report.completeness_defect:.3e} "
                     f"choi_min_eigenvalue={report.choi_min_eigenvalue:.3e} "
                     f"trace_residual={residual:.3e} {'PASS' if passed else 'FAIL'}")
        if PAPER_LITERAL in k.flags:
            lines.append("  note: paper-literal operators are multiples of the identity; "
                         "the channel is the identity map and ratio_R is identically 1")
    print("\n".join(lines))
    return 0 if ok else 1


def _validate_lindblad(config: SweepConfig, a: float | None) -> int:
    n_bar = config.resolved_n_bar()
    a = 1.0 if a is None else a
    model = AtomicModel(config.gamma, config.gamma, a, n_bar)
    rng = np.random.default_rng(0)
    trace_res = herm_res = 0.0
    for _ in range(20):
        h = random_density_matrix(4, rng).matrix
        for gen in (uncorrelated_generator(model), correlated_generator(model), total_generator(model)):
            out = gen(h)
            trace_res = max(trace_res, abs(np.trace(out)))
            herm_res = max(herm_res, float(np.max(np.abs(out - out.conj().T))))
    fixture_res = float(np.max(np.abs(apply_uncorrelated(model, bell_state())
                                      - paper_case1_matrix(config.gamma, n_bar))))
    diag = case2_discrepancy(config.gamma, n_bar, a)
    ok = trace_res <= TRACE_TOL and herm_res <= TRACE_TOL and fixture_res <= TRACE_TOL
    print(f"family=lindblad gamma={config.gamma:g} n_bar={n_bar:.12g} a={a:g}")
    print(f"trace_residual={trace_res:.3e} hermiticity_residual={herm_res:.3e}")
    print(f"case1_fixture_residual={fixture_res:.3e}")
    print(f"case2_entry fixture={diag.fixture:.12g} derived={diag.derived:.12g} "
          f"mismatch={diag.mismatch:.3e}")
    print(f"x fixture={x_ratio(model):.12g} derived={x_ratio(model, mode='derived'):.12g}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def main(argv=None, env=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args, env)
        if args.command == "sweep-channel":
            text = sweep_channel_csv(config)
            if config.family == "amplitude-damping" and config.variant == "paper-literal":
                print("warning: paper-literal amplitude damping is the identity channel; "
                      "ratio_R is identically 1", file=sys.stderr)
            _emit(text, config.output)
            return 0
        if args.command == "sweep-lindblad":
            _emit(sweep_lindblad_csv(config), config.output)
            return 0
        if config.family == "lindblad":
            if args.a is not None and not 0 <= args.a <= 1:
                raise ConfigError("a", "must lie in [0, 1]")
            return _validate_lindblad(config, args.a)
        return _validate_channel(config, args.corrupt_k1)
    except ConfigError as exc:
        print(f"qslnoise: config error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())

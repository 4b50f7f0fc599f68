"""Command-line front end.

Subcommands: ``eval``, ``optimize``, ``curves``, ``sweep``, ``verify``,
``reproduce-example``.  A flat ``key = value`` config file (see
``CONFIG_KEYS``) overrides the built-in reference scenario; commands
validate the full configuration, including feasibility, before emitting
any output.

Exit codes: 0 success, 2 input or domain error, 3 infeasible policy,
4 I/O error, 5 verification or reproduction failure.
"""

import argparse
import sys
from dataclasses import dataclass, replace
from typing import Optional

from .capacity import b_star, overload_interval
from ._backend import kernels
from .errors import (ConfigError, ConvergenceError, DomainError,
                     EpiplanError, FeasibilityError)
from .optimizer import OptimizationResult, maximize_welfare, sweep, \
    verify_propositions
from .welfare import (GFunction, WelfarePolicy, check_feasibility,
                      welfare_closed, welfare_quadrature)

__all__ = ["RunConfig", "parse_config", "load_config", "main"]

CONFIG_KEYS = ("x0", "lambda", "c", "T", "b_lb", "g_kind", "g0", "g1",
               "dt", "precision")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4
EXIT_VERIFY = 5


@dataclass
class RunConfig:
    """Policy parameters plus output controls.

    Defaults are the built-in reference scenario: x0=0.01, lambda=0.5,
    c=0.15, T=15, b_lb=3.06 and the affine cost g(b) = 1 + b/T.
    """

    x0: float = 0.01
    lam: float = 0.5
    c: float = 0.15
    T: float = 15.0
    b_lb: float = 3.06
    g_kind: str = "affine"
    g0: float = 1.0
    g1: float = 1.0
    dt: float = 0.01
    precision: int = 6

    def to_policy(self) -> WelfarePolicy:
        if self.g_kind == "constant":
            g = GFunction.constant(self.g0)
        elif self.g_kind == "affine":
            g = GFunction.affine(self.g0, self.g1, self.T)
        else:
            raise ConfigError(
                f"g_kind must be 'constant' or 'affine', got {self.g_kind!r}")
        return WelfarePolicy(x0=self.x0, lam=self.lam, c=self.c, T=self.T,
                             b_lb=self.b_lb, g=g)


_FLOAT_KEYS = {"x0": "x0", "lambda": "lam", "c": "c", "T": "T",
               "b_lb": "b_lb", "g0": "g0", "g1": "g1", "dt": "dt"}


def parse_config(text: str) -> RunConfig:
    """Parse flat ``key = value`` lines; ``#`` starts a comment.

    Unknown or duplicate keys are errors; keys not present keep their
    defaults.
    """
    seen: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key:
            raise ConfigError(f"config line {lineno}: expected 'key = value'")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"config line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"config line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"config line {lineno}: empty value for {key!r}")
        seen[key] = value

    cfg = RunConfig()
    for key, value in seen.items():
        if key in _FLOAT_KEYS:
            try:
                setattr(cfg, _FLOAT_KEYS[key], float(value))
            except ValueError:
                raise ConfigError(f"config key {key!r}: not a number: {value!r}")
        elif key == "precision":
            try:
                cfg.precision = int(value)
            except ValueError:
                raise ConfigError(f"config key 'precision': not an integer: {value!r}")
        else:  # g_kind
            cfg.g_kind = value
    if not 0 <= cfg.precision <= 17:
        raise ConfigError(f"precision must lie in [0, 17], got {cfg.precision}")
    if not cfg.dt > 0.0:
        raise ConfigError(f"dt must be positive, got {cfg.dt}")
    return cfg


def load_config(path: Optional[str]) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}")
    return parse_config(text)


def _gated_policy(cfg: RunConfig) -> WelfarePolicy:
    """Build and validate the policy; infeasible configurations abort."""
    policy = cfg.to_policy()
    report = check_feasibility(policy)
    if not report.feasible:
        raise FeasibilityError(f"policy is infeasible ({report})")
    return policy


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def _fmt_flag(flag: bool) -> str:
    return "true" if flag else "false"


def _fmt_overload(iv, precision: int) -> str:
    if iv is None:
        return "none"
    return f"[{_fmt(iv.t_l, precision)}, {_fmt(iv.t_r, precision)}]"


def _write_lines(lines: list[str], out_path: Optional[str]) -> None:
    payload = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(payload)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)


def _time_grid(T: float, dt: float) -> list[float]:
    n = int(T / dt + 1e-9)
    ts = [k * dt for k in range(n + 1)]
    if ts[-1] < T - 1e-9 * max(1.0, T):
        ts.append(T)
    else:
        ts[-1] = min(ts[-1], T)
    return ts


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    policy = _gated_policy(cfg)
    b = args.b
    if not policy.b_lb <= b <= policy.T:
        raise DomainError(
            f"b outside [b_lb, T] = [{policy.b_lb}, {policy.T}]: {b}")
    w_closed = welfare_closed(b, policy)
    w_quad = welfare_quadrature(b, policy)
    bs = b_star(policy.c, policy.x0)
    iv = overload_interval(b, policy.c, policy.x0, policy.T)
    feas = check_feasibility(policy)
    p = cfg.precision
    lines = [
        f"b = {_fmt(b, p)}",
        f"a = {_fmt(policy.epidemic(b).a, p)}",
        f"W_closed = {_fmt(w_closed, p)}",
        f"W_quadrature = {_fmt(w_quad, p)}",
        f"abs_diff = {_fmt(abs(w_closed - w_quad), p)}",
        f"b_star = {_fmt(bs, p)}",
        f"overload = {_fmt_overload(iv, p)}",
        f"exceeded = {_fmt_flag(b < bs)}",
        f"feasibility_margin = {_fmt(feas.worst_margin, p)}",
    ]
    _write_lines(lines, None)
    return EXIT_OK


def _result_lines(res: OptimizationResult, precision: int) -> list[str]:
    plateau_hi = ("none" if res.plateau_hi is None
                  else _fmt(res.plateau_hi, precision))
    return [
        f"b_opt = {_fmt(res.b_opt, precision)}",
        f"a_opt = {_fmt(res.a_opt, precision)}",
        f"w_opt = {_fmt(res.w_opt, precision)}",
        f"plateau = {_fmt_flag(res.plateau)}",
        f"plateau_hi = {plateau_hi}",
        f"exceeded = {_fmt_flag(res.exceeded)}",
        f"overload = {_fmt_overload(res.overload, precision)}",
        f"evaluations = {res.evaluations}",
    ]


def cmd_optimize(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    policy = _gated_policy(cfg)
    res = maximize_welfare(policy)
    _write_lines(_result_lines(res, cfg.precision), None)
    return EXIT_OK


def cmd_curves(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    policy = _gated_policy(cfg)
    try:
        b_values = [float(tok) for tok in args.b.split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"--b expects comma-separated numbers, got {args.b!r}")
    if not b_values:
        raise DomainError("--b lists no peak times")
    for b in b_values:
        if not policy.b_lb <= b <= policy.T:
            raise DomainError(
                f"b outside [b_lb, T] = [{policy.b_lb}, {policy.T}]: {b}")
    p = cfg.precision
    ts = _time_grid(policy.T, cfg.dt)
    lines = ["b,t,x,xdot,y,h,w"]
    for b in b_values:
        epi = policy.epidemic(b)
        g_b = policy.g.value(b)
        b_txt = _fmt(b, p)
        for t in ts:
            x = kernels.logistic_x(t, epi.a, epi.b)
            xd = kernels.logistic_xdot(t, epi.a, epi.b)
            y = 1.0 - g_b * xd
            h = 1.0 - (xd - policy.c) if xd > policy.c else 1.0
            w = policy.lam * y + (1.0 - policy.lam) * h
            lines.append(f"{b_txt},{_fmt(t, p)},{_fmt(x, p)},{_fmt(xd, p)},"
                         f"{_fmt(y, p)},{_fmt(h, p)},{_fmt(w, p)}")
    _write_lines(lines, args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    policy = _gated_policy(cfg)
    results = sweep(policy, args.param, args.lo, args.hi, args.steps)
    p = cfg.precision
    lines = ["param_value,b_opt,a_opt,w_opt,exceeded,plateau"]
    for value, res in results:
        lines.append(f"{_fmt(value, p)},{_fmt(res.b_opt, p)},"
                     f"{_fmt(res.a_opt, p)},{_fmt(res.w_opt, p)},"
                     f"{int(res.exceeded)},{int(res.plateau)}")
    _write_lines(lines, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    policy = _gated_policy(cfg)
    report = verify_propositions(policy, args.trials, args.seed)
    lines = []
    for check in report.checks:
        if check.trials == 0:
            lines.append(f"{check.name}: SKIP (0 trials)")
            continue
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"{check.name}: {status} "
                     f"({check.trials - check.failures}/{check.trials})")
        if check.counterexample is not None:
            lines.append(f"  counterexample: {check.counterexample}")
    lines.append(f"verification: {'PASS' if report.passed else 'FAIL'}")
    _write_lines(lines, None)
    return EXIT_OK if report.passed else EXIT_VERIFY


_REFERENCE_TOL = 0.005


def cmd_reproduce_example(args: argparse.Namespace) -> int:
    cfg = RunConfig()  # parameters are built in
    policy = _gated_policy(cfg)
    res1 = maximize_welfare(policy)
    iv1 = res1.overload
    res2 = maximize_welfare(replace(policy, lam=0.05))
    rows = [
        ("panel 1 (lambda=0.50) b_opt", res1.b_opt, 6.14),
        ("panel 1 (lambda=0.50) t_l", iv1.t_l if iv1 else float("nan"), 4.86),
        ("panel 1 (lambda=0.50) t_r", iv1.t_r if iv1 else float("nan"), 7.42),
        ("panel 2 (lambda=0.05) b_opt", res2.b_opt, 7.66),
    ]
    lines = []
    all_ok = True
    for label, computed, reference in rows:
        diff = abs(computed - reference)
        ok = diff <= _REFERENCE_TOL
        all_ok = all_ok and ok
        lines.append(f"{label}: computed {computed:.6f}, reference "
                     f"{reference:.2f}, |diff| = {diff:.6f}, "
                     f"tol {_REFERENCE_TOL}: {'PASS' if ok else 'FAIL'}")
    lines.append(f"reproduction: {'PASS' if all_ok else 'FAIL'}")
    _write_lines(lines, None)
    return EXIT_OK if all_ok else EXIT_VERIFY


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epiplan",
        description="SI infection waves, care-capacity overload, and the "
                    "welfare-maximizing peak time.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", default=None,
                        help="flat key = value configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate welfare at one peak time")
    p.add_argument("--b", type=float, required=True, metavar="V",
                   help="peak time to evaluate")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("optimize", parents=[common],
                       help="maximize welfare over the peak time")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("curves", parents=[common],
                       help="emit t-sampled curves as CSV")
    p.add_argument("--b", required=True, metavar="V[,V...]",
                   help="comma-separated peak times")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("sweep", parents=[common],
                       help="optimize across a parameter range, CSV output")
    p.add_argument("--param", required=True, choices=("lambda", "c", "b_lb"))
    p.add_argument("--from", dest="lo", type=float, required=True, metavar="LO")
    p.add_argument("--to", dest="hi", type=float, required=True, metavar="HI")
    p.add_argument("--steps", type=int, required=True, metavar="N")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common],
                       help="randomized checks of the planner's properties")
    p.add_argument("--trials", type=int, default=200, metavar="N")
    p.add_argument("--seed", type=int, default=42, metavar="S")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce-example",
                       help="rerun the built-in reference scenario")
    p.set_defaults(func=cmd_reproduce_example)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FeasibilityError as exc:
        print(f"epiplan: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ConfigError, DomainError, ConvergenceError, EpiplanError) as exc:
        print(f"epiplan: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"epiplan: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

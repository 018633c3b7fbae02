"""Command-line front end.

Subcommands:
  solve    optimize a single instance and print the result
  exact    diagonalize a single instance and print ground-state observables
  sweep    run a (n, gamma) grid and write CSV (optionally SVG plots)
  compare  run both methods on a grid and audit their agreement

Exit codes: 0 on success, 1 on validation errors, 2 when compare finds a
deviation above the bound. Flags override values from a ``--config`` file of
flat ``key = value`` lines using the same names as the flags (dashes or
underscores both work).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import model, sweep
from .ansatz import build_ansatz, default_depth
from .exact import biorthogonal_ground_observable, diagonalize, ground_pair, observable, susceptibility
from .solver import SolverConfig, solve
from .statevector import NoiseConfig


class CLIError(Exception):
    """Validation failure that should exit with code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102 - argparse hook
        raise CLIError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=model.MODEL_KINDS, default=None,
                   help="which chain to build (default tim)")
    p.add_argument("--epsilon", type=float, default=None,
                   help="measurement-noise half-width (default 0.04 for vqe runs)")
    p.add_argument("--seed", type=int, default=None, help="master RNG seed (default 0)")
    p.add_argument("--depth", type=int, default=None,
                   help="ansatz layers (default: over-expressive depth for n)")
    p.add_argument("--restarts", type=int, default=None,
                   help="random restarts per solve (default 5)")
    p.add_argument("--config", type=str, default=None, help="key = value config file")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=str, default=None, help="spin counts, e.g. 5 or 4,6,8")
    p.add_argument("--gamma-start", type=float, default=None)
    p.add_argument("--gamma-end", type=float, default=None)
    p.add_argument("--steps", type=int, default=None, help="grid points (default 41)")
    p.add_argument("--method", choices=sweep.METHODS, default=None)
    p.add_argument("--out", type=str, default=None, help="CSV output path")
    p.add_argument("--plot", action="store_true", default=None,
                   help="also write <out>.mx.svg and <out>.chi_x.svg")
    p.add_argument("--workers", type=int, default=None, help="parallel grid workers")


def _build_parser() -> _Parser:
    parser = _Parser(prog="nhvqe", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="variational solve of one instance")
    _add_common(p_solve)
    p_solve.add_argument("--n", type=str, default=None, help="spin count")
    p_solve.add_argument("--gamma", type=float, default=None, help="field strength")
    p_solve.add_argument("--history-out", type=str, default=None,
                         help="write per-iteration costs to this file")

    p_exact = sub.add_parser("exact", help="exact diagonalization of one instance")
    _add_common(p_exact)
    p_exact.add_argument("--n", type=str, default=None, help="spin count")
    p_exact.add_argument("--gamma", type=float, default=None, help="field strength")
    p_exact.add_argument("--biorthogonal", action="store_true",
                         help="also print the left/right biorthogonal magnetization")

    p_sweep = sub.add_parser("sweep", help="grid run over gamma and n")
    _add_common(p_sweep)
    _add_grid(p_sweep)

    p_cmp = sub.add_parser("compare", help="run both methods and audit deviations")
    _add_common(p_cmp)
    _add_grid(p_cmp)
    p_cmp.add_argument("--bound", type=float, default=None,
                       help="max allowed |mx_vqe - mx_exact| (default 0.1)")
    return parser


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CLIError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


_FILE_PARSERS = {
    "model": str, "method": str, "n": str, "out": str, "config": str,
    "gamma": float, "gamma_start": float, "gamma_end": float,
    "epsilon": float, "bound": float,
    "steps": int, "seed": int, "depth": int, "restarts": int, "workers": int,
    "plot": lambda s: s.lower() in ("1", "true", "yes", "on"),
}

# config files also accept the sweep-configuration field names
_FILE_ALIASES = {
    "n_list": "n",
    "gamma_steps": "steps",
    "master_seed": "seed",
    "output_path": "out",
}


def _merge(args: argparse.Namespace) -> argparse.Namespace:
    """Flags beat config-file values, which beat defaults."""
    if getattr(args, "config", None):
        file_values = _read_config_file(args.config)
        for key, raw in file_values.items():
            key = _FILE_ALIASES.get(key, key)
            if key not in _FILE_PARSERS:
                raise CLIError(f"unknown config key {key!r}")
            if getattr(args, key, None) is None:
                try:
                    setattr(args, key, _FILE_PARSERS[key](raw))
                except ValueError as exc:
                    raise CLIError(f"config key {key!r}: {exc}") from exc
    return args


def _parse_n_list(raw: str | None, default: tuple[int, ...] = ()) -> tuple[int, ...]:
    if raw is None:
        if default:
            return default
        raise CLIError("--n is required")
    try:
        return tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError as exc:
        raise CLIError(f"bad --n value {raw!r}") from exc


def _single_n(raw: str | None) -> int:
    values = _parse_n_list(raw)
    if len(values) != 1:
        raise CLIError("this subcommand takes a single --n")
    return values[0]


def _solver_config(args: argparse.Namespace, epsilon: float, seed: int) -> SolverConfig:
    config = SolverConfig(noise=NoiseConfig(epsilon, seed), init_seed=seed)
    if getattr(args, "restarts", None) is not None:
        config = replace(config, restarts=args.restarts)
    return config


def _cmd_solve(args: argparse.Namespace) -> int:
    n = _single_n(args.n)
    kind = args.model or model.TIM
    gamma = args.gamma if args.gamma is not None else 1.0
    epsilon = args.epsilon if args.epsilon is not None else 0.04
    seed = args.seed if args.seed is not None else 0
    h = model.build_hamiltonian(kind, n, gamma)
    circuit = build_ansatz(n, args.depth if args.depth is not None else default_depth(n))
    config = _solver_config(args, epsilon, seed)
    result = solve(h, circuit, config)
    print(f"model = {kind}  n = {n}  gamma = {gamma:g}  epsilon = {epsilon:g}  seed = {seed}")
    print(f"energy       = {result.energy.real:+.10f} {result.energy.imag:+.10f}i")
    print(f"final_cost   = {result.final_cost:.6e}")
    print(f"restart      = {result.restart_index + 1} of {config.restarts}")
    print(f"iterations   = {len(result.cost_history)}")
    print(f"ground energy= {result.ground.energy.real:+.10f} {result.ground.energy.imag:+.10f}i"
          f"  (restart {result.ground.restart_index + 1}, cost {result.ground.final_cost:.3e})")
    if args.history_out:
        with open(args.history_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(format(c, ".17g") for c in result.cost_history) + "\n")
        print(f"cost history -> {args.history_out}")
    return 0


def _cmd_exact(args: argparse.Namespace) -> int:
    n = _single_n(args.n)
    kind = args.model or model.TIM
    gamma = args.gamma if args.gamma is not None else 1.0
    h = model.build_hamiltonian(kind, n, gamma)
    mx = model.build_mx(n)
    pair = ground_pair(diagonalize(h))
    print(f"model = {kind}  n = {n}  gamma = {gamma:g}")
    print(f"ground value = {pair.value.real:+.10f} {pair.value.imag:+.10f}i")
    print(f"residual     = {pair.residual:.3e}")
    print(f"mx           = {observable(pair, mx).real:+.10f}")
    print(f"chi_x        = {susceptibility(pair, mx):+.10f}")
    if args.biorthogonal:
        bio = biorthogonal_ground_observable(h, mx)
        print(f"mx (biorth.) = {bio.real:+.10f} {bio.imag:+.10f}i")
    return 0


def _sweep_config(args: argparse.Namespace, method: str) -> sweep.SweepConfig:
    n_list = _parse_n_list(args.n)
    epsilon = args.epsilon if args.epsilon is not None else 0.04
    seed = args.seed if args.seed is not None else 0
    config = sweep.SweepConfig(
        model=args.model or model.TIM,
        n_list=n_list,
        gamma_start=args.gamma_start if args.gamma_start is not None else 0.0,
        gamma_end=args.gamma_end if args.gamma_end is not None else 2.0,
        gamma_steps=args.steps if args.steps is not None else 41,
        method=method,
        solver=_solver_config(args, epsilon, seed),
        noise=NoiseConfig(epsilon, seed),
        depth=args.depth,
        workers=args.workers if args.workers is not None else 1,
        master_seed=seed,
        output_path=args.out,
        plot=bool(args.plot),
    )
    try:
        config.validate()
    except ValueError as exc:
        raise CLIError(str(exc)) from exc
    return config


def _write_outputs(config: sweep.SweepConfig, result: sweep.SweepResult) -> None:
    if config.output_path:
        sweep.write_csv(result, config.output_path)
        print(f"csv -> {config.output_path}")
        if config.plot:
            for quantity in sweep.QUANTITIES:
                svg_path = f"{config.output_path}.{quantity}.svg"
                sweep.render_svg(result, quantity, svg_path)
                print(f"svg -> {svg_path}")
    elif config.plot:
        raise CLIError("--plot requires --out")


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _sweep_config(args, args.method or sweep.EXACT)
    result = sweep.run_sweep(config)
    _write_outputs(config, result)
    if not config.output_path:
        print(sweep.CSV_HEADER)
        for r in result.rows:
            print(f"{r.model},{r.n},{r.gamma:.6g},{r.method},{r.energy_re:.6g},"
                  f"{r.energy_im:.6g},{r.mx:.6g},{r.chi_x:.6g},{r.final_cost:.3e},{r.seed}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    bound = args.bound if args.bound is not None else 0.1
    config = _sweep_config(args, sweep.BOTH)
    result = sweep.run_sweep(config)
    _write_outputs(config, result)
    summary = sweep.compare(result)
    print(f"{'n':>3}  {'max |d mx|':>12}  {'mean |d mx|':>12}  {'max |d E|':>12}  {'mean |d E|':>12}")
    for n, dev in sorted(summary.per_n.items()):
        print(f"{n:>3}  {dev.max_mx:>12.6f}  {dev.mean_mx:>12.6f}  "
              f"{dev.max_energy:>12.6f}  {dev.mean_energy:>12.6f}")
    if summary.exceeds(bound):
        print(f"FAIL: max mx deviation {summary.max_mx_deviation:.6f} exceeds bound {bound:g}")
        return 2
    print(f"OK: max mx deviation {summary.max_mx_deviation:.6f} within bound {bound:g}")
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "exact": _cmd_exact,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = _merge(parser.parse_args(argv))
        return _COMMANDS[args.command](args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

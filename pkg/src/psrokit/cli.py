"""Command-line harness: seeded experiment runs emitting CSV, exploitability
evaluation of saved policies, and matrix-file generation."""

from __future__ import annotations

import argparse
import configparser
import json
import sys

import numpy as np

from psrokit.evaluation import exploitability
from psrokit.normal_form import NormalFormGame, save_matrix
from psrokit.population import (
    ALGORITHMS,
    IterationSchedule,
    MetasolverConfig,
    OracleConfig,
    run,
)
from psrokit.strategies import BehaviorPolicy, MixedStrategy
from psrokit.zoo import parse_game_spec

CSV_FIELDS = (
    "algorithm",
    "game",
    "seed",
    "iteration",
    "cumulative_episodes",
    "population_size_per_player",
    "exploitability",
    "wall_ms",
)

# Ready-made experiment configurations.  NFG runs use the damped-step
# response emulation; "tab-" runs use Q-learning with the bandit solver and
# the published per-iteration budgets.
PRESETS: dict[str, dict[str, dict[str, str]]] = {
    "fig3a-big-rps-50": {
        "experiment": {
            "game": "generalized_rps:50",
            "algorithm": "sp_psro",
            "seeds": "0 1 2 3 4",
            "iterations": "10",
        },
        "oracle": {"kind": "smoothed", "smoothing": "0.1"},
        "schedule": {"n": "200", "m": "10", "checkpoint_every": "1"},
        "metasolver": {"no_regret": "mwu", "mwu_learning_rate": "0.1"},
    },
    "fig3b-random-30": {
        "experiment": {
            "game": "random_uniform:30,30",
            "algorithm": "sp_psro",
            "seeds": "0 1 2 3 4",
            "iterations": "15",
        },
        "oracle": {"kind": "smoothed", "smoothing": "0.1"},
        "schedule": {"n": "200", "m": "10", "checkpoint_every": "1"},
        "metasolver": {"no_regret": "mwu", "mwu_learning_rate": "0.1"},
    },
    "fig3e-blotto-5-3": {
        "experiment": {
            "game": "blotto:5,3",
            "algorithm": "sp_psro",
            "seeds": "0 1 2 3 4",
            "iterations": "10",
        },
        "oracle": {"kind": "smoothed", "smoothing": "0.1"},
        "schedule": {"n": "200", "m": "10", "checkpoint_every": "1"},
        "metasolver": {"no_regret": "mwu", "mwu_learning_rate": "0.1"},
    },
    "kuhn-nfg": {
        "experiment": {
            "game": "kuhn_poker:nfg",
            "algorithm": "sp_psro",
            "seeds": "0 1 2",
            "iterations": "10",
        },
        "oracle": {"kind": "smoothed", "smoothing": "0.1"},
        "schedule": {"n": "200", "m": "10", "checkpoint_every": "1"},
        "metasolver": {"no_regret": "mwu", "mwu_learning_rate": "0.1"},
    },
    "tab-leduc": {
        "experiment": {
            "game": "leduc_poker",
            "algorithm": "sp_psro",
            "seeds": "0 1 2",
            "iterations": "35",
        },
        "oracle": {"kind": "q_learning", "q_learning_rate": "0.025", "q_epsilon": "0.2"},
        "schedule": {
            "episodes_per_iteration": "799800",
            "exp3_updates_per_iteration": "19800",
            "batches": "600",
            "checkpoint_every": "10",
        },
        "metasolver": {"no_regret": "exp3", "exp3_exploration": "0.1"},
    },
    "tab-repeated-rps": {
        "experiment": {
            "game": "repeated_rps:4",
            "algorithm": "sp_psro",
            "seeds": "0 1 2",
            "iterations": "20",
        },
        "oracle": {"kind": "q_learning", "q_learning_rate": "0.025", "q_epsilon": "0.2"},
        "schedule": {
            "episodes_per_iteration": "799800",
            "exp3_updates_per_iteration": "19800",
            "batches": "600",
            "checkpoint_every": "10",
        },
        "metasolver": {"no_regret": "exp3", "exp3_exploration": "0.1"},
    },
    "big-rps-not-anytime": {
        "experiment": {
            "game": "generalized_rps:50",
            "algorithm": "sp_psro_not_anytime",
            "seeds": "0 1 2 3 4",
            "iterations": "10",
        },
        "oracle": {"kind": "smoothed", "smoothing": "0.1"},
        "schedule": {"n": "200", "m": "10", "checkpoint_every": "1"},
        "metasolver": {"restricted_solver": "lp"},
    },
    "big-rps-last-iterate": {
        "experiment": {
            "game": "generalized_rps:50",
            "algorithm": "sp_psro_last_iterate",
            "seeds": "0 1 2 3 4",
            "iterations": "10",
        },
        "oracle": {"kind": "smoothed", "smoothing": "0.1"},
        "schedule": {"n": "200", "m": "10", "checkpoint_every": "1"},
        "metasolver": {"no_regret": "mwu", "mwu_learning_rate": "0.1"},
    },
}

_SCHEDULE_KEYS = {
    "n": int,
    "m": int,
    "batches": int,
    "checkpoint_every": int,
    "episodes_per_iteration": int,
    "exp3_updates_per_iteration": int,
    "switch_to_apsro_after": int,
}
_ORACLE_KEYS = {"kind": str, "smoothing": float, "q_learning_rate": float, "q_epsilon": float}
_META_KEYS = {
    "restricted_solver": str,
    "fp_iterations": int,
    "no_regret": str,
    "mwu_learning_rate": float,
    "exp3_learning_rate": float,
    "exp3_exploration": float,
}
_EXPERIMENT_KEYS = ("game", "algorithm", "seeds", "iterations", "output")


class ConfigError(ValueError):
    """Configuration problem; the message carries a file/section anchor."""


def _parse_seeds(text: str) -> list[int]:
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise ValueError("empty seed list")
    return [int(tok) for tok in tokens]


def _section_kwargs(parser, where, section, allowed):
    kwargs = {}
    if not parser.has_section(section):
        return kwargs
    for key, raw in parser.items(section):
        if key not in allowed:
            raise ConfigError(f"{where}: [{section}] {key}: unknown option")
        try:
            kwargs[key] = allowed[key](raw)
        except ValueError:
            raise ConfigError(
                f"{where}: [{section}] {key}: cannot parse {raw!r} as {allowed[key].__name__}"
            ) from None
    return kwargs


def load_experiment(path=None, preset=None, overrides=None):
    """Resolve preset and/or config file into runnable experiment pieces.

    Returns (game_spec, algorithm, seeds, iterations, output, schedule,
    oracle, metasolver).  Raises ConfigError on any problem.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    where = path if path is not None else f"preset:{preset}"
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; available: {', '.join(sorted(PRESETS))}")
        parser.read_dict(PRESETS[preset])
    if path is not None:
        try:
            loaded = parser.read(path)
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from None
        if not loaded:
            raise ConfigError(f"{path}: cannot read config file")
    if not parser.has_section("experiment"):
        raise ConfigError(f"{where}: missing [experiment] section")
    exp = parser["experiment"]
    for key in exp:
        if key not in _EXPERIMENT_KEYS:
            raise ConfigError(f"{where}: [experiment] {key}: unknown option")

    overrides = overrides or {}
    game_text = overrides.get("game") or exp.get("game")
    if not game_text:
        raise ConfigError(f"{where}: [experiment] game: required")
    try:
        game_spec = parse_game_spec(game_text)
    except ValueError as exc:
        raise ConfigError(f"{where}: [experiment] game: {exc}") from None

    algorithm = overrides.get("algorithm") or exp.get("algorithm")
    if not algorithm:
        raise ConfigError(f"{where}: [experiment] algorithm: required")
    if algorithm not in ALGORITHMS:
        raise ConfigError(
            f"{where}: [experiment] algorithm: {algorithm!r} is not one of {', '.join(ALGORITHMS)}"
        )

    try:
        seeds = _parse_seeds(overrides.get("seeds") or exp.get("seeds", "0"))
    except ValueError as exc:
        raise ConfigError(f"{where}: [experiment] seeds: {exc}") from None

    if overrides.get("iterations") is not None:
        iterations = overrides["iterations"]
    else:
        try:
            iterations = exp.getint("iterations", 10)
        except ValueError:
            raise ConfigError(f"{where}: [experiment] iterations: must be an integer") from None
    if iterations < 0:
        raise ConfigError(f"{where}: [experiment] iterations: must be non-negative")

    output = overrides.get("output") or exp.get("output") or "results.csv"

    try:
        schedule = IterationSchedule(**_section_kwargs(parser, where, "schedule", _SCHEDULE_KEYS))
        oracle = OracleConfig(**_section_kwargs(parser, where, "oracle", _ORACLE_KEYS))
        metasolver = MetasolverConfig(**_section_kwargs(parser, where, "metasolver", _META_KEYS))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None

    return game_spec, algorithm, seeds, iterations, output, schedule, oracle, metasolver


def _echo_lines(game_spec, algorithm, seeds, iterations, schedule, oracle, metasolver):
    lines = [
        f"experiment.game = {_spec_text(game_spec)}",
        f"experiment.algorithm = {algorithm}",
        f"experiment.seeds = {' '.join(str(s) for s in seeds)}",
        f"experiment.iterations = {iterations}",
    ]
    for name, cfg, keys in (
        ("schedule", schedule, _SCHEDULE_KEYS),
        ("oracle", oracle, _ORACLE_KEYS),
        ("metasolver", metasolver, _META_KEYS),
    ):
        for key in keys:
            lines.append(f"{name}.{key} = {getattr(cfg, key)}")
    return lines


def _spec_text(spec):
    args = []
    if spec.kind == "generalized_rps":
        args = [spec.n]
    elif spec.kind == "random_uniform":
        args = [spec.rows, spec.cols] + ([spec.seed] if spec.seed is not None else [])
    elif spec.kind == "blotto":
        args = [spec.coins, spec.fields]
    elif spec.kind == "matrix_file":
        args = [spec.path]
    elif spec.kind == "repeated_rps":
        args = [spec.repetitions]
    if spec.as_normal_form:
        args.append("nfg")
    return spec.kind + (":" + ",".join(str(a) for a in args) if args else "")


def _format_record(record) -> str:
    return ",".join(
        (
            record.algorithm,
            record.game,
            str(record.seed),
            str(record.iteration),
            str(record.cumulative_episodes),
            str(record.population_size_per_player),
            repr(record.exploitability),
            str(record.wall_ms),
        )
    )


def write_csv(fh, records, echo_lines) -> None:
    for line in echo_lines:
        fh.write(f"# {line}\n")
    fh.write(",".join(CSV_FIELDS) + "\n")
    for record in sorted(records, key=lambda r: (r.seed, r.iteration)):
        fh.write(_format_record(record) + "\n")


def read_csv(path):
    """Parse an emitted CSV back into (echo_lines, list of field dicts)."""
    echo = []
    rows = []
    with open(path) as fh:
        header = None
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                echo.append(line[1:].strip())
                continue
            if header is None:
                header = line.split(",")
                continue
            parts = line.split(",")
            row = dict(zip(header, parts))
            row["seed"] = int(row["seed"])
            row["iteration"] = int(row["iteration"])
            row["cumulative_episodes"] = int(row["cumulative_episodes"])
            row["population_size_per_player"] = int(row["population_size_per_player"])
            row["exploitability"] = float(row["exploitability"])
            row["wall_ms"] = int(row["wall_ms"])
            rows.append(row)
    return echo, rows


def cmd_run(args) -> int:
    overrides = {
        "seeds": args.seeds,
        "iterations": args.iterations,
        "output": args.output,
        "algorithm": args.algorithm,
        "game": args.game,
    }
    try:
        if args.config is None and args.preset is None:
            raise ConfigError("run needs --config or --preset")
        game_spec, algorithm, seeds, iterations, output, schedule, oracle, metasolver = load_experiment(
            args.config, args.preset, overrides
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        records = []
        if game_spec.kind == "random_uniform" and game_spec.seed is None:
            # one freshly drawn game per experiment seed
            for seed in seeds:
                game = game_spec.make(fallback_seed=seed)
                records.extend(
                    run(algorithm, game, schedule, oracle, metasolver, seeds=[seed], iterations=iterations)
                )
        else:
            game = game_spec.make(fallback_seed=seeds[0])
            records = run(algorithm, game, schedule, oracle, metasolver, seeds=seeds, iterations=iterations)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - runtime failures exit 1 by contract
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 1

    echo = _echo_lines(game_spec, algorithm, seeds, iterations, schedule, oracle, metasolver)
    with open(output, "w") as fh:
        write_csv(fh, records, echo)
    print(f"wrote {len(records)} records to {output}")
    return 0


def load_policy(path: str, game, player: int):
    """Read a strategy from JSON, or the literal name ``uniform``.

    Matrix games take a list of probabilities; extensive-form games take a
    mapping from information-set key strings to probability lists.
    """
    if path == "uniform":
        if isinstance(game, NormalFormGame):
            k = game.shape[player]
            return MixedStrategy(np.full(k, 1.0 / k))
        return BehaviorPolicy(default_uniform=True)
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(game, NormalFormGame):
        if not isinstance(data, list):
            raise ValueError(f"{path}: matrix-game policy must be a JSON list of probabilities")
        return MixedStrategy(np.asarray(data, dtype=float))
    if not isinstance(data, dict):
        raise ValueError(f"{path}: extensive-form policy must be a JSON object")
    table = {key.encode(): np.asarray(vec, dtype=float) for key, vec in data.items()}
    return BehaviorPolicy(table)


def cmd_exploitability(args) -> int:
    try:
        game_spec = parse_game_spec(args.game)
        game = game_spec.make(fallback_seed=args.seed)
        strat0 = load_policy(args.policy0, game, 0)
        strat1 = load_policy(args.policy1, game, 1)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        gap = exploitability(game, strat0, strat1)
    except Exception as exc:  # noqa: BLE001
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 1
    print(f"{gap:.6f}")
    return 0


def cmd_gen_game(args) -> int:
    try:
        game_spec = parse_game_spec(args.game)
        game = game_spec.make(fallback_seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not isinstance(game, NormalFormGame):
        print(
            "error: gen-game writes matrix files; append ',nfg' to convert an extensive-form game",
            file=sys.stderr,
        )
        return 2
    try:
        save_matrix(game, args.output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {game.shape[0]}x{game.shape[1]} matrix to {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psrokit",
        description="Population-based solvers for two-player zero-sum games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment and write a CSV of iteration records")
    run_p.add_argument("--config", help="INI config file path")
    run_p.add_argument("--preset", help=f"named preset ({', '.join(sorted(PRESETS))})")
    run_p.add_argument("--game", help="override the game spec, e.g. blotto:5,3")
    run_p.add_argument("--algorithm", choices=ALGORITHMS, help="override the algorithm")
    run_p.add_argument("--seeds", help="override seeds, e.g. '0 1 2' or '0,1,2'")
    run_p.add_argument("--iterations", type=int, help="override the iteration count")
    run_p.add_argument("--output", help="output CSV path (default results.csv)")
    run_p.set_defaults(func=cmd_run)

    ex_p = sub.add_parser("exploitability", help="evaluate a strategy profile exactly")
    ex_p.add_argument("game", help="game spec, e.g. kuhn_poker or generalized_rps:3")
    ex_p.add_argument("policy0", help="player 0 policy: JSON file or 'uniform'")
    ex_p.add_argument("policy1", help="player 1 policy: JSON file or 'uniform'")
    ex_p.add_argument("--seed", type=int, default=0, help="seed for seeded game specs")
    ex_p.set_defaults(func=cmd_exploitability)

    gen_p = sub.add_parser("gen-game", help="write a game as a plain-text matrix file")
    gen_p.add_argument("game", help="matrix game spec, e.g. generalized_rps:3")
    gen_p.add_argument("output", help="destination path")
    gen_p.add_argument("--seed", type=int, default=0, help="seed for seeded game specs")
    gen_p.set_defaults(func=cmd_gen_game)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

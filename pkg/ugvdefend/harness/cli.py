# General imports
from typing import List, Optional
import argparse
import sys

# Relative imports
from .commands import cmd_compare, cmd_eval, cmd_train, cmd_transfer
from ..core.errors import ConfigurationError, UGVDefendError
from ..util.logging import configure_logging, get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_USAGE_ERROR = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="YAML config file (defaults apply to missing keys)")
    parser.add_argument("--seed", type=int, default=None, help="Root seed, overrides the config")
    parser.add_argument("--force", action="store_true", help="Overwrite existing output files")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes for evaluation")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--log-file", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ugvdefend", description="Train, evaluate and transfer UGV incident-response agents")
    subparsers = parser.add_subparsers(dest="command", required=True)

    train_p = subparsers.add_parser("train", help="Train a policy in the simple environment")
    _add_common(train_p)
    train_p.add_argument("--algorithm", required=True, choices=["qlearning", "dqn"])
    train_p.add_argument("--out", required=True, help="Model file to write")
    train_p.add_argument("--episodes", type=int, default=None, help="Q-learning training episodes")
    train_p.add_argument("--timesteps", type=int, default=None, help="DQN training timesteps")
    train_p.add_argument("--trace", action="store_true", help="Also write the per-step log of the evaluation episodes")

    eval_p = subparsers.add_parser("eval", help="Evaluate a model or the random baseline")
    _add_common(eval_p)
    eval_p.add_argument("--model", default=None)
    eval_p.add_argument("--algorithm", default=None, choices=["random"], help="Evaluate a baseline instead of a model")
    eval_p.add_argument("--episodes", type=int, default=None)
    eval_p.add_argument("--out", required=True, help="Output directory")

    compare_p = subparsers.add_parser("compare", help="Compare random choice and the Q-learning strategies")
    _add_common(compare_p)
    compare_p.add_argument("--seeds", type=int, nargs="+", default=None, help="Seeds to average over (default: --seed or 0)")
    compare_p.add_argument("--episodes", type=int, default=None)
    compare_p.add_argument("--dqn", action="store_true", help="Include DQN")
    compare_p.add_argument("--out", required=True, help="Output directory")

    transfer_p = subparsers.add_parser("transfer", help="Run a policy in the integrated environment")
    _add_common(transfer_p)
    transfer_p.add_argument("--model", default=None)
    transfer_p.add_argument("--algorithm", default=None, choices=["random", "donothing"], help="Run a baseline instead of a model")
    transfer_p.add_argument("--episodes", "--missions", dest="missions", type=int, default=None, help="Number of missions")
    transfer_p.add_argument("--realtime", action="store_true", help="Run missions in real time (clock_scale 1)")
    transfer_p.add_argument("--out", required=True, help="Output directory")

    return parser


def run_command(args: argparse.Namespace) -> None:
    if args.command == "train":
        summary = cmd_train(args.config, args.algorithm, args.out, seed=args.seed, episodes=args.episodes,
                            timesteps=args.timesteps, workers=args.workers, force=args.force, trace=args.trace)
        print(summary.describe())
    elif args.command == "eval":
        summary = cmd_eval(args.model, args.config, args.episodes, args.seed, args.out,
                           algorithm=args.algorithm, workers=args.workers, force=args.force)
        print(summary.describe())
    elif args.command == "compare":
        seeds = args.seeds or [args.seed if args.seed is not None else 0]
        report = cmd_compare(args.config, seeds, args.out, include_dqn=args.dqn, episodes=args.episodes, force=args.force)
        for name, value in report["evaluation_mean_reward"].items():
            print(f"{name}: mean reward {value:.2f}")
    elif args.command == "transfer":
        report = cmd_transfer(args.model, args.config, args.missions, args.seed, args.out, algorithm=args.algorithm,
                              realtime=args.realtime, workers=args.workers, force=args.force)
        print(report.describe())


def main(argv: Optional[List[str]] = None) -> int:
    """
    Exit codes: 0 success, 1 runtime error, 2 usage or configuration error.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, args.log_file)

    try:
        run_command(args)
    except ConfigurationError as e:
        logger.error("%s", e)
        return EXIT_USAGE_ERROR
    except (UGVDefendError, OSError) as e:
        logger.error("%s", e)
        return EXIT_RUNTIME_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

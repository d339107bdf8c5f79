import argparse
import sys
from typing import List, Optional

from dehnlab.config.create_configs import create_configs
from dehnlab.errors import ConfigError, DehnlabError
from dehnlab.log.dl_logging import DEFAULT_LOG_CDICT, config_logger
from dehnlab.run.run_experiment import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, run, worker_map
from dehnlab.run.suite import LEVELS, failed_criteria, suite
from dehnlab.run.verify import verify


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dehnlab",
        description="Random loops, filling areas and averaged Dehn functions on nilpotent groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the experiment described by a config file")
    p_run.add_argument("-c", "--config", required=True, help="path to the yaml config")
    p_run.add_argument("--seed", type=int, default=None, help="override meta:seed")
    p_run.add_argument("--workers", type=int, default=None, help="override experiment:workers")
    p_run.add_argument("--out", default=None, help="override output:out_dir")

    p_verify = sub.add_parser("verify", help="check a filling certificate")
    p_verify.add_argument("-g", "--group", required=True, help="catalog group id, e.g. z2")
    p_verify.add_argument("-w", "--word", required=True, help="the loop, e.g. abAB")
    p_verify.add_argument("certificate", help="certificate file (conjugator TAB index TAB sign)")

    p_suite = sub.add_parser("suite", help="run the acceptance checks")
    p_suite.add_argument("--level", choices=LEVELS, default="smoke")
    p_suite.add_argument("--seed", type=int, default=0)
    p_suite.add_argument("--workers", type=int, default=1)
    p_suite.add_argument("--out", default="dehnlab/suite")
    return parser


def _cmd_run(args) -> int:
    overrides = {"seed": args.seed, "workers": args.workers, "out_dir": args.out}
    try:
        config = create_configs(args.config, overrides)
    except ConfigError as e:
        print(f"invalid config: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        record = run(config)
    except (DehnlabError, RuntimeError) as e:
        print(f"run failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    for w in record.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"{record.kind} on {record.group}: results in {config['output']['out_dir']}")
    return record.exit_code


def _cmd_suite(args) -> int:
    config_logger(args.out, DEFAULT_LOG_CDICT, "suite")
    with worker_map(args.workers) as map_fn:
        results = suite(args.level, args.seed, args.out, map_fn)
    for name, r in results.items():
        print(f"{r.status:8s} {name} ({r.seconds:.1f}s)")
    failed = failed_criteria(results)
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "verify":
        return verify(args.certificate, args.group, args.word)
    return _cmd_suite(args)


if __name__ == "__main__":
    sys.exit(main())

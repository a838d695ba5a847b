"""Command-line entry point: `python -m qwe <command> …`."""
import argparse
import json
import logging
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Any, List, Optional

from pydantic import BaseModel

from .config import get_settings
from .errors import ConsistencyError, InputValidationError, ResourceCapError
from .observability.logging import setup_logging
from .observability.metrics import setup_metrics
from .observability.tracing import setup_tracing
from .service import EnumeratorService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_CONSISTENCY = 4


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwe", description="Quantum weight enumerators and lego contraction")
    parser.add_argument("--log-level", default=None, help="override QWE_LOG_LEVEL")
    parser.add_argument("--metrics-port", type=int, default=None, help="expose prometheus metrics on this port")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, scheme_default: Optional[str] = "shor-laflamme"):
        p.add_argument("--scheme", default=scheme_default, help="shor-laflamme, double, refined-double or complete")
        p.add_argument("--convention", default="count", choices=["count", "raw"])
        p.add_argument("--threads", type=_positive, default=None, help="worker threads (QWE_THREADS)")
        p.add_argument("--out", default=None, help="write JSON here instead of stdout")

    enumerate_cmd = sub.add_parser("enumerate", help="A and B of a code file by counting")
    enumerate_cmd.add_argument("code", help="code JSON file or bundled code name")
    enumerate_cmd.add_argument("--encoding-state", action="store_true", help="enumerate the code's encoding state")
    common(enumerate_cmd)

    contract_cmd = sub.add_parser("contract", help="contract a lego network and report the code")
    contract_cmd.add_argument("network", help="network JSON file or bundled network name")
    common(contract_cmd, scheme_default=None)
    contract_cmd.add_argument("--plan", default=None, help="'greedy', 'input_order' or a JSON plan file")
    contract_cmd.add_argument("--mem-cap", type=_positive, default=None, help="estimated bytes allowed per step")
    contract_cmd.add_argument("--csv", default=None, help="write the A coefficient matrix as CSV")

    mw_cmd = sub.add_parser("macwilliams", help="MacWilliams transform of an A polynomial file")
    mw_cmd.add_argument("polynomial", help="polynomial JSON (or a result document with 'a')")
    mw_cmd.add_argument("--n", type=_positive, default=None, help="number of sites, to homogenize the input")
    mw_cmd.add_argument("--k", type=int, default=0, help="logical qudits (count convention scale)")
    mw_cmd.add_argument("--convention", default="count", choices=["count", "raw"])
    mw_cmd.add_argument("--out", default=None)

    distance_cmd = sub.add_parser("distance", help="distance of a code file or enumerator document")
    distance_cmd.add_argument("source")
    distance_cmd.add_argument("--threads", type=_positive, default=None)
    distance_cmd.add_argument("--out", default=None)

    oracle_cmd = sub.add_parser("oracle", help="dense-matrix enumerators of a small code or network")
    oracle_cmd.add_argument("source")
    oracle_cmd.add_argument("--scheme", default="shor-laflamme")
    oracle_cmd.add_argument("--convention", default="raw", choices=["count", "raw"])
    oracle_cmd.add_argument("--out", default=None)
    return parser


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename over the target."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    handle, temp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8") as stream:
            stream.write(text)
        os.replace(temp, target)
    except BaseException:
        if os.path.exists(temp):
            os.unlink(temp)
        raise


def _emit(payload: Any, out: Optional[str]) -> None:
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=2)
    else:
        text = json.dumps(payload, indent=2)
    if out:
        write_atomic(out, text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(args: argparse.Namespace, service: EnumeratorService) -> None:
    if args.command == "enumerate":
        result = service.enumerate_code(
            args.code, args.scheme, args.convention, args.threads, encoding=args.encoding_state
        )
        _emit(result, args.out)
    elif args.command == "contract":
        result, a = service.contract(
            args.network,
            scheme=args.scheme,
            convention=args.convention,
            plan=args.plan,
            threads=args.threads,
            mem_cap=args.mem_cap,
        )
        if args.csv:
            write_atomic(args.csv, a.to_csv())
        _emit(result, args.out)
    elif args.command == "macwilliams":
        _emit(service.macwilliams(args.polynomial, n=args.n, k=args.k, convention=args.convention), args.out)
    elif args.command == "distance":
        _emit(service.distance(args.source, threads=args.threads), args.out)
    elif args.command == "oracle":
        _emit(service.oracle(args.source, scheme=args.scheme, convention=args.convention), args.out)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level)
    setup_tracing(settings.service_name, settings.jaeger_host, settings.jaeger_port)
    metrics = setup_metrics(args.metrics_port or settings.metrics_port)

    started = time.perf_counter()
    status, code = "success", EXIT_OK
    try:
        run(args, EnumeratorService(settings))
    except InputValidationError as e:
        logger.error(f"Invalid input: {e}")
        status, code = "failure", EXIT_INPUT
    except ResourceCapError as e:
        step = f" at step {e.step_index}" if e.step_index is not None else ""
        logger.error(f"Resource cap exceeded{step}: {e}")
        status, code = "failure", EXIT_CAP
    except ConsistencyError as e:
        logger.error(f"Consistency check failed: {e}", exc_info=True)
        status, code = "failure", EXIT_CONSISTENCY
    finally:
        metrics.commands_total.labels(command=args.command, status=status).inc()
        metrics.command_duration_seconds.labels(command=args.command).observe(time.perf_counter() - started)
    if code:
        sys.stderr.write(f"qwe {args.command}: failed with exit code {code}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

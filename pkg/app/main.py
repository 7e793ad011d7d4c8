"""
Command-line entry point.
"""
import argparse
import sys
from typing import List, Optional

from app.algebra.exactlinalg import check_prime
from app.api.commands import COMMANDS
from app.api.schemas import dump_json
from app.core.config import settings
from app.core.error_handlers import report_error
from app.core.exceptions import TorelliError
from app.core.logging_config import logger, setup_logging
from app.services.torelli_service import EXAMPLE_KINDS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torelli", description=settings.project_title)
    parser.add_argument("--log-level", default=None, help="Override TORELLI_LOG_LEVEL")
    parser.add_argument("--prime", type=int, default=None, help="Default prime for example constructors")
    sub = parser.add_subparsers(dest="command", required=True)

    rr = sub.add_parser("rr", help="Riemann-Roch space of a divisor")
    rr.add_argument("--curve", required=True)
    rr.add_argument("--divisor", required=True)

    koszul = sub.add_parser("koszul", help="Dimension of K_{p,q}(C, F, L)")
    koszul.add_argument("--curve", required=True)
    koszul.add_argument("--p", type=int, required=True)
    koszul.add_argument("--q", type=int, required=True)
    koszul.add_argument("--F", required=True)
    koszul.add_argument("--L", required=True)

    duality = sub.add_parser("duality", help="Koszul duality defects")
    duality.add_argument("--curve", required=True)
    duality.add_argument("--L", required=True)
    duality.add_argument("--max-p", type=int, default=2)
    duality.add_argument("--F", default=None, help="Twisting divisor (default: trivial)")

    mu = sub.add_parser("mu", help="Rank of the multiplication map mu_pi")
    mu.add_argument("--curve", required=True)
    mu.add_argument("--L", required=True)
    mu.add_argument("--delta", default=None)

    analyze = sub.add_parser("analyze", help="Invariants and verdict of Weierstrass data")
    analyze.add_argument("--weierstrass", required=True)
    analyze.add_argument("--compute-mu", action="store_true")
    analyze.add_argument("--record", action="store_true", help="Store the report in the run ledger")

    examples = sub.add_parser("examples", help="Build an explicit example")
    examples.add_argument("kind", choices=EXAMPLE_KINDS)
    examples.add_argument("--seed", type=int, default=0)
    examples.add_argument("--out", default=None)
    examples.add_argument("--prime", dest="example_prime", type=int, default=None)

    selftest = sub.add_parser("selftest", help="Run the acceptance suites")
    selftest.add_argument("--quick", action="store_true")
    selftest.add_argument("--seed", type=int, default=0)

    history = sub.add_parser("history", help="List recorded runs")
    history.add_argument("--limit", type=int, default=20)
    history.add_argument("--digest", default=None, help="Only runs recorded for this input digest")

    show = sub.add_parser("show", help="Show one recorded run")
    show.add_argument("run_id", type=int)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; the report goes to stdout, errors to stderr."""
    args = build_parser().parse_args(argv)
    if args.log_level:
        setup_logging(args.log_level)
    try:
        prime = getattr(args, "example_prime", None) or args.prime
        args.prime = check_prime(prime) if prime is not None else None
        report = COMMANDS[args.command](args)
    except TorelliError as e:
        return report_error(e)

    print(dump_json(report))
    if args.command == "selftest" and not report["passed"]:
        logger.warning("selftest failed")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

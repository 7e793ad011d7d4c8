"""
Command handlers: one function per subcommand, each returning a JSON-ready dict.
"""
import argparse
from pathlib import Path
from typing import Any, Callable, Dict

from app.api.schemas import dump_json, load_curve, load_divisor, load_weierstrass
from app.core.dependencies import service_scope
from app.core.exceptions import MalformedInput
from app.core.logging_config import logger
from app.curves.divisor import Divisor
from app.services.selftest import run_selftest

Report = Dict[str, Any]


def rr_command(args: argparse.Namespace) -> Report:
    """h0, h1 and a basis of L(D)."""
    curve = load_curve(args.curve)
    D = load_divisor(args.divisor, curve)
    with service_scope() as service:
        return service.riemann_roch(curve, D).model_dump()


def koszul_command(args: argparse.Namespace) -> Report:
    curve = load_curve(args.curve)
    F = load_divisor(args.F, curve)
    L = load_divisor(args.L, curve)
    with service_scope() as service:
        return service.koszul(curve, args.p, args.q, F, L).model_dump()


def duality_command(args: argparse.Namespace) -> Report:
    curve = load_curve(args.curve)
    L = load_divisor(args.L, curve)
    F = load_divisor(args.F, curve) if args.F else None
    with service_scope() as service:
        return service.duality(curve, L, args.max_p, F).model_dump()


def mu_command(args: argparse.Namespace) -> Report:
    curve = load_curve(args.curve)
    L = load_divisor(args.L, curve)
    Delta = load_divisor(args.delta, curve) if args.delta else Divisor.zero(curve)
    with service_scope() as service:
        return service.mu(curve, L, Delta).model_dump()


def analyze_command(args: argparse.Namespace) -> Report:
    """Invariants and verdict of a Weierstrass file, optionally recorded."""
    W = load_weierstrass(args.weierstrass)
    with service_scope(record=args.record) as service:
        return service.analyze(W, compute_mu=args.compute_mu, record=args.record).model_dump(mode="json")


def examples_command(args: argparse.Namespace) -> Report:
    """Build an example, write its Weierstrass file and report the verdict."""
    out = Path(args.out or f"{args.kind}.json")
    with service_scope() as service:
        W, report = service.example(args.kind, seed=args.seed, prime=args.prime)
    try:
        out.write_text(dump_json(W.to_json()) + "\n", encoding="utf-8")
    except OSError as e:
        raise MalformedInput(f"cannot write {out}: {e}")
    logger.info(f"wrote {args.kind} example to {out}")
    return {"kind": args.kind, "seed": args.seed, "file": str(out), **report.model_dump(mode="json")}


def selftest_command(args: argparse.Namespace) -> Report:
    return run_selftest(quick=args.quick, seed=args.seed).model_dump(mode="json")


def history_command(args: argparse.Namespace) -> Report:
    with service_scope(record=True) as service:
        runs = service.history(args.limit, digest=args.digest)
    return {"runs": [run.model_dump() for run in runs]}


def show_command(args: argparse.Namespace) -> Report:
    """One recorded run with its stored report."""
    with service_scope(record=True) as service:
        return service.run_detail(args.run_id)


COMMANDS: Dict[str, Callable[[argparse.Namespace], Report]] = {
    "rr": rr_command,
    "koszul": koszul_command,
    "duality": duality_command,
    "mu": mu_command,
    "analyze": analyze_command,
    "examples": examples_command,
    "selftest": selftest_command,
    "history": history_command,
    "show": show_command,
}

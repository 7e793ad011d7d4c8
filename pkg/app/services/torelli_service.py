"""
Service layer: runs the computations behind each command and records analyses.
"""
import json
import random
from typing import Any, Dict, List, Optional, Tuple

from app.api.schemas import (
    AnalysisReport,
    DualityEntry,
    DualityReport,
    KoszulReport,
    MuReportSchema,
    RRReport,
    RunSummary,
)
from app.cohomology.koszul import duality_defect, koszul_dim, mu_map
from app.core.config import settings
from app.core.exceptions import DatabaseError
from app.core.logging_config import logger
from app.curves.curve import HyperellipticCurve
from app.curves.divisor import Divisor
from app.curves.rrspace import h1, rr_basis
from app.repositories.run_repository import RunRepository
from app.torelli.constructions import (
    build_bundle_example,
    build_d5_example,
    build_twist_example,
    bundle_base_curve,
    five_point_curve,
    genus_two_curve,
    two_torsion_divisor,
)
from app.torelli.decide import torelli_decide
from app.torelli.invariants import invariants_from_weierstrass
from app.torelli.weierstrass import WeierstrassData, discriminant_orders

EXAMPLE_KINDS = ("twist", "d5", "bundle")


class TorelliService:
    """Computations for the command-line front end, with optional run recording."""

    def __init__(self, repository: Optional[RunRepository] = None):
        self.repository = repository

    def riemann_roch(self, curve: HyperellipticCurve, D: Divisor) -> RRReport:
        space = rr_basis(curve, D)
        return RRReport(degree=D.degree, h0=space.dim, h1=h1(curve, D), basis=[str(phi) for phi in space.basis])

    def koszul(self, curve: HyperellipticCurve, p: int, q: int, F: Divisor, L: Divisor) -> KoszulReport:
        slot = koszul_dim(curve, p, q, F, L)
        return KoszulReport(
            p=slot.p, q=slot.q, dim=slot.dim, kernel_dim=slot.kernel_dim, incoming_rank=slot.incoming_rank
        )

    def duality(
        self, curve: HyperellipticCurve, L: Divisor, max_p: int, F: Optional[Divisor] = None
    ) -> DualityReport:
        """Defects for 0 <= p <= max_p and q in {0, 1, 2}."""
        r = rr_basis(curve, L).dim - 1
        entries = [
            DualityEntry(p=p, q=q, defect=duality_defect(curve, p, q, L, F))
            for p in range(max_p + 1)
            for q in range(3)
        ]
        all_zero = all(e.defect == 0 for e in entries)
        if not all_zero:
            logger.warning(f"nonzero duality defects for L = {L}")
        return DualityReport(r=r, defects=entries, all_zero=all_zero)

    def mu(self, curve: HyperellipticCurve, L: Divisor, Delta: Divisor) -> MuReportSchema:
        m = mu_map(curve, L, Delta)
        return MuReportSchema(
            rank=m.rank, corank=m.corank, surjective=m.surjective, source_dim=m.cols, target_dim=m.rows
        )

    def analyze(self, W: WeierstrassData, compute_mu: bool = False, record: bool = False) -> AnalysisReport:
        """
        Invariants and verdict of W.

        Raises:
            DatabaseError: If recording is requested without a run ledger
        """
        verdict = torelli_decide(W, compute_mu=compute_mu)
        report = AnalysisReport(
            invariants=invariants_from_weierstrass(W),
            verdict=verdict,
            discriminant_orders=[[P.to_json(), n] for P, n in sorted(discriminant_orders(W).items())],
        )
        if record:
            self._record("analyze", {"weierstrass": W.to_json(), "compute_mu": compute_mu}, report)
        logger.info(f"analysis finished: {verdict.rule_id} {verdict.outcome.value}")
        return report

    def build_example(self, kind: str, seed: int = 0, prime: Optional[int] = None) -> WeierstrassData:
        """The twist, d5 or bundle example over F_prime, reproducible from seed."""
        p = settings.prime if prime is None else prime
        rng = random.Random(seed)
        if kind == "twist":
            return build_twist_example(five_point_curve(p), rng)
        if kind == "d5":
            return build_d5_example(genus_two_curve(p), rng=rng)
        if kind == "bundle":
            curve, x0 = bundle_base_curve(p)
            return build_bundle_example(curve, two_torsion_divisor(curve, x0), rng)
        raise ValueError(f"unknown example kind {kind!r}; expected one of {', '.join(EXAMPLE_KINDS)}")

    def example(self, kind: str, seed: int = 0, prime: Optional[int] = None) -> Tuple[WeierstrassData, AnalysisReport]:
        W = self.build_example(kind, seed, prime)
        return W, self.analyze(W, compute_mu=True)

    def history(self, limit: Optional[int] = None, digest: Optional[str] = None) -> List[RunSummary]:
        """Most recent runs, or every run recorded for one input digest."""
        ledger = self._ledger()
        runs = ledger.find_by_digest(digest) if digest else ledger.list_runs(limit)
        return [RunSummary(**RunRepository.to_summary(run)) for run in runs]

    def run_detail(self, run_id: int) -> Dict[str, Any]:
        """Summary and stored report of one recorded run."""
        run = self._ledger().get_run(run_id)
        summary = RunSummary(**RunRepository.to_summary(run)).model_dump()
        return {**summary, "report": json.loads(run.payload)}

    def _ledger(self) -> RunRepository:
        if self.repository is None:
            raise DatabaseError("no run ledger configured")
        return self.repository

    def _record(self, command: str, input_data: Dict[str, Any], report: AnalysisReport) -> None:
        run = self._ledger().record_run(command, input_data, report.model_dump(mode="json"))
        logger.debug(f"run {run.id} digest {run.input_digest[:12]}")

"""
Pydantic schemas for input files and JSON reports.
"""
import json
from pathlib import Path
from typing import Any, List, Literal, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, Field, RootModel, ValidationError

from app.core.exceptions import MalformedInput
from app.curves.curve import FunctionRep, HyperellipticCurve, make_curve
from app.curves.divisor import Divisor, parse_divisor
from app.torelli.invariants import SurfaceInvariants
from app.torelli.rules import Verdict
from app.torelli.weierstrass import WeierstrassData

PlaceJSON = Union[str, Tuple[int, int]]


class CurveFile(BaseModel):
    """y^2 = f(x) over F_p, f given by ascending coefficients."""
    p: int = Field(..., description="Characteristic")
    f: List[int] = Field(..., min_length=4, description="Ascending coefficients of f")

    def to_curve(self) -> HyperellipticCurve:
        return make_curve(self.p, self.f)


class DivisorFile(RootModel[List[Tuple[PlaceJSON, int]]]):
    """List of [place, multiplicity] pairs; a place is "inf" or [x0, y0]."""

    def to_divisor(self, curve: HyperellipticCurve) -> Divisor:
        try:
            return parse_divisor(curve, self.root)
        except ValueError as e:
            raise MalformedInput(str(e))


class FunctionFile(BaseModel):
    """(a + b*y) / den with ascending coefficient lists."""
    a: List[int] = Field(default_factory=list)
    b: List[int] = Field(default_factory=list)
    den: List[int] = Field(default_factory=lambda: [1])

    def to_function(self, p: int) -> FunctionRep:
        try:
            return FunctionRep.from_lists(self.a, self.b, self.den, p)
        except ZeroDivisionError:
            raise MalformedInput("function with zero denominator")


class WeierstrassFile(BaseModel):
    """Serialized WeierstrassData."""
    curve: CurveFile
    L: DivisorFile
    A: FunctionFile
    B: FunctionFile
    h1_parity: Optional[Literal["even", "odd"]] = None
    clifford: Optional[int] = Field(None, ge=0)

    def to_weierstrass(self) -> WeierstrassData:
        curve = self.curve.to_curve()
        return WeierstrassData(
            curve=curve,
            L_div=self.L.to_divisor(curve),
            A=self.A.to_function(curve.p),
            B=self.B.to_function(curve.p),
            h1_parity=self.h1_parity,
            clifford=self.clifford,
        )


# Reports

class RRReport(BaseModel):
    degree: int
    h0: int
    h1: int
    basis: List[str]


class KoszulReport(BaseModel):
    p: int
    q: int
    dim: int
    kernel_dim: int
    incoming_rank: int


class DualityEntry(BaseModel):
    p: int
    q: int
    defect: int


class DualityReport(BaseModel):
    r: int
    defects: List[DualityEntry]
    all_zero: bool


class MuReportSchema(BaseModel):
    rank: int
    corank: int
    surjective: bool
    source_dim: int
    target_dim: int


class AnalysisReport(BaseModel):
    """Invariants, verdict and discriminant orders of one Weierstrass model."""
    invariants: SurfaceInvariants
    verdict: Verdict
    discriminant_orders: List[Tuple[Any, int]] = Field(default_factory=list)


class RunSummary(BaseModel):
    id: int
    command: str
    input_digest: str
    outcome: Optional[str] = None
    rule_id: Optional[str] = None
    mu_corank: Optional[int] = None
    created_at: Optional[str] = None


# Loaders

ModelT = TypeVar("ModelT", bound=BaseModel)


def read_json(path: Union[str, Path]) -> Any:
    """
    Raises:
        MalformedInput: If the file is missing or not valid JSON
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedInput(f"cannot read {path}: {e}")


def load_model(path: Union[str, Path], model: Type[ModelT]) -> ModelT:
    """Parse a JSON file into a schema, turning validation errors into MalformedInput."""
    data = read_json(path)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise MalformedInput(f"{path}: {e.error_count()} validation error(s): {e.errors()[0]['msg']}")


def load_curve(path: Union[str, Path]) -> HyperellipticCurve:
    return load_model(path, CurveFile).to_curve()


def load_divisor(path: Union[str, Path], curve: HyperellipticCurve) -> Divisor:
    return load_model(path, DivisorFile).to_divisor(curve)


def load_weierstrass(path: Union[str, Path]) -> WeierstrassData:
    return load_model(path, WeierstrassFile).to_weierstrass()


def dump_json(data: Any) -> str:
    """Canonical report formatting: sorted keys, two-space indent."""
    return json.dumps(data, sort_keys=True, indent=2)

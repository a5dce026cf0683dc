"""Pydantic request/response models for the HTTP service.

These mirror the core dataclasses one-to-one; conversion helpers keep
the service layer a thin shell around the library.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..experiments import UNNORMALIZED, ExperimentSpec, SummaryStats
from ..noise import NoiseParams
from ..verify import CheckResult


class NoiseModel(BaseModel):
    bs_mean: float = 0.5
    bs_std: float = 0.04
    swap_mean: float = 0.02
    swap_std: float = 0.02
    loss_mean: float = 0.05
    loss_std: float = 0.025

    def to_params(self) -> NoiseParams:
        return NoiseParams(**self.model_dump())


class NetlistRequest(BaseModel):
    family: str
    d: int = Field(ge=1)
    solution: int | None = None


class NetlistResponse(BaseModel):
    document: str
    element_count: int
    depth: int


class MatrixRequest(BaseModel):
    family: str
    d: int = Field(ge=1)
    solution: int | None = None


class MatrixResponse(BaseModel):
    d: int
    real: list[list[float]]
    imag: list[list[float]]
    unitarity_residual: float


class VerifyRequest(BaseModel):
    max_dim: int = Field(default=32, ge=2)


class CheckModel(BaseModel):
    name: str
    expected: str
    actual: str
    deviation: float
    tolerance: float
    passed: bool

    @classmethod
    def from_result(cls, check: CheckResult) -> "CheckModel":
        return cls(
            name=check.name,
            expected=check.expected,
            actual=check.actual,
            deviation=check.deviation,
            tolerance=check.tolerance,
            passed=check.passed,
        )


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]


class SimulateRequest(BaseModel):
    kind: str
    d: int = Field(ge=2)
    trials: int = Field(ge=1)
    seed: int = 0
    convention: str = UNNORMALIZED
    workers: int = Field(default=1, ge=1)
    noise: NoiseModel = NoiseModel()
    include_fidelities: bool = False

    def to_spec(self) -> ExperimentSpec:
        return ExperimentSpec(
            kind=self.kind,
            d=self.d,
            trials=self.trials,
            noise=self.noise.to_params(),
            seed=self.seed,
            convention=self.convention,
            workers=self.workers,
        )


class HistogramBin(BaseModel):
    bin_lower: float
    bin_width: float
    count: int


class StatsModel(BaseModel):
    mean: float
    std: float
    median: float
    trials: int
    histogram: list[HistogramBin]

    @classmethod
    def from_stats(cls, stats: SummaryStats) -> "StatsModel":
        return cls(
            mean=stats.mean,
            std=stats.std,
            median=stats.median,
            trials=stats.trials,
            histogram=[
                HistogramBin(bin_lower=lo, bin_width=w, count=n)
                for lo, w, n in stats.histogram
            ],
        )


class SimulateResponse(BaseModel):
    spec: SimulateRequest
    stats: StatsModel
    results_csv: str
    fidelities: list[float] | None = None


class HistogramRequest(BaseModel):
    values: list[float] = Field(min_length=1)


class HistogramResponse(BaseModel):
    bins: list[HistogramBin]

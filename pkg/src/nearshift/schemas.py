"""Pydantic request and response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class BlaschkeModel(BaseModel):
    origin_multiplicity: int = 0
    zeros: list[tuple[float, float]] = Field(default_factory=list)
    normalized: bool = True


class SeriesModel(BaseModel):
    degree: int
    coeffs: list[tuple[float, float]]


class DecomposeRequest(BaseModel):
    blaschke: BlaschkeModel
    series: SeriesModel
    degree: Optional[int] = None
    levels: Optional[int] = None
    strict: Optional[bool] = None


class NormsRequest(BaseModel):
    series: SeriesModel
    variant: Literal["alpha-standard", "wold-one", "wold-two"] = "alpha-standard"
    alpha: float = 0.0
    N: Optional[int] = None
    blaschke: Optional[BlaschkeModel] = None
    strict: Optional[bool] = None


class ExampleBlock(BaseModel):
    a: tuple[float, float] = (0.5, 0.0)
    m: int = 1
    levels: int = 3
    literal_positive_powers: bool = False


class NearCheckRequest(BaseModel):
    blaschke: BlaschkeModel
    degree: int = 64
    generators: Optional[list[SeriesModel]] = None
    subspace: Optional[dict] = None
    example: Optional[ExampleBlock] = None
    variant: Literal["alpha-standard", "wold-one", "wold-two"] = "alpha-standard"
    alpha: float = 0.0
    N: Optional[int] = None
    s: Optional[float] = None
    guard: int = 1
    tol: float = 1e-8


class FactorizeRequest(BaseModel):
    blaschke: BlaschkeModel
    alpha: float
    s: Optional[float] = None
    a: tuple[float, float] = (0.5, 0.0)
    m: int = 1
    levels: int = 8
    degree: int = 64
    series: Optional[SeriesModel] = None
    trials: int = 1
    seed: int = 0


class ExampleRequest(BaseModel):
    a: tuple[float, float] = (0.5, 0.0)
    m: int = 1
    levels: int = 3
    degree: int = 32
    literal_positive_powers: bool = False
    trials: int = 50
    seed: int = 0


class VerifyRequest(BaseModel):
    suite: str = "all"
    blaschke: Optional[BlaschkeModel] = None
    alpha: Optional[float] = None
    degree: Optional[int] = None
    levels: Optional[int] = None
    m: Optional[int] = None
    trials: Optional[int] = None
    seed: int = 0
    s: Optional[float] = None


class CheckModel(BaseModel):
    name: str
    passed: bool = Field(alias="pass")
    residual: Optional[float] = None
    details: dict = Field(default_factory=dict)

    model_config = {"populate_by_name": True}


class RunReportModel(BaseModel):
    schema_version: str
    command: str
    config: dict
    checks: list[CheckModel]
    aggregate_pass: bool
    payload: dict
    timings: dict

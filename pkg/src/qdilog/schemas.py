"""Pydantic request/response models for the verification service.

FastAPI validates incoming JSON against these models; the CLI builds the
same request objects and renders the same responses, so both clients share
one code path.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class QSeriesModel(BaseModel):
    lo: int
    hi: int
    coeffs: list[int]


class FailureModel(BaseModel):
    gamma: list[int] | None = None
    texp: int
    lhs: int
    rhs: int


class VerdictModel(BaseModel):
    identity: str
    params: dict
    passed: bool
    window: int
    failure: FailureModel | None = None


class VerifyMTRequest(BaseModel):
    n: int = Field(ge=1)
    nprime: int = Field(ge=1)
    box: list[int]
    window: int = Field(ge=0)
    orders: str = "canonical"  # "canonical" or "random:<count>"
    seed: int = 2026


class PentagonRequest(BaseModel):
    box: list[int]
    window: int = Field(ge=0)


class Keller55Request(BaseModel):
    gamma: list[int]
    window: int = Field(ge=0)


class CrosscheckRequest(BaseModel):
    n: int = Field(ge=1)
    nprime: int = Field(ge=1)
    gamma: list[int]
    axis: str = "horizontal"
    window: int = Field(ge=0)


class DTRequest(BaseModel):
    n: int = Field(ge=1)
    nprime: int = Field(ge=1)
    box: list[int]
    window: int = Field(ge=0)


class AlgebraElementModel(BaseModel):
    box: list[int]
    terms: dict[str, QSeriesModel]


class DTResponse(BaseModel):
    verdict: VerdictModel
    element: AlgebraElementModel


class BettiRequest(BaseModel):
    n: int = Field(ge=1)
    nprime: int = Field(ge=1)
    gamma: list[int]
    window: int = Field(ge=0)


class BettiColumnModel(BaseModel):
    id: str
    axis: str
    label: str
    codim: int
    w: int
    poincare: str
    values: list[int]


class BettiResponse(BaseModel):
    gamma: list[int]
    window: int
    qdegrees: list[int]
    columns: list[BettiColumnModel]
    total: list[int]


class StrataRequest(BaseModel):
    n: int = Field(ge=1)
    nprime: int = Field(ge=1)
    gamma: list[int]
    axis: str = "both"


class StratumRowModel(BaseModel):
    id: str
    axis: str
    label: str
    multiplicities: list[list[list[int]]]  # per line: [[k, l, m], ...]
    codim: int
    w: int
    poincare: str


class StrataResponse(BaseModel):
    gamma: list[int]
    horizontal_count: int
    vertical_count: int
    rows: list[StratumRowModel]


class RootsRequest(BaseModel):
    n: int = Field(ge=1)
    nprime: int = Field(ge=1)
    axis: str = "horizontal"


class RootModel(BaseModel):
    axis: str
    line: int
    k: int
    l: int


class RootsResponse(BaseModel):
    axis: str
    count: int
    order: list[RootModel]
    rho_matrices: dict[str, list[list[str | None]]]


class NormalFormRequest(BaseModel):
    orientation: str  # e.g. "rrl" for 1->2->3<-4
    gamma: list[int]
    kostant: list[list[int]]  # [k, l, multiplicity] triples


class NormalFormResponse(BaseModel):
    orientation: str
    gamma: list[int]
    arrows: list[list[int]]
    matrices: list[list[list[int]]]


class QuiverRequest(BaseModel):
    n: int = Field(ge=1)
    nprime: int = Field(ge=1)


class QuiverResponse(BaseModel):
    n: int
    nprime: int
    arrows: list[list[list[int]]]
    classes: dict[str, list[list[int]]]

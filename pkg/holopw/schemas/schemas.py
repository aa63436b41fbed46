from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from holopw.fourier.fourier import FourierSeries, Space
from holopw.quadrature.quadrature import default_order
from holopw.rootdata.rootdata import build_root_system, parse_kind


class RunConfig(BaseModel):
    group: str = "A1"
    t: float = Field(1.0, gt=0)
    max_level: int = Field(4, ge=0)
    quad_order: Optional[int] = Field(None, ge=8)
    mc_samples: int = Field(100_000, ge=2)
    seed: int = Field(42, ge=0, lt=2**64)
    tolerance: float = Field(1e-8, gt=0)
    sigma_band: float = Field(3.0, gt=0)
    format: Literal["json", "csv"] = "json"
    workers: int = Field(1, ge=1)

    @field_validator("group")
    @classmethod
    def group_must_be_supported(cls, value: str) -> str:
        try:
            parse_kind(value)
        except Exception as exc:
            raise ValueError(str(exc)) from exc
        return value.strip()

    @model_validator(mode="after")
    def fill_quad_order(self) -> "RunConfig":
        if self.quad_order is None:
            self.quad_order = default_order(build_root_system(self.group))
        return self


class CheckResult(BaseModel):
    check_id: str
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    abs_err: Optional[float] = None
    rel_err: Optional[float] = None
    sigma: Optional[float] = None
    statistical: bool = False
    passed: bool
    skipped: bool = False
    detail: Optional[str] = None


class Report(BaseModel):
    suite: str
    group: str
    t: float
    seed: int
    passed: bool
    check_band: Optional[float] = None
    checks: List[CheckResult] = []


class ConstantsRow(BaseModel):
    group: str
    t: float
    dynkin: List[int]
    d: int
    norm2_shift: float
    C: float
    D: float
    C_tilde: float
    C_tilde_err: float
    ratio_check: float

    class Config:
        from_attributes = True


class ConstantsTable(BaseModel):
    rows: List[ConstantsRow] = []


class Term(BaseModel):
    dynkin: List[int]
    re: List[List[float]]
    im: List[List[float]]


class FourierSeriesFile(BaseModel):
    group: str
    space: Space
    t: float = Field(1.0, gt=0)
    terms: List[Term] = []

    @classmethod
    def from_series(cls, series: FourierSeries) -> "FourierSeriesFile":
        terms = [
            Term(dynkin=list(key), re=np.real(matrix).tolist(), im=np.imag(matrix).tolist())
            for key, matrix in series.terms.items()
        ]
        return cls(group=series.rs_kind, space=series.space, t=series.t, terms=terms)

    def to_series(self) -> FourierSeries:
        terms = {tuple(term.dynkin): np.asarray(term.re) + 1j * np.asarray(term.im) for term in self.terms}
        return FourierSeries(self.group, self.space, self.t, terms)

"""HTTP facade over the fitting pipelines.

The service is stateless: every request carries its points and configuration
and gets back the same report the CLI would print with ``--format json``.

Run with: ``uvicorn latfit.service:app``
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field, model_validator

from . import runner
from .errors import LatfitError
from .lattice import point_set

app = FastAPI(title="latfit", version="0.1.0")


class FitRequest(BaseModel):
    points: list[list[float]]
    mode: Literal["1d", "axis", "general"] = "general"
    eps: Optional[float] = None
    eps_sweep: Optional[list[float]] = None
    norm: Literal["max", "l2"] = "max"
    digits: int = Field(default=16, ge=10)
    refine: bool = False

    @model_validator(mode="after")
    def _check_eps(self):
        if self.eps is not None and self.eps_sweep is not None:
            raise ValueError("eps and eps_sweep are mutually exclusive")
        if self.eps_sweep is not None and not self.eps_sweep:
            raise ValueError("eps_sweep must not be empty")
        for value in self.eps_values():
            if not 0 < value < 1:
                raise ValueError(f"eps must lie in (0, 1), got {value}")
        return self

    def eps_values(self) -> list[float]:
        if self.eps_sweep is not None:
            return list(self.eps_sweep)
        return [self.eps if self.eps is not None else 1e-3]


class Certificates(BaseModel):
    achievable_bound: float
    best_within_bound: bool
    rational_approx: dict
    error_floor: dict


class RefinedFit(BaseModel):
    origin: list[float]
    basis: list[list[float]]
    coeffs: list[list[int]]
    distances: list[float]
    delta: float
    diameter: float
    norm_max: float
    norm_l2: float
    frozen_norm_max: float
    frozen_norm_l2: float
    frozen_residual: float


class FitEntry(BaseModel):
    eps: float
    error: Optional[str] = None
    origin: Optional[list[float]] = None
    basis: Optional[list[list[float]]] = None
    coeffs: Optional[list[list[int]]] = None
    distances: Optional[list[float]] = None
    delta: Optional[float] = None
    diameter: Optional[float] = None
    norm_max: Optional[float] = None
    norm_l2: Optional[float] = None
    candidates: Optional[list[dict]] = None
    per_axis: Optional[list[dict]] = None
    denom_block: Optional[list[list[int]]] = None
    certificates: Optional[Certificates] = None
    refined: Optional[RefinedFit] = None


class FitResponse(BaseModel):
    schema_version: int = Field(alias="schema")
    mode: str
    norm: str
    digits: int
    points: list[list[float]]
    results: list[FitEntry]

    model_config = {"populate_by_name": True}


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/fit", response_model=FitResponse, response_model_by_alias=True)
def fit(request: FitRequest):
    try:
        ps = point_set(request.points, request.digits)
        payload = runner.run(
            ps,
            request.mode,
            request.eps_values(),
            request.norm,
            request.digits,
            request.refine,
        )
    except LatfitError as exc:
        raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}") from exc
    return FitResponse.model_validate(payload)

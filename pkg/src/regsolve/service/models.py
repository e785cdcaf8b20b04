"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class ProbeOptions(BaseModel):
    tol: Optional[float] = None
    r0: Optional[str] = None
    rho: Optional[str] = None
    k_max: Optional[int] = None
    angles: Optional[int] = None
    growth_factor: Optional[float] = None
    n_max: Optional[int] = None
    seed: Optional[int] = None
    mode: Optional[str] = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class ProblemRequest(BaseModel):
    f: list[str] = Field(min_length=1)
    phi: Optional[str] = None
    options: Optional[ProbeOptions] = None


class VerifyRequest(BaseModel):
    solution: dict[str, Any]
    options: Optional[ProbeOptions] = None


class CommandResponse(BaseModel):
    exit_code: int
    report: dict[str, Any]


class HealthResponse(BaseModel):
    status: str
    name: str
    schema_version: int

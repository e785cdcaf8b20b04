"""Probe configuration shared by every numeric-verdict operation."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from fractions import Fraction


@dataclass
class ProbeConfig:
    tol: float = 1e-8
    r0: Fraction = Fraction(1, 2)
    rho: Fraction = Fraction(1, 4)
    k_max: int = 12
    angles: int = 64
    growth_factor: float = 3.0
    n_max: int = 20
    seed: int = 0
    mode: str = "auto"  # exact | numeric | auto

    def __post_init__(self):
        if not (0 < self.rho < 1):
            raise ValueError("rho must lie strictly between 0 and 1")
        if self.angles < 8:
            raise ValueError("at least 8 probe angles are required")
        if self.mode not in ("exact", "numeric", "auto"):
            raise ValueError("mode must be exact, numeric or auto")
        if self.tol <= 0 or self.growth_factor <= 1:
            raise ValueError("tol must be positive and growth_factor > 1")

    @staticmethod
    def from_dict(d: dict | None) -> "ProbeConfig":
        d = dict(d or {})
        kw = {}
        for key in ("tol", "growth_factor"):
            if key in d:
                kw[key] = float(d.pop(key))
        for key in ("k_max", "angles", "n_max", "seed"):
            if key in d:
                kw[key] = int(d.pop(key))
        for key in ("r0", "rho"):
            if key in d:
                kw[key] = Fraction(str(d.pop(key)))
        if "mode" in d:
            kw["mode"] = str(d.pop("mode"))
        if d:
            raise ValueError(f"unknown option(s): {', '.join(sorted(d))}")
        return ProbeConfig(**kw)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["r0"] = str(self.r0)
        d["rho"] = str(self.rho)
        return d

# models/lipkin_params.py
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class LipkinModel(str, Enum):
    """Which Lipkin model a parameter set or record belongs to"""
    TWO_LEVEL = "two"
    THREE_LEVEL = "three"

    @property
    def levels(self) -> int:
        return 2 if self is LipkinModel.TWO_LEVEL else 3


class ModelParams(BaseModel):
    """Pydantic model for one point of the Lipkin parameter space"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    n_particles: int = Field(..., ge=1, description="Particle number N (also the p-degeneracy of each level)")
    epsilon: float = Field(1.0, gt=0, description="Level spacing")
    v: float = Field(..., ge=0, description="Interaction strength V")
    model: LipkinModel = Field(LipkinModel.TWO_LEVEL, description="two- or three-level model")

    @property
    def chi(self) -> float:
        return chi(self)

    @classmethod
    def from_chi(cls, n_particles: int, chi_value: float, epsilon: float = 1.0,
                 model: LipkinModel = LipkinModel.TWO_LEVEL) -> "ModelParams":
        """Builds parameters from the dimensionless strength, V = chi * epsilon / (N - 1)"""
        if n_particles < 2:
            raise ValueError("chi parametrization needs N >= 2; give V directly for N = 1")
        if chi_value < 0:
            raise ValueError(f"chi must be non-negative, got {chi_value}")
        return cls(n_particles=n_particles, epsilon=epsilon,
                   v=chi_value * epsilon / (n_particles - 1), model=model)


def chi(params: ModelParams) -> float:
    """Dimensionless interaction strength (N - 1) V / epsilon, same for both models"""
    return (params.n_particles - 1) * params.v / params.epsilon


class SweepConfig(BaseModel):
    """Pydantic model describing a chi-sweep request"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    model: LipkinModel = Field(..., description="two- or three-level model")
    particles: List[int] = Field(..., min_length=1, description="Particle numbers, swept in the given order")
    chi_min: float = Field(..., ge=0, description="Lower end of the chi grid")
    chi_max: float = Field(..., gt=0, description="Upper end of the chi grid")
    steps: int = Field(400, ge=2, description="Number of grid points")
    log_grid: bool = Field(False, description="Log-spaced instead of linear grid")
    epsilon: float = Field(1.0, gt=0, description="Level spacing")
    output_path: Optional[str] = Field(None, description="CSV destination")
    figure_id: Optional[str] = Field(None, description="Figure this sweep feeds, if any")

    @field_validator("particles")
    @classmethod
    def _particles_support_chi(cls, value: List[int]) -> List[int]:
        bad = [n for n in value if n < 2]
        if bad:
            raise ValueError(f"chi sweeps need N >= 2, got {bad}")
        return value

    @model_validator(mode="after")
    def _check_grid(self) -> "SweepConfig":
        if not self.chi_min < self.chi_max:
            raise ValueError(f"chi_min ({self.chi_min}) must be below chi_max ({self.chi_max})")
        if self.log_grid and self.chi_min <= 0:
            raise ValueError("a log grid needs chi_min > 0")
        return self

    def chi_grid(self) -> np.ndarray:
        if self.log_grid:
            return np.geomspace(self.chi_min, self.chi_max, self.steps)
        return np.linspace(self.chi_min, self.chi_max, self.steps)

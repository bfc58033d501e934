import math
from enum import Enum
from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Orientation(str, Enum):
    PERPENDICULAR = "perpendicular"
    PARALLEL = "parallel"


class SHOMotion(BaseModel):
    """
    Oscilação harmônica z(t) = A sin(Ωt + fase).
    Na orientação paralela ao espelho o movimento é em y e a onda tem
    direção δ: k_y = k sinδ, k_z = k cosδ.
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["sho"] = "sho"
    amplitude: float = Field(..., ge=0, description="Amplitude A (m)")
    Omega: float = Field(..., gt=0, description="Frequência mecânica Ω (rad/s)")
    orientation: Orientation = Field(default=Orientation.PERPENDICULAR)
    delta: float = Field(default=0.0, description="Direção da onda δ (rad)")
    phase: float = Field(default=0.0, description="Fase inicial da oscilação (rad)")

    def reach(self) -> float:
        # Aproximação máxima na direção do espelho
        if self.orientation is Orientation.PARALLEL:
            return 0.0
        return self.amplitude


class RotationMotion(BaseModel):
    """Rotação de raio R em torno de um ponto a distância z₀ do espelho"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["rotation"] = "rotation"
    radius: float = Field(..., ge=0, description="Raio R (m)")
    Omega: float = Field(..., gt=0, description="Frequência angular Ω (rad/s)")
    delta: float = Field(default=0.0, description="Direção da onda δ (rad)")

    def reach(self) -> float:
        return self.radius


class GeneralPeriodicMotion(BaseModel):
    """Trajetória periódica amostrada uniformemente ao longo de um período"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["general"] = "general"
    Omega: float = Field(..., gt=0, description="Frequência fundamental Ω (rad/s)")
    samples: List[float] = Field(
        ...,
        min_length=16,
        description="Posições z (m) em t = 2πj/(MΩ), j = 0..M-1"
    )

    @field_validator("samples")
    @classmethod
    def validate_finite(cls, v: List[float]):
        if not all(math.isfinite(z) for z in v):
            raise ValueError("Amostras da trajetória devem ser finitas")
        return v

    def reach(self) -> float:
        return max(abs(z) for z in self.samples)


MotionProfile = Annotated[
    Union[SHOMotion, RotationMotion, GeneralPeriodicMotion],
    Field(discriminator="kind"),
]

from enum import Enum
from typing import Optional
from pydantic import BaseModel, ConfigDict, Field


class Propagation(str, Enum):
    # Sinal de ∓kz nos modos do espaço livre
    RIGHT = "right"
    LEFT = "left"


class OracleResult(BaseModel):
    """Amplitude de um período calculada por quadratura direta"""
    model_config = ConfigDict(frozen=True)

    amplitude: complex
    rate: float = Field(..., ge=0, description="(Ω/2π)(g²/Ω²)|amplitude|² em Hz")
    error_estimate: float = Field(..., ge=0)
    panels_used: int = Field(..., ge=1)
    n: int = Field(..., ge=1, description="Harmônico ω̃ = (ω + ω₀)/Ω")


class SuiteReport(BaseModel):
    """Resultado de uma bateria de verificação do oráculo"""
    name: str
    cases: int = Field(..., ge=0)
    max_deviation: float = Field(..., ge=0)
    tolerance: float = Field(..., gt=0)
    passed: bool
    details: Optional[str] = None

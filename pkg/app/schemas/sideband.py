from enum import Enum
from typing import Optional
from pydantic import BaseModel, ConfigDict, Field


class Branch(str, Enum):
    EMIT_EXCITE = "emit_excite"
    ABSORB_DEEXCITE = "absorb_deexcite"


class Sideband(BaseModel):
    # Uma linha do espectro: ω + ω₀ = nΩ (emissão) ou nΩ = ω₀ − ω (absorção)
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    n: int = Field(..., ge=1, description="Índice da banda lateral")
    omega: float = Field(..., gt=0, description="Frequência angular do fóton (rad/s)")
    rate: float = Field(..., ge=0, description="Taxa de transição (Hz)")
    branch: Branch = Field(default=Branch.EMIT_EXCITE)
    m: Optional[int] = Field(default=None, ge=1, description="Modo da cavidade")
    a_tilde: Optional[float] = Field(default=None, ge=0, description="Amplitude adimensional Ã")
    oracle_rate: Optional[float] = Field(default=None, ge=0, description="Taxa pela quadratura direta (Hz)")

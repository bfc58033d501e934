from typing import Optional
from pydantic import BaseModel, ConfigDict, Field, model_validator


class AtomParams(BaseModel):
    """Átomo de dois níveis: transição ω₀ e acoplamento g com o campo"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    omega0: float = Field(..., gt=0, description="Frequência de transição ω₀ (rad/s)")
    g: float = Field(..., gt=0, description="Acoplamento átomo-campo g (rad/s)")
    alpha: Optional[float] = Field(
        default=None,
        gt=0,
        description="Razão de acoplamento ultra-forte, g = α·ω₀"
    )

    @model_validator(mode="before")
    @classmethod
    def fill_coupling_from_alpha(cls, data):
        # Quando só α é informado, g é derivado dele
        if isinstance(data, dict) and data.get("g") is None:
            alpha = data.get("alpha")
            omega0 = data.get("omega0")
            if alpha is not None and omega0 is not None:
                data = {**data, "g": alpha * omega0}
        return data

    @model_validator(mode="after")
    def check_alpha_consistency(self):
        if self.alpha is not None and self.g != self.alpha * self.omega0:
            raise ValueError(
                f"g inconsistente com α: esperado {self.alpha * self.omega0!r}, recebido {self.g!r}"
            )
        return self

    @classmethod
    def from_alpha(cls, omega0: float, alpha: float) -> "AtomParams":
        return cls(omega0=omega0, alpha=alpha)

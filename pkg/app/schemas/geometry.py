from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class FreeSpace(BaseModel):
    """Reta inteira: modos que se propagam para a direita e para a esquerda"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["free"] = "free"


class Mirror(BaseModel):
    """Semi-reta com espelho fixo em z = z₀"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["mirror"] = "mirror"
    z0: float = Field(..., gt=0, description="Distância do centro do movimento ao espelho (m)")


class Cavity(BaseModel):
    """Cavidade de comprimento L com N fótons no modo ressonante"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["cavity"] = "cavity"
    length: float = Field(..., gt=0, description="Comprimento L (m)")
    z0: float = Field(..., gt=0, description="Posição de repouso do átomo (m)")
    photons: int = Field(default=0, ge=0, description="Ocupação N do modo")

    @model_validator(mode="after")
    def check_inside(self):
        if self.z0 >= self.length:
            raise ValueError(f"Átomo fora da cavidade: z₀={self.z0!r} ≥ L={self.length!r}")
        return self


Geometry = Annotated[
    Union[FreeSpace, Mirror, Cavity],
    Field(discriminator="kind"),
]


def clearance_violation(motion, geometry) -> Optional[str]:
    """
    Verifica se o átomo bate em algum espelho (0 < A < z₀).
    Retorna a mensagem de erro ou None.
    """
    reach = motion.reach()

    if isinstance(geometry, Mirror) and reach >= geometry.z0:
        return f"Amplitude {reach!r} m atinge o espelho em z₀={geometry.z0!r} m (exige A < z₀)"

    if isinstance(geometry, Cavity):
        if reach >= geometry.z0 or geometry.z0 + reach >= geometry.length:
            return (
                f"Amplitude {reach!r} m atinge um dos espelhos da cavidade "
                f"(z₀={geometry.z0!r} m, L={geometry.length!r} m)"
            )
    return None

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings


class AccuracyBudget(BaseModel):
    """Tolerância e limite de termos/painéis para as funções especiais"""
    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(..., gt=0)
    max_terms: int = Field(..., ge=1)

    @classmethod
    def default(cls) -> "AccuracyBudget":
        return cls(rel_tol=settings.specfun_rel_tol, max_terms=settings.specfun_max_terms)


class QuadratureConfig(BaseModel):
    """Parâmetros da quadratura Gauss–Legendre composta do oráculo"""
    model_config = ConfigDict(frozen=True)

    initial_panels: int = Field(..., ge=16)
    rel_tol: float = Field(..., gt=0)
    max_doublings: int = Field(..., ge=1)
    order: int = Field(default=16, ge=2, description="Nós por painel")

    @classmethod
    def default(cls) -> "QuadratureConfig":
        return cls(
            initial_panels=settings.quad_initial_panels,
            rel_tol=settings.quad_rel_tol,
            max_doublings=settings.quad_max_doublings,
            order=settings.quad_order,
        )

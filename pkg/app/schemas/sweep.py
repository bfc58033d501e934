import math
from typing import Dict, List, Optional, Tuple
from pydantic import BaseModel, Field, field_validator, model_validator


class SweepAxis(BaseModel):
    name: str = Field(..., min_length=1)
    values: List[float] = Field(..., min_length=1)

    @field_validator("values")
    @classmethod
    def validate_monotone(cls, v: List[float]):
        # Valores estritamente crescentes ou estritamente decrescentes
        steps = [b - a for a, b in zip(v, v[1:])]
        if steps and not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
            raise ValueError("Eixo da varredura deve ser estritamente monótono")
        return v


class SweepGrid(BaseModel):
    axis1: SweepAxis
    axis2: SweepAxis
    fixed: Dict[str, float] = Field(default_factory=dict)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.axis1.values), len(self.axis2.values)


class SweepResult(BaseModel):
    """Matriz de taxas indexada por (axis1, axis2), em ordem de linha"""
    grid: SweepGrid
    values: List[List[float]]
    metadata: Dict[str, str] = Field(default_factory=dict)
    exact: Optional[List[List[float]]] = Field(
        default=None,
        description="Taxa exata (Bessel) ao lado da aproximação, quando houver"
    )
    flags: Optional[List[List[bool]]] = Field(
        default=None,
        description="Células fora do domínio da aproximação"
    )

    @model_validator(mode="after")
    def validate_dimensions(self):
        rows, cols = self.grid.shape
        for label, matrix in (("values", self.values), ("exact", self.exact), ("flags", self.flags)):
            if matrix is None:
                continue
            if len(matrix) != rows or any(len(row) != cols for row in matrix):
                raise ValueError(f"Dimensões de '{label}' não batem com a grade {rows}x{cols}")

        for matrix in (self.values, self.exact):
            if matrix is None:
                continue
            for row in matrix:
                for cell in row:
                    if not math.isfinite(cell) or cell < 0:
                        raise ValueError(f"Taxa inválida na varredura: {cell!r}")
        return self

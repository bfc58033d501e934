# app/api/routes/rates.py
from typing import List, Optional

from fastapi import APIRouter, Body, Depends, HTTPException, Query, status

from app.api.deps import get_quadrature_config
from app.api.routes.errors import to_http
from app.schemas.numerics import QuadratureConfig
from app.schemas.run_config import RunConfig
from app.schemas.sideband import Branch, Sideband
from app.services import sweep_service
from app.services.exceptions import ServiceException

router = APIRouter(
    tags=["rates"]
)


@router.post("/rates", response_model=List[Sideband])
def compute_rate(
    config: RunConfig = Body(..., description="Configuração de execução (frequências em Hz)"),
    n: int = Query(1, ge=1, description="Índice da banda lateral"),
    m: Optional[int] = Query(None, ge=1, description="Modo da cavidade"),
    branch: Branch = Query(Branch.EMIT_EXCITE, description="Ramo da transição na cavidade"),
    verify: bool = Query(False, description="Confere a taxa pelo oráculo"),
    cfg: QuadratureConfig = Depends(get_quadrature_config),
):
    """
    Retorna a(s) taxa(s) da banda n para a configuração enviada.
    """
    try:
        atom, motion, geom = config.build()
        return sweep_service.rate_lines(atom, motion, geom, n, m, branch, verify=verify or config.verify, cfg=cfg)
    except ServiceException as e:
        raise to_http(e)


@router.post("/spectrum", response_model=List[Sideband])
def compute_spectrum(
    config: RunConfig = Body(...),
    n_max: Optional[int] = Query(None, ge=1, le=200, description="Maior banda lateral"),
    verify: bool = Query(False),
    cfg: QuadratureConfig = Depends(get_quadrature_config),
):
    """
    Retorna o espectro de bandas laterais até n_max.
    """
    try:
        atom, motion, geom = config.build()
        return sweep_service.spectrum(atom, motion, geom, n_max or config.n_max, verify=verify or config.verify, cfg=cfg)
    except ServiceException as e:
        raise to_http(e)
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Erro ao calcular espectro: {str(e)}"
        )

# app/api/routes/sweeps.py
from typing import Optional

import numpy as np
from fastapi import APIRouter, HTTPException, Query

from app.api.routes.errors import to_http
from app.core.units import hz_to_rad_per_sec
from app.schemas.oracle import SuiteReport
from app.schemas.sweep import SweepResult
from app.services import oracle_service, sweep_service
from app.services.exceptions import ServiceException

router = APIRouter(
    tags=["sweeps"]
)


@router.get("/sweeps/fig2", response_model=SweepResult)
def read_fig2(
    a_tilde_max: float = Query(30.0, gt=0, description="Maior amplitude adimensional Ã"),
    points: int = Query(512, ge=2, le=4096, description="Pontos no eixo Ã"),
    n_max: int = Query(30, ge=1, le=100, description="Maior banda lateral"),
):
    """
    Superfície Jₙ²(Ã) por Ã e n (prefator 2πg²/Ω omitido).
    """
    try:
        return sweep_service.fig2_surface(np.linspace(0.0, a_tilde_max, points), range(1, n_max + 1))
    except ServiceException as e:
        raise to_http(e)


@router.get("/sweeps/fig3", response_model=SweepResult)
def read_fig3(
    a_max: float = Query(10e-9, gt=0, description="Maior amplitude A (m)"),
    alpha_min: float = Query(0.1, gt=0),
    alpha_max: float = Query(1.0, gt=0),
    points: int = Query(128, ge=2, le=1024),
    omega_hz: Optional[float] = Query(None, gt=0, description="Ω/2π (Hz); padrão 10 GHz"),
):
    """
    Estimativa de pequena amplitude por A e α, com a taxa exata e as células marcadas.
    """
    try:
        Omega = hz_to_rad_per_sec(omega_hz) if omega_hz else None
        return sweep_service.fig3_surface(
            np.linspace(0.0, a_max, points),
            np.linspace(alpha_min, alpha_max, points),
            Omega,
        )
    except ServiceException as e:
        raise to_http(e)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))


@router.get("/oracle/selection-rule", response_model=SuiteReport)
def read_selection_rule():
    """
    Executa a bateria da regra de seleção (|𝒥| < 1e-10 para p/q não inteiro).
    """
    try:
        return oracle_service.run_selection_rule_suite()
    except ServiceException as e:
        raise to_http(e)

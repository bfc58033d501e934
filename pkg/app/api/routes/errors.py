from fastapi import HTTPException, status

from app.services.exceptions import (
    ConfigException,
    ConvergenceException,
    DomainException,
    IntegrityException,
    ServiceException,
)


def to_http(e: ServiceException) -> HTTPException:
    """Traduz exceções de serviço para respostas HTTP"""
    if isinstance(e, DomainException):
        return HTTPException(status_code=422, detail=str(e))
    if isinstance(e, ConfigException):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    if isinstance(e, (ConvergenceException, IntegrityException)):
        return HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Falha de integridade numérica: {str(e)}"
        )
    return HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))

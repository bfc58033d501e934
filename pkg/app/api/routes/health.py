from fastapi import APIRouter
from app import __version__
from app.core.config import settings
from app.core.logger_config import logger  # Usa logger global

router = APIRouter(tags=["health"])


@router.get("/health")
def health_check():
    """
    Retorna status da aplicação e a versão do modelo.
    """
    logger.info("Endpoint /health acessado")
    return {"status": "ok", "app": settings.app_name, "version": __version__}

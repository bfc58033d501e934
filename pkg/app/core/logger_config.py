import logging
from app.core.config import settings

# Configuração global do logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO), # Nível vindo das configurações
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s" # Formato das mensagens
)

# Logger principal da aplicação
logger = logging.getLogger("radiacaofacil")

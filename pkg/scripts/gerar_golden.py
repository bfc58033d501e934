import os
import sys

from app.core.logger_config import logger
from app.services import serializers, sweep_service


# Uso: python -m scripts.gerar_golden golden/
def gerar(destino: str) -> None:
    os.makedirs(destino, exist_ok=True)
    superficies = {
        "fig2": sweep_service.fig2_surface(),
        "fig3": sweep_service.fig3_surface(),
    }
    for nome, resultado in superficies.items():
        for formato in serializers.FORMATS:
            caminho = os.path.join(destino, f"{nome}.{formato}")
            serializers.write_output(serializers.render("sweep", resultado, formato), caminho)
    logger.info(f"Arquivos golden gravados em {destino}")


if __name__ == "__main__":
    gerar(sys.argv[1] if len(sys.argv) > 1 else "golden")

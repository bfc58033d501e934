import os
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

# Diretório onde este arquivo config.py está
BASE_DIR = os.path.dirname(os.path.abspath(__file__))

# Carrega o .env da mesma pasta
load_dotenv(dotenv_path=os.path.join(BASE_DIR, ".env"))


class Settings(BaseSettings):
    app_name: str = "RadiaçãoFácil"
    environment: str = "local"
    debug: bool = False
    log_level: str = "INFO"

    # Funções especiais (série de potências / recorrência de Miller)
    specfun_rel_tol: float = 1e-10
    specfun_max_terms: int = 1_000_000
    series_cutoff: float = 12.0

    # Quadratura do oráculo
    quad_initial_panels: int = 16
    quad_rel_tol: float = 1e-12
    quad_max_doublings: int = 14
    quad_order: int = 16

    # Tolerâncias de ressonância
    resonance_tol: float = 1e-9
    harmonic_tol: float = 1e-9
    verify_rel_tol: float = 1e-6

    # Varreduras (presets fig2 e fig3)
    sweep_workers: int = 4
    fig2_a_tilde_max: float = 30.0
    fig2_points: int = 512
    fig2_n_max: int = 30
    fig3_a_max: float = 10e-9
    fig3_points: int = 128
    fig3_alpha_min: float = 0.1
    fig3_alpha_max: float = 1.0
    fig3_omega_hz: float = 10e9

    # Variáveis de ambiente com prefixo RADIACAO_ sobrescrevem os padrões
    model_config = SettingsConfigDict(
        env_file=os.path.join(BASE_DIR, ".env"),
        env_prefix="RADIACAO_",
        extra="ignore",
    )


# Instancia as configurações
settings = Settings()

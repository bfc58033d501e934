from app.schemas.numerics import QuadratureConfig


def get_quadrature_config() -> QuadratureConfig:
    """Parâmetros padrão da quadratura do oráculo, lidos das configurações"""
    return QuadratureConfig.default()

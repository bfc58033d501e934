# app/services/exceptions.py
from typing import Optional, Sequence


class ServiceException(Exception):
    """Exceção base para serviços"""
    pass


class DomainException(ServiceException):
    """Parâmetros fora do domínio físico do modelo"""
    pass


class NoSidebandException(DomainException):
    """Banda lateral sem fóton de frequência positiva (nΩ ≤ ω₀)"""
    pass


class OffResonanceException(DomainException):
    """Condição de ressonância da cavidade violada"""

    def __init__(self, message: str, mismatch: float):
        super().__init__(message)
        self.mismatch = mismatch  # rad/s


class ApproximationDomainException(DomainException):
    """Aproximação de pequena amplitude usada fora de Ã < 0.1"""
    pass


class NonIntegerHarmonicException(DomainException):
    """ω̃ = (ω + ω₀)/Ω não é inteiro: a taxa por ciclo não é estacionária"""
    pass


class ConvergenceException(ServiceException):
    """Quadratura ou série não atingiu a tolerância pedida"""

    def __init__(self, message: str, estimates: Sequence[complex] = (), error_estimate: Optional[float] = None):
        super().__init__(message)
        self.estimates = tuple(estimates)
        self.error_estimate = error_estimate


class IntegrityException(ServiceException):
    """Fórmula fechada e oráculo discordam além da tolerância"""
    pass


class ConfigException(ServiceException):
    """Erro ao interpretar o arquivo de configuração"""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        super().__init__(message)
        self.line = line
        self.field = field

import math

from app.core.units import CONSTANTS, wavenumber
from app.schemas import Mirror, SHOMotion

# Unidades naturais: Ω = 1 rad/s, ω₀ = 0.5 rad/s
OMEGA = 1.0
OMEGA0 = 0.5


def sho_with_a_tilde(a_tilde: float, n: int = 1, Omega: float = OMEGA, omega0: float = OMEGA0, **kwargs) -> SHOMotion:
    """Oscilação cuja amplitude adimensional na banda n vale a_tilde."""
    k = wavenumber(n * Omega - omega0)
    return SHOMotion(amplitude=a_tilde / k, Omega=Omega, **kwargs)


def mirror_with_phase(z0_tilde: float, n: int = 1, Omega: float = OMEGA, omega0: float = OMEGA0) -> Mirror:
    """Espelho com k z₀ = z0_tilde na banda n."""
    return Mirror(z0=z0_tilde / wavenumber(n * Omega - omega0))


def cqed_small_amplitude(amplitude: float = 1e-9, alpha: float = 0.2) -> float:
    # Circuito cQED com Ω/2π = 10 GHz e ω₀ = Ω/2
    Omega = 2 * math.pi * 1e10
    return math.pi * (alpha * amplitude) ** 2 * Omega ** 3 / (32 * CONSTANTS.c ** 2)

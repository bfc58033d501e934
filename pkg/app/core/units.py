import math
import re
from typing import Union

from pydantic import BaseModel, ConfigDict, Field
from scipy.constants import c as SPEED_OF_LIGHT  # 2.99792458e8 m/s, valor exato

# Frequências internas em rad/s e comprimentos em metros; Hz e sufixos só na fronteira
_LENGTH_SUFFIXES = {
    "m": 1.0,
    "mm": 1e-3,
    "um": 1e-6,
    "µm": 1e-6,
    "nm": 1e-9,
    "pm": 1e-12,
}

_LENGTH_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-zµ]*)\s*$")


def hz_to_rad_per_sec(hz: float) -> float:
    """Converte Hz para rad/s"""
    return hz * 2 * math.pi


def rad_per_sec_to_hz(rad_per_sec: float) -> float:
    """Converte rad/s para Hz"""
    return rad_per_sec / (2 * math.pi)


def wavenumber(omega: float) -> float:
    """k = ω/c, em 1/m"""
    return omega / SPEED_OF_LIGHT


def parse_length(value: Union[str, float, int]) -> float:
    """
    Converte um comprimento para metros.
    Aceita número puro (metros) ou texto com sufixo: "10 nm", "1.5um", "0.2 m".
    """
    if isinstance(value, (int, float)):
        return float(value)

    match = _LENGTH_RE.match(value)
    if not match:
        raise ValueError(f"Comprimento inválido: '{value}'")

    number, suffix = match.groups()
    scale = _LENGTH_SUFFIXES.get(suffix or "m")
    if scale is None:
        raise ValueError(
            f"Unidade de comprimento desconhecida '{suffix}'. "
            f"Use uma de: {sorted(_LENGTH_SUFFIXES)}"
        )
    return float(number) * scale


class PhysicalConstants(BaseModel):
    """Constantes físicas usadas pelo modelo"""
    model_config = ConfigDict(frozen=True)

    c: float = Field(default=SPEED_OF_LIGHT, description="Velocidade da luz (m/s)")


CONSTANTS = PhysicalConstants()

from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from app.core.logger_config import logger
from app.services.exceptions import ConvergenceException

Integrand = Callable[[np.ndarray], np.ndarray]

# Menor tolerância relativa que duas estimativas em float64 conseguem atestar
MACHINE_EPS = float(np.finfo(float).eps)


class QuadratureEstimate(NamedTuple):
    value: complex
    error: float
    panels: int


@lru_cache(maxsize=16)
def gauss_legendre_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_gauss_legendre(f: Integrand, a: float, b: float, panels: int, order: int = 16):
    """Integra f em [a, b] com `panels` painéis iguais de `order` nós cada."""
    nodes, weights = gauss_legendre_rule(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = mid[:, None] + half[:, None] * nodes[None, :]
    return np.sum(f(x) * weights[None, :] * half[:, None])


def refine_by_doubling(
    f: Integrand,
    a: float,
    b: float,
    panels: int,
    rel_tol: float,
    max_doublings: int,
    scale: float = 1.0,
    order: int = 16,
    max_panels: Optional[int] = None,
) -> QuadratureEstimate:
    """
    Dobra o número de painéis até |I_2P − I_P| ≤ rel_tol·max(|I_2P|, scale).
    `scale` é a ordem de grandeza natural da integral, usada quando ela se anula.
    """
    previous = composite_gauss_legendre(f, a, b, panels, order)
    older, error = previous, float("inf")

    # Abaixo do eps a diferença entre estimativas chega a zero por arredondamento
    if rel_tol < MACHINE_EPS:
        error = MACHINE_EPS * max(abs(previous), scale)
        raise ConvergenceException(
            f"Tolerância {rel_tol:.1e} abaixo da precisão de máquina ({MACHINE_EPS:.1e})",
            estimates=(complex(previous),),
            error_estimate=error,
        )

    for _ in range(max_doublings):
        if max_panels is not None and 2 * panels > max_panels:
            break
        panels *= 2
        current = composite_gauss_legendre(f, a, b, panels, order)
        error = float(abs(current - previous))
        logger.debug(f"Quadratura: {panels} painéis, erro estimado {error:.3e}")
        if error <= rel_tol * max(abs(current), scale):
            return QuadratureEstimate(complex(current), error, panels)
        older, previous = previous, current

    logger.warning(f"Quadratura não convergiu: {panels} painéis, erro estimado {error:.3e}")
    raise ConvergenceException(
        f"Quadratura não convergiu após {panels} painéis (erro estimado {error:.3e})",
        estimates=(complex(older), complex(previous)),
        error_estimate=error,
    )

import math
from typing import Optional

import numpy as np

from app.core.config import settings
from app.schemas.numerics import AccuracyBudget
from app.services.exceptions import ConvergenceException, DomainException
from app.services.quadrature import MACHINE_EPS, refine_by_doubling

# Folga do critério de parada das séries sobre o rel_tol pedido
_SERIES_HEADROOM = 1e-3

# Reescala da recorrência descendente para evitar overflow
_BIG = 1e10
_BIG_INV = 1e-10

# Limite para a parte imaginária de 𝒥, que é real por simetria
_IMAG_TOL = 1e-12


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainException(f"{name} deve ser finito, recebido {value!r}")
    return value


def _check_order(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainException(f"Ordem da Bessel deve ser inteiro não negativo, recebido {n!r}")
    return int(n)


def bessel_j(n: int, x: float, budget: Optional[AccuracyBudget] = None) -> float:
    """
    Jₙ(x) para n inteiro ≥ 0, com erro relativo dentro de budget.rel_tol.
    Série ascendente para |x| ≤ series_cutoff, recorrência descendente de Miller
    normalizada por J₀ + 2ΣJ₂ₖ = 1 acima disso.
    """
    n = _check_order(n)
    x = _check_finite("x", x)
    budget = budget or AccuracyBudget.default()

    # Jₙ(−x) = (−1)ⁿ Jₙ(x)
    sign = -1.0 if (x < 0 and n % 2) else 1.0
    ax = abs(x)

    if ax == 0.0:
        return 1.0 if n == 0 else 0.0

    if ax <= settings.series_cutoff:
        value = _bessel_series(n, ax, budget)
    else:
        value = _bessel_miller(n, ax, budget)
    return sign * value


def _stop_tolerance(budget: AccuracyBudget) -> float:
    return max(budget.rel_tol * _SERIES_HEADROOM, MACHINE_EPS)


def _bessel_series(n: int, x: float, budget: AccuracyBudget) -> float:
    half = 0.5 * x
    if n <= 170:
        term = half ** n / math.factorial(n)
    else:
        term = math.exp(n * math.log(half) - math.lgamma(n + 1))

    total = term
    ratio = -half * half
    stop = _stop_tolerance(budget)
    for k in range(1, budget.max_terms + 1):
        term *= ratio / (k * (k + n))
        total += term
        # Só encerra depois do termo de maior módulo (k ≈ x/2)
        if k > half and abs(term) <= stop * abs(total):
            return total

    raise ConvergenceException(
        f"Série de J_{n}({x}) não convergiu em {budget.max_terms} termos",
        error_estimate=abs(term),
    )


def _bessel_miller(n: int, x: float, budget: AccuracyBudget) -> float:
    # Índice de partida cresce com o número de dígitos pedidos
    digits = -math.log10(_stop_tolerance(budget))
    top = max(n, int(math.ceil(x)))
    start = 2 * ((top + int(math.sqrt(10 * digits * top)) + 16) // 2)
    if start > budget.max_terms:
        raise ConvergenceException(
            f"Recorrência para J_{n}({x}) exige {start} termos (limite {budget.max_terms})"
        )

    two_over_x = 2.0 / x
    j_above, j_here = 0.0, 1.0
    result = 0.0
    norm = 0.0
    add_to_norm = False

    for j in range(start, 0, -1):
        j_below = j * two_over_x * j_here - j_above
        j_above, j_here = j_here, j_below
        if abs(j_here) > _BIG:
            j_here *= _BIG_INV
            j_above *= _BIG_INV
            result *= _BIG_INV
            norm *= _BIG_INV
        if add_to_norm:
            norm += j_here
        add_to_norm = not add_to_norm
        if j == n:
            result = j_above

    if n == 0:
        result = j_here
    norm = 2.0 * norm - j_here
    return result / norm


def anger_j(nu: float, x: float, budget: Optional[AccuracyBudget] = None) -> float:
    """𝐉ν(x) = (1/π)∫₀^π cos(x sinθ − νθ) dθ por quadratura adaptativa."""
    nu = _check_finite("nu", nu)
    x = _check_finite("x", x)
    budget = budget or AccuracyBudget.default()

    panels = max(16, math.ceil(4 * (abs(x) + abs(nu))))
    estimate = refine_by_doubling(
        lambda theta: np.cos(x * np.sin(theta) - nu * theta),
        0.0,
        math.pi,
        panels,
        rel_tol=budget.rel_tol,
        max_doublings=64,
        scale=1.0,
        max_panels=budget.max_terms,
    )
    return estimate.value.real / math.pi


def rational_period_integral(x: float, p: int, q: int, budget: Optional[AccuracyBudget] = None) -> float:
    """
    𝒥(x; p, q) = (1/2π)∫₋π^π exp[i(x sin(qψ) − pψ)] dψ.
    Anula-se quando p/q não é inteiro e vale J_{p/q}(x) quando q divide p.
    p/q não precisa estar reduzida.
    """
    x = _check_finite("x", x)
    for label, value in (("p", p), ("q", q)):
        if isinstance(value, bool) or int(value) != value or value < 1:
            raise DomainException(f"{label} deve ser inteiro positivo, recebido {value!r}")
    p, q = int(p), int(q)
    budget = budget or AccuracyBudget.default()

    panels = max(16, math.ceil(4 * (abs(x) * q + p)))
    estimate = refine_by_doubling(
        lambda psi: np.exp(1j * (x * np.sin(q * psi) - p * psi)),
        -math.pi,
        math.pi,
        panels,
        rel_tol=budget.rel_tol,
        max_doublings=64,
        scale=2 * math.pi,
        max_panels=budget.max_terms,
    )
    value = estimate.value / (2 * math.pi)

    if abs(value.imag) > _IMAG_TOL:
        raise ConvergenceException(
            f"𝒥({x}; {p}, {q}) com parte imaginária {value.imag:.3e}",
            estimates=(value,),
            error_estimate=abs(value.imag),
        )
    return float(value.real)

import math
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.logger_config import logger
from app.core.units import CONSTANTS, wavenumber
from app.schemas.atom import AtomParams
from app.schemas.geometry import Cavity, FreeSpace, Mirror
from app.schemas.motion import GeneralPeriodicMotion, Orientation, RotationMotion, SHOMotion
from app.schemas.numerics import QuadratureConfig
from app.schemas.oracle import OracleResult, Propagation, SuiteReport
from app.schemas.sideband import Branch, Sideband
from app.services import rate_service
from app.services.exceptions import (
    DomainException,
    NonIntegerHarmonicException,
)
from app.services.quadrature import refine_by_doubling
from app.services.specfun import rational_period_integral

Phase = Callable[[np.ndarray], np.ndarray]

# Piso relativo ao prefator da geometria, abaixo do qual a comparação é absoluta
DEVIATION_FLOOR = 1e-6

# Teto da malha do trapézio denso (2^16 pontos por período)
DENSE_MAX_LOG2 = 16


def trigonometric_interpolant(samples: Sequence[float]) -> Phase:
    """
    Interpolação trigonométrica (limitada em banda) de amostras uniformes
    z_j = z(2πj/M), j = 0..M-1, avaliável em qualquer τ.
    """
    z = np.asarray(samples, dtype=float)
    size = len(z)
    coeffs = np.fft.rfft(z) / size
    harmonics = np.arange(len(coeffs))
    weights = np.full(len(coeffs), 2.0)
    weights[0] = 1.0
    if size % 2 == 0:
        weights[-1] = 1.0
    weighted = weights * coeffs

    def evaluate(tau: np.ndarray) -> np.ndarray:
        basis = np.exp(1j * np.multiply.outer(tau, harmonics))
        return np.real(basis @ weighted)

    return evaluate


def _significant_harmonic(samples: Sequence[float]) -> int:
    """Maior harmônico das amostras acima do ruído de arredondamento."""
    magnitudes = np.abs(np.fft.rfft(np.asarray(samples, dtype=float)))
    significant = np.nonzero(magnitudes > 1e-12 * max(magnitudes.max(), 1e-300))[0]
    return max(1, int(significant[-1])) if len(significant) else 1


def _trajectory(traj) -> Phase:
    # Deslocamento ao longo do eixo de propagação (espaço livre) ou normal ao espelho
    if isinstance(traj, SHOMotion):
        return lambda tau: traj.amplitude * np.sin(tau + traj.phase)
    if isinstance(traj, RotationMotion):
        return lambda tau: traj.radius * np.sin(tau)
    return trigonometric_interpolant(traj.samples)


def _mirror_phase(traj, k: float, z0: float) -> Phase:
    """Φ(τ) = k·x(τ) − k_z z₀ para cada tipo de trajetória."""
    if isinstance(traj, SHOMotion) and traj.orientation is Orientation.PARALLEL:
        k_y, k_z = k * math.sin(traj.delta), k * math.cos(traj.delta)
        return lambda tau: k_y * traj.amplitude * np.sin(tau + traj.phase) - k_z * z0
    if isinstance(traj, RotationMotion):
        # Trajetória bidimensional de fato: x(τ) = R(cos τ, sin τ) no plano y-z
        k_y, k_z = k * math.sin(traj.delta), k * math.cos(traj.delta)
        return lambda tau: k_y * traj.radius * np.cos(tau) + k_z * traj.radius * np.sin(tau) - k_z * z0

    z = _trajectory(traj)
    return lambda tau: k * (z(tau) - z0)


def _integrand(traj, geom, k: float, n: int, propagation: Propagation) -> Phase:
    # Livre: exp[i(nτ ∓ k z(τ))]; espelho: [e^{iΦ} − e^{−iΦ}] e^{inτ}, integrados em τ ∈ [−π, π]
    if isinstance(geom, FreeSpace):
        z = _trajectory(traj)
        sign = 1.0 if propagation is Propagation.RIGHT else -1.0
        return lambda tau: np.exp(1j * (n * tau - sign * k * z(tau)))

    phase = _mirror_phase(traj, k, geom.z0)
    return lambda tau: 2j * np.sin(phase(tau)) * np.exp(1j * n * tau)


def _integrate_harmonic(traj, geom, k: float, n: int, cfg: QuadratureConfig, propagation: Propagation):
    a_tilde = k * traj.reach()
    panels = max(cfg.initial_panels, math.ceil(8 * (n + a_tilde)))
    return refine_by_doubling(
        _integrand(traj, geom, k, n, propagation),
        -math.pi,
        math.pi,
        panels,
        rel_tol=cfg.rel_tol,
        max_doublings=cfg.max_doublings,
        scale=2 * math.pi,
        order=cfg.order,
    )


def _cycle_rate(g: float, Omega: float, amplitude: complex) -> float:
    return Omega / (2 * math.pi) * (g ** 2 / Omega ** 2) * abs(amplitude) ** 2


def one_period_amplitude(
    traj,
    geom,
    omega: float,
    omega0: float,
    cfg: Optional[QuadratureConfig] = None,
    *,
    g: float = 1.0,
    propagation: Propagation = Propagation.RIGHT,
) -> OracleResult:
    """
    Amplitude de um período por quadratura Gauss–Legendre com duplicação de painéis.
    Exige ω + ω₀ = nΩ com n inteiro positivo. Na cavidade, ω precisa ser um
    modo πmc/L e a taxa devolvida é a do vácuo (χ = 1).
    """
    cfg = cfg or QuadratureConfig.default()
    if not omega > 0 or not omega0 > 0:
        raise DomainException("ω e ω₀ devem ser positivos")

    omega_tilde = (omega + omega0) / traj.Omega
    n = round(omega_tilde)
    if n < 1 or abs(omega_tilde - n) > settings.harmonic_tol * omega_tilde:
        raise NonIntegerHarmonicException(
            f"ω̃ = {omega_tilde!r} não é inteiro positivo; use rational_period_integral "
            f"para verificar que a taxa se anula"
        )

    if isinstance(geom, Cavity):
        m = round(omega * geom.length / (math.pi * CONSTANTS.c))
        if m < 1 or abs(rate_service.cavity_mode_frequency(geom, m) - omega) > settings.resonance_tol * omega:
            raise DomainException(f"ω = {omega!r} não é um modo da cavidade")
    if not isinstance(geom, FreeSpace):
        rate_service.ensure_clearance(traj, geom)

    estimate = _integrate_harmonic(traj, geom, wavenumber(omega), n, cfg, Propagation(propagation))
    return OracleResult(
        amplitude=estimate.value,
        rate=_cycle_rate(g, traj.Omega, estimate.value),
        error_estimate=estimate.error,
        panels_used=estimate.panels,
        n=n,
    )


def sideband_oracle_rate(
    atom: AtomParams,
    traj,
    geom,
    sideband: Sideband,
    cfg: Optional[QuadratureConfig] = None,
) -> float:
    """
    Taxa de uma banda lateral pela quadratura direta, incluindo χ± na cavidade.
    O ramo de absorção tem o mesmo módulo de amplitude no harmônico n.
    """
    cfg = cfg or QuadratureConfig.default()
    if isinstance(geom, Cavity):
        k = math.pi * sideband.m / geom.length
        rate_service.ensure_clearance(traj, geom)
        estimate = _integrate_harmonic(traj, geom, k, sideband.n, cfg, Propagation.RIGHT)
        chi = geom.photons + 1 if sideband.branch is Branch.EMIT_EXCITE else geom.photons
        return chi * _cycle_rate(atom.g, traj.Omega, estimate.value)

    result = one_period_amplitude(traj, geom, sideband.omega, atom.omega0, cfg, g=atom.g)
    return result.rate


def dense_trapezoid_rate(atom: AtomParams, traj, geom, sideband: Sideband) -> float:
    """
    Taxa de uma banda pela regra do trapézio numa malha uniforme e densa do período.
    Não passa pela quadratura Gauss–Legendre: serve de conferência para as
    trajetórias gerais, cuja única outra via é a própria quadratura.
    """
    if isinstance(geom, Cavity):
        k = math.pi * sideband.m / geom.length
        chi = geom.photons + 1 if sideband.branch is Branch.EMIT_EXCITE else geom.photons
    else:
        k = wavenumber(sideband.omega)
        chi = 1
    if not isinstance(geom, FreeSpace):
        rate_service.ensure_clearance(traj, geom)

    # Trapézio é exato para harmônicos abaixo do número de pontos
    harmonics = _significant_harmonic(traj.samples) if isinstance(traj, GeneralPeriodicMotion) else 1
    bandwidth = sideband.n + k * traj.reach() * harmonics
    points = 2 ** min(DENSE_MAX_LOG2, max(10, math.ceil(math.log2(8 * bandwidth + 64))))

    tau = -math.pi + 2 * math.pi * np.arange(points) / points
    integrand = _integrand(traj, geom, k, sideband.n, Propagation.RIGHT)
    amplitude = 2 * math.pi / points * np.sum(integrand(tau))
    return chi * _cycle_rate(atom.g, traj.Omega, complex(amplitude))


def geometry_prefactor(atom: AtomParams, Omega: float, geom) -> float:
    """Escala natural da taxa: 2πg²/Ω (livre) ou 8πχ₊g²/Ω (espelho, cavidade)."""
    if isinstance(geom, FreeSpace):
        return 2 * math.pi * atom.g ** 2 / Omega
    chi = geom.photons + 1 if isinstance(geom, Cavity) else 1
    return 8 * math.pi * chi * atom.g ** 2 / Omega


def relative_deviation(reference: float, candidate: float, scale: float) -> float:
    """|candidate − reference| / max(|reference|, piso·scale)"""
    return abs(candidate - reference) / max(abs(reference), DEVIATION_FLOOR * scale)


def verify_selection_rule(traj, omega_tilde, x: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """
    |𝒥(x; p, q)| por quadratura densa na forma de Anger sobre o período completo 2πq:
    (1/2πq)∫₋qπ^qπ exp[i(x sinθ − (p/q)θ)] dθ. Deve ser < 1e-10 para p/q não inteiro.
    """
    if not isinstance(traj, SHOMotion):
        raise DomainException("A regra de seleção é verificada para oscilação harmônica")
    cfg = cfg or QuadratureConfig.default()

    ratio = Fraction(omega_tilde)
    p, q = ratio.numerator, ratio.denominator
    if p < 1:
        raise DomainException(f"ω̃ deve ser positivo, recebido {ratio}")

    nu = p / q
    panels = max(cfg.initial_panels, math.ceil(8 * (q * abs(x) + p)))
    estimate = refine_by_doubling(
        lambda theta: np.exp(1j * (x * np.sin(theta) - nu * theta)),
        -q * math.pi,
        q * math.pi,
        panels,
        rel_tol=cfg.rel_tol,
        max_doublings=cfg.max_doublings,
        scale=2 * math.pi * q,
        order=cfg.order,
    )
    return abs(estimate.value) / (2 * math.pi * q)


def general_trajectory_spectrum(
    traj: GeneralPeriodicMotion,
    geom,
    atom: AtomParams,
    n_max: int,
    cfg: Optional[QuadratureConfig] = None,
) -> List[Sideband]:
    """
    Espectro de uma trajetória periódica qualquer, reconstruída por interpolação
    trigonométrica das amostras.
    """
    if len(traj.samples) < 16:
        raise DomainException(f"Trajetória exige ao menos 16 amostras, recebido {len(traj.samples)}")
    if n_max < 1:
        raise DomainException(f"n_max deve ser positivo, recebido {n_max!r}")
    cfg = cfg or QuadratureConfig.default()

    sidebands = []
    for n in range(1, n_max + 1):
        if isinstance(geom, Cavity):
            for m, branch in rate_service.resonant_cavity_modes(atom, traj.Omega, geom, n):
                line = Sideband(
                    n=n,
                    omega=rate_service.cavity_mode_frequency(geom, m),
                    rate=0.0,
                    branch=branch,
                    m=m,
                    a_tilde=math.pi * m / geom.length * traj.reach(),
                )
                rate = sideband_oracle_rate(atom, traj, geom, line, cfg)
                sidebands.append(line.model_copy(update={"rate": rate}))
            continue

        omega = n * traj.Omega - atom.omega0
        if omega <= 0:
            continue
        result = one_period_amplitude(traj, geom, omega, atom.omega0, cfg, g=atom.g)
        sidebands.append(
            Sideband(n=n, omega=omega, rate=result.rate, a_tilde=wavenumber(omega) * traj.reach())
        )

    logger.info(f"Espectro de trajetória geral: {len(sidebands)} bandas até n={n_max}")
    return sidebands


def run_selection_rule_suite(cfg: Optional[QuadratureConfig] = None) -> SuiteReport:
    """|𝒥(x; p, q)| para todo p/q irredutível com q ∈ [2, 7], p ∈ [1, 20]."""
    cfg = cfg or QuadratureConfig.default()
    oscillator = SHOMotion(amplitude=0.0, Omega=1.0)
    tolerance = 1e-10
    worst, cases = 0.0, 0

    for q in range(2, 8):
        for p in range(1, 21):
            if math.gcd(p, q) != 1:
                continue
            for x in (0.3, 1.0, 2.5, 7.0):
                worst = max(
                    worst,
                    abs(rational_period_integral(x, p, q)),
                    verify_selection_rule(oscillator, Fraction(p, q), x, cfg),
                )
                cases += 1

    passed = worst < tolerance
    logger.info(f"Regra de seleção: {cases} casos, máximo |𝒥| = {worst:.3e}")
    return SuiteReport(
        name="selection_rule",
        cases=cases,
        max_deviation=worst,
        tolerance=tolerance,
        passed=passed,
    )


def _random_equivalence_case(rng: np.random.Generator, kind: str):
    """Sorteia (átomo, movimento, geometria, n, m) com Ã ∈ [0.05, 25] e n ∈ [1, 20]."""
    Omega = 2 * math.pi * 1e10
    n = int(rng.integers(1, 21))
    a_tilde = float(rng.uniform(0.05, 25.0))
    phase = float(rng.uniform(0.0, 2 * math.pi))

    if kind == "cavity":
        m = int(rng.integers(1, 41))
        length = 1e-2
        omega = math.pi * m * CONSTANTS.c / length
        omega0 = float(rng.uniform(0.1, 2.0)) * omega
        Omega = (omega + omega0) / n
        a_tilde = min(a_tilde, 0.45 * math.pi * m)
        z0_tilde = float(rng.uniform(a_tilde, math.pi * m - a_tilde))
        k = math.pi * m / length
        geom = Cavity(length=length, z0=z0_tilde / k, photons=int(rng.integers(0, 6)))
    else:
        m = None
        omega0 = float(rng.uniform(0.05, 0.95)) * Omega
        k = wavenumber(n * Omega - omega0)
        z0_tilde = float(rng.uniform(0.0, 2 * math.pi))
        while z0_tilde <= a_tilde:
            z0_tilde += 2 * math.pi
        geom = Mirror(z0=z0_tilde / k) if kind == "mirror" else FreeSpace()

    atom = AtomParams.from_alpha(omega0, 0.2)
    motion = SHOMotion(amplitude=a_tilde / k, Omega=Omega, phase=phase)
    return atom, motion, geom, n, m


def run_equivalence_suite(seed: int = 0, draws: int = 200, cfg: Optional[QuadratureConfig] = None) -> SuiteReport:
    """
    Sorteios aleatórios em espaço livre, espelho e cavidade: taxa fechada contra
    a taxa do oráculo, com tolerância relativa 1e-8.
    """
    cfg = cfg or QuadratureConfig.default()
    rng = np.random.default_rng(seed)
    tolerance = 1e-8
    worst = 0.0
    kinds = ("free", "mirror", "cavity")

    for draw in range(draws):
        atom, motion, geom, n, m = _random_equivalence_case(rng, kinds[draw % 3])
        line = rate_service.sideband_rate(atom, motion, geom, n, m)[0]
        oracle = sideband_oracle_rate(atom, motion, geom, line, cfg)
        deviation = relative_deviation(line.rate, oracle, geometry_prefactor(atom, motion.Omega, geom))
        worst = max(worst, deviation)

    passed = worst < tolerance
    if not passed:
        logger.warning(f"Equivalência oráculo-fórmula falhou: desvio máximo {worst:.3e}")
    logger.info(f"Equivalência oráculo-fórmula: {draws} sorteios (semente {seed}), desvio máximo {worst:.3e}")
    return SuiteReport(
        name="oracle_equivalence",
        cases=draws,
        max_deviation=worst,
        tolerance=tolerance,
        passed=passed,
        details=f"seed={seed}",
    )

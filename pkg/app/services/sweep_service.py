from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from app import __version__
from app.core.config import settings
from app.core.logger_config import logger
from app.core.units import hz_to_rad_per_sec, wavenumber
from app.schemas.atom import AtomParams
from app.schemas.motion import GeneralPeriodicMotion
from app.schemas.numerics import QuadratureConfig
from app.schemas.run_config import RunConfig
from app.schemas.sideband import Branch, Sideband
from app.schemas.sweep import SweepAxis, SweepGrid, SweepResult
from app.services import oracle_service, rate_service
from app.services.exceptions import (
    ConfigException,
    DomainException,
    IntegrityException,
    NoSidebandException,
    OffResonanceException,
)
from app.services.specfun import bessel_j

Cell = Callable[[float, float], float]

NORMALIZED = "prefactor_omitted"
ABSOLUTE = "absolute_hz"


def _evaluate_rows(cell: Cell, rows: Sequence[float], cols: Sequence[float], workers: Optional[int]) -> List[List[float]]:
    """Avalia cell(linha, coluna) em toda a grade; a saída é indexada por linha."""
    results: List[Optional[List[float]]] = [None] * len(rows)

    def evaluate_row(index: int) -> None:
        results[index] = [cell(rows[index], col) for col in cols]

    with ThreadPoolExecutor(max_workers=workers or settings.sweep_workers) as pool:
        futures = [pool.submit(evaluate_row, i) for i in range(len(rows))]
        for future in futures:
            future.result()
    return results


def _metadata(preset: str, grid: SweepGrid, **extra: str) -> Dict[str, str]:
    metadata = {
        "preset": preset,
        "version": __version__,
        "axis1": grid.axis1.name,
        "axis2": grid.axis2.name,
    }
    metadata.update({key: str(value) for key, value in extra.items()})
    for name, value in grid.fixed.items():
        metadata[name] = repr(value)
    return metadata


def fig2_surface(
    a_tilde_values: Optional[Sequence[float]] = None,
    n_values: Optional[Sequence[int]] = None,
    atom: Optional[AtomParams] = None,
    Omega: Optional[float] = None,
    workers: Optional[int] = None,
) -> SweepResult:
    """
    Jₙ²(Ã) sobre a grade (Ã, n), com o prefator 2πg²/Ω omitido.
    Com átomo e Ω informados, devolve a taxa absoluta em Hz.
    """
    if a_tilde_values is None:
        a_tilde_values = np.linspace(0.0, settings.fig2_a_tilde_max, settings.fig2_points)
    if n_values is None:
        n_values = range(1, settings.fig2_n_max + 1)
    a_tilde_values = [float(a) for a in a_tilde_values]
    n_values = [int(n) for n in n_values]

    if any(a < 0 for a in a_tilde_values):
        raise DomainException("Ã deve ser não negativo")
    for n in n_values:
        rate_service.check_index("n", n)

    absolute = atom is not None and Omega is not None
    if absolute:
        cell = lambda a, n: rate_service.free_space_formula(atom.g, Omega, int(n), a)
        fixed = {"g": atom.g, "Omega": Omega}
    else:
        cell = lambda a, n: bessel_j(int(n), a) ** 2
        fixed = {}

    grid = SweepGrid(
        axis1=SweepAxis(name="a_tilde", values=a_tilde_values),
        axis2=SweepAxis(name="n", values=[float(n) for n in n_values]),
        fixed=fixed,
    )
    logger.info(f"fig2: grade {grid.shape[0]}x{grid.shape[1]} ({ABSOLUTE if absolute else NORMALIZED})")
    values = _evaluate_rows(cell, a_tilde_values, n_values, workers)

    return SweepResult(
        grid=grid,
        values=values,
        metadata=_metadata("fig2", grid, normalization=ABSOLUTE if absolute else NORMALIZED),
    )


def fig3_surface(
    a_values: Optional[Sequence[float]] = None,
    alpha_values: Optional[Sequence[float]] = None,
    Omega: Optional[float] = None,
    workers: Optional[int] = None,
) -> SweepResult:
    """
    Estimativa de pequena amplitude P̄₁ sobre a grade (A, α), com ω₀ = Ω/2.
    A taxa exata de Bessel vai junto em `exact`; células com Ã ≥ 0.1 são
    marcadas em `flags` em vez de interromper a varredura.
    """
    if a_values is None:
        a_values = np.linspace(0.0, settings.fig3_a_max, settings.fig3_points)
    if alpha_values is None:
        alpha_values = np.linspace(settings.fig3_alpha_min, settings.fig3_alpha_max, settings.fig3_points)
    if Omega is None:
        Omega = hz_to_rad_per_sec(settings.fig3_omega_hz)
    a_values = [float(a) for a in a_values]
    alpha_values = [float(alpha) for alpha in alpha_values]

    if any(a < 0 for a in a_values) or any(alpha <= 0 for alpha in alpha_values):
        raise DomainException("fig3 exige A ≥ 0 e α > 0")

    omega0 = Omega / 2
    k = wavenumber(Omega - omega0)

    def exact(a: float, alpha: float) -> float:
        return rate_service.free_space_formula(alpha * omega0, Omega, 1, k * a)

    grid = SweepGrid(
        axis1=SweepAxis(name="amplitude_m", values=a_values),
        axis2=SweepAxis(name="alpha", values=alpha_values),
        fixed={"Omega": Omega, "omega0": omega0},
    )
    logger.info(f"fig3: grade {grid.shape[0]}x{grid.shape[1]}, Ω = {Omega:.6e} rad/s")

    values = _evaluate_rows(
        lambda a, alpha: rate_service.small_amplitude_formula(a, alpha, Omega),
        a_values,
        alpha_values,
        workers,
    )
    exact_values = _evaluate_rows(exact, a_values, alpha_values, workers)
    flags = [[k * a >= rate_service.SMALL_AMPLITUDE_LIMIT for _ in alpha_values] for a in a_values]

    flagged = sum(row.count(True) for row in flags)
    if flagged:
        logger.warning(f"fig3: {flagged} células fora do domínio de pequena amplitude (Ã ≥ 0.1)")

    return SweepResult(
        grid=grid,
        values=values,
        exact=exact_values,
        flags=flags,
        metadata=_metadata("fig3", grid, normalization=ABSOLUTE),
    )


def _verify_lines(atom: AtomParams, motion, geom, lines: List[Sideband], cfg: QuadratureConfig) -> List[Sideband]:
    # Recalcula cada banda por uma via independente e exige concordância
    if isinstance(motion, GeneralPeriodicMotion):
        reference = lambda line: oracle_service.dense_trapezoid_rate(atom, motion, geom, line)
        method = "trapézio denso"
    else:
        reference = lambda line: oracle_service.sideband_oracle_rate(atom, motion, geom, line, cfg)
        method = "oráculo"

    prefactor = oracle_service.geometry_prefactor(atom, motion.Omega, geom)
    verified = []
    for line in lines:
        oracle_rate = reference(line)
        deviation = oracle_service.relative_deviation(line.rate, oracle_rate, prefactor)
        if deviation > settings.verify_rel_tol:
            logger.warning(f"Banda n={line.n}: taxa {line.rate!r} Hz, {method} {oracle_rate!r} Hz")
            raise IntegrityException(
                f"Taxa e {method} discordam na banda n={line.n}: "
                f"desvio relativo {deviation:.3e} > {settings.verify_rel_tol:.1e}"
            )
        verified.append(line.model_copy(update={"oracle_rate": oracle_rate}))
    return verified


def spectrum(
    atom: AtomParams,
    motion,
    geom,
    n_max: int,
    verify: bool = False,
    cfg: Optional[QuadratureConfig] = None,
) -> List[Sideband]:
    """Espectro até n_max. Trajetórias gerais saem da quadratura e, com verify, conferem no trapézio denso."""
    cfg = cfg or QuadratureConfig.default()
    logger.info(f"Espectro: {type(motion).__name__} em {geom.kind}, n_max={n_max}")

    if isinstance(motion, GeneralPeriodicMotion):
        lines = oracle_service.general_trajectory_spectrum(motion, geom, atom, n_max, cfg)
    else:
        lines = rate_service.allowed_sidebands(atom, motion, geom, n_max)
    if verify:
        lines = _verify_lines(atom, motion, geom, lines, cfg)
    return lines


def rate_lines(
    atom: AtomParams,
    motion,
    geom,
    n: int,
    m: Optional[int] = None,
    branch: Branch = Branch.EMIT_EXCITE,
    verify: bool = False,
    cfg: Optional[QuadratureConfig] = None,
) -> List[Sideband]:
    """Taxa(s) da banda n, com verificação opcional."""
    cfg = cfg or QuadratureConfig.default()

    if isinstance(motion, GeneralPeriodicMotion):
        lines = [
            line
            for line in oracle_service.general_trajectory_spectrum(motion, geom, atom, n, cfg)
            if line.n == n and (m is None or line.m == m)
        ]
        if not lines:
            raise NoSidebandException(f"Banda n={n} não emite para esta configuração")
    else:
        lines = rate_service.sideband_rate(atom, motion, geom, n, m, Branch(branch))
    if verify:
        lines = _verify_lines(atom, motion, geom, lines, cfg)
    return lines


def custom_surface(
    config: RunConfig,
    axis1: SweepAxis,
    axis2: SweepAxis,
    n: int = 1,
    workers: Optional[int] = None,
) -> SweepResult:
    """
    Varre dois campos numéricos quaisquer da RunConfig (nomes pontuados,
    ex. "motion.amplitude", "atom.alpha") e reporta a taxa total da banda n.
    Células sem emissão (nΩ ≤ ω₀ ou fora de ressonância) valem zero.
    """
    n = rate_service.check_index("n", n)
    config.build()

    def cell(first: float, second: float) -> float:
        atom, motion, geom = config.with_values({axis1.name: first, axis2.name: second}).build()
        try:
            return sum(line.rate for line in rate_lines(atom, motion, geom, n))
        except (NoSidebandException, OffResonanceException):
            return 0.0

    grid = SweepGrid(axis1=axis1, axis2=axis2, fixed={"n": float(n)})
    logger.info(f"Varredura custom: {axis1.name} x {axis2.name}, grade {grid.shape[0]}x{grid.shape[1]}")
    values = _evaluate_rows(cell, axis1.values, axis2.values, workers)
    return SweepResult(grid=grid, values=values, metadata=_metadata("custom", grid, normalization=ABSOLUTE))


def _axis_from_block(name: Optional[str], low: Optional[float], high: Optional[float], points: Optional[int]) -> SweepAxis:
    count = points or settings.fig3_points
    return SweepAxis(name=name, values=[float(v) for v in np.linspace(low, high, count)])


def surface_from_config(config: RunConfig, preset: Optional[str] = None, workers: Optional[int] = None) -> SweepResult:
    """Despacha a varredura descrita no bloco `sweep` da configuração."""
    block = config.sweep
    preset = preset or (block.preset if block else "fig2")

    if preset == "fig2":
        a_tilde_values = None
        if block and block.axis1_max is not None:
            a_tilde_values = np.linspace(block.axis1_min or 0.0, block.axis1_max, block.axis1_points or settings.fig2_points)
        n_values = None
        if block and block.axis2_max is not None:
            n_values = range(int(block.axis2_min or 1), int(block.axis2_max) + 1)
        if block and block.normalization == ABSOLUTE:
            atom, motion, _ = config.build()
            return fig2_surface(a_tilde_values, n_values, atom=atom, Omega=motion.Omega, workers=workers)
        return fig2_surface(a_tilde_values, n_values, workers=workers)

    if preset == "fig3":
        a_values = alpha_values = None
        if block and block.axis1_max is not None:
            a_values = np.linspace(block.axis1_min or 0.0, block.axis1_max, block.axis1_points or settings.fig3_points)
        if block and block.axis2_max is not None:
            alpha_values = np.linspace(
                block.axis2_min or settings.fig3_alpha_min, block.axis2_max, block.axis2_points or settings.fig3_points
            )
        Omega = hz_to_rad_per_sec(block.omega_hz) if block and block.omega_hz else None
        return fig3_surface(a_values, alpha_values, Omega, workers=workers)

    if preset == "custom":
        if block is None or block.preset != "custom":
            raise ConfigException("Varredura custom exige o bloco sweep com sweep__preset=custom", field="sweep__preset")
        return custom_surface(
            config,
            _axis_from_block(block.axis1, block.axis1_min, block.axis1_max, block.axis1_points),
            _axis_from_block(block.axis2, block.axis2_min, block.axis2_max, block.axis2_points),
            n=block.n,
            workers=workers,
        )

    raise ConfigException(f"Preset de varredura desconhecido: '{preset}'", field="sweep__preset")

import math
from typing import List, Optional, Tuple

from app.core.config import settings
from app.core.units import CONSTANTS, wavenumber
from app.schemas.atom import AtomParams
from app.schemas.geometry import Cavity, FreeSpace, Mirror, clearance_violation
from app.schemas.motion import GeneralPeriodicMotion, Orientation, RotationMotion, SHOMotion
from app.schemas.sideband import Branch, Sideband
from app.services.exceptions import (
    ApproximationDomainException,
    DomainException,
    NoSidebandException,
    OffResonanceException,
)
from app.services.specfun import bessel_j

# Limite da expansão J₁²(x) ≈ x²/4
SMALL_AMPLITUDE_LIMIT = 0.1


def check_index(label: str, value: int) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainException(f"{label} deve ser inteiro positivo, recebido {value!r}")
    return int(value)


def ensure_clearance(motion, geometry) -> None:
    """Rejeita movimentos que atingem o espelho (0 < A < z₀)."""
    message = clearance_violation(motion, geometry)
    if message:
        raise DomainException(message)


def photon_frequency(atom: AtomParams, Omega: float, n: int) -> float:
    """ω = nΩ − ω₀; exige ω > 0."""
    n = check_index("n", n)
    omega = n * Omega - atom.omega0
    if omega <= 0:
        raise NoSidebandException(
            f"Banda n={n} sem fóton de frequência positiva: nΩ={n * Omega!r} ≤ ω₀={atom.omega0!r}"
        )
    return omega


def dimensionless_amplitude(motion, omega: float) -> float:
    """
    Ã = kA (ou kR na rotação), com k = ω/c.
    Na oscilação paralela ao espelho usa a componente transversal k_y = k sinδ.
    """
    if not omega > 0:
        raise DomainException(f"Frequência do fóton deve ser positiva, recebido {omega!r}")
    k = wavenumber(omega)

    if isinstance(motion, SHOMotion):
        if motion.orientation is Orientation.PARALLEL:
            return abs(k * math.sin(motion.delta)) * motion.amplitude
        return k * motion.amplitude
    if isinstance(motion, RotationMotion):
        return k * motion.radius
    return k * motion.reach()


def mirror_projection(motion, k: float, z0: float) -> Tuple[float, float]:
    """
    Retorna (fase do espelho, Ã) para a fórmula do espelho:
    perpendicular (kz₀, kA), paralela (k_z z₀, k_y A), rotação (k_z z₀, kR).
    """
    if isinstance(motion, SHOMotion):
        if motion.orientation is Orientation.PARALLEL:
            return k * math.cos(motion.delta) * z0, abs(k * math.sin(motion.delta)) * motion.amplitude
        return k * z0, k * motion.amplitude
    if isinstance(motion, RotationMotion):
        # A fase δ é absorvida em τ; resta k_z z₀ = k z₀ cosδ
        return k * math.cos(motion.delta) * z0, k * motion.radius
    raise DomainException("Fórmula fechada do espelho exige oscilação harmônica ou rotação")


def free_space_formula(g: float, Omega: float, n: int, a_tilde: float) -> float:
    """P̄ₙ = (2πg²/Ω) Jₙ²(Ã)"""
    return 2 * math.pi * g ** 2 / Omega * bessel_j(n, a_tilde) ** 2


def mirror_formula(g: float, Omega: float, n: int, mirror_phase: float, a_tilde: float) -> float:
    """P̄ₙ = (8πg²/Ω) sin²(kz₀ − πn/2) Jₙ²(Ã)"""
    node = math.sin(mirror_phase - math.pi * n / 2) ** 2
    return 8 * math.pi * g ** 2 / Omega * node * bessel_j(n, a_tilde) ** 2


def small_amplitude_formula(amplitude: float, alpha: float, Omega: float) -> float:
    """Termo dominante de (2πg²/Ω)J₁²(Ã) com g = αΩ/2 e Ã = ΩA/(2c): πα²A²Ω³/(32c²)"""
    return math.pi * (alpha * amplitude) ** 2 * Omega ** 3 / (32 * CONSTANTS.c ** 2)


def mirror_rate(atom: AtomParams, motion, geom: Mirror, n: int) -> Sideband:
    """
    Taxa de emissão com excitação diante de um espelho em z₀.
    Vale para oscilação perpendicular, paralela (k_y A, k_z z₀) e rotação (R no lugar de A).
    """
    if not isinstance(motion, (SHOMotion, RotationMotion)):
        raise DomainException("Trajetórias gerais exigem o oráculo (general_trajectory_spectrum)")
    ensure_clearance(motion, geom)

    omega = photon_frequency(atom, motion.Omega, n)
    phase, a_tilde = mirror_projection(motion, wavenumber(omega), geom.z0)
    rate = mirror_formula(atom.g, motion.Omega, n, phase, a_tilde)
    return Sideband(n=n, omega=omega, rate=rate, a_tilde=a_tilde)


def free_space_rate(atom: AtomParams, motion: SHOMotion, n: int) -> Sideband:
    """Taxa no vácuo livre: P̄ₙ = (2πg²/Ω) Jₙ²((nΩ − ω₀)A/c)"""
    if not isinstance(motion, SHOMotion):
        raise DomainException("Fórmula fechada do espaço livre exige oscilação harmônica")

    omega = photon_frequency(atom, motion.Omega, n)
    a_tilde = wavenumber(omega) * motion.amplitude
    rate = free_space_formula(atom.g, motion.Omega, n, a_tilde)
    return Sideband(n=n, omega=omega, rate=rate, a_tilde=a_tilde)


def cavity_mode_frequency(geom: Cavity, m: int) -> float:
    """ω_m = πmc/L (espelhos perfeitos nas duas pontas)"""
    return math.pi * m * CONSTANTS.c / geom.length


def cavity_rate(
    atom: AtomParams,
    motion: SHOMotion,
    geom: Cavity,
    n: int,
    m: int,
    branch: Branch = Branch.EMIT_EXCITE,
) -> Sideband:
    """
    Taxa na cavidade com N fótons no modo m:
    P̄ = (8πχg²/Ω) sin²(πmz₀/L − πn/2) Jₙ²(πmA/L), χ₊ = N+1 e χ₋ = N.
    """
    if not isinstance(motion, SHOMotion) or motion.orientation is not Orientation.PERPENDICULAR:
        raise DomainException("Cavidade unidimensional exige oscilação perpendicular aos espelhos")
    n = check_index("n", n)
    m = check_index("m", m)
    branch = Branch(branch)
    ensure_clearance(motion, geom)

    omega = cavity_mode_frequency(geom, m)
    if branch is Branch.EMIT_EXCITE:
        target, chi = omega + atom.omega0, geom.photons + 1
    else:
        target, chi = atom.omega0 - omega, geom.photons

    mismatch = n * motion.Omega - target
    if abs(mismatch) > settings.resonance_tol * motion.Omega:
        raise OffResonanceException(
            f"Ressonância violada para (n={n}, m={m}, {branch.value}): "
            f"nΩ − alvo = {mismatch:.6e} rad/s",
            mismatch=mismatch,
        )

    k = math.pi * m / geom.length
    a_tilde = k * motion.amplitude
    # χ multiplica uma taxa base que não depende de N
    base = mirror_formula(atom.g, motion.Omega, n, k * geom.z0, a_tilde)
    return Sideband(n=n, omega=omega, rate=chi * base, branch=branch, m=m, a_tilde=a_tilde)


def resonant_cavity_modes(atom: AtomParams, Omega: float, geom: Cavity, n: int) -> List[Tuple[int, Branch]]:
    """
    Modos (m, ramo) que satisfazem a ressonância para a banda n.
    O ramo de absorção só entra quando há fótons (N > 0).
    """
    candidates = [(n * Omega - atom.omega0, Branch.EMIT_EXCITE)]
    if geom.photons > 0:
        candidates.append((atom.omega0 - n * Omega, Branch.ABSORB_DEEXCITE))

    modes = []
    for omega, branch in candidates:
        if omega <= 0:
            continue
        m = round(omega * geom.length / (math.pi * CONSTANTS.c))
        if m < 1:
            continue
        if abs(cavity_mode_frequency(geom, m) - omega) <= settings.resonance_tol * Omega:
            modes.append((m, branch))
    return modes


def allowed_sidebands(atom: AtomParams, motion, geom, n_max: int) -> List[Sideband]:
    """
    Todas as bandas n ∈ [1, n_max] com fóton de frequência positiva.
    Na cavidade, só os pares (n, m) ressonantes.
    """
    n_max = check_index("n_max", n_max)
    if isinstance(motion, GeneralPeriodicMotion):
        raise DomainException("Trajetórias gerais exigem o oráculo (general_trajectory_spectrum)")

    sidebands = []
    for n in range(1, n_max + 1):
        if isinstance(geom, Cavity):
            for m, branch in resonant_cavity_modes(atom, motion.Omega, geom, n):
                sidebands.append(cavity_rate(atom, motion, geom, n, m, branch))
            continue

        if n * motion.Omega - atom.omega0 <= 0:
            continue
        if isinstance(geom, FreeSpace):
            sidebands.append(free_space_rate(atom, motion, n))
        else:
            sidebands.append(mirror_rate(atom, motion, geom, n))
    return sidebands


def sideband_rate(
    atom: AtomParams,
    motion,
    geom,
    n: int,
    m: Optional[int] = None,
    branch: Branch = Branch.EMIT_EXCITE,
) -> List[Sideband]:
    """
    Taxa de uma única banda n na geometria dada.
    Na cavidade sem m explícito, usa os modos ressonantes encontrados.
    """
    if isinstance(geom, FreeSpace):
        return [free_space_rate(atom, motion, n)]
    if isinstance(geom, Mirror):
        return [mirror_rate(atom, motion, geom, n)]

    if m is not None:
        return [cavity_rate(atom, motion, geom, n, m, branch)]
    modes = resonant_cavity_modes(atom, motion.Omega, geom, n)
    if not modes:
        raise OffResonanceException(
            f"Nenhum modo da cavidade ressoa com a banda n={n}",
            mismatch=float("nan"),
        )
    return [cavity_rate(atom, motion, geom, n, mode, mode_branch) for mode, mode_branch in modes]


def small_amplitude_rate(atom: AtomParams, motion: SHOMotion) -> float:
    """
    Estimativa de pequena amplitude para o circuito cQED, com ω₀ = Ω/2:
    P̄₁ ≈ πα²A²Ω³/(32c²), válida para Ã = (Ω − ω₀)A/c < 0.1.
    """
    if atom.alpha is None:
        raise DomainException("Estimativa de pequena amplitude exige α (g = αω₀)")
    if not isinstance(motion, SHOMotion):
        raise DomainException("Estimativa de pequena amplitude exige oscilação harmônica")

    half = motion.Omega / 2
    if abs(atom.omega0 - half) > 1e-12 * half:
        raise DomainException(f"Exige ω₀ = Ω/2: ω₀={atom.omega0!r}, Ω/2={half!r}")

    a_tilde = (motion.Omega - atom.omega0) * motion.amplitude / CONSTANTS.c
    if a_tilde >= SMALL_AMPLITUDE_LIMIT:
        raise ApproximationDomainException(
            f"Ã = {a_tilde:.4g} fora do domínio da aproximação (Ã < {SMALL_AMPLITUDE_LIMIT})"
        )
    return small_amplitude_formula(motion.amplitude, atom.alpha, motion.Omega)

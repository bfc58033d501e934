# Exporta os tipos de domínio para importação mais fácil
from .atom import AtomParams
from .motion import (
    Orientation,
    SHOMotion,
    RotationMotion,
    GeneralPeriodicMotion,
    MotionProfile,
)
from .geometry import FreeSpace, Mirror, Cavity, Geometry, clearance_violation
from .sideband import Branch, Sideband
from .numerics import AccuracyBudget, QuadratureConfig
from .oracle import Propagation, OracleResult, SuiteReport
from .sweep import SweepAxis, SweepGrid, SweepResult

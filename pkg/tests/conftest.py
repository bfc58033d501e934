import pytest

from app.schemas import AtomParams, FreeSpace
from tests.helpers import OMEGA0


@pytest.fixture
def unit_atom() -> AtomParams:
    return AtomParams(omega0=OMEGA0, g=1.0)


@pytest.fixture
def free_space() -> FreeSpace:
    return FreeSpace()


@pytest.fixture
def cqed_config_text() -> str:
    # Circuito cQED: Ω/2π = 10 GHz, ω₀ = Ω/2, α = 0.2, A = 1 nm
    return "\n".join([
        "# átomo",
        "atom__omega0_hz=5e9",
        "atom__alpha=0.2",
        "# movimento",
        "motion__kind=sho",
        "motion__omega_hz=1e10",
        "motion__amplitude=1 nm",
        "# geometria",
        "geometry__kind=free",
        "",
    ])

import math

import pytest

from app.schemas import Cavity, GeneralPeriodicMotion, Mirror, Orientation, SHOMotion
from app.schemas.run_config import RunConfig
from app.services import rate_service
from app.services.exceptions import ConfigException


def test_loads_builds_internal_units(cqed_config_text):
    atom, motion, geom = RunConfig.loads(cqed_config_text).build()
    assert atom.omega0 == pytest.approx(2 * math.pi * 5e9)
    assert atom.g == pytest.approx(0.2 * 2 * math.pi * 5e9)
    assert motion.Omega == pytest.approx(2 * math.pi * 1e10)
    assert motion.amplitude == pytest.approx(1e-9)
    assert geom.kind == "free"


def test_round_trip(cqed_config_text):
    config = RunConfig.loads(cqed_config_text + "sweep__preset=fig3\nverify=true\nseed=11\n")
    assert RunConfig.loads(config.dumps()) == config


def test_round_trip_with_awkward_floats():
    text = "\n".join([
        "atom__omega0_hz=4.1e9",
        "atom__g_hz=123456789.123",
        "motion__kind=sho",
        "motion__omega_hz=9.87654321e9",
        "motion__amplitude=0.1 nm",
        "motion__orientation=parallel",
        "motion__delta=0.3",
        "geometry__kind=mirror",
        "geometry__z0=3 nm",
        "output__format=json",
        "n_max=7",
    ])
    config = RunConfig.loads(text)
    again = RunConfig.loads(config.dumps())
    assert again == config
    assert again.dumps() == config.dumps()


def test_round_trip_general_samples():
    samples = ",".join(repr(1e-9 * math.sin(2 * math.pi * j / 16)) for j in range(16))
    text = f"atom__omega0_hz=5e9\natom__alpha=0.1\nmotion__kind=general\nmotion__omega_hz=1e10\nmotion__samples={samples}\n"
    config = RunConfig.loads(text)
    assert isinstance(config.motion.build(), GeneralPeriodicMotion)
    assert RunConfig.loads(config.dumps()) == config


def test_cavity_block():
    text = "atom__omega0_hz=1e9\natom__g_hz=1e7\nmotion__omega_hz=2e9\nmotion__amplitude=1 um\ngeometry__kind=cavity\ngeometry__length=0.1\ngeometry__z0=3 mm\ngeometry__photons=2\n"
    _, motion, geom = RunConfig.loads(text).build()
    assert isinstance(geom, Cavity)
    assert (geom.length, geom.photons) == (0.1, 2)
    assert geom.z0 == pytest.approx(3e-3)
    assert motion.amplitude == pytest.approx(1e-6)


def test_mirror_collision_is_rejected_with_config_error(cqed_config_text):
    text = cqed_config_text.replace("geometry__kind=free", "geometry__kind=mirror\ngeometry__z0=0.5 nm")
    with pytest.raises(ConfigException):
        RunConfig.loads(text)


def test_diagnostics_name_line_and_field(cqed_config_text):
    text = cqed_config_text.replace("motion__omega_hz=1e10", "motion__omega_hz=-1e10")
    with pytest.raises(ConfigException) as exc:
        RunConfig.loads(text)
    assert exc.value.field == "motion__omega_hz"
    assert exc.value.line == 6


def test_unknown_field_is_reported(cqed_config_text):
    with pytest.raises(ConfigException) as exc:
        RunConfig.loads(cqed_config_text + "motion__speed=3\n")
    assert exc.value.field == "motion__speed"
    assert exc.value.line == 10


def test_bad_length_unit(cqed_config_text):
    with pytest.raises(ConfigException) as exc:
        RunConfig.loads(cqed_config_text.replace("1 nm", "1 furlong"))
    assert exc.value.field == "motion__amplitude"


def test_coupling_must_be_given_once():
    with pytest.raises(ConfigException) as exc:
        RunConfig.loads("atom__omega0_hz=5e9\natom__alpha=0.2\natom__g_hz=1e9\nmotion__omega_hz=1e10\n")
    assert exc.value.line == 1


def test_missing_sections_fail_on_build():
    with pytest.raises(ConfigException):
        RunConfig.loads("seed=3\n").build()


def test_nested_key_too_deep():
    with pytest.raises(ConfigException) as exc:
        RunConfig.loads("seed=1\nmotion__x__y=2\n")
    assert exc.value.line == 2


def test_with_values_revalidates(cqed_config_text):
    config = RunConfig.loads(cqed_config_text)
    updated = config.with_values({"motion.amplitude": 2e-9, "atom.alpha": 0.3})
    assert updated.motion.amplitude == 2e-9
    assert updated.atom.alpha == 0.3
    with pytest.raises(ConfigException):
        config.with_values({"motion.omega_hz": -1.0})


def test_hz_config_matches_rad_per_second_library(cqed_config_text):
    atom, motion, geom = RunConfig.loads(cqed_config_text).build()
    from_config = rate_service.free_space_rate(atom, motion, 1).rate

    Omega = 1e10 * 2 * math.pi
    direct_atom = type(atom).from_alpha(5e9 * 2 * math.pi, 0.2)
    direct = rate_service.free_space_rate(direct_atom, SHOMotion(amplitude=1e-9, Omega=Omega), 1).rate
    assert abs(from_config - direct) <= 1e-12 * direct


def test_parallel_orientation_parses():
    text = "atom__omega0_hz=5e9\natom__alpha=0.2\nmotion__omega_hz=1e10\nmotion__amplitude=2 nm\nmotion__orientation=parallel\nmotion__delta=0.5\ngeometry__kind=mirror\ngeometry__z0=1 nm\n"
    _, motion, geom = RunConfig.loads(text).build()
    assert motion.orientation is Orientation.PARALLEL
    assert isinstance(geom, Mirror)

import io
import re
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from dotenv import dotenv_values
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    ValidationError,
    model_validator,
)

from app.core.units import hz_to_rad_per_sec, parse_length
from app.schemas.atom import AtomParams
from app.schemas.geometry import Cavity, FreeSpace, Mirror, clearance_violation
from app.schemas.motion import GeneralPeriodicMotion, Orientation, RotationMotion, SHOMotion
from app.services.exceptions import ConfigException

SECTION_SEPARATOR = "__"


def _parse_samples(value: Any) -> Any:
    # "0.0, 1e-9, ..." → [0.0, 1e-9, ...]
    if isinstance(value, str):
        return [parse_length(item) for item in value.split(",") if item.strip()]
    return value


def _parse_optional_length(value: Any) -> Any:
    if value is None or value == "":
        return None
    return parse_length(value)


Length = Annotated[float, BeforeValidator(parse_length)]
OptionalLength = Annotated[Optional[float], BeforeValidator(_parse_optional_length)]


class AtomBlock(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    omega0_hz: float = Field(..., gt=0, description="Transição ω₀/2π (Hz)")
    g_hz: Optional[float] = Field(default=None, gt=0, description="Acoplamento g/2π (Hz)")
    alpha: Optional[float] = Field(default=None, gt=0, description="g = α·ω₀")

    @model_validator(mode="after")
    def check_single_coupling(self):
        if (self.g_hz is None) == (self.alpha is None):
            raise ValueError("Informe exatamente um entre g_hz e alpha")
        return self

    def build(self) -> AtomParams:
        omega0 = hz_to_rad_per_sec(self.omega0_hz)
        if self.alpha is not None:
            return AtomParams.from_alpha(omega0, self.alpha)
        return AtomParams(omega0=omega0, g=hz_to_rad_per_sec(self.g_hz))


class MotionBlock(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    kind: Literal["sho", "rotation", "general"] = "sho"
    omega_hz: float = Field(..., gt=0, description="Frequência mecânica Ω/2π (Hz)")
    amplitude: Length = Field(default=0.0, ge=0)
    radius: Length = Field(default=0.0, ge=0)
    orientation: Orientation = Orientation.PERPENDICULAR
    delta: float = 0.0
    phase: float = 0.0
    samples: Annotated[Optional[List[float]], BeforeValidator(_parse_samples)] = None

    def build(self) -> Union[SHOMotion, RotationMotion, GeneralPeriodicMotion]:
        Omega = hz_to_rad_per_sec(self.omega_hz)
        if self.kind == "sho":
            return SHOMotion(
                amplitude=self.amplitude,
                Omega=Omega,
                orientation=self.orientation,
                delta=self.delta,
                phase=self.phase,
            )
        if self.kind == "rotation":
            return RotationMotion(radius=self.radius, Omega=Omega, delta=self.delta)
        return GeneralPeriodicMotion(Omega=Omega, samples=self.samples or [])


class GeometryBlock(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    kind: Literal["free", "mirror", "cavity"] = "free"
    z0: OptionalLength = None
    length: OptionalLength = None
    photons: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def check_required(self):
        if self.kind in ("mirror", "cavity") and self.z0 is None:
            raise ValueError(f"Geometria '{self.kind}' exige z0")
        if self.kind == "cavity" and self.length is None:
            raise ValueError("Geometria 'cavity' exige length")
        return self

    def build(self) -> Union[FreeSpace, Mirror, Cavity]:
        if self.kind == "mirror":
            return Mirror(z0=self.z0)
        if self.kind == "cavity":
            return Cavity(length=self.length, z0=self.z0, photons=self.photons)
        return FreeSpace()


class SweepBlock(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    preset: Literal["fig2", "fig3", "custom"] = "fig2"
    normalization: Literal["prefactor_omitted", "absolute_hz"] = "prefactor_omitted"
    axis1: Optional[str] = None
    axis1_min: Optional[float] = None
    axis1_max: Optional[float] = None
    axis1_points: Optional[int] = Field(default=None, ge=1)
    axis2: Optional[str] = None
    axis2_min: Optional[float] = None
    axis2_max: Optional[float] = None
    axis2_points: Optional[int] = Field(default=None, ge=1)
    n: int = Field(default=1, ge=1, description="Banda reportada na varredura custom")
    omega_hz: Optional[float] = Field(default=None, gt=0, description="Ω/2π do preset fig3")

    @model_validator(mode="after")
    def check_custom_axes(self):
        if self.preset == "custom":
            missing = [
                name for name in ("axis1", "axis1_min", "axis1_max", "axis2", "axis2_min", "axis2_max")
                if getattr(self, name) is None
            ]
            if missing:
                raise ValueError(f"Varredura custom exige: {', '.join(missing)}")
        return self


class OutputBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    path: Optional[str] = None
    format: Literal["csv", "json"] = "csv"


class RunConfig(BaseModel):
    """Arquivo chave=valor (dotenv) com seções atom__, motion__, geometry__...; frequências em Hz"""
    model_config = ConfigDict(extra="forbid")

    atom: Optional[AtomBlock] = None
    motion: Optional[MotionBlock] = None
    geometry: GeometryBlock = Field(default_factory=GeometryBlock)
    sweep: Optional[SweepBlock] = None
    output: OutputBlock = Field(default_factory=OutputBlock)
    verify: bool = False
    seed: int = 0
    n_max: int = Field(default=10, ge=1)

    @model_validator(mode="after")
    def check_clearance(self):
        # O átomo não pode atingir o espelho (0 < A < z₀)
        if self.motion is None:
            return self
        try:
            motion, geometry = self.motion.build(), self.geometry.build()
        except ValidationError as e:
            raise ValueError(e.errors()[0]["msg"])
        message = clearance_violation(motion, geometry)
        if message:
            raise ValueError(message)
        return self

    def build(self) -> Tuple[AtomParams, Any, Any]:
        """Constrói (átomo, movimento, geometria) em unidades internas."""
        missing = [name for name in ("atom", "motion") if getattr(self, name) is None]
        if missing:
            raise ConfigException(
                f"Seções obrigatórias ausentes: {', '.join(missing)}",
                field=missing[0],
            )
        return self.atom.build(), self.motion.build(), self.geometry.build()

    def with_values(self, updates: Dict[str, Any]) -> "RunConfig":
        """Cópia revalidada com campos trocados por nome pontuado ("motion.amplitude")."""
        data = self.model_dump(mode="json", exclude_none=True)
        for dotted, value in updates.items():
            section, _, name = dotted.partition(".")
            target = data.setdefault(section, {}) if name else data
            target[name or section] = value
        try:
            return RunConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigException(f"Valores inválidos na varredura: {e.errors()[0]['msg']}")

    # Serialização no formato dotenv

    def dumps(self) -> str:
        lines = []
        data = self.model_dump(mode="json", exclude_none=True)
        for key, value in data.items():
            if isinstance(value, dict):
                lines.append(f"# {key}")
                for name, item in value.items():
                    lines.append(f"{key}{SECTION_SEPARATOR}{name}={_format_value(item)}")
            else:
                lines.append(f"{key}={_format_value(value)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "RunConfig":
        values = dotenv_values(stream=io.StringIO(text))
        nested: Dict[str, Any] = {}

        for key, raw in values.items():
            if raw is None:
                raise ConfigException(
                    f"Linha sem valor: '{key}'",
                    line=_find_line(text, key),
                    field=key,
                )
            parts = key.lower().split(SECTION_SEPARATOR)
            if len(parts) == 1:
                nested[parts[0]] = raw
            elif len(parts) == 2:
                nested.setdefault(parts[0], {})[parts[1]] = raw
            else:
                raise ConfigException(
                    f"Chave inválida '{key}': use secao{SECTION_SEPARATOR}campo",
                    line=_find_line(text, key),
                    field=key,
                )

        try:
            return cls.model_validate(nested)
        except ValidationError as e:
            error = e.errors()[0]
            loc = [str(part) for part in error["loc"] if isinstance(part, str)]
            field = SECTION_SEPARATOR.join(loc[:2]) if loc else None
            line = _find_line(text, field) if field else None
            where = f" (linha {line})" if line else ""
            raise ConfigException(
                f"Campo '{field or '-'}'{where}: {error['msg']}",
                line=line,
                field=field,
            )

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as handle:
                return cls.loads(handle.read())
        except OSError as e:
            raise ConfigException(f"Não foi possível ler a configuração '{path}': {e}")


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return ",".join(_format_value(float(item)) for item in value)
    return str(value)


def _find_line(text: str, key: Optional[str]) -> Optional[int]:
    # Primeira linha cuja chave é `key` ou começa pela seção `key`
    if not key:
        return None
    pattern = re.compile(rf"^\s*(export\s+)?{re.escape(key)}(\s*=|{SECTION_SEPARATOR})", re.IGNORECASE)
    for number, line in enumerate(text.splitlines(), start=1):
        if pattern.match(line):
            return number
    return None

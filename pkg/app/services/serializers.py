import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence

from app.core.logger_config import logger
from app.core.units import rad_per_sec_to_hz
from app.schemas.oracle import SuiteReport
from app.schemas.sideband import Sideband
from app.schemas.sweep import SweepResult
from app.services.exceptions import ConfigException

FORMATS = ("csv", "json")

SIDEBAND_COLUMNS = ["n", "m", "branch", "omega_rad_s", "omega_hz", "a_tilde", "rate_hz", "oracle_rate_hz"]
REPORT_COLUMNS = ["name", "cases", "max_deviation", "tolerance", "passed", "details"]


def format_number(value: Optional[float]) -> str:
    """Menor representação decimal que reconstrói o float (repr), no CSV e no JSON"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _write_csv(rows: Sequence[Sequence[Any]], header: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell if isinstance(cell, str) else format_number(cell) for cell in row])
    return buffer.getvalue()


def _dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _sideband_record(line: Sideband) -> Dict[str, Any]:
    return {
        "n": line.n,
        "m": line.m,
        "branch": line.branch.value,
        "omega_rad_s": line.omega,
        "omega_hz": rad_per_sec_to_hz(line.omega),
        "a_tilde": line.a_tilde,
        "rate_hz": line.rate,
        "oracle_rate_hz": line.oracle_rate,
    }


def sidebands_to_csv(lines: List[Sideband]) -> str:
    records = [_sideband_record(line) for line in lines]
    return _write_csv([[record[col] for col in SIDEBAND_COLUMNS] for record in records], SIDEBAND_COLUMNS)


def sidebands_to_json(lines: List[Sideband]) -> str:
    return _dump_json({"sidebands": [_sideband_record(line) for line in lines]})


def sweep_to_csv(result: SweepResult) -> str:
    """Matriz em ordem de linha: primeira coluna é axis1, cabeçalho traz axis2."""
    axis1, axis2 = result.grid.axis1, result.grid.axis2
    header = [f"{axis1.name}\\{axis2.name}"] + [format_number(value) for value in axis2.values]
    rows = [[value] + row for value, row in zip(axis1.values, result.values)]
    return _write_csv(rows, header)


def sweep_to_json(result: SweepResult) -> str:
    return _dump_json(result.model_dump(mode="json", exclude_none=True))


def reports_to_csv(reports: List[SuiteReport]) -> str:
    rows = [
        [report.name, report.cases, report.max_deviation, report.tolerance, report.passed, report.details or ""]
        for report in reports
    ]
    return _write_csv(rows, REPORT_COLUMNS)


def reports_to_json(reports: List[SuiteReport]) -> str:
    return _dump_json({
        "passed": all(report.passed for report in reports),
        "suites": [report.model_dump(mode="json") for report in reports],
    })


_WRITERS = {
    "sidebands": (sidebands_to_csv, sidebands_to_json),
    "sweep": (sweep_to_csv, sweep_to_json),
    "reports": (reports_to_csv, reports_to_json),
}


def render(kind: str, payload: Any, fmt: str = "csv") -> str:
    if fmt not in FORMATS:
        raise ConfigException(f"Formato de saída desconhecido: '{fmt}'. Use csv ou json", field="output__format")
    to_csv, to_json = _WRITERS[kind]
    return to_csv(payload) if fmt == "csv" else to_json(payload)


def write_output(text: str, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as e:
        logger.error(f"Falha ao gravar {path}: {e}")
        raise ConfigException(f"Não foi possível gravar a saída em '{path}': {e.strerror or e}", field="output")
    logger.info(f"Saída gravada em {path}")

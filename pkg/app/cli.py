from typing import Callable, Optional

import click
from pydantic import ValidationError

from app import __version__
from app.core.logger_config import logger
from app.schemas.run_config import RunConfig
from app.schemas.sideband import Branch
from app.services import oracle_service, serializers, sweep_service
from app.services.exceptions import (
    ConfigException,
    ConvergenceException,
    DomainException,
    IntegrityException,
)

# 0 sucesso, 2 configuração, 3 domínio físico, 4 integridade (oráculo, convergência)
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_INTEGRITY = 4


def _load_config(path: Optional[str], required: bool = True) -> RunConfig:
    if path is None:
        if required:
            raise ConfigException("Informe o arquivo de configuração com --config", field="config")
        return RunConfig()
    return RunConfig.from_file(path)


def _emit(kind: str, payload, config: RunConfig, fmt: Optional[str], output: Optional[str]) -> None:
    fmt = fmt or config.output.format
    text = serializers.render(kind, payload, fmt)
    path = output or config.output.path
    if path:
        serializers.write_output(text, path)
    else:
        click.echo(text, nl=False)


def _run(action: Callable[[], None]) -> None:
    """Executa a ação e traduz as exceções de serviço em códigos de saída."""
    ctx = click.get_current_context()
    try:
        action()
    except ConfigException as e:
        where = f" (linha {e.line})" if e.line else ""
        click.echo(f"Erro de configuração{where}: {e}", err=True)
        ctx.exit(EXIT_CONFIG)
    except ValidationError as e:
        click.echo(f"Erro de configuração: {e.errors()[0]['msg']}", err=True)
        ctx.exit(EXIT_CONFIG)
    except DomainException as e:
        click.echo(f"Erro de domínio: {e}", err=True)
        ctx.exit(EXIT_DOMAIN)
    except (IntegrityException, ConvergenceException) as e:
        logger.error(f"Falha de integridade: {e}")
        click.echo(f"Falha de integridade: {e}", err=True)
        ctx.exit(EXIT_INTEGRITY)


def common_options(func):
    func = click.option("--seed", type=int, default=None, help="Semente das verificações aleatórias")(func)
    func = click.option("--n-max", "n_max", type=click.IntRange(min=1), default=None, help="Maior banda lateral")(func)
    func = click.option("--verify", is_flag=True, default=False, help="Confere cada taxa pelo oráculo")(func)
    func = click.option("--format", "fmt", type=click.Choice(serializers.FORMATS), default=None)(func)
    func = click.option("--output", type=click.Path(dir_okay=False), default=None, help="Arquivo de saída")(func)
    func = click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None)(func)
    return func


@click.group()
@click.version_option(__version__, prog_name="radiacao")
def cli():
    """Taxas de emissão de fótons por átomos em movimento periódico."""


@cli.command()
@common_options
@click.option("--n", "n", type=click.IntRange(min=1), default=1, show_default=True, help="Índice da banda")
@click.option("--m", "m", type=click.IntRange(min=1), default=None, help="Modo da cavidade")
@click.option("--branch", type=click.Choice([b.value for b in Branch]), default=Branch.EMIT_EXCITE.value)
def rate(config_path, output, fmt, verify, n_max, seed, n, m, branch):
    """Taxa de uma banda lateral."""
    def action():
        config = _load_config(config_path)
        atom, motion, geom = config.build()
        lines = sweep_service.rate_lines(atom, motion, geom, n, m, Branch(branch), verify=verify or config.verify)
        _emit("sidebands", lines, config, fmt, output)

    _run(action)


@cli.command()
@common_options
def spectrum(config_path, output, fmt, verify, n_max, seed):
    """Espectro de bandas laterais até n_max."""
    def action():
        config = _load_config(config_path)
        atom, motion, geom = config.build()
        lines = sweep_service.spectrum(atom, motion, geom, n_max or config.n_max, verify=verify or config.verify)
        _emit("sidebands", lines, config, fmt, output)

    _run(action)


@cli.command()
@common_options
@click.option("--preset", type=click.Choice(["fig2", "fig3", "custom"]), default=None)
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Threads da varredura")
def sweep(config_path, output, fmt, verify, n_max, seed, preset, workers):
    """Superfícies das presets fig2 e fig3 ou varredura custom."""
    def action():
        config = _load_config(config_path, required=False)
        result = sweep_service.surface_from_config(config, preset, workers=workers)
        _emit("sweep", result, config, fmt, output)

    _run(action)


@cli.command()
@common_options
@click.option("--draws", type=click.IntRange(min=1), default=200, show_default=True)
def oracle(config_path, output, fmt, verify, n_max, seed, draws):
    """Baterias de verificação: regra de seleção e equivalência oráculo-fórmula."""
    def action():
        config = _load_config(config_path, required=False)
        reports = [
            oracle_service.run_selection_rule_suite(),
            oracle_service.run_equivalence_suite(seed=config.seed if seed is None else seed, draws=draws),
        ]
        _emit("reports", reports, config, fmt, output)
        failed = [report.name for report in reports if not report.passed]
        if failed:
            raise IntegrityException(f"Baterias reprovadas: {', '.join(failed)}")

    _run(action)


if __name__ == "__main__":
    cli()

"""
Superficie de línea de comandos del arnés de experimentos.

Códigos de salida: 0 éxito, 1 fallo de ejecución, 2 error de uso o de configuración.
"""
import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from domain.entities.extrapolation import ExtrapolationModel
from domain.repositories.experiment_config_repository import ExperimentConfigError, ExperimentConfigRepository
from domain.repositories.hamiltonian_repository import HamiltonianFormatError
from domain.repositories.noise_model_repository import NoiseModelFormatError, NoiseModelNotFoundError
from domain.schemas import ExperimentMode, FoldMode, MitigatedTerms
from domain.services.operator_service import DenominatorTooSmallError
from domain.services.simulation_configuration import SimulationConfiguration
from use_cases import (
    ExactReferenceUseCase,
    ExperimentFailedError,
    RunExtrapolationDemoUseCase,
    RunResidueLandscapeUseCase,
    RunTrajectoryUseCase,
    ValidateInvariantsUseCase,
    prepare_experiment,
)
import logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USE_CASES = {
    ExperimentMode.TRAJECTORY: RunTrajectoryUseCase,
    ExperimentMode.EXTRAPOLATION_DEMO: RunExtrapolationDemoUseCase,
    ExperimentMode.RESIDUE_LANDSCAPE: RunResidueLandscapeUseCase,
    ExperimentMode.EXACT_REFERENCE: ExactReferenceUseCase,
}

CONFIG_ERRORS = (
    ValidationError,
    ExperimentConfigError,
    HamiltonianFormatError,
    NoiseModelNotFoundError,
    NoiseModelFormatError,
    DenominatorTooSmallError,
    FileNotFoundError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zne-pqe",
        description="Eigensolver proyectivo sobre un dispositivo ruidoso simulado con extrapolación a ruido cero.",
    )
    parser.add_argument("--config", help="Archivo INI de experimento; las opciones de la línea de comandos lo sobrescriben")
    parser.add_argument("--mode", choices=[m.value for m in ExperimentMode])
    parser.add_argument("--hamiltonian", help="Archivo de Hamiltoniano de qubits")
    parser.add_argument("--noise", help="Preset (none, nisq-light) o archivo INI con sección [noise]")
    parser.add_argument("--mitigation", choices=["none", "zne"])
    parser.add_argument("--model", choices=[m.value for m in ExtrapolationModel])
    parser.add_argument("--schedule", help="Factores de escala separados por comas, p. ej. 1,2,3")
    parser.add_argument("--asymptote", type=float)
    parser.add_argument("--fold-mode", choices=[m.value for m in FoldMode])
    parser.add_argument("--mitigated-terms", choices=[m.value for m in MitigatedTerms])
    parser.add_argument("--models", help="Modelos de la demostración separados por comas")
    parser.add_argument("--shots", type=int, help="Disparos por cadena de Pauli (0 = traza exacta; por defecto 8192)")
    parser.add_argument("--repeats", type=int, help="Repeticiones promediadas por medición (por defecto 5)")
    parser.add_argument("--ensemble", type=int, help="Corridas independientes (por defecto 50)")
    parser.add_argument("--seed", type=int, help="Semilla base")
    parser.add_argument("--threshold", type=float, help="Umbral de convergencia de ‖r‖₂ (por defecto 1e-5)")
    parser.add_argument("--max-iter", type=int, help="Máximo de iteraciones (por defecto 50)")
    parser.add_argument("--jobs", type=int, help="Procesos en paralelo para el ensamble")
    parser.add_argument("--out", help="Directorio de salida")
    parser.add_argument("--theta", help="θ fijo separado por comas")
    parser.add_argument("--param-index", type=int, help="Parámetro barrido en residue_landscape")
    parser.add_argument("--grid", help="start,stop,points del barrido alrededor de θ*")
    parser.add_argument("--evaluations", type=int, help="Evaluaciones de ‖r‖ por punto del barrido")
    parser.add_argument("--no-baselines", action="store_true", help="Omitir las líneas base sin ruido y sin mitigar")
    parser.add_argument("--validate", action="store_true", help="Ejecuta la batería de invariantes y sale")
    parser.add_argument("--log-level", default="INFO", help="Nivel de log (DEBUG, INFO, WARNING, ...)")
    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Raises:
        ExperimentConfigError: Si --grid no tiene la forma start,stop,points
    """
    overrides: Dict[str, Any] = {
        "mode": args.mode,
        "hamiltonian_path": args.hamiltonian,
        "noise": args.noise,
        "mitigation": args.mitigation,
        "zne.model": args.model,
        "zne.schedule": args.schedule,
        "zne.asymptote": args.asymptote,
        "zne.fold_mode": args.fold_mode,
        "mitigated_terms": args.mitigated_terms,
        "demo_models": args.models,
        "shots": args.shots,
        "repeats": args.repeats,
        "ensemble": args.ensemble,
        "seed": args.seed,
        "threshold": args.threshold,
        "max_iterations": args.max_iter,
        "jobs": args.jobs,
        "out_dir": args.out,
        "theta": args.theta,
        "param_index": args.param_index,
        "landscape_evaluations": args.evaluations,
    }
    if args.no_baselines:
        overrides["baselines"] = False
    if args.grid:
        parts = [p.strip() for p in args.grid.split(",")]
        if len(parts) != 3:
            raise ExperimentConfigError(f"--grid espera start,stop,points, no '{args.grid}'")
        overrides.update({"grid_start": parts[0], "grid_stop": parts[1], "grid_points": parts[2]})
    return overrides


def run_validation(args: argparse.Namespace) -> int:
    problem = None
    if args.hamiltonian or args.config:
        context = prepare_experiment(_load_config(args))
        problem = context.problem
    checks = ValidateInvariantsUseCase(problem=problem, seed=args.seed or 0).execute()
    for check in checks:
        print(f"{'OK   ' if check.passed else 'FALLA'} {check.name} {check.detail}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILURE


def _load_config(args: argparse.Namespace):
    repository = ExperimentConfigRepository()
    raw = repository.read(args.config) if args.config else {}
    return repository.build(raw, overrides_from_args(args))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        SimulationConfiguration.from_environment()
        if args.validate:
            return run_validation(args)
        if not args.hamiltonian and not args.config:
            parser.print_usage(sys.stderr)
            print("zne-pqe: error: se requiere --hamiltonian o --config", file=sys.stderr)
            return EXIT_USAGE
        config = _load_config(args)
        context = prepare_experiment(config)
        report = USE_CASES[config.mode](context).execute()
    except CONFIG_ERRORS as e:
        logger.error(f"Error de configuración: {str(e)}")
        print(f"zne-pqe: error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    except ExperimentFailedError as e:
        logger.error(f"Experimento fallido: {str(e)}")
        print(f"zne-pqe: {str(e)}", file=sys.stderr)
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Error inesperado: {str(e)}")
        print(f"zne-pqe: error: {str(e)}", file=sys.stderr)
        return EXIT_FAILURE

    print(_format_report(report))
    return EXIT_OK


def _format_report(report) -> str:
    lines: List[str] = [f"modo: {report.mode}"]
    for key, value in report.headline.items():
        lines.append(f"{key}: {value:.12f}" if isinstance(value, float) else f"{key}: {value}")
    if report.files:
        lines.append(f"archivos: {len(report.files)} en {report.out_dir}")
    if report.failures:
        lines.append(f"corridas fallidas: {report.failures}/{report.total}")
    return "\n".join(lines)

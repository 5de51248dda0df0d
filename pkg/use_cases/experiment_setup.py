"""
Preparación común de los experimentos: carga de archivos, armado del problema,
configuraciones por variante de backend y ejecución paralela del ensamble.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pydantic
import scipy

from domain.entities.pqe_state import PQEProblem
from domain.repositories.hamiltonian_repository import HamiltonianFormatError, load_hamiltonian
from domain.repositories.noise_model_repository import PRESETS, load_noise_model
from domain.repositories.result_repository import ResultRepository
from domain.schemas import ExperimentConfig, ExperimentMode, NoiseModel, SolverConfig
from domain.services.exact_diagonalization_service import exact_ground_energy
from domain.services.operator_service import build_problem
from domain.services.simulation_configuration import SimulationConfiguration
from domain.services.simulator_service import QubitLimitExceededError
from utils.hashing import config_hash
import logging

logger = logging.getLogger(__name__)

PACKAGE_VERSION = "0.1.0"

VARIANT_ZNE = "zne"
VARIANT_UNMITIGATED = "unmitigated"
VARIANT_NOISELESS = "noiseless"


class ExperimentFailedError(RuntimeError):
    """Raised when too many ensemble members fail."""
    pass


@dataclass(frozen=True)
class ExperimentContext:
    """Todo lo que un caso de uso necesita saber de un experimento ya validado."""
    config: ExperimentConfig
    problem: PQEProblem
    noise_model: NoiseModel
    simulation: SimulationConfiguration
    config_hash: str
    exact_energy: Optional[float] = None

    @property
    def primary_variant(self) -> str:
        return VARIANT_ZNE if self.config.mitigation_config is not None else VARIANT_UNMITIGATED

    def variants(self) -> List[str]:
        """Variante principal primero y luego las líneas base pedidas."""
        variants = [self.primary_variant]
        if self.config.baselines:
            if self.primary_variant == VARIANT_ZNE:
                variants.append(VARIANT_UNMITIGATED)
            variants.append(VARIANT_NOISELESS)
        return variants

    def solver_config(self, variant: str) -> SolverConfig:
        """
        Raises:
            ValueError: Si la variante es desconocida
        """
        common = dict(
            convergence_threshold=self.config.threshold,
            max_iterations=self.config.max_iterations,
            denominator_floor=self.simulation.denominator_floor,
            max_qubits=self.simulation.max_qubits,
            mitigated_terms=self.config.mitigated_terms,
        )
        if variant == VARIANT_NOISELESS:
            return SolverConfig(shots=0, repeats=1, noise_model=PRESETS["none"], **common)
        if variant == VARIANT_UNMITIGATED:
            return SolverConfig(
                shots=self.config.shots, repeats=self.config.repeats, noise_model=self.noise_model, **common
            )
        if variant == VARIANT_ZNE:
            if self.config.mitigation_config is None:
                raise ValueError("La variante zne requiere mitigation = zne")
            return SolverConfig(
                shots=self.config.shots,
                repeats=self.config.repeats,
                noise_model=self.noise_model,
                mitigation=self.config.mitigation_config,
                **common,
            )
        raise ValueError(f"Variante de backend desconocida: {variant}")


@dataclass
class ExperimentReport:
    """Resultado de un caso de uso: archivos escritos y cifras principales."""
    mode: str
    out_dir: Path
    files: List[Path] = field(default_factory=list)
    headline: Dict[str, Any] = field(default_factory=dict)
    failures: int = 0
    total: int = 0


def prepare_experiment(config: ExperimentConfig, simulation: Optional[SimulationConfiguration] = None) -> ExperimentContext:
    """
    Carga Hamiltoniano y modelo de ruido y arma el problema PQE.

    Raises:
        HamiltonianFormatError: Si el archivo de Hamiltoniano es inválido
        NoiseModelNotFoundError: Si el modelo de ruido no existe
        DenominatorTooSmallError: Si algún denominador cae bajo el mínimo
    """
    simulation = simulation or SimulationConfiguration.from_environment()
    if "lambda_max" not in config.zne.model_fields_set:
        # el techo de λ del entorno solo aplica si la configuración no lo fija
        config = config.model_copy(update={"zne": config.zne.model_copy(update={"lambda_max": simulation.lambda_max})})
    loaded = load_hamiltonian(config.hamiltonian_path)
    noise_model = load_noise_model(config.noise)
    if loaded.orbital_energies:
        problem = build_problem(
            loaded.hamiltonian, loaded.reference, loaded.orbital_energies, simulation.denominator_floor
        )
    elif config.mode is ExperimentMode.EXACT_REFERENCE:
        # sin energías orbitales no hay denominadores; basta el Hamiltoniano
        problem = PQEProblem(loaded.hamiltonian, loaded.reference, (), (), (), ())
    else:
        raise HamiltonianFormatError(
            f"{config.hamiltonian_path}: faltan las energías orbitales (cabecera orbital_energies)"
        )
    try:
        exact = exact_ground_energy(problem.hamiltonian, simulation.max_qubits, electron_sector(problem))
    except QubitLimitExceededError as e:
        logger.warning(f"Sin energía exacta de referencia: {str(e)}")
        exact = None
    return ExperimentContext(
        config=config,
        problem=problem,
        noise_model=noise_model,
        simulation=simulation,
        config_hash=config_hash(config),
        exact_energy=exact,
    )


def run_members(worker: Callable[..., Any], arguments: Sequence[tuple], jobs: int = 1) -> List[Any]:
    """
    Ejecuta los miembros del ensamble con hasta `jobs` procesos.

    Los resultados vuelven en el orden de `arguments`.
    """
    if jobs <= 1 or len(arguments) <= 1:
        return [worker(*args) for args in arguments]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        futures = [executor.submit(worker, *args) for args in arguments]
        return [future.result() for future in futures]


def base_manifest(context: ExperimentContext) -> Dict[str, Any]:
    """Manifiesto sin tiempos de reloj: mismas entradas, mismos bytes."""
    return {
        "mode": context.config.mode.value,
        "config_hash": context.config_hash,
        "config": context.config,
        "noise_model": context.noise_model,
        "n_qubits": context.problem.n_qubits,
        "n_parameters": context.problem.n_parameters,
        "pool": [mu.label() for mu in context.problem.pool],
        "denominators": context.problem.denominators,
        "reference": context.problem.reference.bitstring(),
        "exact_energy": context.exact_energy,
        "base_seed": context.config.seed,
        "versions": {
            "zne-pqe": PACKAGE_VERSION,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "pydantic": pydantic.VERSION,
        },
    }


def check_failures(report: ExperimentReport, max_fraction: float):
    """
    Raises:
        ExperimentFailedError: Si la fracción de corridas fallidas supera el máximo
    """
    if report.total and report.failures / report.total > max_fraction:
        raise ExperimentFailedError(
            f"{report.failures} de {report.total} corridas fallaron (máximo permitido {max_fraction:.0%})"
        )


def result_repository(context: ExperimentContext) -> ResultRepository:
    return ResultRepository(context.config.out_dir)


def electron_sector(problem: PQEProblem) -> Optional[int]:
    """Número de electrones de la referencia; None (espacio completo) si no hay ocupación."""
    return problem.reference.n_electrons or None

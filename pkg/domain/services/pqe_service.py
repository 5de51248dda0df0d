"""
Motor PQE: medición de términos diagonales, ensamblado de residuos,
actualización cuasi-Newton, energía y barridos de la norma del residuo.
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np

from domain.entities.circuit import Circuit
from domain.entities.pqe_state import (
    DiagonalMeasurement,
    DiagonalTriple,
    PQEProblem,
    PQEState,
    PQETrajectory,
)
from domain.entities.pauli import PauliSum
from domain.schemas import FoldMode, MitigatedTerms, SolverConfig
from domain.services.circuit_compiler_service import (
    build_ansatz_circuit,
    build_excited_ansatz_circuit,
    build_omega_circuit,
    transpile,
)
from domain.services.operator_service import DenominatorTooSmallError
from domain.services.simulator_service import DensityMatrixSimulator
from domain.services.zne_service import ZNEEstimator
from utils.seeding import MEASUREMENT_STREAM, derive_rng
import logging

logger = logging.getLogger(__name__)

# etiquetas de término para las rutas de semillas
OMEGA_TERM = 0
EXCITED_TERM = 1
REFERENCE_TERM = 2


class NonFiniteResidueError(RuntimeError):
    """Raised when a residue is non-finite or exceeds the abort magnitude."""

    def __init__(self, message: str, iteration: int, states: Sequence[PQEState] = ()):
        super().__init__(message)
        self.iteration = iteration
        self.states = tuple(states)


class MeasurementBackend:
    """
    Backend de medición: transpila, simula con ruido y, si corresponde, mitiga con ZNE.

    Cada valor es la media de `repeats` estimaciones independientes con semillas
    derivadas de (semilla base, ruta, repetición).
    """

    def __init__(self, config: SolverConfig, hamiltonian: PauliSum, base_seed: int = 0):
        self.config = config
        self.hamiltonian = hamiltonian
        self.base_seed = base_seed
        self.simulator = DensityMatrixSimulator(config.noise_model, config.max_qubits)
        self.zne: Optional[ZNEEstimator] = None
        if config.mitigation is not None:
            self.zne = ZNEEstimator(self.simulator, config.mitigation, config.shots, config.repeats)

    @property
    def is_deterministic(self) -> bool:
        """Modo exacto sin aleatoriedad: trazas exactas sin ZNE aleatorio."""
        random_folds = self.zne is not None and self.zne.config.fold_mode is FoldMode.LOCAL_RANDOM
        return self.config.shots == 0 and not random_folds

    def measure(self, circuit: Circuit, path: Tuple[int, ...], mitigate: bool = True) -> DiagonalMeasurement:
        compiled = transpile(circuit)
        if self.zne is not None and mitigate:
            fit = self.zne.evaluate(compiled, self.hamiltonian, self.base_seed, path)
            spread = float(np.mean([p.std for p in fit.points])) if fit.points else 0.0
            return DiagonalMeasurement(value=fit.zero_noise_value, std=spread, fit=fit, circuit=compiled)
        values = [
            self.simulator.estimate_expectation(
                compiled,
                self.hamiltonian,
                self.config.shots,
                derive_rng(self.base_seed, MEASUREMENT_STREAM, *path, repeat),
            )
            for repeat in range(self.config.repeats)
        ]
        return DiagonalMeasurement(value=float(np.mean(values)), std=float(np.std(values)), circuit=compiled)


def compute_residue(triple: DiagonalTriple) -> float:
    """r_μ = D_Ω − D_μ/2 − D_o/2."""
    return triple.d_omega - 0.5 * triple.d_mu - 0.5 * triple.d_o


def quasi_newton_update(
    theta: Sequence[float],
    residues: Sequence[float],
    denominators: Sequence[float],
    floor: float = 1e-6,
) -> Tuple[float, ...]:
    """
    θ_μ ← θ_μ + r_μ/Δ_μ.

    Raises:
        ValueError: Si las longitudes no coinciden
        DenominatorTooSmallError: Si algún |Δ_μ| < floor
    """
    if not len(theta) == len(residues) == len(denominators):
        raise ValueError("θ, residuos y denominadores deben tener la misma longitud")
    for index, delta in enumerate(denominators):
        if abs(delta) < floor:
            raise DenominatorTooSmallError(f"Denominador |Δ_{index}| = {abs(delta):.3e} bajo el mínimo {floor:.1e}")
    return tuple(float(t + r / d) for t, r, d in zip(theta, residues, denominators))


def measure_reference_term(
    problem: PQEProblem,
    theta: Sequence[float],
    backend: MeasurementBackend,
    path: Tuple[int, ...] = (),
) -> DiagonalMeasurement:
    """D_o = ⟨Φ_o|Û†ĤÛ|Φ_o⟩ ("Term 3")."""
    circuit = build_ansatz_circuit(problem.pool, theta, problem.reference)
    return backend.measure(circuit, path + (REFERENCE_TERM, 0))


def measure_diagonal_terms(
    problem: PQEProblem,
    theta: Sequence[float],
    mu: int,
    backend: MeasurementBackend,
    path: Tuple[int, ...] = (),
    reference_term: Optional[DiagonalMeasurement] = None,
) -> DiagonalTriple:
    """
    Mide D_Ω, D_μ y D_o para un μ del pool.

    D_o se puede pasar ya medido para compartirlo entre todos los μ de una iteración.
    Con mitigated_terms = reference_only solo D_o pasa por ZNE.
    """
    mitigate_all = backend.config.mitigated_terms is MitigatedTerms.ALL
    omega = backend.measure(
        build_omega_circuit(problem.pool, theta, problem.reference, mu),
        path + (OMEGA_TERM, mu),
        mitigate=mitigate_all,
    )
    excited = backend.measure(
        build_excited_ansatz_circuit(problem.pool, theta, problem.reference, mu),
        path + (EXCITED_TERM, mu),
        mitigate=mitigate_all,
    )
    if reference_term is None:
        reference_term = measure_reference_term(problem, theta, backend, path)
    values = (omega.value, excited.value, reference_term.value)
    if not all(np.isfinite(values)):
        iteration = path[0] if path else -1
        raise NonFiniteResidueError(f"Términos diagonales no finitos para μ={mu}: {values}", iteration)
    return DiagonalTriple(omega=omega, mu=excited, reference=reference_term)


def compute_energy(
    problem: PQEProblem,
    theta: Sequence[float],
    backend: MeasurementBackend,
    path: Tuple[int, ...] = (),
) -> float:
    """E(θ) = D_o."""
    return measure_reference_term(problem, theta, backend, path).value


def compute_residues(
    problem: PQEProblem,
    theta: Sequence[float],
    backend: MeasurementBackend,
    path: Tuple[int, ...] = (),
) -> Tuple[Tuple[float, ...], Tuple[DiagonalTriple, ...], DiagonalMeasurement]:
    """Vector de residuos completo con un único D_o compartido."""
    reference_term = measure_reference_term(problem, theta, backend, path)
    triples = tuple(
        measure_diagonal_terms(problem, theta, mu, backend, path, reference_term)
        for mu in range(problem.n_parameters)
    )
    residues = tuple(compute_residue(t) for t in triples)
    return residues, triples, reference_term


def _check_residues(
    residues: Sequence[float],
    energy: float,
    iteration: int,
    abort: float,
    states: Sequence[PQEState],
):
    values = list(residues) + [energy]
    if not all(np.isfinite(values)):
        raise NonFiniteResidueError(f"Residuo o energía no finitos en la iteración {iteration}: {values}", iteration, states)
    worst = max((abs(r) for r in residues), default=0.0)
    if worst > abort:
        raise NonFiniteResidueError(
            f"Residuo |r| = {worst:.3e} > {abort} Ha en la iteración {iteration}; la corrida diverge",
            iteration,
            states,
        )


def solve(
    problem: PQEProblem,
    config: SolverConfig,
    base_seed: int = 0,
    initial_theta: Optional[Sequence[float]] = None,
) -> PQETrajectory:
    """
    Iteración cuasi-Newton hasta ‖r‖₂ < umbral o max_iterations.

    Returns:
        Trayectoria con todos los iterados; converged=False si se agotan las iteraciones

    Raises:
        NonFiniteResidueError: Si un residuo no es finito o supera el límite de aborto
    """
    backend = MeasurementBackend(config, problem.hamiltonian, base_seed)
    theta = tuple(float(t) for t in (initial_theta if initial_theta is not None else [0.0] * problem.n_parameters))
    if len(theta) != problem.n_parameters:
        raise ValueError(f"θ inicial con {len(theta)} componentes para un pool de {problem.n_parameters}")

    states: List[PQEState] = []
    converged = False
    for iteration in range(config.max_iterations):
        try:
            residues, triples, reference_term = compute_residues(problem, theta, backend, (iteration,))
            _check_residues(residues, reference_term.value, iteration, config.residue_abort, states)
        except NonFiniteResidueError as e:
            logger.error(f"PQE abortado en la iteración {iteration}: {str(e)}")
            raise NonFiniteResidueError(str(e), iteration, states) from e
        state = PQEState(
            theta=theta,
            residues=residues,
            energy=reference_term.value,
            iteration=iteration,
            triples=triples,
        )
        states.append(state)
        logger.info(f"Iteración {iteration}: E = {state.energy:.10f} Ha, ‖r‖ = {state.residue_norm:.3e}")
        if state.residue_norm < config.convergence_threshold:
            converged = True
            break
        theta = quasi_newton_update(theta, residues, problem.denominators, config.denominator_floor)

    if not converged:
        logger.warning(f"PQE sin converger tras {config.max_iterations} iteraciones")
    return PQETrajectory(states=tuple(states), converged=converged)


def residue_norm_sweep(
    problem: PQEProblem,
    theta_base: Sequence[float],
    param_index: int,
    grid: Sequence[float],
    config: SolverConfig,
    evaluations: int = 50,
    base_seed: int = 0,
) -> List[Tuple[float, float, float]]:
    """
    ‖r‖₂ medio y su desviación estándar al variar θ[param_index] sobre `grid`.

    Raises:
        IndexError: Si param_index está fuera del pool
    """
    if not 0 <= param_index < problem.n_parameters:
        raise IndexError(f"Índice de parámetro {param_index} fuera del pool de tamaño {problem.n_parameters}")
    backend = MeasurementBackend(config, problem.hamiltonian, base_seed)
    repeats = 1 if backend.is_deterministic else evaluations
    sweep = []
    for grid_index, value in enumerate(grid):
        theta = list(theta_base)
        theta[param_index] = float(value)
        norms = [
            float(np.linalg.norm(compute_residues(problem, theta, backend, (grid_index, evaluation))[0]))
            for evaluation in range(repeats)
        ]
        sweep.append((float(value), float(np.mean(norms)), float(np.std(norms))))
        logger.debug(f"Barrido θ[{param_index}] = {value:.4f}: ‖r‖ = {sweep[-1][1]:.3e} ± {sweep[-1][2]:.1e}")
    return sweep

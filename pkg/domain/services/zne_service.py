"""
Composición plegado → medición → extrapolación a ruido cero.
"""
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from domain.entities.circuit import Circuit
from domain.entities.extrapolation import ExtrapolationModel, FitResult, NoisePoint
from domain.entities.pauli import PauliSum
from domain.schemas import FoldSpec, NoiseModel, ZNEConfig
from domain.services.extrapolation_service import (
    DEFAULT_LAMBDA_MAX,
    ExtrapolationError,
    adaptive_next_lambda,
    exponential_fit,
    extrapolate,
)
from domain.services.folding_service import achieved_scale_factor, fold
from domain.services.simulator_service import DensityMatrixSimulator
from utils.seeding import FOLD_STREAM, MEASUREMENT_STREAM, derive_int_seed, derive_rng
import logging

logger = logging.getLogger(__name__)

INITIAL_DECAY_GUESS = 1.0
SCALE_FACTOR_TOLERANCE = 1e-9


def adaptive_exponential_extrapolate(
    evaluator: Callable[[float], NoisePoint],
    asymptote: float,
    max_nodes: int = 5,
    lambda_max: float = DEFAULT_LAMBDA_MAX,
) -> FitResult:
    """
    Exponencial adaptativa: empieza en λ = 1 con c_2 = 1 y alterna evaluar → reajustar
    (c_1 y c_2) → elegir el siguiente λ hasta `max_nodes` nodos.

    Raises:
        ExtrapolationError: Si el ajuste falla o hay menos de 2 nodos
    """
    points: List[NoisePoint] = [evaluator(1.0)]
    requested = 1.0
    c2 = INITIAL_DECAY_GUESS
    fit: Optional[FitResult] = None
    while len(points) < max_nodes:
        next_lambda = adaptive_next_lambda(c2, requested, lambda_max)
        if next_lambda <= requested:
            logger.debug(f"λ_max={lambda_max} alcanzado con {len(points)} nodos")
            break
        requested = next_lambda
        points.append(evaluator(requested))
        fit = exponential_fit(points, asymptote)
        c2 = fit.params[2]
        logger.debug(f"Nodo adaptativo λ={requested:.4f}: c1={fit.params[1]:.6g} c2={c2:.6g}")
    if fit is None or len(points) < 2:
        raise ExtrapolationError("La exponencial adaptativa necesita al menos 2 nodos")
    return FitResult(
        zero_noise_value=fit.zero_noise_value,
        model=ExtrapolationModel.ADAPTIVE_EXPONENTIAL,
        params=fit.params,
        points=tuple(points),
    )


class ZNEEstimator:
    """
    Mide un observable a varios factores de ruido y extrapola a λ = 0.

    Las semillas de medición y de plegado se derivan de (semilla base, ruta, nodo, repetición),
    así que cada evaluación es reproducible por sí misma.
    """

    def __init__(self, simulator: DensityMatrixSimulator, config: ZNEConfig, shots: int, repeats: int = 1):
        self.simulator = simulator
        self.config = config
        self.shots = shots
        self.repeats = repeats

    def measure_node(
        self,
        circuit: Circuit,
        observable: PauliSum,
        scale_factor: float,
        base_seed: int,
        path: Tuple[int, ...],
    ) -> NoisePoint:
        """Pliega a λ, estima `repeats` veces y reporta el λ̂ alcanzado."""
        spec = FoldSpec(
            scale_factor=scale_factor,
            mode=self.config.fold_mode,
            seed=derive_int_seed(base_seed, FOLD_STREAM, *path),
        )
        folded = fold(circuit, spec)
        values = [
            self.simulator.estimate_expectation(
                folded, observable, self.shots, derive_rng(base_seed, MEASUREMENT_STREAM, *path, repeat)
            )
            for repeat in range(self.repeats)
        ]
        return NoisePoint(
            scale_factor=achieved_scale_factor(circuit, folded),
            value=float(np.mean(values)),
            std=float(np.std(values)),
            requested_scale_factor=float(scale_factor),
        )

    def measure_schedule(
        self,
        circuit: Circuit,
        observable: PauliSum,
        base_seed: int,
        path: Tuple[int, ...] = (),
        schedule: Optional[Sequence[float]] = None,
    ) -> List[NoisePoint]:
        """
        Mide cada λ del calendario.

        Raises:
            ExtrapolationError: Si dos λ distintos se pliegan al mismo λ̂ (circuitos muy cortos)
        """
        schedule = self.config.schedule if schedule is None else schedule
        points = [
            self.measure_node(circuit, observable, lam, base_seed, path + (index,))
            for index, lam in enumerate(schedule)
        ]
        achieved = sorted(p.scale_factor for p in points)
        if any(b - a < SCALE_FACTOR_TOLERANCE for a, b in zip(achieved, achieved[1:])):
            raise ExtrapolationError(
                f"Los λ pedidos {[p.requested_scale_factor for p in points]} dan λ̂ repetidos "
                f"{[p.scale_factor for p in points]} en un circuito de {len(circuit)} compuertas; "
                "use factores más separados o un circuito más largo"
            )
        return points

    def default_asymptote(self, observable: PauliSum) -> float:
        """Límite totalmente despolarizado Tr(O)/2^n, salvo que se configure otro."""
        if self.config.asymptote is not None:
            return self.config.asymptote
        return float(np.real(observable.identity_coefficient))

    def extrapolate_points(
        self,
        points: Sequence[NoisePoint],
        model: ExtrapolationModel,
    ) -> FitResult:
        asymptote = self.config.asymptote if model is ExtrapolationModel.EXPONENTIAL else None
        return extrapolate(points, model, asymptote, self.config.richardson_order)

    def evaluate(
        self,
        circuit: Circuit,
        observable: PauliSum,
        base_seed: int,
        path: Tuple[int, ...] = (),
        model: Optional[ExtrapolationModel] = None,
    ) -> FitResult:
        """
        Valor mitigado de ⟨O⟩ con el modelo configurado (o el indicado).

        Raises:
            ExtrapolationError: Si el modelo no se puede ajustar
        """
        model = model or self.config.model
        try:
            if model is ExtrapolationModel.ADAPTIVE_EXPONENTIAL:
                counter = iter(range(self.config.max_adaptive_nodes))
                fit = adaptive_exponential_extrapolate(
                    lambda lam: self.measure_node(circuit, observable, lam, base_seed, path + (next(counter),)),
                    asymptote=self.default_asymptote(observable),
                    max_nodes=self.config.max_adaptive_nodes,
                    lambda_max=self.config.lambda_max,
                )
            else:
                points = self.measure_schedule(circuit, observable, base_seed, path)
                fit = self.extrapolate_points(points, model)
        except Exception as e:
            logger.error(f"Error en la extrapolación {model.value} (ruta {path}): {str(e)}")
            raise
        logger.debug(
            f"ZNE {model.value} ruta {path}: λ̂={list(fit.scale_factors)} D(0)={fit.zero_noise_value:.8f}"
        )
        return fit


def zne_expectation(
    circuit: Circuit,
    observable: PauliSum,
    zne_config: ZNEConfig,
    noise_model: NoiseModel,
    shots: int,
    seed: int,
    repeats: int = 1,
    model: Optional[ExtrapolationModel] = None,
) -> FitResult:
    """Plegado, estimación y extrapolación de ⟨O⟩ para un solo circuito."""
    estimator = ZNEEstimator(DensityMatrixSimulator(noise_model), zne_config, shots, repeats)
    return estimator.evaluate(circuit, observable, seed, (), model)

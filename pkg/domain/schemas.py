import math
from enum import Enum
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from domain.entities.circuit import GateKind
from domain.entities.extrapolation import ExtrapolationModel

DEFAULT_GATE_DURATIONS_NS: Dict[str, float] = {
    GateKind.X.value: 35.0,
    GateKind.SX.value: 35.0,
    GateKind.SXDG.value: 35.0,
    GateKind.RZ.value: 35.0,
    GateKind.H.value: 35.0,
    GateKind.RX.value: 35.0,
    GateKind.RY.value: 35.0,
    GateKind.CX.value: 300.0,
}

IDENTITY_CONFUSION = ((1.0, 0.0), (0.0, 1.0))


class MissingDurationError(ValueError):
    """Raised when a gate kind has no duration entry in the noise model."""
    pass


def _as_tuple(value) -> tuple:
    if isinstance(value, (int, float)):
        return (float(value),)
    if isinstance(value, str):
        return tuple(float(v) for v in value.split(",") if v.strip())
    return tuple(float(v) for v in value)


class NoiseModel(BaseModel):
    """
    Modelo de ruido de tres partes: despolarizante y relajación térmica en compuertas,
    matriz de confusión en la lectura.

    t1/t2 en microsegundos, duraciones en nanosegundos. Un valor único se aplica a
    todos los qubits; math.inf desactiva la relajación.
    """
    model_config = ConfigDict(frozen=True)

    name: str = "custom"
    p_depol_1q: float = Field(0.0, ge=0.0, le=1.0)
    p_depol_2q: float = Field(0.0, ge=0.0, le=1.0)
    t1: Tuple[float, ...] = (math.inf,)
    t2: Tuple[float, ...] = (math.inf,)
    gate_durations: Dict[str, float] = Field(default_factory=lambda: dict(DEFAULT_GATE_DURATIONS_NS))
    readout: Tuple[Tuple[Tuple[float, float], Tuple[float, float]], ...] = (IDENTITY_CONFUSION,)

    @field_validator("t1", "t2", mode="before")
    @classmethod
    def _broadcastable_times(cls, value):
        times = _as_tuple(value)
        if not times:
            raise ValueError("Se necesita al menos un tiempo de relajación")
        if any(t <= 0 for t in times):
            raise ValueError("Los tiempos de relajación deben ser positivos")
        return times

    @field_validator("gate_durations")
    @classmethod
    def _known_kinds(cls, value: Dict[str, float]) -> Dict[str, float]:
        durations = {}
        for kind, duration in value.items():
            GateKind(kind)
            if duration < 0:
                raise ValueError(f"Duración negativa para {kind}")
            durations[kind] = float(duration)
        return durations

    @field_validator("readout")
    @classmethod
    def _stochastic_rows(cls, value):
        for matrix in value:
            for row in matrix:
                if any(p < 0 or p > 1 for p in row):
                    raise ValueError(f"Probabilidad de lectura fuera de [0,1]: {row}")
                if abs(sum(row) - 1.0) > 1e-9:
                    raise ValueError(f"Las filas de la matriz de confusión deben sumar 1: {row}")
        return value

    @model_validator(mode="after")
    def _physical_relaxation(self) -> "NoiseModel":
        if len(self.t1) != len(self.t2) and 1 not in (len(self.t1), len(self.t2)):
            raise ValueError("t1 y t2 deben tener la misma longitud o ser escalares")
        for q in range(max(len(self.t1), len(self.t2))):
            t1, t2 = self.t1_of(q), self.t2_of(q)
            if t2 > 2 * t1:
                raise ValueError(f"Relajación no física en el qubit {q}: t2={t2} > 2·t1={2 * t1}")
        return self

    @staticmethod
    def _per_qubit(values: tuple, qubit: int):
        return values[0] if len(values) == 1 else values[qubit]

    def t1_of(self, qubit: int) -> float:
        return self._per_qubit(self.t1, qubit)

    def t2_of(self, qubit: int) -> float:
        return self._per_qubit(self.t2, qubit)

    def readout_of(self, qubit: int) -> np.ndarray:
        return np.array(self._per_qubit(self.readout, qubit), dtype=float)

    def duration_of(self, kind: GateKind) -> float:
        try:
            return self.gate_durations[GateKind(kind).value]
        except KeyError:
            raise MissingDurationError(f"El modelo de ruido '{self.name}' no define duración para {GateKind(kind).value}")

    @property
    def has_relaxation(self) -> bool:
        return any(math.isfinite(t) for t in self.t1 + self.t2)

    @property
    def has_readout_error(self) -> bool:
        return any(not np.allclose(m, IDENTITY_CONFUSION) for m in self.readout)

    @property
    def is_null(self) -> bool:
        return (
            self.p_depol_1q == 0.0
            and self.p_depol_2q == 0.0
            and not self.has_relaxation
            and not self.has_readout_error
        )


class FoldMode(str, Enum):
    GLOBAL = "global"
    LOCAL_ALL = "local_all"
    LOCAL_LEFT = "local_left"
    LOCAL_RIGHT = "local_right"
    LOCAL_RANDOM = "local_random"


class FoldSpec(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    scale_factor: float = Field(1.0, ge=1.0, alias="lambda")
    mode: FoldMode = FoldMode.LOCAL_RANDOM
    seed: int = 0


class MitigatedTerms(str, Enum):
    ALL = "all"
    REFERENCE_ONLY = "reference_only"


class ZNEConfig(BaseModel):
    """Configuración de la extrapolación a ruido cero."""
    model_config = ConfigDict(frozen=True)

    schedule: Tuple[float, ...] = (1.0, 2.0, 3.0)
    model: ExtrapolationModel = ExtrapolationModel.RICHARDSON
    asymptote: Optional[float] = None
    max_adaptive_nodes: int = Field(5, ge=2)
    lambda_max: float = Field(10.0, gt=1.0)
    fold_mode: FoldMode = FoldMode.LOCAL_RANDOM
    richardson_order: Optional[int] = Field(None, ge=1)

    @field_validator("schedule", mode="before")
    @classmethod
    def _parse_schedule(cls, value):
        return _as_tuple(value)

    @field_validator("schedule")
    @classmethod
    def _increasing_from_one(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not value or abs(value[0] - 1.0) > 1e-12:
            raise ValueError("El calendario de λ debe empezar en 1")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError(f"El calendario de λ debe ser estrictamente creciente: {value}")
        return value


class SolverConfig(BaseModel):
    """Configuración del solucionador PQE y de su backend de medición."""
    model_config = ConfigDict(frozen=True)

    convergence_threshold: float = Field(1e-5, gt=0.0)
    max_iterations: int = Field(50, ge=1)
    shots: int = Field(8192, ge=0)
    repeats: int = Field(5, ge=1)
    denominator_floor: float = Field(1e-6, gt=0.0)
    noise_model: NoiseModel = Field(default_factory=NoiseModel)
    mitigation: Optional[ZNEConfig] = None
    mitigated_terms: MitigatedTerms = MitigatedTerms.ALL
    residue_abort: float = Field(10.0, gt=0.0)
    max_qubits: int = Field(12, ge=1)


class ExperimentMode(str, Enum):
    TRAJECTORY = "trajectory"
    EXTRAPOLATION_DEMO = "extrapolation_demo"
    RESIDUE_LANDSCAPE = "residue_landscape"
    EXACT_REFERENCE = "exact_reference"


class ExperimentConfig(BaseModel):
    """Configuración completa de un experimento del arnés."""
    model_config = ConfigDict(frozen=True)

    mode: ExperimentMode = ExperimentMode.TRAJECTORY
    hamiltonian_path: Path
    noise: str = "nisq-light"
    mitigation: str = "zne"
    zne: ZNEConfig = Field(default_factory=ZNEConfig)
    shots: int = Field(8192, ge=0)
    repeats: int = Field(5, ge=1)
    threshold: float = Field(1e-5, gt=0.0)
    max_iterations: int = Field(50, ge=1)
    mitigated_terms: MitigatedTerms = MitigatedTerms.ALL
    ensemble: int = Field(50, ge=1)
    seed: int = 0
    jobs: int = Field(1, ge=1)
    out_dir: Path = Path("results")
    baselines: bool = True
    theta: Optional[Tuple[float, ...]] = None
    demo_models: Tuple[ExtrapolationModel, ...] = (
        ExtrapolationModel.LINEAR,
        ExtrapolationModel.RICHARDSON,
        ExtrapolationModel.ADAPTIVE_EXPONENTIAL,
    )
    param_index: int = Field(0, ge=0)
    grid_start: float = -0.5
    grid_stop: float = 0.5
    grid_points: int = Field(11, ge=1)
    landscape_evaluations: int = Field(50, ge=1)
    max_failure_fraction: float = Field(0.2, ge=0.0, le=1.0)

    @field_validator("theta", mode="before")
    @classmethod
    def _parse_theta(cls, value):
        return None if value is None else _as_tuple(value)

    @field_validator("demo_models", mode="before")
    @classmethod
    def _parse_models(cls, value):
        if isinstance(value, str):
            return tuple(v.strip() for v in value.split(",") if v.strip())
        return value

    @field_validator("mitigation")
    @classmethod
    def _known_mitigation(cls, value: str) -> str:
        if value not in ("none", "zne"):
            raise ValueError(f"Mitigación desconocida '{value}' (use 'none' o 'zne')")
        return value

    @model_validator(mode="after")
    def _files_exist(self) -> "ExperimentConfig":
        if not self.hamiltonian_path.is_file():
            raise ValueError(f"No existe el archivo de Hamiltoniano: {self.hamiltonian_path}")
        return self

    @property
    def mitigation_config(self) -> Optional[ZNEConfig]:
        return self.zne if self.mitigation == "zne" else None

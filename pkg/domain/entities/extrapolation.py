"""
Entidades de extrapolación a ruido cero.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple


class ExtrapolationModel(str, Enum):
    LINEAR = "linear"
    RICHARDSON = "richardson"
    EXPONENTIAL = "exponential"
    ADAPTIVE_EXPONENTIAL = "adaptive_exponential"


@dataclass(frozen=True)
class NoisePoint:
    """Valor medido D(λ) en el factor de escala alcanzado λ̂."""
    scale_factor: float
    value: float
    std: float = 0.0
    requested_scale_factor: Optional[float] = None

    def __post_init__(self):
        if self.scale_factor < 1.0 - 1e-12:
            raise ValueError(f"El factor de escala debe ser >= 1, no {self.scale_factor}")
        if self.requested_scale_factor is None:
            object.__setattr__(self, "requested_scale_factor", self.scale_factor)


@dataclass(frozen=True)
class FitResult:
    """
    Resultado de un modelo de extrapolación.

    gammas y spread_bound solo se llenan en Richardson por interpolación.
    """
    zero_noise_value: float
    model: ExtrapolationModel
    params: Tuple[float, ...]
    points: Tuple[NoisePoint, ...] = field(default_factory=tuple)
    gammas: Optional[Tuple[float, ...]] = None
    spread_bound: Optional[float] = None

    def __post_init__(self):
        if self.gammas is not None and abs(sum(self.gammas) - 1.0) > 1e-9:
            raise ValueError(f"Coeficientes de Richardson inconsistentes: Σγ = {sum(self.gammas)}")

    @property
    def scale_factors(self) -> Tuple[float, ...]:
        return tuple(p.scale_factor for p in self.points)

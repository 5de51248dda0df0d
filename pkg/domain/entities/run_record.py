"""
Entidad de registro de corrida del arnés de experimentos.
"""
from dataclasses import dataclass
from typing import Optional

from .pqe_state import PQETrajectory


@dataclass(frozen=True)
class RunRecord:
    """
    Una corrida independiente de un ensamble, reproducible a partir de (config, seed).

    wall_time solo se registra en el log; no forma parte de los archivos de salida.
    """
    config_hash: str
    run_index: int
    seed: int
    variant: str
    trajectory: Optional[PQETrajectory] = None
    wall_time: float = 0.0
    error: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        return self.error is None and self.trajectory is not None

    @property
    def converged(self) -> bool:
        return self.succeeded and self.trajectory.converged

    @property
    def final_energy(self) -> float:
        return self.trajectory.final_energy if self.trajectory else float("nan")

    def to_summary_dict(self) -> dict:
        return {
            "run_index": self.run_index,
            "seed": self.seed,
            "variant": self.variant,
            "status": "ok" if self.succeeded else "failed",
            "converged": self.converged,
            "final_energy": self.final_energy,
            "iterations": len(self.trajectory.states) if self.trajectory else 0,
            "error": self.error,
        }

"""
Entidades del solucionador PQE.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .circuit import Circuit
from .extrapolation import FitResult
from .fermion import ExcitationIndex, ReferenceState
from .pauli import PauliSum


@dataclass(frozen=True)
class PQEProblem:
    """
    Entrada inmutable del motor PQE: Hamiltoniano, referencia, pool y denominadores.
    """
    hamiltonian: PauliSum
    reference: ReferenceState
    pool: Tuple[ExcitationIndex, ...]
    kappas: Tuple[PauliSum, ...]
    denominators: Tuple[float, ...]
    orbital_energies: Tuple[float, ...]

    def __post_init__(self):
        if not (len(self.pool) == len(self.kappas) == len(self.denominators)):
            raise ValueError("Pool, κ y denominadores deben tener la misma longitud")
        if self.hamiltonian.n_qubits != self.reference.n_qubits:
            raise ValueError("El Hamiltoniano y la referencia usan distinto número de qubits")

    @property
    def n_qubits(self) -> int:
        return self.hamiltonian.n_qubits

    @property
    def n_parameters(self) -> int:
        return len(self.pool)


@dataclass(frozen=True)
class DiagonalMeasurement:
    """Un término diagonal medido: media sobre repeticiones o valor mitigado."""
    value: float
    std: float = 0.0
    fit: Optional[FitResult] = None
    circuit: Optional[Circuit] = None


@dataclass(frozen=True)
class DiagonalTriple:
    """D_Ω, D_μ y D_o ("Term 3") para un μ."""
    omega: DiagonalMeasurement
    mu: DiagonalMeasurement
    reference: DiagonalMeasurement

    def __post_init__(self):
        values = (self.omega.value, self.mu.value, self.reference.value)
        if not all(np.isfinite(v) for v in values):
            raise ValueError(f"Términos diagonales no finitos: {values}")

    @classmethod
    def from_values(cls, d_omega: float, d_mu: float, d_o: float) -> "DiagonalTriple":
        return cls(DiagonalMeasurement(d_omega), DiagonalMeasurement(d_mu), DiagonalMeasurement(d_o))

    @property
    def d_omega(self) -> float:
        return self.omega.value

    @property
    def d_mu(self) -> float:
        return self.mu.value

    @property
    def d_o(self) -> float:
        return self.reference.value


@dataclass(frozen=True)
class PQEState:
    """Iterado k del esquema cuasi-Newton."""
    theta: Tuple[float, ...]
    residues: Tuple[float, ...]
    energy: float
    iteration: int
    residue_norm: float = field(default=float("nan"))
    triples: Tuple[DiagonalTriple, ...] = field(default_factory=tuple, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(float(t) for t in self.theta))
        object.__setattr__(self, "residues", tuple(float(r) for r in self.residues))
        if len(self.theta) != len(self.residues):
            raise ValueError("θ y el vector de residuos deben tener la misma longitud")
        object.__setattr__(self, "residue_norm", float(np.linalg.norm(self.residues)))


@dataclass(frozen=True)
class PQETrajectory:
    states: Tuple[PQEState, ...]
    converged: bool
    failure: Optional[str] = None

    @property
    def final(self) -> Optional[PQEState]:
        return self.states[-1] if self.states else None

    @property
    def final_energy(self) -> float:
        return self.final.energy if self.final else float("nan")

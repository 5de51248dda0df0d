"""
Diagonalización exacta del Hamiltoniano de qubits (referencia FCI).
"""
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh, expm

from domain.entities.pauli import PauliSum
from domain.entities.pqe_state import PQEProblem
from domain.services.simulation_configuration import DEFAULT_MAX_QUBITS
from domain.services.simulator_service import QubitLimitExceededError
import logging

logger = logging.getLogger(__name__)


def exact_ground_state(
    hamiltonian: PauliSum,
    max_qubits: int = DEFAULT_MAX_QUBITS,
    n_electrons: Optional[int] = None,
) -> Tuple[float, np.ndarray]:
    """
    Autovalor más bajo y su autovector de la matriz densa del Hamiltoniano.

    Con `n_electrons` se diagonaliza solo el sector de determinantes con ese número de
    qubits ocupados; el autovector se devuelve en el espacio completo.

    Raises:
        QubitLimitExceededError: Si el Hamiltoniano supera el máximo de qubits
        ValueError: Si el sector pedido está vacío
    """
    if hamiltonian.n_qubits > max_qubits:
        raise QubitLimitExceededError(
            f"{hamiltonian.n_qubits} qubits exceden el máximo de {max_qubits} para la diagonalización densa"
        )
    matrix = hamiltonian.to_matrix()
    if n_electrons is None:
        values, vectors = eigh(matrix, subset_by_index=[0, 0])
        return float(values[0]), vectors[:, 0]
    sector = sector_indices(hamiltonian.n_qubits, n_electrons)
    if sector.size == 0:
        raise ValueError(f"No hay determinantes con {n_electrons} electrones en {hamiltonian.n_qubits} qubits")
    values, vectors = eigh(matrix[np.ix_(sector, sector)], subset_by_index=[0, 0])
    vector = np.zeros(matrix.shape[0], dtype=vectors.dtype)
    vector[sector] = vectors[:, 0]
    return float(values[0]), vector


def sector_indices(n_qubits: int, n_electrons: int) -> np.ndarray:
    """Índices de la base computacional con `n_electrons` qubits en |1⟩."""
    indices = np.arange(2 ** n_qubits)
    popcount = np.array([bin(i).count("1") for i in indices])
    return indices[popcount == n_electrons]


def exact_ground_energy(
    hamiltonian: PauliSum,
    max_qubits: int = DEFAULT_MAX_QUBITS,
    n_electrons: Optional[int] = None,
) -> float:
    energy, _ = exact_ground_state(hamiltonian, max_qubits, n_electrons)
    logger.debug(f"Energía exacta del estado fundamental: {energy:.12f}")
    return energy


def determinant_energy(hamiltonian: PauliSum, basis_index: int) -> float:
    """⟨Φ|H|Φ⟩ para un determinante de la base computacional (p. ej. la energía HF)."""
    matrix = hamiltonian.to_matrix()
    return float(np.real(matrix[basis_index, basis_index]))


def dense_ansatz_state(problem: PQEProblem, theta: Sequence[float]) -> np.ndarray:
    """Û(θ)|Φ_o⟩ con Û = e^{θ_{N−1}κ_{N−1}} ··· e^{θ_0κ_0} construido con expm."""
    dim = 2 ** problem.n_qubits
    state = np.zeros(dim, dtype=np.complex128)
    state[problem.reference.basis_index()] = 1.0
    for kappa, value in zip(problem.kappas, theta):
        state = expm(float(value) * kappa.to_matrix()) @ state
    return state


def dense_residues(problem: PQEProblem, theta: Sequence[float]) -> Tuple[float, ...]:
    """r_μ = Re⟨κ_μΦ_o|Û†ĤÛ|Φ_o⟩ calculado con matrices densas."""
    dim = 2 ** problem.n_qubits
    reference = np.zeros(dim, dtype=np.complex128)
    reference[problem.reference.basis_index()] = 1.0
    unitary = np.eye(dim, dtype=np.complex128)
    for kappa, value in zip(problem.kappas, theta):
        unitary = expm(float(value) * kappa.to_matrix()) @ unitary
    transformed = unitary.conj().T @ problem.hamiltonian.to_matrix() @ unitary
    column = transformed @ reference
    return tuple(
        float(np.real(np.vdot(kappa.to_matrix() @ reference, column)))
        for kappa in problem.kappas
    )

import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../')))

import numpy as np
from scipy.linalg import expm

from domain.entities.fermion import ReferenceState
from domain.entities.pauli import PauliSum
from domain.repositories.hamiltonian_repository import load_hamiltonian
from domain.schemas import NoiseModel, SolverConfig
from domain.services.operator_service import build_problem

DATA_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '../data'))
H2_PATH = os.path.join(DATA_DIR, 'h2_sto3g_0.735.ham')
H2_FCI_ENERGY = -1.137306035753
H2_HF_ENERGY = -1.1169989
H2_STRETCHED_PATH = os.path.join(DATA_DIR, 'h2_sto3g_2.25.ham')
H2_STRETCHED_FCI_ENERGY = -0.939981696805
H2_STRETCHED_HF_ENERGY = -0.738168823210
HEH_PATH = os.path.join(DATA_DIR, 'heh+_sto3g_0.55.ham')
HEH_FCI_ENERGY = -2.717123689237
HEH_HF_ENERGY = -2.707692297086


def recorded_fci_energy(path) -> float:
    """Energía FCI anotada en la cabecera de un archivo de Hamiltoniano."""
    with open(path, encoding='utf-8') as handle:
        for line in handle:
            if 'FCI energy' in line:
                return float(line.split('FCI energy')[1].split()[0])
    raise ValueError(f'{path} no registra la energía FCI')


def h2_problem():
    """Problema PQE de H2 (STO-3G, 0.735 Å) a partir del archivo incluido en data/."""
    loaded = load_hamiltonian(H2_PATH)
    return build_problem(loaded.hamiltonian, loaded.reference, loaded.orbital_energies)


def noiseless_solver(**overrides) -> SolverConfig:
    """Solucionador sin ruido y con trazas exactas."""
    params = dict(shots=0, repeats=1, noise_model=NoiseModel(name="none"))
    params.update(overrides)
    return SolverConfig(**params)


def reference_vector(reference: ReferenceState) -> np.ndarray:
    vector = np.zeros(2 ** reference.n_qubits, dtype=np.complex128)
    vector[reference.basis_index()] = 1.0
    return vector


def dense_ansatz(problem, theta) -> np.ndarray:
    """e^{θ_{N−1}κ_{N−1}} ··· e^{θ_0κ_0}|Φ_o⟩ con scipy.linalg.expm."""
    state = reference_vector(problem.reference)
    for kappa, value in zip(problem.kappas, theta):
        state = expm(value * kappa.to_matrix()) @ state
    return state


def dense_energy(problem, theta) -> float:
    psi = dense_ansatz(problem, theta)
    return float(np.real(np.vdot(psi, problem.hamiltonian.to_matrix() @ psi)))


def dense_residue_vector(problem, theta) -> np.ndarray:
    """r_μ = Re⟨κ_μΦ_o|Û†ĤÛ|Φ_o⟩ sin pasar por circuitos."""
    psi = dense_ansatz(problem, theta)
    h_psi = problem.hamiltonian.to_matrix() @ psi
    residues = []
    for mu in range(problem.n_parameters):
        excited = dense_ansatz_from(problem, theta, problem.kappas[mu].to_matrix() @ reference_vector(problem.reference))
        residues.append(float(np.real(np.vdot(excited, h_psi))))
    return np.array(residues)


def dense_ansatz_from(problem, theta, initial: np.ndarray) -> np.ndarray:
    state = np.asarray(initial, dtype=np.complex128)
    for kappa, value in zip(problem.kappas, theta):
        state = expm(value * kappa.to_matrix()) @ state
    return state


def dense_pqe(problem, threshold: float = 1e-5, max_iterations: int = 50):
    """Iteración cuasi-Newton densa; devuelve (θ, energías por iteración, convergió)."""
    theta = np.zeros(problem.n_parameters)
    energies = []
    for _ in range(max_iterations):
        residues = dense_residue_vector(problem, theta)
        energies.append(dense_energy(problem, theta))
        if np.linalg.norm(residues) < threshold:
            return theta, energies, True
        theta = theta + residues / np.array(problem.denominators)
    return theta, energies, False


def single_qubit_sum(label: str, coefficient: float = 1.0) -> PauliSum:
    return PauliSum.from_terms(len(label), [(coefficient, label)])


def experiment_context(out_dir, **overrides):
    """Contexto de experimento de H2 con configuración de simulación por defecto."""
    from domain.schemas import ExperimentConfig
    from domain.services.simulation_configuration import SimulationConfiguration
    from use_cases.experiment_setup import prepare_experiment

    params = dict(hamiltonian_path=H2_PATH, out_dir=out_dir)
    params.update(overrides)
    return prepare_experiment(ExperimentConfig(**params), SimulationConfiguration())

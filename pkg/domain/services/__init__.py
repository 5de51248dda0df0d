from .simulation_configuration import SimulationConfiguration
from .operator_service import (
    DenominatorTooSmallError,
    build_problem,
    generate_ducc_sd_pool,
    jordan_wigner,
    kappa_pauli,
    mp_denominator,
)
from .circuit_compiler_service import (
    UnsupportedBasisError,
    build_ansatz_circuit,
    build_excited_ansatz_circuit,
    build_omega_circuit,
    compile_pauli_exponential,
    transpile,
)
from .folding_service import achieved_scale_factor, fold, fold_global
from .simulator_service import DensityMatrixSimulator, QubitLimitExceededError, estimate_expectation, simulate
from .extrapolation_service import ExtrapolationError, extrapolate, richardson_coefficients
from .zne_service import ZNEEstimator, adaptive_exponential_extrapolate, zne_expectation
from .pqe_service import NonFiniteResidueError, compute_residues, residue_norm_sweep, solve
from .exact_diagonalization_service import exact_ground_energy

__all__ = [
    'SimulationConfiguration',
    'DenominatorTooSmallError',
    'build_problem',
    'generate_ducc_sd_pool',
    'jordan_wigner',
    'kappa_pauli',
    'mp_denominator',
    'UnsupportedBasisError',
    'build_ansatz_circuit',
    'build_excited_ansatz_circuit',
    'build_omega_circuit',
    'compile_pauli_exponential',
    'transpile',
    'achieved_scale_factor',
    'fold',
    'fold_global',
    'DensityMatrixSimulator',
    'QubitLimitExceededError',
    'estimate_expectation',
    'simulate',
    'ExtrapolationError',
    'extrapolate',
    'richardson_coefficients',
    'ZNEEstimator',
    'adaptive_exponential_extrapolate',
    'zne_expectation',
    'NonFiniteResidueError',
    'compute_residues',
    'residue_norm_sweep',
    'solve',
    'exact_ground_energy',
]

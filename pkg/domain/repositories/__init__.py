"""
Repositorios de archivos del arnés.

Este módulo contiene los repositorios que leen y escriben Hamiltonianos,
modelos de ruido, configuraciones de experimento y resultados.
"""

from .hamiltonian_repository import HamiltonianRepository, HamiltonianFormatError, load_hamiltonian
from .noise_model_repository import (
    NoiseModelRepository,
    NoiseModelNotFoundError,
    NoiseModelFormatError,
    load_noise_model,
)
from .experiment_config_repository import (
    ExperimentConfigRepository,
    ExperimentConfigError,
    load_experiment_config,
)
from .result_repository import ResultRepository

__all__ = [
    'HamiltonianRepository',
    'HamiltonianFormatError',
    'load_hamiltonian',
    'NoiseModelRepository',
    'NoiseModelNotFoundError',
    'NoiseModelFormatError',
    'load_noise_model',
    'ExperimentConfigRepository',
    'ExperimentConfigError',
    'load_experiment_config',
    'ResultRepository',
]

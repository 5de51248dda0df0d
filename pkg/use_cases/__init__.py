"""
Use Cases Module

One use case per experiment mode. Each use case receives a prepared
ExperimentContext, orchestrates the domain services and writes its outputs
through the result repository, independent of the command-line surface.
"""

from .experiment_setup import ExperimentContext, ExperimentFailedError, ExperimentReport, prepare_experiment
from .run_trajectory_use_case import RunTrajectoryUseCase
from .run_extrapolation_demo_use_case import RunExtrapolationDemoUseCase
from .run_residue_landscape_use_case import RunResidueLandscapeUseCase
from .exact_reference_use_case import ExactReferenceUseCase
from .validate_invariants_use_case import ValidateInvariantsUseCase

__all__ = [
    "ExperimentContext",
    "ExperimentFailedError",
    "ExperimentReport",
    "prepare_experiment",
    "RunTrajectoryUseCase",
    "RunExtrapolationDemoUseCase",
    "RunResidueLandscapeUseCase",
    "ExactReferenceUseCase",
    "ValidateInvariantsUseCase",
]

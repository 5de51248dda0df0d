from domain.services.exact_diagonalization_service import determinant_energy, exact_ground_energy
from use_cases.experiment_setup import (
    ExperimentContext,
    ExperimentReport,
    base_manifest,
    electron_sector,
    result_repository,
)
import logging

logger = logging.getLogger(__name__)


class ExactReferenceUseCase:
    """Caso de uso responsable de la energía FCI por diagonalización densa."""

    def __init__(self, context: ExperimentContext):
        self.context = context
        self.results = result_repository(context)

    def execute(self) -> ExperimentReport:
        """
        Raises:
            QubitLimitExceededError: Si el Hamiltoniano supera el máximo de qubits
        """
        problem = self.context.problem
        fci = exact_ground_energy(problem.hamiltonian, self.context.simulation.max_qubits, electron_sector(problem))
        reference = determinant_energy(problem.hamiltonian, problem.reference.basis_index())
        logger.info(f"Energía FCI = {fci:.12f} Ha; energía de referencia = {reference:.12f} Ha")

        report = ExperimentReport(mode=self.context.config.mode.value, out_dir=self.context.config.out_dir)
        report.headline = {
            "fci_energy": fci,
            "reference_energy": reference,
            "correlation_energy": fci - reference,
        }
        manifest = base_manifest(self.context)
        manifest["headline"] = report.headline
        report.files.append(self.results.write_json("exact_reference.json", manifest))
        return report

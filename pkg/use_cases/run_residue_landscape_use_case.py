from typing import Dict, List, Tuple

import numpy as np

from domain.services.pqe_service import residue_norm_sweep, solve
from use_cases.experiment_setup import (
    VARIANT_NOISELESS,
    VARIANT_UNMITIGATED,
    VARIANT_ZNE,
    ExperimentContext,
    ExperimentReport,
    base_manifest,
    result_repository,
    run_members,
)
import logging

logger = logging.getLogger(__name__)


def sweep_member(problem, theta_base, param_index, grid, solver_config, evaluations, seed, variant):
    logger.info(f"Barrido de ‖r‖ para la variante {variant} ({len(grid)} puntos)")
    return residue_norm_sweep(problem, theta_base, param_index, grid, solver_config, evaluations, seed)


class RunResidueLandscapeUseCase:
    """
    Caso de uso responsable del paisaje de ‖r‖ al mover un parámetro alrededor del
    óptimo sin ruido θ*, para cada variante de backend.
    """

    def __init__(self, context: ExperimentContext):
        self.context = context
        self.config = context.config
        self.results = result_repository(context)

    def variants(self) -> List[str]:
        variants = [VARIANT_NOISELESS, VARIANT_UNMITIGATED]
        if self.context.config.mitigation_config is not None:
            variants.append(VARIANT_ZNE)
        return variants

    def optimum(self) -> Tuple[float, ...]:
        """
        θ* de la solución sin ruido (o el θ configurado).

        Raises:
            RuntimeError: Si la solución sin ruido no converge
        """
        if self.config.theta is not None:
            return tuple(self.config.theta)
        trajectory = solve(self.context.problem, self.context.solver_config(VARIANT_NOISELESS), self.config.seed)
        if not trajectory.converged:
            raise RuntimeError("La solución sin ruido no convergió; no hay θ* para centrar el barrido")
        return trajectory.final.theta

    def grid(self, theta_star: Tuple[float, ...]) -> np.ndarray:
        offsets = np.linspace(self.config.grid_start, self.config.grid_stop, self.config.grid_points)
        return theta_star[self.config.param_index] + offsets

    def execute(self) -> ExperimentReport:
        """
        Raises:
            IndexError: Si param_index está fuera del pool
        """
        problem = self.context.problem
        if self.config.param_index >= problem.n_parameters:
            raise IndexError(
                f"Índice de parámetro {self.config.param_index} fuera del pool de tamaño {problem.n_parameters}"
            )
        theta_star = self.optimum()
        grid = self.grid(theta_star)
        logger.info(
            f"Paisaje de residuos: θ[{self.config.param_index}] alrededor de {theta_star[self.config.param_index]:.8f}"
        )
        variants = self.variants()
        arguments = [
            (
                problem, theta_star, self.config.param_index, tuple(grid), self.context.solver_config(variant),
                self.config.landscape_evaluations, self.config.seed, variant,
            )
            for variant in variants
        ]
        sweeps = dict(zip(variants, run_members(sweep_member, arguments, self.config.jobs)))

        rows = self.aligned_rows(grid, theta_star[self.config.param_index], sweeps)
        columns = ["param_value", "offset"] + [f"{v}_{s}" for v in variants for s in ("mean", "std")]
        report = ExperimentReport(mode=self.config.mode.value, out_dir=self.config.out_dir, total=len(variants))
        report.files.append(self.results.write_csv("landscape.csv", rows, columns))
        centre = int(np.argmin(np.abs(grid - theta_star[self.config.param_index])))
        report.headline = {f"{v}_norm_at_optimum": sweeps[v][centre][1] for v in variants}
        manifest = base_manifest(self.context)
        manifest.update({"theta_star": theta_star, "param_index": self.config.param_index, "headline": report.headline})
        report.files.append(self.results.write_json("manifest.json", manifest))
        return report

    @staticmethod
    def aligned_rows(grid, centre: float, sweeps: Dict[str, List[Tuple[float, float, float]]]) -> List[dict]:
        rows = []
        for index, value in enumerate(grid):
            row = {"param_value": float(value), "offset": float(value - centre)}
            for variant, sweep in sweeps.items():
                _, mean, std = sweep[index]
                row[f"{variant}_mean"] = mean
                row[f"{variant}_std"] = std
            rows.append(row)
        return rows

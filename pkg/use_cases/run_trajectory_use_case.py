import time
from typing import Dict, List, Optional

import numpy as np

from domain.entities.extrapolation import FitResult
from domain.entities.pqe_state import PQEProblem, PQETrajectory
from domain.entities.run_record import RunRecord
from domain.schemas import SolverConfig
from domain.services.pqe_service import NonFiniteResidueError, solve
from use_cases.experiment_setup import (
    VARIANT_NOISELESS,
    ExperimentContext,
    ExperimentReport,
    base_manifest,
    check_failures,
    result_repository,
    run_members,
)
import logging

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "variant",
    "iteration",
    "n_runs",
    "energy_mean",
    "energy_std",
    "residue_norm_mean",
    "residue_norm_std",
    "abs_error_mean",
    "abs_error_std",
]

NODE_COLUMNS = [
    "iteration",
    "term",
    "mu",
    "node",
    "requested_lambda",
    "achieved_lambda",
    "value",
    "std",
    "model",
    "zero_noise_value",
    "gammas",
]


def solve_member(
    problem: PQEProblem,
    solver_config: SolverConfig,
    seed: int,
    variant: str,
    run_index: int,
    config_hash: str,
) -> RunRecord:
    """Una corrida del ensamble; los fallos se registran en lugar de propagarse."""
    start = time.perf_counter()
    try:
        trajectory = solve(problem, solver_config, base_seed=seed)
        error = None
    except NonFiniteResidueError as e:
        trajectory = PQETrajectory(states=e.states, converged=False, failure=str(e))
        error = str(e)
    except Exception as e:
        logger.error(f"Corrida {variant} #{run_index} (semilla {seed}) falló: {str(e)}")
        trajectory = None
        error = str(e)
    wall_time = time.perf_counter() - start
    logger.info(
        f"Corrida {variant} #{run_index} terminada en {wall_time:.1f} s: "
        f"{'error' if error else ('convergió' if trajectory.converged else 'sin converger')}"
    )
    return RunRecord(
        config_hash=config_hash,
        run_index=run_index,
        seed=seed,
        variant=variant,
        trajectory=trajectory,
        wall_time=wall_time,
        error=error,
    )


def trajectory_rows(record: RunRecord) -> List[dict]:
    """Filas por iteración: energía, ‖r‖, θ, residuos y los tres términos diagonales."""
    rows = []
    if record.trajectory is None:
        return rows
    for state in record.trajectory.states:
        row = {
            "iteration": state.iteration,
            "energy": state.energy,
            "residue_norm": state.residue_norm,
        }
        for index, (theta, residue) in enumerate(zip(state.theta, state.residues)):
            row[f"theta_{index}"] = theta
            row[f"residue_{index}"] = residue
        for index, triple in enumerate(state.triples):
            row[f"d_omega_{index}"] = triple.d_omega
            row[f"d_mu_{index}"] = triple.d_mu
        if state.triples:
            row["d_o"] = state.triples[0].d_o
        rows.append(row)
    return rows


def _fit_rows(fit: Optional[FitResult], iteration: int, term: str, mu: int) -> List[dict]:
    if fit is None:
        return []
    gammas = ";".join(repr(g) for g in fit.gammas) if fit.gammas else ""
    return [
        {
            "iteration": iteration,
            "term": term,
            "mu": mu,
            "node": node,
            "requested_lambda": point.requested_scale_factor,
            "achieved_lambda": point.scale_factor,
            "value": point.value,
            "std": point.std,
            "model": fit.model,
            "zero_noise_value": fit.zero_noise_value,
            "gammas": gammas,
        }
        for node, point in enumerate(fit.points)
    ]


def zne_node_rows(record: RunRecord) -> List[dict]:
    """λ̂, valores por nodo y coeficientes γ de cada término mitigado."""
    rows: List[dict] = []
    if record.trajectory is None:
        return rows
    for state in record.trajectory.states:
        if not state.triples:
            continue
        rows.extend(_fit_rows(state.triples[0].reference.fit, state.iteration, "reference", -1))
        for mu, triple in enumerate(state.triples):
            rows.extend(_fit_rows(triple.omega.fit, state.iteration, "omega", mu))
            rows.extend(_fit_rows(triple.mu.fit, state.iteration, "excited", mu))
    return rows


def _forward_filled(records: List[RunRecord], attribute: str) -> np.ndarray:
    """Matriz corridas × iteraciones; las corridas cortas repiten su último valor."""
    series = [[getattr(s, attribute) for s in r.trajectory.states] for r in records]
    length = max(len(s) for s in series)
    return np.array([s + [s[-1]] * (length - len(s)) for s in series], dtype=float)


def summarize(records: List[RunRecord], exact_energy: Optional[float]) -> List[dict]:
    """
    Media y desviación estándar por iteración y variante sobre las corridas completas.

    Función pura de los registros: volver a resumir los mismos registros da las mismas filas.
    """
    rows: List[dict] = []
    variants: List[str] = []
    for record in records:
        if record.variant not in variants:
            variants.append(record.variant)
    for variant in variants:
        completed = [
            r for r in records
            if r.variant == variant and r.succeeded and r.trajectory.states
        ]
        if not completed:
            continue
        energies = _forward_filled(completed, "energy")
        norms = _forward_filled(completed, "residue_norm")
        errors = np.abs(energies - exact_energy) if exact_energy is not None else None
        for iteration in range(energies.shape[1]):
            rows.append({
                "variant": variant,
                "iteration": iteration,
                "n_runs": len(completed),
                "energy_mean": float(np.mean(energies[:, iteration])),
                "energy_std": float(np.std(energies[:, iteration])),
                "residue_norm_mean": float(np.mean(norms[:, iteration])),
                "residue_norm_std": float(np.std(norms[:, iteration])),
                "abs_error_mean": float(np.mean(errors[:, iteration])) if errors is not None else None,
                "abs_error_std": float(np.std(errors[:, iteration])) if errors is not None else None,
            })
    return rows


class RunTrajectoryUseCase:
    """
    Caso de uso responsable de las trayectorias de energía del ensamble.

    Cada miembro i usa la semilla base + i; las variantes ruidosas comparten semillas
    para poder compararlas por pares. La línea base sin ruido es determinista y se
    resuelve una sola vez.
    """

    def __init__(self, context: ExperimentContext):
        self.context = context
        self.config = context.config
        self.results = result_repository(context)

    def execute(self) -> ExperimentReport:
        """
        Raises:
            ExperimentFailedError: Si la fracción de corridas fallidas supera el máximo
        """
        logger.info(
            f"Trayectorias: {self.config.ensemble} corridas, variantes {self.context.variants()}, "
            f"{self.config.jobs} procesos"
        )
        arguments = self._member_arguments()
        records: List[RunRecord] = run_members(solve_member, arguments, self.config.jobs)

        report = ExperimentReport(mode=self.config.mode.value, out_dir=self.config.out_dir)
        for record in records:
            report.files.extend(self._write_member(record))
        report.files.append(self.results.write_csv(
            "runs.csv", [self._run_row(r) for r in records]
        ))
        report.files.append(self.results.write_csv(
            "summary.csv", summarize(records, self.context.exact_energy), SUMMARY_COLUMNS
        ))

        report.total = len(records)
        report.failures = sum(1 for r in records if not r.succeeded)
        report.headline = self._headline(records)
        manifest = base_manifest(self.context)
        manifest["runs"] = [r.to_summary_dict() for r in records]
        manifest["headline"] = report.headline
        report.files.append(self.results.write_json("manifest.json", manifest))

        if report.failures:
            logger.warning(f"{report.failures} de {report.total} corridas fallaron")
        check_failures(report, self.config.max_failure_fraction)
        return report

    def _member_arguments(self) -> List[tuple]:
        arguments = []
        for variant in self.context.variants():
            solver_config = self.context.solver_config(variant)
            members = 1 if variant == VARIANT_NOISELESS else self.config.ensemble
            for run_index in range(members):
                arguments.append((
                    self.context.problem,
                    solver_config,
                    self.config.seed + run_index,
                    variant,
                    run_index,
                    self.context.config_hash,
                ))
        return arguments

    def _write_member(self, record: RunRecord) -> List:
        files = []
        stem = f"runs/{record.variant}_run{record.run_index:03d}"
        rows = trajectory_rows(record)
        if rows:
            files.append(self.results.write_csv(f"{stem}.csv", rows))
        nodes = zne_node_rows(record)
        if nodes:
            files.append(self.results.write_csv(f"{stem}_zne_nodes.csv", nodes, NODE_COLUMNS))
        return files

    def _run_row(self, record: RunRecord) -> Dict:
        row = record.to_summary_dict()
        exact = self.context.exact_energy
        row["abs_error"] = abs(record.final_energy - exact) if exact is not None and record.succeeded else None
        return row

    def _headline(self, records: List[RunRecord]) -> Dict:
        headline: Dict = {"exact_energy": self.context.exact_energy}
        for variant in self.context.variants():
            finals = [r.final_energy for r in records if r.variant == variant and r.succeeded]
            if not finals:
                continue
            headline[f"{variant}_final_energy_mean"] = float(np.mean(finals))
            headline[f"{variant}_final_energy_std"] = float(np.std(finals))
            headline[f"{variant}_converged"] = sum(1 for r in records if r.variant == variant and r.converged)
        return headline

from typing import Dict, List, Sequence, Tuple

import numpy as np

from domain.entities.circuit import Circuit
from domain.entities.extrapolation import ExtrapolationModel, NoisePoint
from domain.entities.pauli import PauliSum
from domain.schemas import ZNEConfig
from domain.services.circuit_compiler_service import build_ansatz_circuit, transpile
from domain.services.simulator_service import DensityMatrixSimulator, exact_expectation
from domain.services.zne_service import ZNEEstimator
from use_cases.experiment_setup import (
    ExperimentContext,
    ExperimentReport,
    base_manifest,
    check_failures,
    result_repository,
    run_members,
)
import logging

logger = logging.getLogger(__name__)

DEFAULT_DEMO_ANGLE = 0.1
SCHEDULE_GROUP = 0
ADAPTIVE_GROUP = 1

NODE_COLUMNS = ["run", "seed", "group", "node", "requested_lambda", "achieved_lambda", "value", "std"]
FIT_COLUMNS = ["run", "seed", "model", "zero_noise_value", "abs_error", "params", "gammas", "spread_bound", "error"]
SUMMARY_COLUMNS = ["model", "n_runs", "mean", "std", "abs_error_mean", "exact"]
NODE_SUMMARY_COLUMNS = ["requested_lambda", "n_runs", "achieved_lambda", "mean", "std"]


def _node_row(run: int, seed: int, group: str, node: int, point: NoisePoint) -> dict:
    return {
        "run": run,
        "seed": seed,
        "group": group,
        "node": node,
        "requested_lambda": point.requested_scale_factor,
        "achieved_lambda": point.scale_factor,
        "value": point.value,
        "std": point.std,
    }


def demo_member(
    circuit: Circuit,
    hamiltonian: PauliSum,
    zne_config: ZNEConfig,
    noise_model,
    shots: int,
    repeats: int,
    models: Sequence[ExtrapolationModel],
    run: int,
    seed: int,
    exact: float,
) -> Tuple[List[dict], List[dict]]:
    """
    Mide D_o en el calendario una vez y ajusta con ella todos los modelos no adaptativos;
    el modelo adaptativo elige sus propios nodos.
    """
    estimator = ZNEEstimator(DensityMatrixSimulator(noise_model), zne_config, shots, repeats)
    nodes: List[dict] = []
    fits: List[dict] = []
    points = estimator.measure_schedule(circuit, hamiltonian, seed, (SCHEDULE_GROUP,))
    nodes.extend(_node_row(run, seed, "schedule", i, p) for i, p in enumerate(points))
    fits.append({
        "run": run, "seed": seed, "model": "unmitigated",
        "zero_noise_value": points[0].value, "abs_error": abs(points[0].value - exact),
    })

    for model in models:
        row = {"run": run, "seed": seed, "model": model}
        try:
            if model is ExtrapolationModel.ADAPTIVE_EXPONENTIAL:
                fit = estimator.evaluate(circuit, hamiltonian, seed, (ADAPTIVE_GROUP,), model)
                nodes.extend(_node_row(run, seed, "adaptive", i, p) for i, p in enumerate(fit.points))
            else:
                fit = estimator.extrapolate_points(points, model)
        except Exception as e:
            logger.warning(f"Modelo {model.value} falló en la corrida {run}: {str(e)}")
            row["error"] = str(e)
            fits.append(row)
            continue
        row.update({
            "zero_noise_value": fit.zero_noise_value,
            "abs_error": abs(fit.zero_noise_value - exact),
            "params": ";".join(repr(float(p)) for p in fit.params),
            "gammas": ";".join(repr(g) for g in fit.gammas) if fit.gammas else None,
            "spread_bound": fit.spread_bound,
        })
        fits.append(row)
    return nodes, fits


class RunExtrapolationDemoUseCase:
    """
    Caso de uso responsable de la demostración de extrapolación del término de referencia
    D_o en un θ fijo (por defecto 0.1 en cada parámetro).
    """

    def __init__(self, context: ExperimentContext):
        self.context = context
        self.config = context.config
        self.results = result_repository(context)

    def theta(self) -> Tuple[float, ...]:
        """
        Raises:
            ValueError: Si el θ configurado no coincide con el tamaño del pool
        """
        n_parameters = self.context.problem.n_parameters
        theta = self.config.theta or (DEFAULT_DEMO_ANGLE,) * n_parameters
        if len(theta) != n_parameters:
            raise ValueError(f"θ con {len(theta)} componentes para un pool de {n_parameters}")
        return tuple(theta)

    def execute(self) -> ExperimentReport:
        problem = self.context.problem
        theta = self.theta()
        circuit = transpile(build_ansatz_circuit(problem.pool, theta, problem.reference))
        exact = exact_expectation(circuit, problem.hamiltonian, self.context.simulation.max_qubits)
        models = tuple(self.config.demo_models)
        logger.info(
            f"Demostración ZNE: θ={list(theta)}, {len(circuit)} compuertas ({circuit.cx_count} CX), "
            f"D_o exacto = {exact:.10f}, modelos {[m.value for m in models]}"
        )

        arguments = [
            (
                circuit, problem.hamiltonian, self.config.zne, self.context.noise_model,
                self.config.shots, self.config.repeats, models, run, self.config.seed + run, exact,
            )
            for run in range(self.config.ensemble)
        ]
        outcomes = run_members(demo_member, arguments, self.config.jobs)
        nodes = [row for member_nodes, _ in outcomes for row in member_nodes]
        fits = [row for _, member_fits in outcomes for row in member_fits]

        report = ExperimentReport(mode=self.config.mode.value, out_dir=self.config.out_dir)
        report.files.append(self.results.write_csv("nodes.csv", nodes, NODE_COLUMNS))
        report.files.append(self.results.write_csv("fits.csv", fits, FIT_COLUMNS))
        summary = self.summarize_fits(fits, exact)
        report.files.append(self.results.write_csv("summary.csv", summary, SUMMARY_COLUMNS))
        report.files.append(self.results.write_csv(
            "nodes_summary.csv", self.summarize_nodes(nodes), NODE_SUMMARY_COLUMNS
        ))

        report.total = len([f for f in fits if f["model"] != "unmitigated"])
        report.failures = sum(1 for f in fits if f.get("error"))
        report.headline = {"exact": exact, **{f"{row['model']}_mean": row["mean"] for row in summary}}
        manifest = base_manifest(self.context)
        manifest.update({
            "theta": theta,
            "circuit": {"gates": len(circuit), "cx": circuit.cx_count, "ops": circuit.count_ops()},
            "headline": report.headline,
        })
        report.files.append(self.results.write_json("manifest.json", manifest))
        check_failures(report, self.config.max_failure_fraction)
        return report

    @staticmethod
    def summarize_fits(fits: List[dict], exact: float) -> List[dict]:
        """D(0) medio y su desviación estándar por modelo sobre las corridas sin error."""
        order: List[str] = []
        values: Dict[str, List[float]] = {}
        for row in fits:
            key = row["model"].value if isinstance(row["model"], ExtrapolationModel) else row["model"]
            if key not in values:
                order.append(key)
                values[key] = []
            if not row.get("error"):
                values[key].append(row["zero_noise_value"])
        summary = []
        for key in order:
            data = np.array(values[key], dtype=float)
            if data.size == 0:
                continue
            summary.append({
                "model": key,
                "n_runs": int(data.size),
                "mean": float(np.mean(data)),
                "std": float(np.std(data)),
                "abs_error_mean": float(np.mean(np.abs(data - exact))),
                "exact": exact,
            })
        return summary

    @staticmethod
    def summarize_nodes(nodes: List[dict]) -> List[dict]:
        """Media y desviación estándar por λ solicitado de los nodos del calendario."""
        grouped: Dict[float, List[dict]] = {}
        for row in nodes:
            if row["group"] == "schedule":
                grouped.setdefault(row["requested_lambda"], []).append(row)
        return [
            {
                "requested_lambda": lam,
                "n_runs": len(rows),
                "achieved_lambda": float(np.mean([r["achieved_lambda"] for r in rows])),
                "mean": float(np.mean([r["value"] for r in rows])),
                "std": float(np.std([r["value"] for r in rows])),
            }
            for lam, rows in sorted(grouped.items())
        ]

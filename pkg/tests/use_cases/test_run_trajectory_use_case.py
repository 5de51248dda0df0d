import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

import csv
from unittest.mock import patch

import orjson
import pytest

from domain.services.pqe_service import NonFiniteResidueError
from use_cases.experiment_setup import ExperimentFailedError
from use_cases.run_trajectory_use_case import (
    NODE_COLUMNS,
    SUMMARY_COLUMNS,
    RunTrajectoryUseCase,
    solve_member,
    summarize,
)
from tests.oracles import (
    H2_FCI_ENERGY,
    H2_STRETCHED_PATH,
    HEH_PATH,
    experiment_context,
    noiseless_solver,
    recorded_fci_energy,
)


@pytest.fixture
def noiseless_context(tmp_path):
    """Ensamble de dos corridas sin ruido con trazas exactas"""
    return experiment_context(
        tmp_path, noise="none", mitigation="none", shots=0, repeats=1, ensemble=2, baselines=False,
    )


@pytest.fixture
def zne_context(tmp_path):
    """Ensamble pequeño con ruido, ZNE y líneas base"""
    return experiment_context(tmp_path, shots=256, repeats=1, ensemble=2, max_iterations=2, seed=3)


def test_noiseless_ensemble_reaches_fci(noiseless_context):
    """Test que el ensamble sin ruido converge a la energía FCI"""
    # Act
    report = RunTrajectoryUseCase(noiseless_context).execute()

    # Assert
    assert report.total == 2
    assert report.failures == 0
    assert report.headline["unmitigated_converged"] == 2
    assert report.headline["unmitigated_final_energy_mean"] == pytest.approx(H2_FCI_ENERGY, abs=1e-6)
    assert report.headline["unmitigated_final_energy_std"] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("path", [H2_STRETCHED_PATH, HEH_PATH])
def test_noiseless_pqe_reaches_recorded_fci(tmp_path, path):
    """Test que PQE sin ruido converge a la energía FCI de H2 estirado (2.25 Å) y de HeH+ (0.55 Å)"""
    # Arrange
    context = experiment_context(
        tmp_path, hamiltonian_path=path, noise="none", mitigation="none", shots=0, repeats=1, ensemble=2,
        baselines=False,
    )

    # Act
    report = RunTrajectoryUseCase(context).execute()

    # Assert
    assert report.headline["unmitigated_converged"] == 2
    assert report.headline["unmitigated_final_energy_mean"] == pytest.approx(recorded_fci_energy(path), abs=1e-6)


def test_noiseless_ensemble_files(noiseless_context):
    """Test que se escriben los CSV por corrida, el resumen y el manifiesto"""
    # Act
    report = RunTrajectoryUseCase(noiseless_context).execute()
    out_dir = noiseless_context.config.out_dir

    # Assert
    names = {p.relative_to(out_dir).as_posix() for p in report.files}
    assert names == {
        "runs/unmitigated_run000.csv",
        "runs/unmitigated_run001.csv",
        "runs.csv",
        "summary.csv",
        "manifest.json",
    }
    header = (out_dir / "summary.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == ",".join(SUMMARY_COLUMNS)
    run_header = (out_dir / "runs" / "unmitigated_run000.csv").read_text(encoding="utf-8").splitlines()[0]
    assert run_header.startswith("iteration,energy,residue_norm,theta_0,residue_0")
    manifest = orjson.loads((out_dir / "manifest.json").read_bytes())
    assert manifest["mode"] == "trajectory"
    assert [r["status"] for r in manifest["runs"]] == ["ok", "ok"]
    assert "wall_time" not in manifest["runs"][0]


def test_summarize_is_pure(noiseless_context):
    """Test que resumir los mismos registros dos veces da las mismas filas"""
    # Arrange
    problem = noiseless_context.problem
    records = [
        solve_member(problem, noiseless_solver(max_iterations=3), seed, "unmitigated", i, "hash")
        for i, seed in enumerate((0, 1))
    ]

    # Act
    first = summarize(records, H2_FCI_ENERGY)
    second = summarize(records, H2_FCI_ENERGY)

    # Assert
    assert first == second
    assert [row["iteration"] for row in first] == list(range(len(first)))
    assert 2 <= len(first) <= 3
    assert all(row["n_runs"] == 2 for row in first)
    assert first[-1]["abs_error_mean"] < first[0]["abs_error_mean"]


def test_summary_without_exact_energy(noiseless_context):
    """Test que sin energía exacta las columnas de error quedan vacías"""
    record = solve_member(noiseless_context.problem, noiseless_solver(max_iterations=1), 0, "unmitigated", 0, "h")
    rows = summarize([record], None)
    assert rows[0]["abs_error_mean"] is None


def test_solve_member_records_failures(noiseless_context):
    """Test que una excepción en la corrida se registra sin propagarse"""
    with patch("use_cases.run_trajectory_use_case.solve", side_effect=RuntimeError("boom")):
        record = solve_member(noiseless_context.problem, noiseless_solver(), 5, "unmitigated", 0, "h")
    assert not record.succeeded
    assert record.error == "boom"
    assert record.seed == 5


def test_solve_member_keeps_states_on_abort(noiseless_context):
    """Test que un aborto por residuo no finito conserva la trayectoria parcial"""
    error = NonFiniteResidueError("residuo no finito", 2, ())
    with patch("use_cases.run_trajectory_use_case.solve", side_effect=error):
        record = solve_member(noiseless_context.problem, noiseless_solver(), 0, "unmitigated", 0, "h")
    assert not record.succeeded
    assert record.trajectory is not None
    assert record.trajectory.failure == "residuo no finito"


def test_failure_fraction_exceeded(noiseless_context):
    """Test que demasiadas corridas fallidas terminan en ExperimentFailedError"""
    out_dir = noiseless_context.config.out_dir
    with patch("use_cases.run_trajectory_use_case.solve", side_effect=RuntimeError("boom")):
        with pytest.raises(ExperimentFailedError):
            RunTrajectoryUseCase(noiseless_context).execute()
    assert (out_dir / "runs.csv").exists()


@pytest.mark.slow
def test_zne_ensemble_with_baselines(zne_context):
    """Test que la variante zne y sus líneas base producen todos sus archivos"""
    # Act
    report = RunTrajectoryUseCase(zne_context).execute()
    out_dir = zne_context.config.out_dir

    # Assert
    assert report.total == 5
    assert (out_dir / "runs" / "zne_run000_zne_nodes.csv").exists()
    assert (out_dir / "runs" / "unmitigated_run001.csv").exists()
    assert (out_dir / "runs" / "noiseless_run000.csv").exists()
    assert not (out_dir / "runs" / "noiseless_run001.csv").exists()
    nodes_header = (out_dir / "runs" / "zne_run000_zne_nodes.csv").read_text(encoding="utf-8").splitlines()[0]
    assert nodes_header == ",".join(NODE_COLUMNS)
    for variant in ("zne", "unmitigated", "noiseless"):
        assert f"{variant}_final_energy_mean" in report.headline


@pytest.mark.slow
def test_zne_ensemble_is_reproducible(zne_context):
    """Test que la misma configuración y semilla producen archivos idénticos byte a byte"""
    # Arrange
    out_dir = zne_context.config.out_dir
    names = ["summary.csv", "runs.csv", "manifest.json", "runs/zne_run000.csv", "runs/zne_run000_zne_nodes.csv"]

    # Act
    RunTrajectoryUseCase(zne_context).execute()
    first = {name: (out_dir / name).read_bytes() for name in names}
    RunTrajectoryUseCase(zne_context).execute()
    second = {name: (out_dir / name).read_bytes() for name in names}

    # Assert
    assert first == second


def test_shot_based_runs_are_byte_identical(tmp_path):
    """Test que dos ejecuciones con la misma semilla escriben CSV idénticos byte a byte en directorios distintos"""
    # Arrange
    names = ["runs.csv", "summary.csv", "runs/unmitigated_run000.csv", "runs/unmitigated_run001.csv"]
    outputs = []

    # Act
    for out_dir in (tmp_path / "first", tmp_path / "second"):
        context = experiment_context(
            out_dir, mitigation="none", shots=64, repeats=1, ensemble=2, max_iterations=2,
            baselines=False, seed=3,
        )
        RunTrajectoryUseCase(context).execute()
        outputs.append({name: (out_dir / name).read_bytes() for name in names})

    # Assert
    assert outputs[0] == outputs[1]


@pytest.mark.slow
def test_richardson_beats_unmitigated_in_paired_seeds(tmp_path):
    """Test que con 20 semillas pareadas Richardson tiene menor error final que sin mitigar en al menos el 80 %"""
    # Arrange
    context = experiment_context(tmp_path, shots=2048, repeats=1, ensemble=20, max_iterations=4, seed=11)

    # Act
    RunTrajectoryUseCase(context).execute()
    with open(tmp_path / "runs.csv", encoding="utf-8", newline="") as handle:
        rows = list(csv.DictReader(handle))

    # Assert
    errors = {}
    for row in rows:
        errors.setdefault(row["variant"], {})[row["seed"]] = float(row["abs_error"])
    assert len(errors["zne"]) == len(errors["unmitigated"]) == 20
    wins = sum(1 for seed, error in errors["zne"].items() if error < errors["unmitigated"][seed])
    assert wins >= 16

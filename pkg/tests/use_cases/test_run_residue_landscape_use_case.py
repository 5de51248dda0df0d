import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

import csv

import numpy as np
import pytest

from use_cases.run_residue_landscape_use_case import RunResidueLandscapeUseCase
from tests.oracles import dense_pqe, experiment_context


@pytest.fixture
def landscape_context(tmp_path):
    """Barrido de tres puntos sin ruido alrededor del óptimo"""
    return experiment_context(
        tmp_path, mode="residue_landscape", noise="none", mitigation="none", shots=0, repeats=1,
        grid_start=-0.2, grid_stop=0.2, grid_points=3, landscape_evaluations=2, param_index=2,
    )


def test_variants_follow_mitigation(tmp_path, landscape_context):
    """Test que la variante zne solo aparece con mitigación"""
    assert RunResidueLandscapeUseCase(landscape_context).variants() == ["noiseless", "unmitigated"]
    with_zne = experiment_context(tmp_path / "zne", mode="residue_landscape")
    assert RunResidueLandscapeUseCase(with_zne).variants() == ["noiseless", "unmitigated", "zne"]


def test_optimum_matches_dense_solution(landscape_context):
    """Test que θ* coincide con la iteración densa de referencia"""
    theta_dense, _, converged = dense_pqe(landscape_context.problem)
    theta_star = RunResidueLandscapeUseCase(landscape_context).optimum()
    assert converged
    np.testing.assert_allclose(theta_star, theta_dense, atol=1e-6)


def test_configured_theta_is_used(tmp_path):
    """Test que un θ configurado reemplaza la solución sin ruido"""
    context = experiment_context(tmp_path, mode="residue_landscape", theta="0.0,0.0,-0.1")
    assert RunResidueLandscapeUseCase(context).optimum() == (0.0, 0.0, -0.1)


def test_grid_is_centred(landscape_context):
    """Test que la grilla se centra en el parámetro barrido"""
    grid = RunResidueLandscapeUseCase(landscape_context).grid((0.0, 0.0, -0.1))
    np.testing.assert_allclose(grid, [-0.3, -0.1, 0.1])


def test_landscape_minimum_at_optimum(landscape_context):
    """Test que ‖r‖ es mínima en θ* y se escribe landscape.csv"""
    # Act
    report = RunResidueLandscapeUseCase(landscape_context).execute()
    out_dir = landscape_context.config.out_dir

    # Assert
    assert report.headline["noiseless_norm_at_optimum"] < 1e-5
    assert report.headline["unmitigated_norm_at_optimum"] < 1e-5
    lines = (out_dir / "landscape.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "param_value,offset,noiseless_mean,noiseless_std,unmitigated_mean,unmitigated_std"
    assert len(lines) == 4
    norms = [float(line.split(",")[2]) for line in lines[1:]]
    assert norms[1] < norms[0] and norms[1] < norms[2]


def test_param_index_out_of_range(tmp_path):
    """Test que un índice fuera del pool se rechaza"""
    context = experiment_context(tmp_path, mode="residue_landscape", param_index=3, noise="none")
    with pytest.raises(IndexError):
        RunResidueLandscapeUseCase(context).execute()


def test_aligned_rows():
    """Test que las filas alinean cada variante con su punto de la grilla"""
    sweeps = {"noiseless": [(0.9, 0.2, 0.0), (1.1, 0.1, 0.0)]}
    rows = RunResidueLandscapeUseCase.aligned_rows(np.array([0.9, 1.1]), 1.0, sweeps)
    assert rows[0]["offset"] == pytest.approx(-0.1)
    assert rows[1]["noiseless_mean"] == 0.1


@pytest.mark.slow
def test_zne_norm_exceeds_unmitigated_far_from_optimum(tmp_path):
    """Test que lejos de θ* la ‖r‖ con ZNE supera a la sin mitigar y queda más cerca de la exacta"""
    # Arrange
    context = experiment_context(
        tmp_path, mode="residue_landscape", noise="nisq-light", mitigation="zne", shots=0, repeats=1,
        grid_start=-0.6, grid_stop=0.6, grid_points=3, landscape_evaluations=1, param_index=2,
        zne={"schedule": (1.0, 3.0, 5.0)},
    )

    # Act
    RunResidueLandscapeUseCase(context).execute()
    with open(tmp_path / "landscape.csv", encoding="utf-8", newline="") as handle:
        rows = list(csv.DictReader(handle))

    # Assert
    far = [rows[0], rows[-1]]
    noiseless = np.mean([float(row["noiseless_mean"]) for row in far])
    unmitigated = np.mean([float(row["unmitigated_mean"]) for row in far])
    zne = np.mean([float(row["zne_mean"]) for row in far])
    assert zne >= unmitigated
    assert abs(zne - noiseless) < abs(unmitigated - noiseless)

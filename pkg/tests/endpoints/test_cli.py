import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

from unittest.mock import patch

import pytest

from domain.repositories.experiment_config_repository import ExperimentConfigError
from endpoints.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, main, overrides_from_args
from tests.oracles import H2_PATH


def test_exact_reference_exit_ok(tmp_path, capsys):
    """Test que exact_reference termina con código 0 e imprime la energía FCI"""
    # Act
    code = main(["--mode", "exact_reference", "--hamiltonian", H2_PATH, "--out", str(tmp_path)])

    # Assert
    assert code == EXIT_OK
    output = capsys.readouterr().out
    assert "modo: exact_reference" in output
    assert "fci_energy: -1.137306035" in output
    assert (tmp_path / "exact_reference.json").exists()


def test_config_file_with_overrides(tmp_path, capsys):
    """Test que la línea de comandos sobrescribe el archivo de configuración"""
    # Arrange
    config = tmp_path / "experiment.ini"
    config.write_text(
        f"[experiment]\nmode = trajectory\nhamiltonian = {H2_PATH}\n", encoding="utf-8"
    )

    # Act
    code = main(["--config", str(config), "--mode", "exact_reference", "--out", str(tmp_path / "out")])

    # Assert
    assert code == EXIT_OK
    assert (tmp_path / "out" / "exact_reference.json").exists()


@pytest.mark.parametrize("argv", [
    ["--shots", "muchos"],
    ["--mode", "nonsense"],
    ["--unknown-flag"],
])
def test_bad_arguments(argv):
    """Test que los argumentos inválidos devuelven código 2"""
    assert main(argv) == EXIT_USAGE


def test_help_exits_ok():
    """Test que --help no es un error"""
    assert main(["--help"]) == EXIT_OK


def test_missing_hamiltonian_and_config(capsys):
    """Test que sin --hamiltonian ni --config se reporta error de uso"""
    assert main(["--mode", "trajectory"]) == EXIT_USAGE
    assert "--hamiltonian o --config" in capsys.readouterr().err


def test_missing_hamiltonian_file(tmp_path):
    """Test que un archivo de Hamiltoniano inexistente es un error de configuración"""
    assert main(["--hamiltonian", str(tmp_path / "missing.ham"), "--out", str(tmp_path)]) == EXIT_USAGE


def test_unknown_noise_model(tmp_path):
    """Test que un modelo de ruido desconocido es un error de configuración"""
    argv = ["--mode", "exact_reference", "--hamiltonian", H2_PATH, "--noise", "no-such", "--out", str(tmp_path)]
    assert main(argv) == EXIT_USAGE


@pytest.mark.parametrize("header", ["# n_qubits=cuatro", "# n_electrons=dos"])
def test_malformed_hamiltonian_header(tmp_path, header):
    """Test que una cabecera entera mal escrita es un error de configuración"""
    # Arrange
    path = tmp_path / "broken.ham"
    path.write_text(f"{header}\n-0.5 ZZ\n", encoding="utf-8")

    # Act
    code = main(["--mode", "exact_reference", "--hamiltonian", str(path), "--out", str(tmp_path / "out")])

    # Assert
    assert code == EXIT_USAGE


@pytest.mark.parametrize("text", ["[device]\np_depol_1q = 0.01\n", "p_depol_1q = 0.01\n"])
def test_noise_file_without_noise_section(tmp_path, text):
    """Test que un archivo de ruido sin sección [noise] es un error de configuración"""
    # Arrange
    noise = tmp_path / "device.ini"
    noise.write_text(text, encoding="utf-8")

    # Act
    code = main([
        "--mode", "exact_reference", "--hamiltonian", H2_PATH, "--noise", str(noise), "--out", str(tmp_path / "out"),
    ])

    # Assert
    assert code == EXIT_USAGE


def test_malformed_grid(tmp_path):
    """Test que --grid con forma incorrecta es un error de configuración"""
    argv = ["--mode", "residue_landscape", "--hamiltonian", H2_PATH, "--grid", "0,1", "--out", str(tmp_path)]
    assert main(argv) == EXIT_USAGE


def test_failed_experiment_exit_code(tmp_path):
    """Test que un ensamble con demasiadas fallas termina con código 1"""
    argv = [
        "--hamiltonian", H2_PATH, "--noise", "none", "--mitigation", "none", "--shots", "0",
        "--ensemble", "2", "--no-baselines", "--out", str(tmp_path),
    ]
    with patch("use_cases.run_trajectory_use_case.solve", side_effect=RuntimeError("boom")):
        assert main(argv) == EXIT_FAILURE


def test_overrides_from_args():
    """Test que las opciones se traducen a claves de configuración"""
    args = build_parser().parse_args([
        "--schedule", "1,3,5", "--fold-mode", "global", "--grid=-0.1,0.1,5", "--no-baselines", "--max-iter", "7",
    ])
    overrides = overrides_from_args(args)
    assert overrides["zne.schedule"] == "1,3,5"
    assert overrides["zne.fold_mode"] == "global"
    assert overrides["max_iterations"] == 7
    assert overrides["baselines"] is False
    assert (overrides["grid_start"], overrides["grid_stop"], overrides["grid_points"]) == ("-0.1", "0.1", "5")
    assert overrides["shots"] is None


def test_overrides_reject_bad_grid():
    """Test que --grid sin tres valores se rechaza"""
    args = build_parser().parse_args(["--grid", "1,2,3,4"])
    with pytest.raises(ExperimentConfigError):
        overrides_from_args(args)


@pytest.mark.slow
def test_validate_flag(capsys):
    """Test que --validate ejecuta la batería de invariantes"""
    code = main(["--validate", "--hamiltonian", H2_PATH])
    output = capsys.readouterr().out
    assert code == EXIT_OK, output
    assert output.count("OK") == 6

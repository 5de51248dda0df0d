import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

import orjson
import pytest

from use_cases.exact_reference_use_case import ExactReferenceUseCase
from tests.oracles import (
    H2_FCI_ENERGY,
    H2_HF_ENERGY,
    H2_PATH,
    H2_STRETCHED_PATH,
    HEH_PATH,
    experiment_context,
    recorded_fci_energy,
)


def test_exact_reference_h2(tmp_path):
    """Test que la energía FCI de H2 coincide con el valor de referencia"""
    # Arrange
    context = experiment_context(tmp_path, mode="exact_reference")

    # Act
    report = ExactReferenceUseCase(context).execute()

    # Assert
    assert report.headline["fci_energy"] == pytest.approx(H2_FCI_ENERGY, abs=1e-9)
    assert report.headline["reference_energy"] == pytest.approx(H2_HF_ENERGY, abs=1e-6)
    assert report.headline["correlation_energy"] < 0
    manifest = orjson.loads((tmp_path / "exact_reference.json").read_bytes())
    assert manifest["headline"]["fci_energy"] == pytest.approx(H2_FCI_ENERGY, abs=1e-9)
    assert manifest["mode"] == "exact_reference"


@pytest.mark.parametrize("path", [H2_PATH, H2_STRETCHED_PATH, HEH_PATH])
def test_exact_reference_matches_recorded_fci(tmp_path, path):
    """Test que el modo exact_reference reproduce la energía FCI anotada en cada archivo incluido"""
    # Arrange
    context = experiment_context(tmp_path, mode="exact_reference", hamiltonian_path=path)

    # Act
    report = ExactReferenceUseCase(context).execute()

    # Assert
    assert report.headline["fci_energy"] == pytest.approx(recorded_fci_energy(path), abs=1e-9)
    assert context.exact_energy == pytest.approx(report.headline["fci_energy"], abs=1e-12)
    assert report.headline["correlation_energy"] < 0


def test_exact_reference_stays_in_electron_sector(tmp_path):
    """Test que la energía FCI se busca solo entre estados con los electrones de la referencia"""
    # Arrange
    path = tmp_path / "two_level.ham"
    path.write_text("# n_qubits=2\n# reference=10\n0.5 ZI\n0.5 IZ\n", encoding="utf-8")
    context = experiment_context(tmp_path / "out", mode="exact_reference", hamiltonian_path=path)

    # Act
    report = ExactReferenceUseCase(context).execute()

    # Assert
    assert report.headline["fci_energy"] == pytest.approx(0.0, abs=1e-12)

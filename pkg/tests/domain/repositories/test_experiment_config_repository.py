import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../../')))

from pathlib import Path

import pytest
from pydantic import ValidationError

from domain.entities.extrapolation import ExtrapolationModel
from domain.repositories.experiment_config_repository import (
    ExperimentConfigError,
    ExperimentConfigRepository,
    load_experiment_config,
)
from domain.schemas import ExperimentMode, FoldMode, MitigatedTerms
from tests.oracles import DATA_DIR, H2_PATH

CONFIG_TEXT = """
[experiment]
mode = residue_landscape
hamiltonian = h2_sto3g_0.735.ham
noise = nisq-light
mitigation = zne
ensemble = 4
seed = 7

[solver]
shots = 1024
repeats = 2
mitigated_terms = reference_only

[zne]
model = exponential
schedule = 1,1.5,2
asymptote = -0.5
fold_mode = global
demo_models = linear,richardson

[landscape]
param_index = 2
grid_points = 5
evaluations = 3
"""


@pytest.fixture
def repository():
    return ExperimentConfigRepository()


class TestExperimentConfigRepository:
    """Test cases for INI experiment configuration."""

    def test_parse_and_build(self, repository):
        raw = repository.parse(CONFIG_TEXT, Path(DATA_DIR))
        config = repository.build(raw)
        assert config.mode is ExperimentMode.RESIDUE_LANDSCAPE
        assert config.hamiltonian_path == Path(H2_PATH)
        assert config.ensemble == 4
        assert config.shots == 1024
        assert config.mitigated_terms is MitigatedTerms.REFERENCE_ONLY
        assert config.zne.model is ExtrapolationModel.EXPONENTIAL
        assert config.zne.schedule == (1.0, 1.5, 2.0)
        assert config.zne.asymptote == -0.5
        assert config.zne.fold_mode is FoldMode.GLOBAL
        assert config.demo_models == (ExtrapolationModel.LINEAR, ExtrapolationModel.RICHARDSON)
        assert config.param_index == 2
        assert config.landscape_evaluations == 3

    def test_overrides_win_and_none_is_ignored(self, repository):
        raw = repository.parse(CONFIG_TEXT, Path(DATA_DIR))
        config = repository.build(raw, {"seed": 99, "shots": None, "zne.model": "linear"})
        assert config.seed == 99
        assert config.shots == 1024
        assert config.zne.model is ExtrapolationModel.LINEAR
        assert config.zne.schedule == (1.0, 1.5, 2.0)

    def test_unknown_section(self, repository):
        with pytest.raises(ExperimentConfigError):
            repository.parse("[plots]\nformat = png\n")

    def test_unknown_key(self, repository):
        with pytest.raises(ExperimentConfigError):
            repository.parse("[solver]\nshotz = 10\n")

    def test_malformed_file(self, repository):
        with pytest.raises(ExperimentConfigError):
            repository.parse("shots = 10\n")

    def test_missing_file(self, repository, tmp_path):
        with pytest.raises(ExperimentConfigError):
            repository.read(tmp_path / "missing.ini")

    def test_read_resolves_relative_paths(self, tmp_path):
        (tmp_path / "h2.ham").write_text(Path(H2_PATH).read_text(encoding="utf-8"), encoding="utf-8")
        (tmp_path / "run.ini").write_text("[experiment]\nhamiltonian = h2.ham\nout = results\n", encoding="utf-8")
        config = load_experiment_config(tmp_path / "run.ini")
        assert config.hamiltonian_path == tmp_path / "h2.ham"
        assert config.out_dir == tmp_path / "results"


class TestExperimentConfigValidation:
    """Test cases for ExperimentConfig invariants."""

    def test_missing_hamiltonian(self, tmp_path):
        with pytest.raises(ValidationError):
            load_experiment_config(overrides={"hamiltonian_path": str(tmp_path / "nope.ham")})

    @pytest.mark.parametrize("field,value", [
        ("shots", -1),
        ("repeats", 0),
        ("ensemble", 0),
        ("threshold", 0.0),
        ("mitigation", "pec"),
        ("zne.schedule", "2,3"),
        ("zne.model", "cubic"),
    ])
    def test_invalid_values(self, field, value):
        with pytest.raises(ValidationError):
            load_experiment_config(overrides={"hamiltonian_path": H2_PATH, field: value})

    def test_mitigation_config(self):
        config = load_experiment_config(overrides={"hamiltonian_path": H2_PATH, "mitigation": "none"})
        assert config.mitigation_config is None
        assert config.shots == 8192
        assert config.repeats == 5
        assert config.threshold == 1e-5
        assert config.max_iterations == 50
        assert config.ensemble == 50

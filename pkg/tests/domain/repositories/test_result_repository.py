import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../../')))

import numpy as np
import orjson
import pytest

from domain.entities.extrapolation import ExtrapolationModel
from domain.repositories.result_repository import ResultRepository, format_cell


class TestFormatCell:
    @pytest.mark.parametrize("value,expected", [
        (None, ""),
        (True, "true"),
        (False, "false"),
        (0.1, "0.1"),
        (-1.137306035753, "-1.137306035753"),
        (3, "3"),
        (np.float64(0.25), "0.25"),
        (np.int64(7), "7"),
        (ExtrapolationModel.RICHARDSON, "richardson"),
        ("zne", "zne"),
    ])
    def test_format_cell(self, value, expected):
        assert format_cell(value) == expected

    def test_floats_round_trip(self):
        value = 1.0 / 3.0
        assert float(format_cell(value)) == value


class TestResultRepository:
    """Test cases for ResultRepository."""

    def test_write_and_read_csv(self, tmp_path):
        repository = ResultRepository(tmp_path / "out")
        rows = [{"run": 0, "energy": -1.1, "note": None}, {"run": 1, "energy": -1.2, "extra": "x"}]
        path = repository.write_csv("runs/a.csv", rows, ["run", "energy", "note"])
        assert path.read_text(encoding="utf-8") == "run,energy,note\n0,-1.1,\n1,-1.2,\n"
        assert repository.read_csv("runs/a.csv")[1] == {"run": "1", "energy": "-1.2", "note": ""}

    def test_columns_default_to_first_row(self, tmp_path):
        repository = ResultRepository(tmp_path)
        path = repository.write_csv("b.csv", [{"b": 1, "a": 2}])
        assert path.read_text(encoding="utf-8").splitlines()[0] == "b,a"

    def test_empty_rows(self, tmp_path):
        path = ResultRepository(tmp_path).write_csv("empty.csv", [])
        assert path.read_text(encoding="utf-8") == "\n"

    def test_write_json_sorted(self, tmp_path):
        path = ResultRepository(tmp_path).write_json("manifest.json", {"z": 1, "a": np.float64(2.5)})
        data = orjson.loads(path.read_bytes())
        assert data == {"a": 2.5, "z": 1}
        assert path.read_bytes().index(b'"a"') < path.read_bytes().index(b'"z"')

import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

import hashlib

import orjson

from domain.schemas import SolverConfig, ZNEConfig
from utils.hashing import config_hash


class TestConfigHash:
    """Test cases for config_hash."""

    def test_hex_digest(self):
        """Test que el hash es un SHA-256 hexadecimal"""
        digest = config_hash({"a": 1})
        assert len(digest) == 64
        assert digest == hashlib.sha256(orjson.dumps({"a": 1})).hexdigest()

    def test_key_order_does_not_matter(self):
        """Test que el orden de claves no cambia el hash"""
        assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})

    def test_same_config_same_hash(self):
        """Test que configuraciones equivalentes producen el mismo hash"""
        assert config_hash(SolverConfig()) == config_hash(SolverConfig())

    def test_changes_are_detected(self):
        """Test que cambiar un campo cambia el hash"""
        assert config_hash(SolverConfig(shots=100)) != config_hash(SolverConfig(shots=200))
        assert config_hash(ZNEConfig(schedule=[1, 3])) != config_hash(ZNEConfig(schedule=[1, 3, 5]))

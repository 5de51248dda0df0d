import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../../')))

import numpy as np
import pytest

from domain.entities.circuit import Circuit, Gate, GateKind
from domain.schemas import FoldMode, FoldSpec
from domain.services.folding_service import achieved_scale_factor, fold, fold_global, fold_local
from domain.services.simulator_service import circuit_unitary


@pytest.fixture
def circuit():
    return Circuit(2, (
        Gate(GateKind.X, (0,)),
        Gate(GateKind.SX, (1,)),
        Gate(GateKind.CX, (0, 1)),
        Gate(GateKind.RZ, (1,), 0.4),
    ))


class TestFoldingInvariance:
    """Test cases for unitary invariance under folding."""

    @pytest.mark.parametrize("mode", list(FoldMode))
    @pytest.mark.parametrize("scale_factor", [1.0, 1.5, 2.0, 3.0, 4.2, 5.0])
    def test_unitary_is_preserved(self, circuit, mode, scale_factor):
        """Test que el circuito plegado implementa el mismo unitario."""
        folded = fold(circuit, FoldSpec(scale_factor=scale_factor, mode=mode, seed=3))
        np.testing.assert_allclose(circuit_unitary(folded), circuit_unitary(circuit), atol=1e-10)


class TestFoldingCounts:
    """Test cases for gate counts after folding."""

    @pytest.mark.parametrize("mode", list(FoldMode))
    def test_scale_one_is_identity(self, circuit, mode):
        assert fold(circuit, FoldSpec(scale_factor=1.0, mode=mode)) == circuit

    @pytest.mark.parametrize("mode", list(FoldMode))
    @pytest.mark.parametrize("scale_factor", [3.0, 5.0])
    def test_odd_scale_factors_are_exact(self, circuit, mode, scale_factor):
        folded = fold(circuit, FoldSpec(scale_factor=scale_factor, mode=mode, seed=1))
        assert len(folded) == int(scale_factor) * len(circuit)
        assert achieved_scale_factor(circuit, folded) == scale_factor

    @pytest.mark.parametrize("mode", [FoldMode.GLOBAL, FoldMode.LOCAL_LEFT, FoldMode.LOCAL_RIGHT, FoldMode.LOCAL_RANDOM])
    def test_even_scale_with_even_gate_count(self, circuit, mode):
        folded = fold(circuit, FoldSpec(scale_factor=2.0, mode=mode, seed=5))
        assert len(folded) == 8

    def test_local_left_folds_first_gates(self, circuit):
        folded = fold_local(circuit, FoldSpec(scale_factor=2.0, mode=FoldMode.LOCAL_LEFT))
        assert [g.kind for g in folded.gates[:6]] == [
            GateKind.X, GateKind.X, GateKind.X,
            GateKind.SX, GateKind.SXDG, GateKind.SX,
        ]

    def test_local_right_folds_last_gates(self, circuit):
        folded = fold_local(circuit, FoldSpec(scale_factor=2.0, mode=FoldMode.LOCAL_RIGHT))
        assert folded.gates[:2] == circuit.gates[:2]
        assert len(folded) == 8

    def test_local_random_is_reproducible(self, circuit):
        spec = FoldSpec(scale_factor=2.0, mode=FoldMode.LOCAL_RANDOM, seed=42)
        assert fold(circuit, spec) == fold(circuit, spec)

    def test_local_all_rounds_folds(self, circuit):
        """Test que local_all pliega todas las compuertas el mismo número de veces."""
        folded = fold(circuit, FoldSpec(scale_factor=2.0, mode=FoldMode.LOCAL_ALL))
        assert len(folded) == 3 * len(circuit)

    def test_fold_global_structure(self, circuit):
        folded = fold_global(circuit, 1)
        assert folded.gates == circuit.gates + circuit.inverse().gates + circuit.gates

    def test_negative_folds_rejected(self, circuit):
        with pytest.raises(ValueError):
            fold_global(circuit, -1)

    def test_scale_factor_below_one_rejected(self):
        with pytest.raises(ValueError):
            FoldSpec(scale_factor=0.5)

    def test_empty_circuit(self):
        empty = Circuit(1, ())
        folded = fold(empty, FoldSpec(scale_factor=3.0, mode=FoldMode.LOCAL_RANDOM))
        assert len(folded) == 0
        assert achieved_scale_factor(empty, folded) == 1.0

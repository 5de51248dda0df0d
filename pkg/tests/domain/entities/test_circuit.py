import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../../')))

import numpy as np
import pytest

from domain.entities.circuit import Circuit, Gate, GateKind


class TestGate:
    """Test cases for Gate validation and inverses."""

    def test_parametric_gate_requires_angle(self):
        with pytest.raises(ValueError):
            Gate(GateKind.RZ, (0,))

    def test_fixed_gate_rejects_angle(self):
        with pytest.raises(ValueError):
            Gate(GateKind.X, (0,), 0.1)

    def test_cx_needs_two_distinct_qubits(self):
        with pytest.raises(ValueError):
            Gate(GateKind.CX, (1, 1))
        with pytest.raises(ValueError):
            Gate(GateKind.CX, (0,))

    @pytest.mark.parametrize("gate", [
        Gate(GateKind.SX, (0,)),
        Gate(GateKind.SXDG, (0,)),
        Gate(GateKind.RZ, (0,), 0.37),
        Gate(GateKind.RX, (0,), -1.1),
        Gate(GateKind.RY, (0,), 2.2),
        Gate(GateKind.H, (0,)),
        Gate(GateKind.X, (0,)),
    ])
    def test_inverse_is_matrix_inverse(self, gate):
        """Test que G†·G es la identidad para cada tipo de compuerta."""
        product = gate.inverse().matrix() @ gate.matrix()
        np.testing.assert_allclose(product, np.eye(2), atol=1e-12)

    def test_sx_squares_to_x(self):
        sx = Gate(GateKind.SX, (0,)).matrix()
        np.testing.assert_allclose(sx @ sx, Gate(GateKind.X, (0,)).matrix(), atol=1e-12)

    def test_dump_and_parse(self):
        gate = Gate(GateKind.RZ, (2,), 0.125)
        assert Gate.parse(gate.dump()) == gate


class TestCircuit:
    """Test cases for Circuit."""

    def test_rejects_out_of_range_qubits(self):
        with pytest.raises(ValueError):
            Circuit(2, (Gate(GateKind.X, (2,)),))

    def test_inverse_reverses_order(self):
        circuit = Circuit(2, (Gate(GateKind.H, (0,)), Gate(GateKind.CX, (0, 1)), Gate(GateKind.SX, (1,))))
        inverse = circuit.inverse()
        assert [g.kind for g in inverse] == [GateKind.SXDG, GateKind.CX, GateKind.H]

    def test_count_ops(self):
        circuit = Circuit(2, (Gate(GateKind.CX, (0, 1)), Gate(GateKind.CX, (1, 0)), Gate(GateKind.X, (0,))))
        assert circuit.count_ops() == {"CX": 2, "X": 1}
        assert circuit.cx_count == 2

    def test_circuits_are_hashable(self):
        a = Circuit(1, (Gate(GateKind.RZ, (0,), 0.5),))
        b = Circuit(1, (Gate(GateKind.RZ, (0,), 0.5),))
        assert a == b and hash(a) == hash(b)

    def test_text_round_trip(self):
        circuit = Circuit(3, (Gate(GateKind.X, (0,)), Gate(GateKind.CX, (0, 2)), Gate(GateKind.RZ, (2,), -0.75)))
        assert Circuit.parse(3, circuit.dump()) == circuit

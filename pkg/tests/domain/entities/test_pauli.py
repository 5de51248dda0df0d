import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../../')))

import numpy as np
import pytest

from domain.entities.pauli import PauliString, PauliSum


class TestPauliString:
    """Test cases for PauliString."""

    def test_rejects_invalid_characters(self):
        """Test que una cadena con caracteres fuera de IXYZ es rechazada."""
        with pytest.raises(ValueError):
            PauliString("XAZ")

    def test_rejects_empty_string(self):
        with pytest.raises(ValueError):
            PauliString("")

    def test_support_and_identity(self):
        assert PauliString("IXIZ").support == (1, 3)
        assert PauliString.identity(3).is_identity()
        assert PauliString.from_sparse(4, {0: "Y", 2: "Z"}).ops == "YIZI"

    def test_from_sparse_out_of_range(self):
        with pytest.raises(ValueError):
            PauliString.from_sparse(2, {2: "X"})

    @pytest.mark.parametrize("a,b,phase,result", [
        ("X", "Y", 1j, "Z"),
        ("Y", "X", -1j, "Z"),
        ("Z", "X", 1j, "Y"),
        ("Y", "Z", 1j, "X"),
        ("X", "X", 1, "I"),
    ])
    def test_single_qubit_products(self, a, b, phase, result):
        """Test que el producto de una sola posición sigue el álgebra de Pauli."""
        got_phase, got = PauliString(a).multiply(PauliString(b))
        assert got_phase == phase
        assert got.ops == result

    def test_product_matches_matrices(self):
        a, b = PauliString("XYZI"), PauliString("YYXZ")
        phase, product = a.multiply(b)
        np.testing.assert_allclose(phase * product.to_matrix(), a.to_matrix() @ b.to_matrix(), atol=1e-12)

    def test_commutation(self):
        assert PauliString("XX").commutes_with(PauliString("YY"))
        assert not PauliString("XI").commutes_with(PauliString("ZI"))

    def test_qubit_zero_is_most_significant(self):
        """Test que el qubit 0 es el factor de Kronecker de la izquierda."""
        z0 = PauliString("ZI").to_matrix()
        np.testing.assert_allclose(np.diag(z0).real, [1, 1, -1, -1])


class TestPauliSum:
    """Test cases for PauliSum canonical form and arithmetic."""

    def test_merges_and_prunes_terms(self):
        total = PauliSum.from_terms(2, [(0.5, "XZ"), (0.25, "XZ"), (1e-14, "YY"), (1.0, "II")])
        assert len(total) == 2
        assert total.coefficient("XZ") == pytest.approx(0.75)
        assert total.coefficient("YY") == 0

    def test_terms_sorted_by_string(self):
        total = PauliSum.from_terms(2, [(1.0, "ZZ"), (1.0, "IX"), (1.0, "XI")])
        assert [s.ops for _, s in total] == ["IX", "XI", "ZZ"]

    def test_cancellation_gives_zero(self):
        a = PauliSum.from_terms(1, [(1.0, "X")])
        assert len(a - a) == 0

    def test_product_matches_matrices(self):
        a = PauliSum.from_terms(2, [(0.3, "XI"), (-1.2j, "ZY")])
        b = PauliSum.from_terms(2, [(2.0, "IZ"), (0.5, "YY")])
        np.testing.assert_allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix(), atol=1e-12)

    def test_adjoint_and_hermiticity(self):
        hermitian = PauliSum.from_terms(2, [(0.7, "XX"), (-0.1, "ZI")])
        anti = hermitian.scale(1j)
        assert hermitian.is_hermitian()
        assert anti.is_anti_hermitian()
        np.testing.assert_allclose(anti.adjoint().to_matrix(), anti.to_matrix().conj().T, atol=1e-12)

    def test_identity_coefficient(self):
        total = PauliSum.from_terms(2, [(-0.09, "II"), (0.17, "ZI")])
        assert total.identity_coefficient == pytest.approx(-0.09)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            PauliSum.from_terms(2, [(1.0, "XXX")])
        with pytest.raises(ValueError):
            PauliSum.zero(2) + PauliSum.zero(3)

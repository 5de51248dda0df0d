"""
Entidad de matriz densidad.
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Estado mixto de n qubits como matriz compleja 2^n x 2^n.

    La matriz se marca como de solo lectura; los canales devuelven copias nuevas.
    """
    n_qubits: int
    data: np.ndarray

    def __post_init__(self):
        dim = 2 ** self.n_qubits
        data = np.array(self.data, dtype=np.complex128)
        if data.shape != (dim, dim):
            raise ValueError(f"Forma {data.shape} incompatible con {self.n_qubits} qubits")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def zero_state(cls, n_qubits: int) -> "DensityMatrix":
        dim = 2 ** n_qubits
        data = np.zeros((dim, dim), dtype=np.complex128)
        data[0, 0] = 1.0
        return cls(n_qubits, data)

    @classmethod
    def from_statevector(cls, statevector: np.ndarray) -> "DensityMatrix":
        psi = np.asarray(statevector, dtype=np.complex128).reshape(-1)
        n_qubits = int(round(np.log2(psi.size)))
        return cls(n_qubits, np.outer(psi, psi.conj()))

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def purity(self) -> float:
        return float(np.real(np.trace(self.data @ self.data)))

    def probabilities(self) -> np.ndarray:
        """Diagonal real en la base computacional (qubit 0 más significativo)."""
        return np.real(np.diag(self.data)).copy()

    def min_eigenvalue(self) -> float:
        hermitian = 0.5 * (self.data + self.data.conj().T)
        return float(np.linalg.eigvalsh(hermitian)[0])

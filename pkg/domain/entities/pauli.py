"""
Entidades de operadores de Pauli.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

import numpy as np

PAULI_LABELS = "IXYZ"

PAULI_MATRICES: Dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

# (a, b) -> (fase, resultado) para el producto a·b de un solo qubit
_SINGLE_PRODUCT: Dict[Tuple[str, str], Tuple[complex, str]] = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}

PRUNE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PauliString:
    """
    Cadena de Pauli sobre n qubits; el qubit 0 es el carácter de la izquierda.
    """
    ops: str

    def __post_init__(self):
        if not self.ops:
            raise ValueError("La cadena de Pauli no puede estar vacía")
        invalid = set(self.ops) - set(PAULI_LABELS)
        if invalid:
            raise ValueError(f"Caracteres de Pauli inválidos: {sorted(invalid)}")

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls("I" * n_qubits)

    @classmethod
    def from_sparse(cls, n_qubits: int, ops: Dict[int, str]) -> "PauliString":
        """Construye la cadena a partir de {qubit: etiqueta}."""
        chars = ["I"] * n_qubits
        for qubit, label in ops.items():
            if not 0 <= qubit < n_qubits:
                raise ValueError(f"Qubit {qubit} fuera de rango para {n_qubits} qubits")
            chars[qubit] = label
        return cls("".join(chars))

    @property
    def n_qubits(self) -> int:
        return len(self.ops)

    @property
    def support(self) -> Tuple[int, ...]:
        """Qubits sobre los que actúa un operador distinto de la identidad."""
        return tuple(q for q, label in enumerate(self.ops) if label != "I")

    def is_identity(self) -> bool:
        return not self.support

    def multiply(self, other: "PauliString") -> Tuple[complex, "PauliString"]:
        """Producto self·other, devuelto como (fase, cadena)."""
        if other.n_qubits != self.n_qubits:
            raise ValueError("Las cadenas de Pauli deben tener el mismo número de qubits")
        phase: complex = 1
        chars = []
        for a, b in zip(self.ops, other.ops):
            factor, label = _SINGLE_PRODUCT[(a, b)]
            phase *= factor
            chars.append(label)
        return phase, PauliString("".join(chars))

    def commutes_with(self, other: "PauliString") -> bool:
        anticommuting = sum(
            1 for a, b in zip(self.ops, other.ops)
            if a != "I" and b != "I" and a != b
        )
        return anticommuting % 2 == 0

    def to_matrix(self) -> np.ndarray:
        matrix = np.ones((1, 1), dtype=np.complex128)
        for label in self.ops:
            matrix = np.kron(matrix, PAULI_MATRICES[label])
        return matrix

    def __str__(self) -> str:
        return self.ops


@dataclass(frozen=True)
class PauliSum:
    """
    Suma ponderada de cadenas de Pauli en forma canónica.

    Los términos se fusionan por cadena, se descartan los coeficientes
    con |c| < 1e-12 y se ordenan lexicográficamente por cadena.
    """
    n_qubits: int
    terms: Tuple[Tuple[complex, PauliString], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("Una PauliSum necesita al menos un qubit")
        merged: Dict[str, complex] = {}
        for coefficient, string in self.terms:
            if string.n_qubits != self.n_qubits:
                raise ValueError(
                    f"Cadena {string} con {string.n_qubits} qubits en una suma de {self.n_qubits}"
                )
            merged[string.ops] = merged.get(string.ops, 0) + complex(coefficient)
        canonical = tuple(
            (coefficient, PauliString(ops))
            for ops, coefficient in sorted(merged.items())
            if abs(coefficient) >= PRUNE_TOLERANCE
        )
        object.__setattr__(self, "terms", canonical)

    @classmethod
    def from_terms(cls, n_qubits: int, terms: Iterable[Tuple[complex, str]]) -> "PauliSum":
        return cls(n_qubits, tuple((c, PauliString(s)) for c, s in terms))

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        return cls(n_qubits, ())

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("No se pueden sumar PauliSum de distinto tamaño")
        return PauliSum(self.n_qubits, self.terms + other.terms)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + other.scale(-1)

    def __mul__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("No se pueden multiplicar PauliSum de distinto tamaño")
        products: List[Tuple[complex, PauliString]] = []
        for c_a, s_a in self.terms:
            for c_b, s_b in other.terms:
                phase, string = s_a.multiply(s_b)
                products.append((c_a * c_b * phase, string))
        return PauliSum(self.n_qubits, tuple(products))

    def scale(self, factor: complex) -> "PauliSum":
        return PauliSum(self.n_qubits, tuple((c * factor, s) for c, s in self.terms))

    def adjoint(self) -> "PauliSum":
        return PauliSum(self.n_qubits, tuple((np.conj(c), s) for c, s in self.terms))

    def coefficient(self, ops: str) -> complex:
        for c, s in self.terms:
            if s.ops == ops:
                return c
        return 0j

    @property
    def identity_coefficient(self) -> complex:
        return self.coefficient("I" * self.n_qubits)

    def is_hermitian(self, atol: float = 1e-10) -> bool:
        return all(abs(np.imag(c)) < atol for c, _ in self.terms)

    def is_anti_hermitian(self, atol: float = 1e-10) -> bool:
        return all(abs(np.real(c)) < atol for c, _ in self.terms)

    def real(self) -> "PauliSum":
        """Copia con coeficientes reales; solo tiene sentido para sumas hermíticas."""
        return PauliSum(self.n_qubits, tuple((float(np.real(c)), s) for c, s in self.terms))

    def to_matrix(self) -> np.ndarray:
        dim = 2 ** self.n_qubits
        matrix = np.zeros((dim, dim), dtype=np.complex128)
        for coefficient, string in self.terms:
            matrix += coefficient * string.to_matrix()
        return matrix

    def __str__(self) -> str:
        return " + ".join(f"({c:.6g}) {s}" for c, s in self.terms) or "0"

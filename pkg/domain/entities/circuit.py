"""
Entidades de circuito: compuertas y circuitos ordenados.
"""
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

import numpy as np


class GateKind(str, Enum):
    X = "X"
    SX = "SX"
    SXDG = "SXDG"
    RZ = "RZ"
    CX = "CX"
    H = "H"
    RX = "RX"
    RY = "RY"

    @property
    def is_parametric(self) -> bool:
        return self in (GateKind.RZ, GateKind.RX, GateKind.RY)

    @property
    def n_qubits(self) -> int:
        return 2 if self is GateKind.CX else 1


DEFAULT_BASIS = frozenset({GateKind.CX, GateKind.RZ, GateKind.SX, GateKind.X})

_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=np.complex128)
_FIXED_MATRICES: Dict[GateKind, np.ndarray] = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    GateKind.SX: _SX,
    GateKind.SXDG: _SX.conj().T,
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2),
    GateKind.CX: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
    ),
}

_INVERSE_KIND = {GateKind.SX: GateKind.SXDG, GateKind.SXDG: GateKind.SX}


@dataclass(frozen=True)
class Gate:
    """
    Compuerta sobre uno o dos qubits. En CX, qubits[0] es el control.
    """
    kind: GateKind
    qubits: Tuple[int, ...]
    param: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(self.qubits) != self.kind.n_qubits:
            raise ValueError(f"{self.kind.value} actúa sobre {self.kind.n_qubits} qubit(s), no {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"Qubits repetidos en {self.kind.value}: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"Índices de qubit negativos en {self.kind.value}")
        if self.kind.is_parametric and self.param is None:
            raise ValueError(f"{self.kind.value} requiere un ángulo")
        if not self.kind.is_parametric and self.param is not None:
            raise ValueError(f"{self.kind.value} no admite parámetro")
        if self.param is not None:
            object.__setattr__(self, "param", float(self.param))

    def inverse(self) -> "Gate":
        """Inversa literal: RZ(θ)† = RZ(-θ), SX† = SXDG; X, H y CX son involutivas."""
        if self.kind.is_parametric:
            return Gate(self.kind, self.qubits, -self.param)
        return Gate(_INVERSE_KIND.get(self.kind, self.kind), self.qubits)

    def matrix(self) -> np.ndarray:
        if self.kind is GateKind.RZ:
            half = self.param / 2
            return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=np.complex128)
        if self.kind is GateKind.RX:
            c, s = np.cos(self.param / 2), np.sin(self.param / 2)
            return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
        if self.kind is GateKind.RY:
            c, s = np.cos(self.param / 2), np.sin(self.param / 2)
            return np.array([[c, -s], [s, c]], dtype=np.complex128)
        return _FIXED_MATRICES[self.kind]

    def dump(self) -> str:
        qubits = ",".join(str(q) for q in self.qubits)
        if self.param is None:
            return f"{self.kind.value} {qubits}"
        return f"{self.kind.value} {qubits} {self.param!r}"

    @classmethod
    def parse(cls, line: str) -> "Gate":
        fields = line.split()
        if len(fields) not in (2, 3):
            raise ValueError(f"Línea de compuerta inválida: '{line}'")
        qubits = tuple(int(q) for q in fields[1].split(","))
        param = float(fields[2]) if len(fields) == 3 else None
        return cls(GateKind(fields[0]), qubits, param)


@dataclass(frozen=True)
class Circuit:
    """
    Lista ordenada de compuertas; la primera es la primera en aplicarse.
    """
    n_qubits: int
    gates: Tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if any(q >= self.n_qubits for q in gate.qubits):
                raise ValueError(f"{gate.dump()} fuera de rango para {self.n_qubits} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ValueError("No se pueden concatenar circuitos de distinto tamaño")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.n_qubits, self.gates + tuple(gates))

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, tuple(g.inverse() for g in reversed(self.gates)))

    def count_ops(self) -> Dict[str, int]:
        return dict(sorted(Counter(g.kind.value for g in self.gates).items()))

    @property
    def cx_count(self) -> int:
        return sum(1 for g in self.gates if g.kind is GateKind.CX)

    def kinds(self) -> frozenset:
        return frozenset(g.kind for g in self.gates)

    def dump(self) -> str:
        return "\n".join(g.dump() for g in self.gates)

    @classmethod
    def parse(cls, n_qubits: int, text: str) -> "Circuit":
        gates = [Gate.parse(line) for line in text.splitlines() if line.strip() and not line.startswith("#")]
        return cls(n_qubits, tuple(gates))

"""
Entidades fermiónicas: operadores de segunda cuantización, índices de excitación
y el determinante de referencia.
"""
from dataclasses import dataclass, field
from typing import Iterable, Tuple

# (índice de espín-orbital, True si es creación)
Mode = Tuple[int, bool]


@dataclass(frozen=True)
class FermionOperator:
    """
    Suma de productos de operadores de escalera.

    Cada producto se lee de izquierda a derecha como se escribe; el operador
    de la derecha es el primero que actúa sobre el estado.
    """
    products: Tuple[Tuple[complex, Tuple[Mode, ...]], ...] = field(default_factory=tuple)

    def __post_init__(self):
        for _, modes in self.products:
            for index, _ in modes:
                if index < 0:
                    raise ValueError(f"Índice de espín-orbital negativo: {index}")

    @classmethod
    def product(cls, coefficient: complex, modes: Iterable[Mode]) -> "FermionOperator":
        return cls(((coefficient, tuple(modes)),))

    def __add__(self, other: "FermionOperator") -> "FermionOperator":
        return FermionOperator(self.products + other.products)

    def __sub__(self, other: "FermionOperator") -> "FermionOperator":
        return self + other.scale(-1)

    def scale(self, factor: complex) -> "FermionOperator":
        return FermionOperator(tuple((c * factor, modes) for c, modes in self.products))

    def adjoint(self) -> "FermionOperator":
        """Conjugado hermítico: se invierte el orden y se intercambia creación/aniquilación."""
        return FermionOperator(tuple(
            (complex(c).conjugate(), tuple((index, not creation) for index, creation in reversed(modes)))
            for c, modes in self.products
        ))

    @property
    def max_index(self) -> int:
        indices = [index for _, modes in self.products for index, _ in modes]
        return max(indices) if indices else -1

    def __str__(self) -> str:
        parts = []
        for c, modes in self.products:
            ops = " ".join(f"a{'†' if creation else ''}{index}" for index, creation in modes)
            parts.append(f"({c:.6g}) {ops}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class ExcitationIndex:
    """
    Multi-índice partícula-hueco μ: ocupados {i,j,...} -> virtuales {a,b,...}.
    """
    occupied: Tuple[int, ...]
    virtual: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "occupied", tuple(sorted(self.occupied)))
        object.__setattr__(self, "virtual", tuple(sorted(self.virtual)))
        if len(self.occupied) != len(self.virtual):
            raise ValueError("Una excitación necesita el mismo número de ocupados y virtuales")
        if not self.occupied:
            raise ValueError("Una excitación no puede estar vacía")
        if set(self.occupied) & set(self.virtual):
            raise ValueError("Los índices ocupados y virtuales deben ser disjuntos")
        if len(set(self.occupied)) != len(self.occupied) or len(set(self.virtual)) != len(self.virtual):
            raise ValueError("Índices repetidos en la excitación")

    @property
    def rank(self) -> int:
        return len(self.occupied)

    def label(self) -> str:
        occ = ",".join(str(i) for i in self.occupied)
        vir = ",".join(str(a) for a in self.virtual)
        return f"{occ}->{vir}"


@dataclass(frozen=True)
class ReferenceState:
    """
    Determinante de Hartree-Fock como conjunto de espín-orbitales ocupados.

    Un espín-orbital ocupado corresponde al qubit en |1>.
    """
    n_qubits: int
    occupied: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "occupied", tuple(sorted(set(self.occupied))))
        if any(not 0 <= q < self.n_qubits for q in self.occupied):
            raise ValueError(f"Ocupación {self.occupied} fuera de rango para {self.n_qubits} qubits")

    @classmethod
    def from_electron_count(cls, n_qubits: int, n_electrons: int) -> "ReferenceState":
        """
        Llena los orbitales más bajos en orden por bloques (todos los α, luego todos los β).
        """
        if n_qubits % 2:
            raise ValueError("El orden por bloques requiere un número par de espín-orbitales")
        if not 0 <= n_electrons <= n_qubits:
            raise ValueError(f"{n_electrons} electrones no caben en {n_qubits} espín-orbitales")
        half = n_qubits // 2
        n_alpha = (n_electrons + 1) // 2
        n_beta = n_electrons // 2
        occupied = tuple(range(n_alpha)) + tuple(half + k for k in range(n_beta))
        return cls(n_qubits, occupied)

    @classmethod
    def from_bitstring(cls, bits: str) -> "ReferenceState":
        if set(bits) - {"0", "1"}:
            raise ValueError(f"Cadena de ocupación inválida: {bits}")
        return cls(len(bits), tuple(q for q, b in enumerate(bits) if b == "1"))

    @property
    def n_electrons(self) -> int:
        return len(self.occupied)

    def bitstring(self) -> str:
        return "".join("1" if q in self.occupied else "0" for q in range(self.n_qubits))

    def basis_index(self) -> int:
        """Índice del determinante en el vector de estado (qubit 0 más significativo)."""
        return sum(1 << (self.n_qubits - 1 - q) for q in self.occupied)

    def excite(self, mu: ExcitationIndex) -> "ReferenceState":
        """Determinante |Φ_μ> obtenido al mover los electrones de μ.occupied a μ.virtual."""
        if not set(mu.occupied) <= set(self.occupied):
            raise ValueError(f"La excitación {mu.label()} aniquila orbitales vacíos")
        if set(mu.virtual) & set(self.occupied):
            raise ValueError(f"La excitación {mu.label()} crea en orbitales ocupados")
        occupied = (set(self.occupied) - set(mu.occupied)) | set(mu.virtual)
        return ReferenceState(self.n_qubits, tuple(occupied))

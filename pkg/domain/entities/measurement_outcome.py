"""
Entidad de resultado de medición por disparos.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable


@dataclass(frozen=True)
class MeasurementOutcome:
    """Conteos por cadena de bits (qubit 0 a la izquierda) para `shots` disparos."""
    shots: int
    counts: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        total = sum(self.counts.values())
        if total != self.shots:
            raise ValueError(f"Los conteos suman {total} pero se registraron {self.shots} disparos")

    def probability(self, bitstring: str) -> float:
        return self.counts.get(bitstring, 0) / self.shots if self.shots else 0.0

    def parity_expectation(self, support: Iterable[int]) -> float:
        """
        Promedio de (−1)^paridad de los bits de `support` sobre todos los disparos,
        es decir el estimador de ⟨P⟩ para una cadena de Pauli medida en su base propia.

        Raises:
            ValueError: Si no hay disparos
        """
        if not self.shots:
            raise ValueError("No hay disparos para estimar el valor esperado")
        support = tuple(support)
        total = 0
        for bits, count in self.counts.items():
            parity = sum(bits[q] == "1" for q in support) % 2
            total += -count if parity else count
        return total / self.shots

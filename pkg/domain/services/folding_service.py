"""
Plegado unitario (folding) para amplificar el ruido sin cambiar el unitario ideal.
"""
import math
from typing import List, Set, Tuple

import numpy as np

from domain.entities.circuit import Circuit, Gate
from domain.schemas import FoldMode, FoldSpec
import logging

logger = logging.getLogger(__name__)


def _fold_counts(scale_factor: float, n_gates: int) -> Tuple[int, int]:
    """(n, s): pliegues completos y compuertas extra para la parte fraccionaria."""
    if scale_factor < 1.0:
        raise ValueError(f"El factor de escala debe ser >= 1, no {scale_factor}")
    n = int(math.floor((scale_factor - 1.0) / 2.0 + 1e-12))
    remainder = n_gates * (scale_factor - (2 * n + 1)) / 2.0
    s = int(math.floor(remainder + 0.5))
    return n, min(max(s, 0), n_gates)


def _folded_gate(gate: Gate, times: int) -> List[Gate]:
    # G → G(G†G)^times
    return [gate] + [gate.inverse(), gate] * times


def fold_global(circuit: Circuit, n: int) -> Circuit:
    """
    U → U(U†U)^n; el número de compuertas pasa a (2n+1)·g.

    Raises:
        ValueError: Si n < 0
    """
    if n < 0:
        raise ValueError(f"El número de pliegues debe ser >= 0, no {n}")
    inverse = circuit.inverse()
    gates = circuit.gates + (inverse.gates + circuit.gates) * n
    return Circuit(circuit.n_qubits, gates)


def fold_global_partial(circuit: Circuit, scale_factor: float) -> Circuit:
    """
    Plegado global con λ fraccionario: U(U†U)^n seguido de L†L, con L las últimas s compuertas.
    """
    n, s = _fold_counts(scale_factor, len(circuit))
    folded = fold_global(circuit, n)
    if s == 0:
        return folded
    tail = Circuit(circuit.n_qubits, circuit.gates[len(circuit) - s:])
    return folded + tail.inverse() + tail


def _select_extra(mode: FoldMode, n_gates: int, s: int, seed: int) -> Set[int]:
    if s == 0:
        return set()
    if mode is FoldMode.LOCAL_LEFT:
        return set(range(s))
    if mode is FoldMode.LOCAL_RIGHT:
        return set(range(n_gates - s, n_gates))
    if mode is FoldMode.LOCAL_RANDOM:
        rng = np.random.default_rng(seed)
        return {int(i) for i in rng.choice(n_gates, size=s, replace=False)}
    raise ValueError(f"Modo de plegado local desconocido: {mode}")


def fold_local(circuit: Circuit, spec: FoldSpec) -> Circuit:
    """
    Plegado compuerta a compuerta G → G(G†G)^n con n = floor((λ−1)/2).

    La parte fraccionaria añade un pliegue extra a s = round(g(λ−(2n+1))/2) compuertas
    elegidas por el modo (izquierda, derecha o aleatorio con semilla). En local_all todas
    las compuertas reciben el mismo número de pliegues, el entero más cercano a (λ−1)/2.
    """
    g = len(circuit)
    if g == 0:
        return circuit
    if spec.mode is FoldMode.LOCAL_ALL:
        times = int(math.floor((spec.scale_factor - 1.0) / 2.0 + 0.5))
        gates = [folded for gate in circuit.gates for folded in _folded_gate(gate, times)]
        return Circuit(circuit.n_qubits, tuple(gates))

    n, s = _fold_counts(spec.scale_factor, g)
    extra = _select_extra(spec.mode, g, s, spec.seed)
    gates: List[Gate] = []
    for index, gate in enumerate(circuit.gates):
        gates.extend(_folded_gate(gate, n + (1 if index in extra else 0)))
    return Circuit(circuit.n_qubits, tuple(gates))


def fold(circuit: Circuit, spec: FoldSpec) -> Circuit:
    """Aplica el plegado indicado por spec.mode."""
    if spec.mode is FoldMode.GLOBAL:
        folded = fold_global_partial(circuit, spec.scale_factor)
    else:
        folded = fold_local(circuit, spec)
    logger.debug(
        f"Plegado {spec.mode.value} λ={spec.scale_factor}: {len(circuit)} -> {len(folded)} compuertas "
        f"(λ̂={achieved_scale_factor(circuit, folded):.4f})"
    )
    return folded


def achieved_scale_factor(original: Circuit, folded: Circuit) -> float:
    """λ̂ = g'/g; un circuito vacío no se puede amplificar y reporta 1."""
    if len(original) == 0:
        return 1.0
    return len(folded) / len(original)

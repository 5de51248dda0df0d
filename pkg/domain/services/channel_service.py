"""
Canales de ruido sobre matrices densidad: despolarizante, relajación térmica,
ruido por compuerta y confusión de lectura.

Los canales se representan como superoperadores locales S (vectorización por filas,
vec(AρB) = (A ⊗ Bᵀ)·vec(ρ)) y se aplican solo sobre los ejes de los qubits afectados.
"""
import math
from functools import reduce
from itertools import product
from typing import List, Sequence

import numpy as np

from domain.entities.circuit import Gate
from domain.entities.density_matrix import DensityMatrix
from domain.entities.pauli import PAULI_MATRICES
from domain.schemas import NoiseModel
import logging

logger = logging.getLogger(__name__)

NS_PER_US = 1000.0


def kraus_superoperator(kraus: Sequence[np.ndarray]) -> np.ndarray:
    """S = Σ_k K_k ⊗ K_k*."""
    return sum(np.kron(k, k.conj()) for k in kraus)


def unitary_superoperator(unitary: np.ndarray) -> np.ndarray:
    return np.kron(unitary, unitary.conj())


def apply_superoperator(data: np.ndarray, superop: np.ndarray, qubits: Sequence[int], n_qubits: int) -> np.ndarray:
    """
    Aplica un superoperador de k qubits sobre los qubits indicados de una matriz 2^n x 2^n.
    """
    k = len(qubits)
    dim = 2 ** n_qubits
    axes = list(qubits) + [n_qubits + q for q in qubits]
    tensor = np.moveaxis(data.reshape([2] * (2 * n_qubits)), axes, range(2 * k))
    moved_shape = tensor.shape
    updated = (superop @ tensor.reshape(4 ** k, -1)).reshape(moved_shape)
    return np.moveaxis(updated, range(2 * k), axes).reshape(dim, dim)


def depolarizing_kraus(p: float, n_qubits: int) -> List[np.ndarray]:
    """
    Forma de Pauli del canal ρ → (1−p)ρ + p·I/d: K_0 ∝ I, K_P ∝ P para cada Pauli no trivial.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"La probabilidad despolarizante debe estar en [0,1], no {p}")
    n_paulis = 4 ** n_qubits
    operators = []
    for labels in product("IXYZ", repeat=n_qubits):
        matrix = reduce(np.kron, (PAULI_MATRICES[label] for label in labels))
        if set(labels) == {"I"}:
            operators.append(math.sqrt(1.0 - p + p / n_paulis) * matrix)
        else:
            operators.append(math.sqrt(p / n_paulis) * matrix)
    return operators


def amplitude_damping_kraus(gamma: float) -> List[np.ndarray]:
    return [
        np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]], dtype=np.complex128),
        np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]], dtype=np.complex128),
    ]


def phase_damping_kraus(lam: float) -> List[np.ndarray]:
    return [
        np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - lam)]], dtype=np.complex128),
        np.array([[0.0, 0.0], [0.0, math.sqrt(lam)]], dtype=np.complex128),
    ]


def thermal_relaxation_superoperator(duration: float, t1: float, t2: float) -> np.ndarray:
    """
    Amortiguamiento de amplitud γ = 1 − e^{−t/T1} seguido de desfase puro
    λ = 1 − e^{−2t/Tφ}, con 1/Tφ = 1/T2 − 1/(2·T1).

    Args:
        duration: Duración de la compuerta en ns
        t1: Tiempo T1 en µs (math.inf desactiva)
        t2: Tiempo T2 en µs (math.inf desactiva)

    Raises:
        ValueError: Si duration < 0 o t2 > 2·t1
    """
    if duration < 0:
        raise ValueError(f"La duración no puede ser negativa: {duration}")
    if t1 <= 0 or t2 <= 0:
        raise ValueError("T1 y T2 deben ser positivos")
    if t2 > 2 * t1:
        raise ValueError(f"Relajación no física: t2={t2} > 2·t1={2 * t1}")
    time_us = duration / NS_PER_US
    gamma = 0.0 if math.isinf(t1) else 1.0 - math.exp(-time_us / t1)
    dephasing_rate = (0.0 if math.isinf(t2) else 1.0 / t2) - (0.0 if math.isinf(t1) else 1.0 / (2 * t1))
    lam = 1.0 - math.exp(-2.0 * time_us * max(dephasing_rate, 0.0))
    amplitude = kraus_superoperator(amplitude_damping_kraus(gamma))
    dephasing = kraus_superoperator(phase_damping_kraus(lam))
    return dephasing @ amplitude


def apply_depolarizing(rho: DensityMatrix, qubits: Sequence[int], p: float) -> DensityMatrix:
    """
    Raises:
        ValueError: Si p está fuera de [0,1]
    """
    superop = kraus_superoperator(depolarizing_kraus(p, len(qubits)))
    return DensityMatrix(rho.n_qubits, apply_superoperator(rho.data, superop, qubits, rho.n_qubits))


def apply_thermal_relaxation(rho: DensityMatrix, qubit: int, duration: float, t1: float, t2: float) -> DensityMatrix:
    """Relajación hacia |0⟩ durante `duration` ns con T1/T2 en µs."""
    superop = thermal_relaxation_superoperator(duration, t1, t2)
    return DensityMatrix(rho.n_qubits, apply_superoperator(rho.data, superop, (qubit,), rho.n_qubits))


def noisy_gate_superoperator(gate: Gate, model: NoiseModel) -> np.ndarray:
    """
    Superoperador local de una compuerta ruidosa: unitario, luego despolarizante
    (1q o 2q) y luego relajación térmica en cada qubit durante la duración de la compuerta.

    Raises:
        MissingDurationError: Si el modelo no define duración para el tipo de compuerta
    """
    k = len(gate.qubits)
    superop = unitary_superoperator(gate.matrix())
    p = model.p_depol_2q if k == 2 else model.p_depol_1q
    if p > 0:
        superop = kraus_superoperator(depolarizing_kraus(p, k)) @ superop
    if model.has_relaxation:
        duration = model.duration_of(gate.kind)
        relax = [
            thermal_relaxation_superoperator(duration, model.t1_of(q), model.t2_of(q))
            for q in gate.qubits
        ]
        superop = _local_product(relax) @ superop
    return superop


def _local_product(single_qubit_superops: List[np.ndarray]) -> np.ndarray:
    """Combina superoperadores de un qubit en uno de k qubits con el orden de ejes (r…, c…)."""
    k = len(single_qubit_superops)
    if k == 1:
        return single_qubit_superops[0]
    # S_q tiene ejes (r'_q, c'_q, r_q, c_q); se reordenan a (r'…, c'…, r…, c…)
    tensors = [s.reshape(2, 2, 2, 2) for s in single_qubit_superops]
    combined = reduce(np.multiply.outer, tensors)
    out_rows = [4 * q for q in range(k)]
    out_cols = [4 * q + 1 for q in range(k)]
    in_rows = [4 * q + 2 for q in range(k)]
    in_cols = [4 * q + 3 for q in range(k)]
    combined = combined.transpose(out_rows + out_cols + in_rows + in_cols)
    return combined.reshape(4 ** k, 4 ** k)


def apply_gate_with_noise(rho: DensityMatrix, gate: Gate, model: NoiseModel) -> DensityMatrix:
    superop = noisy_gate_superoperator(gate, model)
    return DensityMatrix(rho.n_qubits, apply_superoperator(rho.data, superop, gate.qubits, rho.n_qubits))


def apply_readout_confusion(ideal_probs: np.ndarray, model: NoiseModel) -> np.ndarray:
    """
    Aplica la matriz de confusión de cada qubit a una distribución sobre cadenas de bits
    (qubit 0 más significativo). Filas: resultado verdadero, columnas: resultado registrado.
    """
    probs = np.asarray(ideal_probs, dtype=float)
    n_qubits = int(round(math.log2(probs.size)))
    if not model.has_readout_error:
        return probs.copy()
    tensor = probs.reshape([2] * n_qubits)
    for qubit in range(n_qubits):
        confusion = model.readout_of(qubit)
        tensor = np.moveaxis(np.tensordot(confusion, tensor, axes=([0], [qubit])), 0, qubit)
    noisy = np.clip(tensor.reshape(-1), 0.0, None)
    return noisy / noisy.sum()

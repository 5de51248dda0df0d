"""
Simulador de matriz densidad con el modelo de ruido de tres partes y estimación
de valores esperados por disparos.
"""
from collections import OrderedDict
from typing import Dict, Union

import numpy as np

from domain.entities.circuit import Circuit, Gate
from domain.entities.density_matrix import DensityMatrix
from domain.entities.measurement_outcome import MeasurementOutcome
from domain.entities.pauli import PauliString, PauliSum
from domain.schemas import NoiseModel
from domain.services.channel_service import (
    apply_readout_confusion,
    apply_superoperator,
    noisy_gate_superoperator,
    unitary_superoperator,
)
from domain.services.simulation_configuration import DEFAULT_MAX_QUBITS
import logging

logger = logging.getLogger(__name__)

SeedLike = Union[None, int, np.random.SeedSequence, np.random.Generator]

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
_S_DAGGER = np.diag([1, -1j]).astype(np.complex128)
# rotaciones que llevan el autobasis de X e Y a la base computacional
_MEASUREMENT_ROTATIONS = {
    "X": unitary_superoperator(_HADAMARD),
    "Y": unitary_superoperator(_HADAMARD @ _S_DAGGER),
}
_CACHED_MAX_QUBITS = 8


class QubitLimitExceededError(ValueError):
    """Raised when a circuit needs more qubits than the configured cap."""
    pass


def _check_qubits(n_qubits: int, max_qubits: int):
    if n_qubits > max_qubits:
        raise QubitLimitExceededError(
            f"{n_qubits} qubits exceden el máximo permitido de {max_qubits} para la simulación densa"
        )


def _apply_matrix(tensor: np.ndarray, gate: Gate) -> np.ndarray:
    k = len(gate.qubits)
    matrix = gate.matrix().reshape([2] * (2 * k))
    updated = np.tensordot(matrix, tensor, axes=(list(range(k, 2 * k)), list(gate.qubits)))
    return np.moveaxis(updated, list(range(k)), list(gate.qubits))


def statevector(circuit: Circuit, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Vector de estado ideal partiendo de |0…0⟩ (qubit 0 más significativo)."""
    _check_qubits(circuit.n_qubits, max_qubits)
    tensor = np.zeros([2] * circuit.n_qubits, dtype=np.complex128)
    tensor[(0,) * circuit.n_qubits] = 1.0
    for gate in circuit.gates:
        tensor = _apply_matrix(tensor, gate)
    return tensor.reshape(-1)


def circuit_unitary(circuit: Circuit, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Matriz unitaria ideal del circuito."""
    _check_qubits(circuit.n_qubits, max_qubits)
    dim = 2 ** circuit.n_qubits
    # el eje final recorre las columnas de la identidad
    tensor = np.eye(dim, dtype=np.complex128).reshape([2] * circuit.n_qubits + [dim])
    for gate in circuit.gates:
        tensor = _apply_matrix(tensor, gate)
    return tensor.reshape(dim, dim)


def pauli_eigenvalues(string: PauliString) -> np.ndarray:
    """(−1)^paridad de los bits del soporte para cada índice de la base computacional."""
    n = string.n_qubits
    indices = np.arange(2 ** n)
    parity = np.zeros(2 ** n, dtype=int)
    for qubit in string.support:
        parity ^= (indices >> (n - 1 - qubit)) & 1
    return 1.0 - 2.0 * parity


class DensityMatrixSimulator:
    """
    Simulador denso para un modelo de ruido fijo.

    Guarda en caché los superoperadores por compuerta y las matrices densidad finales
    por circuito, de modo que las repeticiones de una misma medición no vuelven a simular.
    """

    def __init__(self, noise_model: NoiseModel, max_qubits: int = DEFAULT_MAX_QUBITS, cache_size: int = 64):
        self.noise_model = noise_model
        self.max_qubits = max_qubits
        self.cache_size = cache_size
        self._gate_cache: Dict[Gate, np.ndarray] = {}
        self._state_cache: "OrderedDict[Circuit, DensityMatrix]" = OrderedDict()

    def _gate_superoperator(self, gate: Gate) -> np.ndarray:
        superop = self._gate_cache.get(gate)
        if superop is None:
            superop = noisy_gate_superoperator(gate, self.noise_model)
            self._gate_cache[gate] = superop
        return superop

    def simulate(self, circuit: Circuit) -> DensityMatrix:
        """
        Matriz densidad final tras aplicar cada compuerta con su ruido.

        Raises:
            QubitLimitExceededError: Si el circuito supera el máximo de qubits
            MissingDurationError: Si alguna compuerta no tiene duración en el modelo
        """
        _check_qubits(circuit.n_qubits, self.max_qubits)
        cached = self._state_cache.get(circuit)
        if cached is not None:
            self._state_cache.move_to_end(circuit)
            return cached

        if self.noise_model.p_depol_1q == 0 and self.noise_model.p_depol_2q == 0 and not self.noise_model.has_relaxation:
            rho = DensityMatrix.from_statevector(statevector(circuit, self.max_qubits))
        else:
            data = DensityMatrix.zero_state(circuit.n_qubits).data.copy()
            for gate in circuit.gates:
                data = apply_superoperator(data, self._gate_superoperator(gate), gate.qubits, circuit.n_qubits)
            rho = DensityMatrix(circuit.n_qubits, data)

        if circuit.n_qubits <= _CACHED_MAX_QUBITS:
            self._state_cache[circuit] = rho
            if len(self._state_cache) > self.cache_size:
                self._state_cache.popitem(last=False)
        return rho

    def measurement_probabilities(self, rho: DensityMatrix, string: PauliString) -> np.ndarray:
        """
        Distribución registrada al medir en la base propia de `string`: rotación ideal,
        diagonal y confusión de lectura.
        """
        data = rho.data
        for qubit in string.support:
            rotation = _MEASUREMENT_ROTATIONS.get(string.ops[qubit])
            if rotation is not None:
                data = apply_superoperator(data, rotation, (qubit,), rho.n_qubits)
        probs = np.clip(DensityMatrix(rho.n_qubits, data).probabilities(), 0.0, None)
        probs = probs / probs.sum()
        return apply_readout_confusion(probs, self.noise_model)

    def sample(self, rho: DensityMatrix, string: PauliString, shots: int, seed: SeedLike = None) -> MeasurementOutcome:
        """Conteos por cadena de bits al medir `rho` en la base de `string`."""
        rng = np.random.default_rng(seed)
        counts = rng.multinomial(shots, self.measurement_probabilities(rho, string))
        n = rho.n_qubits
        return MeasurementOutcome(
            shots=shots,
            counts={format(i, f"0{n}b"): int(c) for i, c in enumerate(counts) if c},
        )

    def estimate_expectation(
        self,
        circuit: Circuit,
        observable: PauliSum,
        shots: int,
        seed: SeedLike = None,
    ) -> float:
        """
        Estima ⟨O⟩ término a término con `shots` disparos por cadena de Pauli.

        shots = 0 devuelve el valor exacto con la confusión de lectura incluida analíticamente.
        El término identidad se suma de forma exacta.
        """
        if shots < 0:
            raise ValueError(f"El número de disparos no puede ser negativo: {shots}")
        if observable.n_qubits != circuit.n_qubits:
            raise ValueError("El observable y el circuito tienen distinto número de qubits")
        rng = np.random.default_rng(seed)
        rho = self.simulate(circuit)
        value = 0.0
        for coefficient, string in observable.terms:
            weight = float(np.real(coefficient))
            if string.is_identity():
                value += weight
                continue
            if shots == 0:
                value += weight * float(self.measurement_probabilities(rho, string) @ pauli_eigenvalues(string))
            else:
                value += weight * self.sample(rho, string, shots, rng).parity_expectation(string.support)
        return value


def simulate(circuit: Circuit, model: NoiseModel, max_qubits: int = DEFAULT_MAX_QUBITS) -> DensityMatrix:
    return DensityMatrixSimulator(model, max_qubits).simulate(circuit)


def estimate_expectation(
    circuit: Circuit,
    observable: PauliSum,
    model: NoiseModel,
    shots: int,
    seed: SeedLike = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> float:
    return DensityMatrixSimulator(model, max_qubits).estimate_expectation(circuit, observable, shots, seed)


def exact_expectation(circuit: Circuit, observable: PauliSum, max_qubits: int = DEFAULT_MAX_QUBITS) -> float:
    """⟨ψ|O|ψ⟩ del vector de estado ideal."""
    psi = statevector(circuit, max_qubits)
    return float(np.real(np.vdot(psi, observable.to_matrix() @ psi)))

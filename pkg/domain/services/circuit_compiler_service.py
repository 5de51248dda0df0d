"""
Compilación de exponenciales dUCC a circuitos y transpilación a la base {CX, RZ, SX, X}.
"""
from typing import Iterable, List, Sequence

import numpy as np

from domain.entities.circuit import DEFAULT_BASIS, Circuit, Gate, GateKind
from domain.entities.fermion import ExcitationIndex, ReferenceState
from domain.entities.pauli import PauliString, PauliSum
from domain.services.operator_service import kappa_pauli
import logging

logger = logging.getLogger(__name__)

HALF_PI = np.pi / 2
OMEGA_ANGLE = np.pi / 4
_ANGLE_TOLERANCE = 1e-12


class UnsupportedBasisError(ValueError):
    """Raised when the target basis does not contain {CX, RZ, SX, X}."""
    pass


def compile_pauli_exponential(term: PauliString, angle: float) -> Circuit:
    """
    Circuito exacto para exp(−i·(angle/2)·P).

    Cambio de base (H para X, RX(π/2) para Y), escalera de CX hacia el último
    qubit activo, RZ(angle) y el espejo.

    Raises:
        ValueError: Si la cadena es la identidad
    """
    support = term.support
    if not support:
        raise ValueError("La cadena identidad solo aporta una fase global")

    basis_change: List[Gate] = []
    basis_undo: List[Gate] = []
    for qubit in support:
        label = term.ops[qubit]
        if label == "X":
            basis_change.append(Gate(GateKind.H, (qubit,)))
            basis_undo.append(Gate(GateKind.H, (qubit,)))
        elif label == "Y":
            basis_change.append(Gate(GateKind.RX, (qubit,), HALF_PI))
            basis_undo.append(Gate(GateKind.RX, (qubit,), -HALF_PI))

    ladder = [Gate(GateKind.CX, (a, b)) for a, b in zip(support, support[1:])]
    gates = (
        basis_change
        + ladder
        + [Gate(GateKind.RZ, (support[-1],), angle)]
        + list(reversed(ladder))
        + basis_undo
    )
    return Circuit(term.n_qubits, tuple(gates))


def _kappa_exponential(kappa: PauliSum, theta: float) -> List[Gate]:
    # κ = Σ i·b_k P_k y los P_k conmutan: exp(θκ) = Π exp(−i(−2θb_k)/2 P_k)
    gates: List[Gate] = []
    for coefficient, string in kappa.terms:
        if string.is_identity():
            continue
        angle = -2.0 * theta * float(np.imag(coefficient))
        gates.extend(compile_pauli_exponential(string, angle).gates)
    return gates


def reference_preparation(reference: ReferenceState) -> Circuit:
    """Compuertas X sobre los espín-orbitales ocupados."""
    return Circuit(reference.n_qubits, tuple(Gate(GateKind.X, (q,)) for q in reference.occupied))


def build_ansatz_body(pool: Sequence[ExcitationIndex], theta: Sequence[float], n_qubits: int) -> Circuit:
    """Û(θ) = Π_μ exp(θ_μ κ_μ) sin la preparación de la referencia."""
    if len(theta) != len(pool):
        raise ValueError(f"θ tiene {len(theta)} componentes pero el pool tiene {len(pool)}")
    gates: List[Gate] = []
    for mu, value in zip(pool, theta):
        gates.extend(_kappa_exponential(kappa_pauli(mu, n_qubits), float(value)))
    return Circuit(n_qubits, tuple(gates))


def build_ansatz_circuit(
    pool: Sequence[ExcitationIndex],
    theta: Sequence[float],
    reference: ReferenceState,
) -> Circuit:
    """
    Prepara Û(θ)|Φ_o⟩: compuertas X de la referencia y luego las exponenciales del pool en orden.

    Raises:
        ValueError: Si len(theta) != len(pool)
    """
    return reference_preparation(reference) + build_ansatz_body(pool, theta, reference.n_qubits)


def build_omega_circuit(
    pool: Sequence[ExcitationIndex],
    theta: Sequence[float],
    reference: ReferenceState,
    mu: int,
) -> Circuit:
    """
    Prepara Û(θ)·exp((π/4)κ_μ)|Φ_o⟩.

    Raises:
        IndexError: Si μ no indexa un elemento del pool
    """
    if not 0 <= mu < len(pool):
        raise IndexError(f"μ={mu} fuera del pool de tamaño {len(pool)}")
    n_qubits = reference.n_qubits
    rotation = Circuit(n_qubits, tuple(_kappa_exponential(kappa_pauli(pool[mu], n_qubits), OMEGA_ANGLE)))
    return reference_preparation(reference) + rotation + build_ansatz_body(pool, theta, n_qubits)


def build_excited_ansatz_circuit(
    pool: Sequence[ExcitationIndex],
    theta: Sequence[float],
    reference: ReferenceState,
    mu: int,
) -> Circuit:
    """Prepara Û(θ)|Φ_μ⟩ con compuertas X sobre la ocupación excitada."""
    if not 0 <= mu < len(pool):
        raise IndexError(f"μ={mu} fuera del pool de tamaño {len(pool)}")
    excited = reference.excite(pool[mu])
    return reference_preparation(excited) + build_ansatz_body(pool, theta, reference.n_qubits)


def _normalize_angle(angle: float) -> float:
    wrapped = (angle + np.pi) % (2 * np.pi) - np.pi
    return float(wrapped)


def _rz(qubit: int, angle: float) -> List[Gate]:
    angle = _normalize_angle(angle)
    if abs(angle) < _ANGLE_TOLERANCE:
        return []
    return [Gate(GateKind.RZ, (qubit,), angle)]


def zyz_angles(matrix: np.ndarray):
    """
    Ángulos (θ, φ, λ) con U = e^{iγ}·RZ(φ)·RY(θ)·RZ(λ).
    """
    special = matrix / np.sqrt(np.linalg.det(matrix))
    theta = 2.0 * np.arctan2(abs(special[1, 0]), abs(special[0, 0]))
    if abs(special[1, 0]) < _ANGLE_TOLERANCE:
        phi_plus_lam, phi_minus_lam = 2.0 * np.angle(special[1, 1]), 0.0
    elif abs(special[0, 0]) < _ANGLE_TOLERANCE:
        phi_plus_lam, phi_minus_lam = 0.0, 2.0 * np.angle(special[1, 0])
    else:
        phi_plus_lam = 2.0 * np.angle(special[1, 1])
        phi_minus_lam = 2.0 * np.angle(special[1, 0])
    phi = (phi_plus_lam + phi_minus_lam) / 2
    lam = (phi_plus_lam - phi_minus_lam) / 2
    return float(theta), float(phi), float(lam)


def _decompose_single_qubit(gate: Gate) -> List[Gate]:
    qubit = gate.qubits[0]
    if gate.kind is GateKind.H:
        return _rz(qubit, HALF_PI) + [Gate(GateKind.SX, (qubit,))] + _rz(qubit, HALF_PI)
    if gate.kind is GateKind.RX and abs(_normalize_angle(gate.param - HALF_PI)) < _ANGLE_TOLERANCE:
        return [Gate(GateKind.SX, (qubit,))]
    if gate.kind is GateKind.SXDG or (
        gate.kind is GateKind.RX and abs(_normalize_angle(gate.param + HALF_PI)) < _ANGLE_TOLERANCE
    ):
        return _rz(qubit, np.pi) + [Gate(GateKind.SX, (qubit,))] + _rz(qubit, np.pi)
    # RZ(φ)·RY(θ)·RZ(λ) ≅ RZ(φ+π)·SX·RZ(θ+π)·SX·RZ(λ)
    theta, phi, lam = zyz_angles(gate.matrix())
    return (
        _rz(qubit, lam)
        + [Gate(GateKind.SX, (qubit,))]
        + _rz(qubit, theta + np.pi)
        + [Gate(GateKind.SX, (qubit,))]
        + _rz(qubit, phi + np.pi)
    )


def transpile(circuit: Circuit, basis: Iterable[GateKind] = DEFAULT_BASIS) -> Circuit:
    """
    Reescribe el circuito usando solo compuertas de la base; el unitario se preserva
    salvo una fase global.

    Raises:
        UnsupportedBasisError: Si la base no contiene {CX, RZ, SX, X}
    """
    basis = frozenset(GateKind(kind) for kind in basis)
    if not DEFAULT_BASIS <= basis:
        missing = sorted(k.value for k in DEFAULT_BASIS - basis)
        raise UnsupportedBasisError(f"La base debe contener CX, RZ, SX y X; faltan {missing}")

    gates: List[Gate] = []
    for gate in circuit.gates:
        if gate.kind in basis:
            gates.append(gate)
        else:
            gates.extend(_decompose_single_qubit(gate))
    transpiled = Circuit(circuit.n_qubits, tuple(gates))
    logger.debug(f"Transpilado: {len(circuit)} -> {len(transpiled)} compuertas {transpiled.count_ops()}")
    return transpiled

"""
Álgebra de operadores fermiónicos: pool dUCCSD, operadores κ, mapeo de
Jordan-Wigner y denominadores de Møller-Plesset.
"""
from functools import lru_cache
from itertools import combinations
from typing import List, Sequence, Tuple

from domain.entities.fermion import ExcitationIndex, FermionOperator, ReferenceState
from domain.entities.pauli import PauliString, PauliSum
from domain.entities.pqe_state import PQEProblem
import logging

logger = logging.getLogger(__name__)

DEFAULT_DENOMINATOR_FLOOR = 1e-6


class DenominatorTooSmallError(ValueError):
    """Raised when |Δ_μ| falls below the configured floor."""
    pass


def _spin_of(index: int, n_spin_orbitals: int) -> int:
    # orden por bloques: 0 = α, 1 = β
    return 0 if index < n_spin_orbitals // 2 else 1


def generate_ducc_sd_pool(reference: ReferenceState, n_spin_orbitals: int) -> List[ExcitationIndex]:
    """
    Genera todas las excitaciones simples y dobles que conservan número de partículas y espín.

    Args:
        reference: Determinante de referencia
        n_spin_orbitals: Número de espín-orbitales (qubits)

    Returns:
        Simples primero y luego dobles, cada grupo en orden lexicográfico

    Raises:
        ValueError: Si no se cumple n_spin_orbitals >= electrones >= 1
    """
    n_electrons = reference.n_electrons
    if not n_spin_orbitals >= n_electrons >= 1:
        raise ValueError(
            f"Se requiere n_spin_orbitals >= electrones >= 1 (n={n_spin_orbitals}, electrones={n_electrons})"
        )
    if n_spin_orbitals % 2:
        raise ValueError("El orden por bloques requiere un número par de espín-orbitales")

    occupied = sorted(reference.occupied)
    virtual = [p for p in range(n_spin_orbitals) if p not in reference.occupied]

    def spins(indices: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sorted(_spin_of(p, n_spin_orbitals) for p in indices))

    singles = [
        ExcitationIndex((i,), (a,))
        for i in occupied for a in virtual
        if spins((i,)) == spins((a,))
    ]
    doubles = [
        ExcitationIndex(ij, ab)
        for ij in combinations(occupied, 2) for ab in combinations(virtual, 2)
        if spins(ij) == spins(ab)
    ]
    key = lambda mu: (mu.occupied, mu.virtual)
    pool = sorted(singles, key=key) + sorted(doubles, key=key)
    logger.debug(f"Pool dUCCSD: {len(singles)} simples, {len(doubles)} dobles")
    return pool


def excitation_kappa(mu: ExcitationIndex) -> FermionOperator:
    """κ_μ = τ_μ − τ_μ† con τ_μ = a†_a a†_b … a_j a_i."""
    modes = tuple((a, True) for a in mu.virtual) + tuple((i, False) for i in reversed(mu.occupied))
    tau = FermionOperator.product(1.0, modes)
    return tau - tau.adjoint()


@lru_cache(maxsize=None)
def _ladder_pauli(index: int, creation: bool, n_qubits: int) -> PauliSum:
    # a†_p = ½(X_p − iY_p) Z_{<p};  a_p = ½(X_p + iY_p) Z_{<p}
    z_string = {q: "Z" for q in range(index)}
    x_term = PauliString.from_sparse(n_qubits, {**z_string, index: "X"})
    y_term = PauliString.from_sparse(n_qubits, {**z_string, index: "Y"})
    y_sign = -0.5j if creation else 0.5j
    return PauliSum(n_qubits, ((0.5, x_term), (y_sign, y_term)))


def jordan_wigner(op: FermionOperator, n_qubits: int) -> PauliSum:
    """
    Mapea un operador fermiónico a una suma de cadenas de Pauli.

    Raises:
        IndexError: Si algún índice de modo es >= n_qubits
    """
    if op.max_index >= n_qubits:
        raise IndexError(f"Índice de espín-orbital {op.max_index} fuera de rango para {n_qubits} qubits")
    result = PauliSum.zero(n_qubits)
    identity = PauliSum(n_qubits, ((1.0, PauliString.identity(n_qubits)),))
    for coefficient, modes in op.products:
        term = identity.scale(coefficient)
        for index, creation in modes:
            term = term * _ladder_pauli(index, creation, n_qubits)
        result = result + term
    return result


@lru_cache(maxsize=None)
def kappa_pauli(mu: ExcitationIndex, n_qubits: int) -> PauliSum:
    """Imagen de Jordan-Wigner de κ_μ (anti-hermítica, términos que conmutan)."""
    return jordan_wigner(excitation_kappa(mu), n_qubits)


def mp_denominator(
    mu: ExcitationIndex,
    orbital_energies: Sequence[float],
    floor: float = DEFAULT_DENOMINATOR_FLOOR,
) -> float:
    """
    Δ_μ = ε_i + ε_j + … − ε_a − ε_b − …

    Raises:
        DenominatorTooSmallError: Si |Δ_μ| < floor
        IndexError: Si faltan energías orbitales para los índices de μ
    """
    largest = max(mu.occupied + mu.virtual)
    if largest >= len(orbital_energies):
        raise IndexError(f"Faltan energías orbitales para el índice {largest}")
    delta = sum(orbital_energies[i] for i in mu.occupied) - sum(orbital_energies[a] for a in mu.virtual)
    if abs(delta) < floor:
        raise DenominatorTooSmallError(
            f"Denominador |Δ| = {abs(delta):.3e} por debajo del mínimo {floor:.1e} para {mu.label()}"
        )
    return float(delta)


def build_problem(
    hamiltonian: PauliSum,
    reference: ReferenceState,
    orbital_energies: Sequence[float],
    denominator_floor: float = DEFAULT_DENOMINATOR_FLOOR,
) -> PQEProblem:
    """
    Arma la entrada inmutable del motor PQE a partir del Hamiltoniano cargado.

    Raises:
        ValueError: Si el Hamiltoniano no es hermítico
        DenominatorTooSmallError: Si algún denominador cae bajo el mínimo
    """
    if not hamiltonian.is_hermitian():
        raise ValueError("El Hamiltoniano tiene coeficientes no reales")
    n_qubits = hamiltonian.n_qubits
    try:
        pool = tuple(generate_ducc_sd_pool(reference, n_qubits))
        kappas = tuple(kappa_pauli(mu, n_qubits) for mu in pool)
        denominators = tuple(mp_denominator(mu, orbital_energies, denominator_floor) for mu in pool)
    except Exception as e:
        logger.error(f"Error al construir el problema PQE: {str(e)}")
        raise
    logger.info(f"Problema PQE: {n_qubits} qubits, {reference.n_electrons} electrones, {len(pool)} parámetros")
    return PQEProblem(
        hamiltonian=hamiltonian.real(),
        reference=reference,
        pool=pool,
        kappas=kappas,
        denominators=denominators,
        orbital_energies=tuple(float(e) for e in orbital_energies),
    )

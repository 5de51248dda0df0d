"""
Genera archivos de Hamiltoniano de qubits (STO-3G, Jordan-Wigner, orden de espín por bloques).

Requiere el extra opcional `chemistry` (pyscf + openfermion):

    pip install -e ".[chemistry]"
    python scripts/generate_hamiltonian.py --molecule h2 --bond 2.25 --out data/h2_sto3g_2.25.ham
    python scripts/generate_hamiltonian.py --molecule heh+ --bond 0.55 --out "data/heh+_sto3g_0.55.ham"
"""
import argparse
import os
import sys

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from domain.entities.fermion import ReferenceState
from domain.entities.pauli import PauliSum
from domain.repositories.hamiltonian_repository import HamiltonianRepository
from utils.logger import setup_logger

MOLECULES = {
    "h2": (("H", "H"), 0),
    "heh+": (("He", "H"), 1),
}


def blocked_order(n_spatial: int) -> np.ndarray:
    """Índice por bloques de cada espín-orbital entrelazado (2p = α, 2p+1 = β)."""
    return np.array([(i // 2) + (i % 2) * n_spatial for i in range(2 * n_spatial)])


def molecular_hamiltonian(molecule: str, bond: float, basis: str = "sto-3g"):
    from openfermion import InteractionOperator, jordan_wigner
    from openfermion.chem.molecular_data import spinorb_from_spatial
    from pyscf import ao2mo, fci, gto, scf

    atoms, charge = MOLECULES[molecule]
    mol = gto.Mole()
    mol.atom = [(atoms[0], (0.0, 0.0, 0.0)), (atoms[1], (0.0, 0.0, bond))]
    mol.basis = basis
    mol.charge = charge
    mol.spin = 0
    mol.build()
    mf = scf.RHF(mol)
    mf.kernel()

    n_spatial = mol.nao
    h1 = mf.mo_coeff.T @ mf.get_hcore() @ mf.mo_coeff
    eri = ao2mo.restore(1, ao2mo.kernel(mol, mf.mo_coeff), n_spatial)
    one_body, two_body = spinorb_from_spatial(h1, np.asarray(eri.transpose(0, 2, 3, 1), order="C"))

    # de orden entrelazado a orden por bloques: T_blocked[P(i)...] = T[i...]
    inverse = np.argsort(blocked_order(n_spatial))
    one_body = one_body[np.ix_(inverse, inverse)]
    two_body = two_body[np.ix_(inverse, inverse, inverse, inverse)]

    qubit_operator = jordan_wigner(InteractionOperator(mol.energy_nuc(), one_body, 0.5 * two_body))
    n_qubits = 2 * n_spatial
    terms = []
    for term, coefficient in qubit_operator.terms.items():
        ops = ["I"] * n_qubits
        for qubit, label in term:
            ops[qubit] = label
        terms.append((complex(coefficient), "".join(ops)))

    fci_energy = fci.FCI(mf).kernel()[0]
    energies = list(mf.mo_energy) * 2
    return PauliSum.from_terms(n_qubits, terms).real(), mol.nelectron, energies, float(fci_energy)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--molecule", choices=sorted(MOLECULES), required=True)
    parser.add_argument("--bond", type=float, required=True, help="Distancia de enlace en Å")
    parser.add_argument("--basis", default="sto-3g")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    logger = setup_logger()
    hamiltonian, n_electrons, energies, fci_energy = molecular_hamiltonian(args.molecule, args.bond, args.basis)
    reference = ReferenceState.from_electron_count(hamiltonian.n_qubits, n_electrons)
    HamiltonianRepository().save(
        args.out,
        hamiltonian,
        n_electrons,
        energies,
        comments=[
            f"{args.molecule}, {args.basis.upper()}, r = {args.bond} Angstrom, Jordan-Wigner mapping",
            f"generated with pyscf + openfermion; FCI energy {fci_energy!r} Ha",
        ],
        reference=reference,
    )
    logger.info(f"{args.out}: {len(hamiltonian)} términos, FCI = {fci_energy:.12f} Ha")
    return 0


if __name__ == "__main__":
    sys.exit(main())

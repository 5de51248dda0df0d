"""
Lectura y escritura de archivos de Hamiltoniano de qubits.

Formato: texto UTF-8 con cabeceras `# clave=valor` (n_qubits, n_electrons,
orbital_energies, reference opcional) y líneas `<coeficiente> <cadena de Pauli>`
con el qubit 0 a la izquierda. El resto de líneas que empiezan con `#` son comentarios.
"""
import os
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from domain.entities.fermion import ReferenceState
from domain.entities.pauli import PauliString, PauliSum
import logging

logger = logging.getLogger(__name__)

HERMITICITY_TOLERANCE = 1e-12
SPIN_ORDERING_NOTE = "spin-orbital ordering: blocked (all alpha, then all beta); occupied = |1>"


class HamiltonianFormatError(ValueError):
    """Raised when a Hamiltonian file cannot be parsed or is inconsistent."""
    pass


class LoadedHamiltonian(NamedTuple):
    hamiltonian: PauliSum
    n_qubits: int
    reference: ReferenceState
    orbital_energies: Tuple[float, ...]


def _parse_coefficient(raw: str, line_number: int) -> complex:
    text = raw.replace("−", "-")
    try:
        return complex(text)
    except ValueError:
        raise HamiltonianFormatError(f"Línea {line_number}: coeficiente inválido '{raw}'")


def _header_int(headers: Dict[str, str], key: str, source: str) -> int:
    try:
        return int(headers[key])
    except ValueError:
        raise HamiltonianFormatError(f"{source}: cabecera {key} inválida '{headers[key]}'")


class HamiltonianRepository:
    """Repositorio responsable de los archivos de Hamiltoniano."""

    def parse(self, text: str, source: str = "<texto>") -> LoadedHamiltonian:
        """
        Interpreta el contenido de un archivo de Hamiltoniano.

        Raises:
            HamiltonianFormatError: Si hay errores de formato, coeficientes no reales
                o cantidades de qubits inconsistentes
        """
        headers: Dict[str, str] = {}
        terms: List[Tuple[complex, PauliString]] = []
        for line_number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                body = stripped[1:].strip()
                if "=" in body and " " not in body.split("=", 1)[0]:
                    key, value = body.split("=", 1)
                    headers[key.strip()] = value.strip()
                continue
            fields = stripped.split()
            if len(fields) != 2:
                raise HamiltonianFormatError(f"{source}, línea {line_number}: se esperaba '<coeficiente> <cadena>'")
            coefficient = _parse_coefficient(fields[0], line_number)
            if abs(coefficient.imag) > HERMITICITY_TOLERANCE:
                raise HamiltonianFormatError(
                    f"{source}, línea {line_number}: coeficiente no real {coefficient} (el Hamiltoniano debe ser hermítico)"
                )
            try:
                string = PauliString(fields[1].upper())
            except ValueError as e:
                raise HamiltonianFormatError(f"{source}, línea {line_number}: {str(e)}")
            terms.append((coefficient.real, string))

        if not terms:
            raise HamiltonianFormatError(f"{source}: el archivo no contiene términos")
        n_qubits = self._qubit_count(headers, terms, source)
        orbital_energies = self._orbital_energies(headers, n_qubits, source)
        reference = self._reference(headers, n_qubits, source)
        hamiltonian = PauliSum(n_qubits, tuple(terms)).real()
        logger.info(f"Hamiltoniano {source}: {n_qubits} qubits, {len(hamiltonian)} términos")
        return LoadedHamiltonian(hamiltonian, n_qubits, reference, orbital_energies)

    @staticmethod
    def _qubit_count(headers: Dict[str, str], terms: Sequence[Tuple[complex, PauliString]], source: str) -> int:
        lengths = {string.n_qubits for _, string in terms}
        if len(lengths) != 1:
            raise HamiltonianFormatError(f"{source}: cadenas de Pauli con longitudes distintas {sorted(lengths)}")
        n_qubits = lengths.pop()
        if "n_qubits" in headers:
            declared = _header_int(headers, "n_qubits", source)
            if declared != n_qubits:
                raise HamiltonianFormatError(f"{source}: n_qubits={declared} pero las cadenas tienen {n_qubits} qubits")
        return n_qubits

    @staticmethod
    def _orbital_energies(headers: Dict[str, str], n_qubits: int, source: str) -> Tuple[float, ...]:
        raw = headers.get("orbital_energies")
        if not raw:
            return ()
        try:
            energies = tuple(float(v.replace("−", "-")) for v in raw.split(",") if v.strip())
        except ValueError:
            raise HamiltonianFormatError(f"{source}: energías orbitales inválidas '{raw}'")
        if len(energies) != n_qubits:
            raise HamiltonianFormatError(f"{source}: {len(energies)} energías orbitales para {n_qubits} espín-orbitales")
        return energies

    @staticmethod
    def _reference(headers: Dict[str, str], n_qubits: int, source: str) -> ReferenceState:
        try:
            if "reference" in headers:
                reference = ReferenceState.from_bitstring(headers["reference"])
            elif "n_electrons" in headers:
                reference = ReferenceState.from_electron_count(n_qubits, _header_int(headers, "n_electrons", source))
            else:
                return ReferenceState(n_qubits, ())
        except ValueError as e:
            raise HamiltonianFormatError(f"{source}: referencia inválida: {str(e)}")
        if reference.n_qubits != n_qubits:
            raise HamiltonianFormatError(f"{source}: la referencia tiene {reference.n_qubits} qubits, no {n_qubits}")
        if "n_electrons" in headers and reference.n_electrons != _header_int(headers, "n_electrons", source):
            raise HamiltonianFormatError(f"{source}: la referencia no tiene {headers['n_electrons']} electrones")
        return reference

    def load(self, path: Union[str, Path]) -> LoadedHamiltonian:
        """
        Raises:
            FileNotFoundError: Si el archivo no existe
            HamiltonianFormatError: Si el contenido es inválido
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            logger.error(f"No existe el archivo de Hamiltoniano: {path}")
            raise
        return self.parse(text, str(path))

    def save(
        self,
        path: Union[str, Path],
        hamiltonian: PauliSum,
        n_electrons: int,
        orbital_energies: Sequence[float],
        comments: Iterable[str] = (),
        reference: Optional[ReferenceState] = None,
    ) -> Path:
        """Escribe el archivo de forma atómica (temporal + os.replace)."""
        path = Path(path)
        lines = [f"# {comment}" for comment in comments]
        lines.append(f"# {SPIN_ORDERING_NOTE}")
        lines.append(f"# n_qubits={hamiltonian.n_qubits}")
        lines.append(f"# n_electrons={n_electrons}")
        lines.append("# orbital_energies=" + ",".join(repr(float(e)) for e in orbital_energies))
        if reference is not None:
            lines.append(f"# reference={reference.bitstring()}")
        for coefficient, string in hamiltonian.terms:
            lines.append(f"{repr(float(np.real(coefficient)))} {string.ops}")
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
        os.replace(tmp, path)
        logger.info(f"Hamiltoniano escrito en {path}")
        return path


def load_hamiltonian(path: Union[str, Path]) -> LoadedHamiltonian:
    """(PauliSum, n_qubits, ReferenceState, energías orbitales) desde un archivo."""
    return HamiltonianRepository().load(path)

from typing import List, Optional

import numpy as np

from domain.entities.density_matrix import DensityMatrix

HERMITICITY_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10
POSITIVITY_TOLERANCE = -1e-9


class StateValidator:
    """Clase responsable de validar las invariantes físicas de una matriz densidad."""

    @staticmethod
    def validate_hermiticity(rho: DensityMatrix, tolerance: float = HERMITICITY_TOLERANCE) -> Optional[str]:
        """
        Valida que ρ = ρ†.

        Returns:
            None si es válido, mensaje de error si no es válido
        """
        deviation = float(np.linalg.norm(rho.data - rho.data.conj().T))
        if deviation >= tolerance:
            return f"La matriz densidad no es hermítica: ‖ρ − ρ†‖ = {deviation:.3e}"
        return None

    @staticmethod
    def validate_trace(rho: DensityMatrix, tolerance: float = TRACE_TOLERANCE) -> Optional[str]:
        """
        Valida que Tr(ρ) = 1.

        Returns:
            None si es válido, mensaje de error si no es válido
        """
        trace = rho.trace()
        if abs(trace - 1.0) >= tolerance:
            return f"La traza de la matriz densidad es {trace:.12g}, se esperaba 1"
        return None

    @staticmethod
    def validate_positivity(rho: DensityMatrix, tolerance: float = POSITIVITY_TOLERANCE) -> Optional[str]:
        """
        Valida que los autovalores de ρ no sean negativos (salvo error numérico).

        Returns:
            None si es válido, mensaje de error si no es válido
        """
        smallest = rho.min_eigenvalue()
        if smallest <= tolerance:
            return f"La matriz densidad tiene un autovalor negativo: {smallest:.3e}"
        return None

    @classmethod
    def validate(cls, rho: DensityMatrix) -> List[str]:
        """Todas las invariantes; lista vacía si ρ es un estado físico."""
        errors = [
            cls.validate_hermiticity(rho),
            cls.validate_trace(rho),
            cls.validate_positivity(rho),
        ]
        return [error for error in errors if error is not None]

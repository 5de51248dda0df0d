"""
Dominio del eigensolver proyectivo con extrapolación a ruido cero.

Este módulo contiene las entidades, esquemas, validadores, repositorios y servicios
que encapsulan el álgebra de operadores, la simulación ruidosa y el solucionador.
"""

from .state_validator import StateValidator

__all__ = [
    'StateValidator',
]

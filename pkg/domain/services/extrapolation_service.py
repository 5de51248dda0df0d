"""
Modelos de extrapolación a ruido cero: Richardson (Lagrange y mínimos cuadrados),
lineal y exponencial (asíntota fija o ajuste completo).
"""
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import least_squares

from domain.entities.extrapolation import ExtrapolationModel, FitResult, NoisePoint
import logging

logger = logging.getLogger(__name__)

ADAPTIVE_ALPHA = 1.27846
MIN_ADAPTIVE_STEP = 0.1
MIN_DECAY_RATE = 1e-6
DEFAULT_LAMBDA_MAX = 10.0
_MAX_NFEV = 100
_FIT_TOLERANCE = 1e-12


class ExtrapolationError(ValueError):
    """Raised when a model cannot be fitted to the measured points."""
    pass


def _arrays(points: Sequence[NoisePoint]) -> Tuple[np.ndarray, np.ndarray]:
    lambdas = np.array([p.scale_factor for p in points], dtype=float)
    values = np.array([p.value for p in points], dtype=float)
    return lambdas, values


def richardson_coefficients(nodes: Sequence[float]) -> Tuple[float, ...]:
    """
    γ_i = Π_{j≠i} λ_j/(λ_j − λ_i): el polinomio interpolante de Lagrange evaluado en λ = 0.

    Raises:
        ExtrapolationError: Si hay nodos repetidos
    """
    nodes = [float(n) for n in nodes]
    if not nodes:
        raise ExtrapolationError("Se necesita al menos un nodo")
    if len(set(nodes)) != len(nodes):
        raise ExtrapolationError(f"Nodos de Richardson repetidos: {nodes}")
    gammas = []
    for i, lam_i in enumerate(nodes):
        gamma = 1.0
        for j, lam_j in enumerate(nodes):
            if j != i:
                gamma *= lam_j / (lam_j - lam_i)
        gammas.append(gamma)
    return tuple(gammas)


def richardson_extrapolate(points: Sequence[NoisePoint]) -> FitResult:
    """
    D(0) = Σ γ_i·D(λ_i), exacto para polinomios de grado len(points) − 1.

    Raises:
        ExtrapolationError: Con menos de 2 puntos o nodos repetidos
    """
    if len(points) < 2:
        raise ExtrapolationError("Richardson necesita al menos 2 nodos")
    lambdas, values = _arrays(points)
    gammas = richardson_coefficients(lambdas)
    zero_noise = float(np.dot(gammas, values))
    params = tuple(float(c) for c in P.polyfit(lambdas, values, len(points) - 1))
    logger.debug(f"Richardson λ={lambdas.tolist()} γ={gammas} D(0)={zero_noise}")
    return FitResult(
        zero_noise_value=zero_noise,
        model=ExtrapolationModel.RICHARDSON,
        params=params,
        points=tuple(points),
        gammas=gammas,
        spread_bound=float(np.sum(np.abs(gammas))),
    )


def polynomial_extrapolate(
    points: Sequence[NoisePoint],
    order: int,
    model: ExtrapolationModel = ExtrapolationModel.RICHARDSON,
) -> FitResult:
    """
    Ajuste polinomial de grado `order` por mínimos cuadrados; D(0) = c_0.

    El estimador sigue siendo lineal en los datos: γ es la primera fila de la
    pseudoinversa de la matriz de Vandermonde.

    Raises:
        ExtrapolationError: Si hay menos de order + 1 nodos distintos
    """
    lambdas, values = _arrays(points)
    if order < 1:
        raise ExtrapolationError(f"El orden del polinomio debe ser >= 1, no {order}")
    if len(np.unique(lambdas)) < order + 1:
        raise ExtrapolationError(
            f"Se necesitan al menos {order + 1} nodos distintos para un polinomio de grado {order}"
        )
    vandermonde = np.vander(lambdas, order + 1, increasing=True)
    gammas = np.linalg.pinv(vandermonde)[0]
    params = np.linalg.lstsq(vandermonde, values, rcond=None)[0]
    return FitResult(
        zero_noise_value=float(params[0]),
        model=model,
        params=tuple(float(c) for c in params),
        points=tuple(points),
        gammas=tuple(float(g) for g in gammas),
        spread_bound=float(np.sum(np.abs(gammas))),
    )


def linear_extrapolate(points: Sequence[NoisePoint]) -> FitResult:
    """
    D(λ) = c_0 + c_1·λ por mínimos cuadrados; D(0) = c_0.

    Raises:
        ExtrapolationError: Con menos de 2 puntos o todos los λ iguales
    """
    if len(points) < 2:
        raise ExtrapolationError("El modelo lineal necesita al menos 2 puntos")
    return polynomial_extrapolate(points, 1, ExtrapolationModel.LINEAR)


def _fixed_asymptote_fit(lambdas: np.ndarray, values: np.ndarray, asymptote: float) -> Tuple[float, float]:
    shifted = values - asymptote
    if np.any(shifted == 0) or not (np.all(shifted > 0) or np.all(shifted < 0)):
        raise ExtrapolationError(
            f"D(λ) − c0 cambia de signo o se anula con c0 = {asymptote}: el modelo exponencial no es consistente"
        )
    if len(np.unique(lambdas)) < 2:
        raise ExtrapolationError("El ajuste exponencial necesita al menos 2 λ distintos")
    sign = np.sign(shifted[0])
    slope, intercept = np.polyfit(lambdas, np.log(np.abs(shifted)), 1)
    return float(sign * np.exp(intercept)), float(-slope)


def _full_exponential_fit(lambdas: np.ndarray, values: np.ndarray) -> Tuple[float, float, float]:
    def linear_part(c2: float) -> Tuple[np.ndarray, float]:
        design = np.column_stack([np.ones_like(lambdas), np.exp(-c2 * lambdas)])
        coeffs, *_ = np.linalg.lstsq(design, values, rcond=None)
        return coeffs, float(np.sum((design @ coeffs - values) ** 2))

    # proyección variable: c0 y c1 son lineales para cada c2 fijo
    grid = np.concatenate([-np.geomspace(1e-3, 2.0, 40)[::-1], np.geomspace(1e-3, 20.0, 120)])
    best_c2 = min(grid, key=lambda c2: linear_part(c2)[1])
    (c0, c1), _ = linear_part(best_c2)

    def residuals(params: np.ndarray) -> np.ndarray:
        a0, a1, a2 = params
        return a0 + a1 * np.exp(-a2 * lambdas) - values

    result = least_squares(
        residuals,
        x0=np.array([c0, c1, best_c2]),
        max_nfev=_MAX_NFEV,
        ftol=_FIT_TOLERANCE,
        xtol=_FIT_TOLERANCE,
        gtol=_FIT_TOLERANCE,
    )
    if not result.success or not np.all(np.isfinite(result.x)):
        raise ExtrapolationError(
            f"El ajuste exponencial no convergió ({result.message}); residuo = {np.linalg.norm(result.fun):.3e}"
        )
    return tuple(float(x) for x in result.x)


def exponential_fit(points: Sequence[NoisePoint], asymptote: Optional[float] = None) -> FitResult:
    """
    D(λ) = c_0 + c_1·e^{−c_2·λ}; D(0) = c_0 + c_1.

    Con asíntota fija se linealiza log|D − c_0|; sin ella se ajustan los tres parámetros
    por mínimos cuadrados no lineales.

    Raises:
        ExtrapolationError: Si D − c_0 cambia de signo, faltan puntos o el ajuste no converge
    """
    lambdas, values = _arrays(points)
    if asymptote is not None:
        if len(points) < 2:
            raise ExtrapolationError("El ajuste exponencial con asíntota necesita al menos 2 puntos")
        c0 = float(asymptote)
        c1, c2 = _fixed_asymptote_fit(lambdas, values, c0)
    else:
        if len(points) < 3:
            raise ExtrapolationError("El ajuste exponencial completo necesita al menos 3 puntos")
        if np.ptp(values) < _FIT_TOLERANCE:
            c0, c1, c2 = float(values[0]), 0.0, 0.0
        else:
            c0, c1, c2 = _full_exponential_fit(lambdas, values)
    zero_noise = c0 + c1
    if not np.isfinite(zero_noise):
        raise ExtrapolationError(f"Extrapolación exponencial no finita: c0={c0}, c1={c1}, c2={c2}")
    logger.debug(f"Exponencial λ={lambdas.tolist()} c=({c0}, {c1}, {c2}) D(0)={zero_noise}")
    return FitResult(
        zero_noise_value=float(zero_noise),
        model=ExtrapolationModel.EXPONENTIAL,
        params=(c0, c1, c2),
        points=tuple(points),
    )


def adaptive_next_lambda(c2: float, lambda_j: float, lambda_max: float = DEFAULT_LAMBDA_MAX) -> float:
    """
    λ_{j+1} = λ_j + α/|c_2| con α = 1.27846, acotado a [λ_j + 0.1, λ_max].

    Raises:
        ExtrapolationError: Si |c_2| < 1e-6
    """
    if abs(c2) < MIN_DECAY_RATE:
        raise ExtrapolationError(f"|c2| = {abs(c2):.3e} demasiado pequeño para elegir el siguiente λ")
    step = ADAPTIVE_ALPHA / abs(c2)
    return float(min(max(lambda_j + step, lambda_j + MIN_ADAPTIVE_STEP), lambda_max))


def extrapolate(
    points: Sequence[NoisePoint],
    model: ExtrapolationModel,
    asymptote: Optional[float] = None,
    richardson_order: Optional[int] = None,
) -> FitResult:
    """Extrapolación no adaptativa sobre puntos ya medidos."""
    if model is ExtrapolationModel.LINEAR:
        return linear_extrapolate(points)
    if model is ExtrapolationModel.RICHARDSON:
        if richardson_order is not None and richardson_order < len(points) - 1:
            return polynomial_extrapolate(points, richardson_order)
        return richardson_extrapolate(points)
    if model is ExtrapolationModel.EXPONENTIAL:
        return exponential_fit(points, asymptote)
    raise ExtrapolationError(f"El modelo {model.value} necesita un evaluador adaptativo")

# coherencia/malla.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 01 – MALLAS DE FRECUENCIA Y CUADRATURA

Este módulo calcula:
- Malla uniforme de frecuencias (offsets ω̄ respecto a la portadora)
- Pesos de la regla del trapecio
- Cuadratura doble de la forma ∬ W(ω̄′,ω̄″)·e^{−iω̄′t1}·e^{+iω̄″t2}
- Cuadratura simple ∫ g(ω̄)·e^{+iω̄s}
- Estimación de error por comparación con la malla de paso doble

NO construye núcleos (eso lo hacen bombeo y respuesta).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple
import logging
import math

import numpy as np

from .errores import ErrorDominio

logger = logging.getLogger(__name__)


# =============================================================================
# Parámetros
# =============================================================================

N_PUNTOS_DEFECTO = 257
SIGMAS_DEFECTO = 6.0

# Error relativo (respecto a ∬|W|) a partir del cual se emite aviso.
TOL_AVISO_CUADRATURA = 1e-4


# =============================================================================
# Malla
# =============================================================================

@dataclass(frozen=True)
class FrequencyGrid:
    """
    Malla uniforme de offsets ω̄ ∈ [−span, +span] alrededor de ``center``.

    n_points es impar: el centro (portadora) es un nodo exacto.
    """
    center: float
    span_half_width: float
    n_points: int = N_PUNTOS_DEFECTO

    def __post_init__(self) -> None:
        if not math.isfinite(self.center):
            raise ErrorDominio(f"Centro de malla no finito: {self.center}.")
        if not (math.isfinite(self.span_half_width) and self.span_half_width > 0):
            raise ErrorDominio(f"Semiancho de malla inválido: {self.span_half_width}.")
        n = self.n_points
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 3 or n % 2 == 0:
            raise ErrorDominio(f"n_points debe ser entero impar ≥ 3 (recibido {n!r}).")
        object.__setattr__(self, "n_points", int(n))

    @classmethod
    def centrada(
        cls,
        center: float,
        ancho: float,
        n_points: int = N_PUNTOS_DEFECTO,
        n_sigmas: float = SIGMAS_DEFECTO,
    ) -> "FrequencyGrid":
        """Malla de semiancho n_sigmas·ancho (regla por defecto: 6 anchos, 257 puntos)."""
        return cls(center=float(center), span_half_width=float(n_sigmas) * float(ancho), n_points=n_points)

    @property
    def spacing(self) -> float:
        return 2.0 * self.span_half_width / (self.n_points - 1)

    @property
    def values(self) -> np.ndarray:
        return np.linspace(-self.span_half_width, self.span_half_width, self.n_points)

    @property
    def absolutas(self) -> np.ndarray:
        return self.center + self.values

    @property
    def periodo_temporal(self) -> float:
        """Periodo 2π/paso de toda cuadratura sobre esta malla."""
        return 2.0 * math.pi / self.spacing

    def pesos(self) -> np.ndarray:
        """Pesos del trapecio ya multiplicados por el paso."""
        return pesos_trapecio(self.n_points, self.spacing)


# =============================================================================
# Funciones base
# =============================================================================

def pesos_trapecio(n: int, paso: float) -> np.ndarray:
    w = np.full(n, paso, dtype=float)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _como_vector(t) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    escalar = arr.ndim == 0
    arr = np.atleast_1d(arr).ravel()
    if not np.all(np.isfinite(arr)):
        raise ErrorDominio("Argumentos temporales no finitos.")
    return arr, escalar


def _bilineal(kernel: np.ndarray, w: np.ndarray, p: np.ndarray, t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    # a_ki = p_i e^{−iω_i t1_k},  b_kj = p_j e^{+iω_j t2_k}
    a = p[None, :] * np.exp(-1j * np.outer(t1, w))
    b = p[None, :] * np.exp(1j * np.outer(t2, w))
    return np.sum((a @ kernel) * b, axis=1)


def _lineal(valores: np.ndarray, w: np.ndarray, p: np.ndarray, s: np.ndarray) -> np.ndarray:
    return np.exp(1j * np.outer(s, w)) @ (p * valores)


# =============================================================================
# Cuadraturas públicas
# =============================================================================

@dataclass(frozen=True)
class ResultadoCuadratura:
    valores: np.ndarray
    error_estimado: float
    avisos: Tuple[str, ...] = ()


def _avisos_error(error: float, que: str) -> Tuple[str, ...]:
    if error > TOL_AVISO_CUADRATURA:
        msg = (
            f"{que}: error de truncamiento estimado {error:.3e} > {TOL_AVISO_CUADRATURA:g} "
            "(comparación con malla de paso doble); refine la malla."
        )
        logger.warning(msg)
        return (msg,)
    return ()


def cuadratura_doble(
    kernel: np.ndarray,
    malla: FrequencyGrid,
    t1,
    t2,
    *,
    diagonal: bool = False,
    que: str = "cuadratura doble",
) -> ResultadoCuadratura:
    """
    ∬ dω̄′dω̄″ W(ω̄′,ω̄″)·exp(−iω̄′t1)·exp(+iω̄″t2) por trapecio.

    Para núcleos diagonales (límite estacionario, W_ii = S/paso) la malla de
    paso doble reescala el núcleo por 1/2 para conservar la masa por celda.
    """
    t1v, _ = _como_vector(t1)
    t2v, _ = _como_vector(t2)
    if t1v.shape != t2v.shape:
        t1v, t2v = np.broadcast_arrays(t1v, t2v)

    w = malla.values
    p = malla.pesos()
    completa = _bilineal(kernel, w, p, t1v, t2v)

    sub = kernel[::2, ::2] * (0.5 if diagonal else 1.0)
    p2 = pesos_trapecio(sub.shape[0], 2.0 * malla.spacing)
    mitad = _bilineal(sub, w[::2], p2, t1v, t2v)

    escala = float(np.abs(p) @ np.abs(kernel) @ np.abs(p))
    error = float(np.max(np.abs(completa - mitad)) / escala) if escala > 0 else 0.0
    return ResultadoCuadratura(completa, error, _avisos_error(error, que))


def transformada_doble(kernel: np.ndarray, malla: FrequencyGrid, t1, t2) -> np.ndarray:
    """Cuadratura doble sobre la malla completa, sin estimar el error (perfiles de prueba)."""
    t1v, _ = _como_vector(t1)
    t2v, _ = _como_vector(t2)
    return _bilineal(kernel, malla.values, malla.pesos(), t1v, t2v)


def transformada_simple(valores: np.ndarray, malla: FrequencyGrid, s) -> np.ndarray:
    """
    ∫ dω̄ f(ω̄)·exp(+iω̄s) sin estimar el error. Con ``valores`` N × n devuelve
    una columna por fila (len(s) × N).
    """
    sv, _ = _como_vector(s)
    return np.exp(1j * np.outer(sv, malla.values)) @ (malla.pesos() * np.asarray(valores)).T


def cuadratura_simple(
    valores: np.ndarray,
    malla: FrequencyGrid,
    s,
    *,
    que: str = "cuadratura simple",
) -> ResultadoCuadratura:
    """∫ dω̄ f(ω̄)·exp(+iω̄s) por trapecio, con la misma verificación de paso doble."""
    sv, _ = _como_vector(s)
    w = malla.values
    p = malla.pesos()
    completa = _lineal(valores, w, p, sv)

    p2 = pesos_trapecio(len(w[::2]), 2.0 * malla.spacing)
    mitad = _lineal(valores[::2], w[::2], p2, sv)

    escala = float(np.sum(np.abs(p * valores)))
    error = float(np.max(np.abs(completa - mitad)) / escala) if escala > 0 else 0.0
    return ResultadoCuadratura(completa, error, _avisos_error(error, que))

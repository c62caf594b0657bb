# coherencia/muestreo.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 03 – REALIZACIONES ESTADÍSTICAS DEL BOMBEO

Este módulo calcula:
- Factor L del kernel (Cholesky con jitter diagonal; respaldo espectral)
- Realizaciones gaussianas circulares V = L·z con E[V*(ω̄′)V(ω̄″)] = W(ω̄′,ω̄″)
- Densidad espectral empírica a partir de un conjunto de realizaciones

Reproducibilidad: las realizaciones se generan por bloques de tamaño fijo con
semilla derivada (semilla, índice de bloque); el resultado no depende del
número de hilos ni del orden de ejecución.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, TypeVar, Union
import logging
import math
import os

import numpy as np
from scipy import linalg

from .bombeo import TIPO_TABULADA, CrossSpectralDensity
from .errores import ErrorConfiguracion, ErrorDominio, ErrorNoPSD
from .malla import FrequencyGrid

logger = logging.getLogger(__name__)

TAMANO_BLOQUE = 1024
JITTER_RELATIVO = 1e-12
TOL_PSD = 1e-10
VAR_HILOS = "COHERENCIA_HILOS"

Semilla = Union[int, Sequence[int]]
R = TypeVar("R")


# =============================================================================
# Hilos
# =============================================================================

def hilos_por_defecto() -> int:
    valor = os.environ.get(VAR_HILOS, "").strip()
    if not valor:
        return 1
    try:
        n = int(valor)
    except ValueError:
        raise ErrorConfiguracion(f"{VAR_HILOS} debe ser un entero (recibido '{valor}').")
    if n < 1:
        raise ErrorConfiguracion(f"{VAR_HILOS} debe ser ≥ 1 (recibido {n}).")
    return n


def mapear_ordenado(funcion: Callable[[int], R], indices: Sequence[int], hilos: Optional[int] = None) -> List[R]:
    """Aplica funcion(i) a cada índice; el resultado respeta el orden de indices."""
    hilos = hilos_por_defecto() if hilos is None else int(hilos)
    if hilos <= 1 or len(indices) <= 1:
        return [funcion(i) for i in indices]
    with ThreadPoolExecutor(max_workers=hilos) as executor:
        return list(executor.map(funcion, indices))


# =============================================================================
# Tipos
# =============================================================================

@dataclass(frozen=True, eq=False)
class FieldRealizationSet:
    """
    malla:          FrequencyGrid común
    realizaciones:  matriz (count × n_points); cada fila es un V(ω̄)
    semilla:        semilla usada
    """
    malla: FrequencyGrid
    realizaciones: np.ndarray = field(repr=False)
    semilla: Semilla = 0

    def __post_init__(self) -> None:
        V = np.array(self.realizaciones, dtype=complex)
        if V.ndim != 2 or V.shape[1] != self.malla.n_points:
            raise ErrorDominio(
                f"Realizaciones de forma {V.shape}; cada una debe tener {self.malla.n_points} puntos."
            )
        V.setflags(write=False)
        object.__setattr__(self, "realizaciones", V)

    @property
    def count(self) -> int:
        return int(self.realizaciones.shape[0])


# =============================================================================
# Factorización
# =============================================================================

@dataclass(frozen=True, eq=False)
class FactorMuestreo:
    """
    factor:       L con L·Lᴴ = conj(W) (filas V = L·z cumplen E[V*_i V_j] = W_ij)
    determinista: amplitud coherente fija (Δω_c = ∞) o None
    """
    n: int
    factor: Optional[np.ndarray] = None
    determinista: Optional[np.ndarray] = None


def _semilla_bloque(semilla: Semilla, k: int) -> List[int]:
    base = [int(semilla)] if np.ndim(semilla) == 0 else [int(s) for s in semilla]
    return base + [int(k)]


def factorizar(csd: CrossSpectralDensity) -> FactorMuestreo:
    """
    Factor simétrico del kernel con jitter 1e−12·traza/n.

    Si Cholesky falla se recurre a la descomposición espectral con recorte de
    autovalores negativos, siempre que el mínimo esté dentro de la tolerancia.
    """
    if csd.tipo != TIPO_TABULADA:
        raise ErrorConfiguracion("El muestreo requiere una densidad espectral tabulada.")

    n = csd.malla.n_points
    modelo = csd.modelo
    if modelo is not None and modelo.es_coherente:
        # Campo totalmente coherente: una sola amplitud u(ω̄) = √A·exp(−ω̄²/(4Δ²))
        u = math.sqrt(modelo.A) * np.exp(-csd.malla.values ** 2 / (4.0 * modelo.delta_p ** 2))
        return FactorMuestreo(n=n, determinista=u.astype(complex))

    W = np.conj(np.asarray(csd.kernel))
    traza = float(np.real(np.trace(W)))
    if traza == 0.0:
        return FactorMuestreo(n=n, factor=np.zeros((n, n), dtype=complex))

    jitter = JITTER_RELATIVO * traza / n
    try:
        L = linalg.cholesky(W + jitter * np.eye(n), lower=True)
    except linalg.LinAlgError:
        vals, vecs = linalg.eigh(W)
        if vals[0] < -TOL_PSD * traza / n:
            raise ErrorNoPSD(
                f"Factorización fallida tras jitter {jitter:.3e}: autovalor mínimo {vals[0]:.3e}."
            )
        logger.warning("Cholesky falló con jitter %.3e; se usa factor espectral.", jitter)
        L = vecs * np.sqrt(np.clip(vals, 0.0, None))[None, :]
    return FactorMuestreo(n=n, factor=L)


def generar_bloque(fm: FactorMuestreo, semilla: Semilla, k: int, m: int) -> np.ndarray:
    """Bloque k de m realizaciones (filas), con RNG default_rng([semilla..., k])."""
    if fm.determinista is not None:
        return np.tile(fm.determinista, (m, 1))
    rng = np.random.default_rng(_semilla_bloque(semilla, k))
    z = (rng.standard_normal((m, fm.n)) + 1j * rng.standard_normal((m, fm.n))) / math.sqrt(2.0)
    return z @ fm.factor.T


def tamanos_bloque(count: int) -> List[int]:
    completos, resto = divmod(int(count), TAMANO_BLOQUE)
    return [TAMANO_BLOQUE] * completos + ([resto] if resto else [])


def mapear_bloques(
    csd: CrossSpectralDensity,
    count: int,
    seed: Semilla,
    funcion: Callable[[np.ndarray], R],
    hilos: Optional[int] = None,
) -> List[R]:
    """Genera las realizaciones por bloques y aplica funcion a cada bloque, en orden."""
    if int(count) < 1:
        raise ErrorDominio(f"count debe ser ≥ 1 (recibido {count}).")
    fm = factorizar(csd)
    tamanos = tamanos_bloque(count)
    return mapear_ordenado(lambda k: funcion(generar_bloque(fm, seed, k, tamanos[k])), range(len(tamanos)), hilos)


# =============================================================================
# API pública
# =============================================================================

def sample_realizations(
    csd: CrossSpectralDensity,
    count: int,
    seed: Semilla,
    hilos: Optional[int] = None,
) -> FieldRealizationSet:
    """
    Vectores gaussianos complejos circulares con covarianza igual al kernel.

    Deterministas por semilla: (semilla, malla, kernel) iguales producen
    realizaciones idénticas con cualquier número de hilos.
    """
    bloques = mapear_bloques(csd, count, seed, lambda V: V, hilos)
    return FieldRealizationSet(malla=csd.malla, realizaciones=np.vstack(bloques), semilla=seed)


def empirical_csd(conjunto: FieldRealizationSet) -> CrossSpectralDensity:
    """
    Fórmula:
        W_emp(ω̄′,ω̄″) = (1/N)·Σ_k conj(V_k(ω̄′))·V_k(ω̄″)
    """
    if conjunto.count < 2:
        raise ErrorDominio(f"empirical_csd requiere count ≥ 2 (recibido {conjunto.count}).")
    V = conjunto.realizaciones
    K = (V.conj().T @ V) / conjunto.count
    K = 0.5 * (K + K.conj().T)
    return CrossSpectralDensity(tipo=TIPO_TABULADA, malla=conjunto.malla, kernel=K)


def error_frobenius(a: CrossSpectralDensity, b: CrossSpectralDensity) -> float:
    """‖Wa − Wb‖_F / ‖Wb‖_F."""
    return float(np.linalg.norm(a.kernel - b.kernel) / np.linalg.norm(b.kernel))


def campo_fase_real(
    malla: FrequencyGrid,
    rms: float,
    ancho_correlacion: float,
    count: int,
    seed: Semilla,
) -> np.ndarray:
    """
    Fases aleatorias reales θ(ω̄) gaussianas con covarianza
    σ²·exp[−(ω̄′−ω̄″)²/(2ℓ²)]; reutiliza el muestreo complejo (θ = √2·Re V).
    """
    w = malla.values
    C = (rms ** 2) * np.exp(-((w[:, None] - w[None, :]) ** 2) / (2.0 * ancho_correlacion ** 2))
    csd = CrossSpectralDensity(tipo=TIPO_TABULADA, malla=malla, kernel=C.astype(complex))
    V = np.vstack(mapear_bloques(csd, count, seed, lambda b: b, hilos=1))
    return math.sqrt(2.0) * V.real

# coherencia/bombeo.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 02 – CAMPO DE BOMBEO PARCIALMENTE COHERENTE

Este módulo calcula:
- Densidad espectral cruzada del modelo Gaussian Schell (forma cerrada)
- Tiempo de coherencia τ_coh y escala temporal T del modelo
- Función de correlación temporal Γ(t1,t2) en forma cerrada
- Núcleos tabulados W(ω̄′,ω̄″) sobre una malla (GSM y límite estacionario)
- Transformada de Wiener–Khintchine generalizada por cuadratura

NO genera realizaciones aleatorias (eso lo hace muestreo).

Convención: todas las frecuencias son angulares, en unidades recíprocas de
una unidad de tiempo elegida por el usuario; la librería no la interpreta.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union
import logging
import math

import numpy as np
from scipy import linalg

from .errores import ErrorConfiguracion, ErrorDominio, ErrorLimiteNoSoportado, ErrorNoPSD
from .malla import N_PUNTOS_DEFECTO, SIGMAS_DEFECTO, FrequencyGrid, cuadratura_doble
from .muestra import CoherenceSample

logger = logging.getLogger(__name__)

INFINITO = math.inf

TIPO_GSM = "gsm-cerrada"
TIPO_TABULADA = "tabulada"

TOL_HERMITICA = 1e-12
TOL_PSD = 1e-10


# =============================================================================
# Modelo Gaussian Schell
# =============================================================================

@dataclass(frozen=True)
class GaussianSchellModel:
    """
    A:         escala de la densidad espectral (unidades arbitrarias)
    delta_p:   ancho de banda Δω_p0
    delta_c:   ancho de correlación Δω_c (math.inf = totalmente coherente)
    omega_p0:  portadora ω_p0
    """
    A: float
    delta_p: float
    delta_c: float
    omega_p0: float

    def __post_init__(self) -> None:
        for nombre in ("A", "delta_p", "omega_p0"):
            v = getattr(self, nombre)
            if not (math.isfinite(v) and v > 0):
                raise ErrorDominio(f"Modelo GSM: '{nombre}' debe ser finito y > 0 (recibido {v}).")
        if not (self.delta_c > 0) or math.isnan(self.delta_c):
            raise ErrorDominio(f"Modelo GSM: 'delta_c' debe ser > 0 o infinito (recibido {self.delta_c}).")

    @property
    def es_coherente(self) -> bool:
        return math.isinf(self.delta_c)

    @property
    def T(self) -> float:
        """T = √(1/(2Δω_p0)² + 1/Δω_c²)."""
        inv_c2 = 0.0 if self.es_coherente else 1.0 / self.delta_c ** 2
        return math.sqrt(1.0 / (2.0 * self.delta_p) ** 2 + inv_c2)

    @property
    def ancho_marginal(self) -> float:
        """
        Desviación estándar de la marginal de W a lo largo de un eje:
            σ² = 2Δ²·a/(1/(4Δ²) + 1/Δc²),  a = 1/(4Δ²) + 1/(2Δc²)
        Vale Δω_p0 en el límite estacionario y √2·Δω_p0 en el coherente.
        """
        d2 = self.delta_p ** 2
        inv_c2 = 0.0 if self.es_coherente else 1.0 / self.delta_c ** 2
        a = 1.0 / (4.0 * d2) + 0.5 * inv_c2
        return math.sqrt(2.0 * d2 * a / (1.0 / (4.0 * d2) + inv_c2))


def _verificar_finitos(*valores) -> None:
    for v in valores:
        if not np.all(np.isfinite(np.asarray(v, dtype=float))):
            raise ErrorDominio("Frecuencias o tiempos no finitos.")


def gsm_csd(model: GaussianSchellModel, w1, w2):
    """
    Fórmula:
        W(ω̄′,ω̄″) = A·exp[−(ω̄′²+ω̄″²)/(4Δω_p0²)]·exp[−(ω̄′−ω̄″)²/(2Δω_c²)]

    El segundo factor es 1 cuando Δω_c está marcado como infinito.
    Acepta escalares o arreglos (con broadcasting).
    """
    _verificar_finitos(w1, w2)
    a = np.asarray(w1, dtype=float)
    b = np.asarray(w2, dtype=float)
    env = np.exp(-(a ** 2 + b ** 2) / (4.0 * model.delta_p ** 2))
    if model.es_coherente:
        corr = np.ones_like(env)
    else:
        corr = np.exp(-((a - b) ** 2) / (2.0 * model.delta_c ** 2))
    out = model.A * env * corr
    return float(out) if out.ndim == 0 else out


def gsm_coherence_time(model: GaussianSchellModel) -> float:
    """τ_coh = (Δω_c/Δω_p0)·√(1/(2Δω_p0)² + 1/Δω_c²); math.inf si Δω_c = ∞."""
    if model.es_coherente:
        return INFINITO
    return (model.delta_c / model.delta_p) * model.T


def gsm_intensidad(model: GaussianSchellModel, t):
    """I(t) = (2πΔω_p0·A/T)·exp[−t²/(2T²)]."""
    _verificar_finitos(t)
    T = model.T
    tt = np.asarray(t, dtype=float)
    out = (2.0 * math.pi * model.delta_p * model.A / T) * np.exp(-tt ** 2 / (2.0 * T ** 2))
    return float(out) if out.ndim == 0 else out


def gsm_temporal_correlation(model: GaussianSchellModel, t1, t2):
    """
    Fórmula (Wiener–Khintchine generalizado del GSM):
        Γ(t1,t2) = √(I(t1)·I(t2))·exp[−(t1−t2)²/(2τ_coh²)]

    Real y positiva. En el límite totalmente coherente τ_coh diverge y la
    forma cerrada no se soporta aquí (use wk_transform sobre csd_closed_form).
    """
    if model.es_coherente:
        raise ErrorLimiteNoSoportado(
            "gsm_temporal_correlation no está definida con Δω_c = ∞ (τ_coh diverge)."
        )
    _verificar_finitos(t1, t2)
    a = np.asarray(t1, dtype=float)
    b = np.asarray(t2, dtype=float)
    tau = gsm_coherence_time(model)
    out = np.sqrt(gsm_intensidad(model, a) * gsm_intensidad(model, b)) * np.exp(-((a - b) ** 2) / (2.0 * tau ** 2))
    return float(out) if np.ndim(out) == 0 else out


def _correlacion_coherente(model: GaussianSchellModel, t1, t2):
    # Δω_c = ∞: Γ(t1,t2) = 4πΔ²A·exp[−Δ²(t1²+t2²)] (separable)
    d = model.delta_p
    a = np.asarray(t1, dtype=float)
    b = np.asarray(t2, dtype=float)
    return 4.0 * math.pi * d * d * model.A * np.exp(-(d * d) * (a ** 2 + b ** 2))


def malla_para_gsm(
    model: GaussianSchellModel,
    n_points: int = N_PUNTOS_DEFECTO,
    n_sigmas: float = SIGMAS_DEFECTO,
) -> FrequencyGrid:
    """
    Regla de dimensionamiento: semiancho = n_sigmas × ancho marginal del núcleo.
    Se reduce a 6·Δω_p0 en el límite estacionario.
    """
    return FrequencyGrid.centrada(model.omega_p0, model.ancho_marginal, n_points, n_sigmas)


# =============================================================================
# Densidad espectral cruzada
# =============================================================================

@dataclass(frozen=True, eq=False)
class CrossSpectralDensity:
    """
    tipo:    TIPO_GSM (forma cerrada) | TIPO_TABULADA
    modelo:  modelo GSM de origen (forma cerrada, o tabulación de un GSM)
    malla:   FrequencyGrid (tipo tabulado)
    kernel:  matriz compleja W(ω̄′,ω̄″) (tipo tabulado, solo lectura)
    """
    tipo: str
    modelo: Optional[GaussianSchellModel] = None
    malla: Optional[FrequencyGrid] = None
    kernel: Optional[np.ndarray] = field(default=None, repr=False)
    _diagonal: bool = field(default=False, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.tipo == TIPO_GSM:
            if self.modelo is None:
                raise ErrorConfiguracion("Densidad de tipo GSM sin modelo.")
            return
        if self.tipo != TIPO_TABULADA:
            raise ErrorConfiguracion(f"Tipo de densidad desconocido: '{self.tipo}'.")
        if self.malla is None or self.kernel is None:
            raise ErrorConfiguracion("Densidad tabulada requiere malla y kernel.")

        K = np.array(self.kernel, dtype=complex)
        n = self.malla.n_points
        if K.shape != (n, n):
            raise ErrorDominio(f"Kernel de forma {K.shape}; se esperaba ({n}, {n}).")
        _validar_kernel(K)
        K.setflags(write=False)
        object.__setattr__(self, "kernel", K)
        object.__setattr__(self, "_diagonal", not np.any(K - np.diag(np.diag(K))))

    # -------------------------------------------------------------------------
    @property
    def es_tabulada(self) -> bool:
        return self.tipo == TIPO_TABULADA

    @property
    def omega_p0(self) -> float:
        return self.modelo.omega_p0 if self.tipo == TIPO_GSM else self.malla.center

    @property
    def diagonal(self) -> bool:
        """True si el kernel solo tiene diagonal (límite estacionario)."""
        return self._diagonal

    @property
    def traza(self) -> float:
        return float(np.real(np.trace(self.kernel))) if self.es_tabulada else float("nan")


def _validar_kernel(K: np.ndarray) -> None:
    if not np.all(np.isfinite(K)):
        raise ErrorDominio("Kernel con valores no finitos.")
    maximo = float(np.max(np.abs(K))) if K.size else 0.0
    if maximo == 0.0:
        return
    if np.max(np.abs(K - K.conj().T)) > TOL_HERMITICA * maximo:
        raise ErrorDominio("Kernel no hermítico: W(ω̄′,ω̄″) ≠ conj(W(ω̄″,ω̄′)).")
    diag = np.diag(K)
    n = K.shape[0]
    traza = float(np.sum(diag.real))
    tol = TOL_PSD * abs(traza) / n
    if np.max(np.abs(diag.imag)) > TOL_HERMITICA * maximo or np.min(diag.real) < -tol:
        raise ErrorDominio("La diagonal del kernel debe ser real y no negativa.")
    minimo = float(linalg.eigvalsh(0.5 * (K + K.conj().T))[0])
    if minimo < -tol:
        raise ErrorNoPSD(f"Kernel no semidefinido positivo (autovalor mínimo {minimo:.3e}).")


# =============================================================================
# Constructores
# =============================================================================

def csd_closed_form(model: GaussianSchellModel) -> CrossSpectralDensity:
    return CrossSpectralDensity(tipo=TIPO_GSM, modelo=model)


def tabulate_gsm(model: GaussianSchellModel, grid: Optional[FrequencyGrid] = None) -> CrossSpectralDensity:
    """Evalúa gsm_csd sobre la malla; conserva el modelo de origen."""
    grid = grid if grid is not None else malla_para_gsm(model)
    if abs(grid.center - model.omega_p0) > 1e-12 * model.omega_p0:
        raise ErrorConfiguracion(
            f"Malla centrada en {grid.center} pero el modelo tiene ω_p0 = {model.omega_p0}."
        )
    w = grid.values
    K = gsm_csd(model, w[:, None], w[None, :])
    return CrossSpectralDensity(tipo=TIPO_TABULADA, modelo=model, malla=grid, kernel=K.astype(complex))


def stationary_csd(
    grid: FrequencyGrid,
    spectral_density: Union[np.ndarray, Callable[[np.ndarray], np.ndarray]],
) -> CrossSpectralDensity:
    """
    Límite estacionario (Δω_c → 0): kernel diagonal W_ii = S(ω̄_i)/paso.

    La lámina delta no cabe en una malla; se guarda su peso de cuadratura,
    de modo que la masa de cada celda es S(ω̄_i)·paso.
    """
    S = spectral_density(grid.values) if callable(spectral_density) else spectral_density
    S = np.asarray(S, dtype=float)
    if S.shape != (grid.n_points,):
        raise ErrorDominio(f"Densidad espectral de longitud {S.shape}; se esperaba {grid.n_points}.")
    if np.any(S < 0) or not np.all(np.isfinite(S)):
        raise ErrorDominio("La densidad espectral debe ser finita y no negativa.")
    K = np.diag(S / grid.spacing).astype(complex)
    return CrossSpectralDensity(tipo=TIPO_TABULADA, malla=grid, kernel=K)


def espectro_gaussiano(A: float, delta_p: float) -> Callable[[np.ndarray], np.ndarray]:
    """
    S(ω̄) = A·exp(−ω̄²/(2Δ²)): envolvente espectral del GSM en el límite
    Δω_c → 0, con la escala absoluta absorbida en A.
    """
    def S(w: np.ndarray) -> np.ndarray:
        return A * np.exp(-np.asarray(w) ** 2 / (2.0 * delta_p ** 2))
    return S


# =============================================================================
# Transformada de Wiener–Khintchine generalizada
# =============================================================================

def wk_valores(csd: CrossSpectralDensity, t1, t2):
    """Devuelve (valores, error_estimado, avisos) para vectores de (t1, t2)."""
    t1v = np.atleast_1d(np.asarray(t1, dtype=float))
    t2v = np.atleast_1d(np.asarray(t2, dtype=float))
    t1v, t2v = np.broadcast_arrays(t1v, t2v)
    if not (np.all(np.isfinite(t1v)) and np.all(np.isfinite(t2v))):
        raise ErrorDominio("Tiempos no finitos en wk_transform.")

    if csd.tipo == TIPO_GSM:
        m = csd.modelo
        if m.es_coherente:
            vals = _correlacion_coherente(m, t1v, t2v)
        else:
            vals = gsm_temporal_correlation(m, t1v, t2v)
        return np.asarray(vals, dtype=complex), 0.0, ()

    r = cuadratura_doble(csd.kernel, csd.malla, t1v, t2v, diagonal=csd.diagonal, que="wk_transform")
    return r.valores, r.error_estimado, r.avisos


def wk_transform(csd: CrossSpectralDensity, t1, t2) -> CoherenceSample:
    """
    Fórmula:
        Γ(t1,t2) = ∬ dω̄′dω̄″ W(ω̄′,ω̄″)·exp(−iω̄′t1)·exp(+iω̄″t2)

    Tipo GSM: forma cerrada. Tipo tabulado: trapecio con verificación de
    paso doble (aviso si el error estimado supera 1e−4).
    Con t1, t2 escalares el valor es complejo; con arreglos, un arreglo.
    """
    vals, err, avisos = wk_valores(csd, t1, t2)
    escalar = np.ndim(t1) == 0 and np.ndim(t2) == 0
    valor = complex(vals[0]) if escalar else vals
    return CoherenceSample(valor=valor, argumentos=(t1, t2), avisos=avisos, error_estimado=err)

# coherencia/respuesta.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 05 – RESPUESTA ESPECTRAL g_j(ω̄_d)

Este módulo calcula:
- Función de empatamiento de fase Φ(ω̄_d):
    unidad     → 1
    gaussiano  → exp(−ω̄_d²/(2σ_Φ²))
    sinc       → sinc(ω̄_d·L_D/2)   (sinc(x) = sin x / x)
- Filtros de amplitud f(ν):
    unidad     → 1
    gaussiano  → exp(−ν²/(2σ_f²))
    rectangular→ 1 si |ν| ≤ w, 0 en otro caso
- g_j(ω̄_d) = Φ(ω̄_d)·f_s(ω̄_d/2)·f_i(−ω̄_d/2)
- Pantalla de fase aleatoria opcional (una por alternativa)

Los modelos se identifican por nombre; un nombre desconocido es error de
configuración.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple
import functools
import logging
import math

import numpy as np

from .errores import ErrorConfiguracion, ErrorDominio
from .malla import FrequencyGrid
from .muestreo import campo_fase_real

logger = logging.getLogger(__name__)

N_PUNTOS_DIFERENCIA = 129
TOL_PORTADORAS = 1e-12

MODELOS_EMPATAMIENTO = ("unidad", "gaussiano", "sinc")
MODELOS_FILTRO = ("unidad", "gaussiano", "rectangular")

# Parámetro requerido por cada modelo
_PARAMETRO = {"gaussiano": "ancho", "sinc": "L_D", "rectangular": "semiancho"}


# =============================================================================
# Modelos
# =============================================================================

@dataclass(frozen=True)
class ModeloEspectral:
    """Identificador de modelo + parámetro (ancho, L_D o semiancho)."""
    modelo: str = "unidad"
    parametro: Optional[float] = None

    def validar(self, permitidos: Tuple[str, ...], que: str) -> None:
        if self.modelo not in permitidos:
            raise ErrorConfiguracion(
                f"Modelo de {que} desconocido: '{self.modelo}' (válidos: {', '.join(permitidos)})."
            )
        if self.modelo == "unidad":
            return
        p = self.parametro
        if p is None or not (math.isfinite(p) and p > 0):
            raise ErrorDominio(
                f"{que} '{self.modelo}': '{_PARAMETRO[self.modelo]}' debe ser finito y > 0 (recibido {p})."
            )

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.modelo == "unidad":
            return np.ones_like(x)
        if self.modelo == "gaussiano":
            return np.exp(-x ** 2 / (2.0 * self.parametro ** 2))
        if self.modelo == "sinc":
            # np.sinc es la normalizada: sinc(y) = sin(πy)/(πy)
            return np.sinc(x * self.parametro / (2.0 * math.pi))
        if self.modelo == "rectangular":
            return (np.abs(x) <= self.parametro).astype(float)
        raise ErrorConfiguracion(f"Modelo espectral desconocido: '{self.modelo}'.")

    def ancho_en_diferencia(self, factor: float) -> float:
        """
        Ancho característico expresado en ω̄_d cuando el argumento es ω̄_d/factor
        (factor = 1 para Φ, 2 para los filtros). math.inf para 'unidad'.
        """
        if self.modelo == "unidad":
            return math.inf
        if self.modelo == "sinc":
            return factor * 2.0 * math.pi / self.parametro
        return factor * self.parametro


@dataclass(frozen=True)
class PhaseScreen:
    """
    Fase aleatoria θ_j(ω̄_d) gaussiana, independiente para cada alternativa:
        rms:                desviación estándar σ_θ (rad)
        ancho_correlacion:  ℓ de la covarianza σ²·exp[−Δω²/(2ℓ²)]
        realizaciones:      N pantallas promediadas
        semilla:            semilla base
    """
    rms: float
    ancho_correlacion: float
    realizaciones: int = 256
    semilla: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rms) and self.rms >= 0):
            raise ErrorDominio(f"Pantalla de fase: rms inválido ({self.rms}).")
        if not (math.isfinite(self.ancho_correlacion) and self.ancho_correlacion > 0):
            raise ErrorDominio(f"Pantalla de fase: ancho de correlación inválido ({self.ancho_correlacion}).")
        if int(self.realizaciones) < 1:
            raise ErrorDominio(f"Pantalla de fase: realizaciones debe ser ≥ 1 ({self.realizaciones}).")


# =============================================================================
# Respuesta espectral
# =============================================================================

@dataclass(frozen=True)
class SpectralResponse:
    """
    empatamiento:  Φ(ω̄_d)
    filtro_s:      f_s(ν), ν offset desde ω_s0
    filtro_i:      f_i(ν), ν offset desde ω_i0
    omega_s0, omega_i0, omega_p0: portadoras con ω_s0 + ω_i0 = ω_p0
    pantalla:      PhaseScreen opcional
    """
    omega_s0: float
    omega_i0: float
    omega_p0: float
    empatamiento: ModeloEspectral = ModeloEspectral()
    filtro_s: ModeloEspectral = ModeloEspectral()
    filtro_i: ModeloEspectral = ModeloEspectral()
    pantalla: Optional[PhaseScreen] = None

    def __post_init__(self) -> None:
        for nombre in ("omega_s0", "omega_i0", "omega_p0"):
            v = getattr(self, nombre)
            if not math.isfinite(v):
                raise ErrorDominio(f"Portadora '{nombre}' no finita: {v}.")
        if abs(self.omega_s0 + self.omega_i0 - self.omega_p0) > TOL_PORTADORAS * abs(self.omega_p0):
            raise ErrorConfiguracion(
                f"Empatamiento de fase violado: ω_s0 + ω_i0 = {self.omega_s0 + self.omega_i0} ≠ ω_p0 = {self.omega_p0}."
            )
        self.empatamiento.validar(MODELOS_EMPATAMIENTO, "empatamiento de fase")
        self.filtro_s.validar(MODELOS_FILTRO, "filtro de señal")
        self.filtro_i.validar(MODELOS_FILTRO, "filtro de idler")

    @classmethod
    def degenerada(cls, omega_p0: float, **kw) -> "SpectralResponse":
        return cls(omega_s0=0.5 * omega_p0, omega_i0=0.5 * omega_p0, omega_p0=omega_p0, **kw)

    @property
    def omega_d0(self) -> float:
        return self.omega_s0 - self.omega_i0

    @property
    def ancho_efectivo(self) -> float:
        """
        Ancho de g en ω̄_d: los factores gaussianos se combinan en cuadratura,
        los demás por su propio ancho; se toma el menor. math.inf si todo es unidad.
        """
        gauss = []
        otros = []
        for m, factor in ((self.empatamiento, 1.0), (self.filtro_s, 2.0), (self.filtro_i, 2.0)):
            a = m.ancho_en_diferencia(factor)
            if math.isinf(a):
                continue
            (gauss if m.modelo == "gaussiano" else otros).append(a)
        if gauss:
            otros.append(1.0 / math.sqrt(sum(1.0 / a ** 2 for a in gauss)))
        return min(otros) if otros else math.inf

    def malla_diferencia(
        self,
        n_points: int = N_PUNTOS_DIFERENCIA,
        n_sigmas: float = 6.0,
        ancho: Optional[float] = None,
    ) -> FrequencyGrid:
        """Malla en ω̄_d: ±n_sigmas anchos, 129 puntos por defecto."""
        ancho = self.ancho_efectivo if ancho is None else ancho
        if math.isinf(ancho):
            raise ErrorConfiguracion(
                "Respuesta totalmente plana: indique el ancho de la malla de diferencia explícitamente."
            )
        return FrequencyGrid.centrada(self.omega_d0, ancho, n_points, n_sigmas)

    # -------------------------------------------------------------------------
    def conjunta(self, wp: np.ndarray, wd: np.ndarray) -> np.ndarray:
        """
        Respuesta conjunta sin aproximación de banda estrecha:
            G(ω̄_p, ω̄_d) = Φ(ω̄_d)·f_s((ω̄_p+ω̄_d)/2)·f_i((ω̄_p−ω̄_d)/2)
        """
        wp = np.asarray(wp, dtype=float)[:, None]
        wd = np.asarray(wd, dtype=float)[None, :]
        return self.empatamiento(wd) * self.filtro_s(0.5 * (wp + wd)) * self.filtro_i(0.5 * (wp - wd))

    def determinista(self, wd) -> np.ndarray:
        wd = np.asarray(wd, dtype=float)
        return self.empatamiento(wd) * self.filtro_s(0.5 * wd) * self.filtro_i(-0.5 * wd)

    def fases(self, alternativa: int, malla: FrequencyGrid) -> Optional[np.ndarray]:
        """Pantallas θ (N × n) de la alternativa sobre la malla, o None sin pantalla."""
        if self.pantalla is None:
            return None
        return _pantallas(self.pantalla, alternativa, malla)


@functools.lru_cache(maxsize=64)
def _pantallas(p: PhaseScreen, alternativa: int, malla: FrequencyGrid) -> np.ndarray:
    # compartidas entre hilos: solo lectura
    theta = campo_fase_real(malla, p.rms, p.ancho_correlacion, p.realizaciones, (p.semilla, alternativa))
    theta.setflags(write=False)
    return theta

def g_response(resp: SpectralResponse, alternative: int, w_d, malla: Optional[FrequencyGrid] = None):
    """
    g_j(ω̄_d) = Φ(ω̄_d)·f_s(ω̄_d/2)·f_i(−ω̄_d/2)

    Sin pantalla de fase g_1 = g_2. Con pantalla (y malla dada) devuelve la
    matriz N × n de g_j·e^{iθ_j}, una fila por pantalla.
    """
    if alternative not in (1, 2):
        raise ErrorDominio(f"Alternativa inválida: {alternative} (debe ser 1 o 2).")
    g = resp.determinista(w_d)
    if resp.pantalla is None or malla is None:
        return complex(g) if np.ndim(g) == 0 else g.astype(complex)
    theta = resp.fases(alternative, malla)
    return g[None, :] * np.exp(1j * theta)

# coherencia/deteccion.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 08 – DETECCIÓN PROMEDIADA EN EL TIEMPO

Este módulo calcula:
- Γ̄_p = ∫dt̄ Γ_p(τ1, τ2; t̄)   sobre la ventana de colección T_pc
- Γ̄_d = ∫dt̃ Γ_d(τ′1, τ′2; t̃)  sobre la ventana de coincidencia T_ci
- Ī_j, Ḡ_j (mismas integrales con argumentos coincidentes), R̄⁽²⁾ = √(Ī1Ī2)·√(Ḡ1Ḡ2)
- Envolventes normalizadas γ̄_p, γ̄_d (sin portadora)
- Tasa promediada:
    R̄ = κ1²R̄⁽²⁾ + κ2²R̄⁽²⁾ + 2·Re[κ1κ2R̄⁽²⁾γ̄_pγ̄_d·e^{−i(ω_p0Δτ + ω_d0Δτ′ + Δφ)}]
- Barridos de franjas (Δτ, Δτ′ o Δφ) y visibilidad local

Ventana infinita (math.inf):
- Núcleo tabulado: la dependencia temporal de la cuadratura es periódica con
  periodo 2π/paso; se integra exactamente un periodo completo, que es todo su
  soporte numérico:  ∫dt e^{i(ω̄_i−ω̄_j)t} = (2π/paso)·δ_ij.
- GSM en forma cerrada: trapecio truncado donde el integrando cae por debajo
  de 1e−10 de su pico (|t̄ − centro| ≤ T·√(2·ln 1e10)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple
import logging
import math

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from .bifoton import ResultadoTasa, gamma_d_valores, gamma_p_valores, recortar_tasa, verificar_portadoras
from .bombeo import CrossSpectralDensity
from .caminos import CouplingAmplitudes, PathwayPair
from .errores import ErrorDominio
from .malla import FrequencyGrid, transformada_doble, transformada_simple
from .muestra import CoherenceSample
from .muestreo import mapear_ordenado
from .respuesta import SpectralResponse, g_response

logger = logging.getLogger(__name__)

TOL_BORDE = 1e-6
PICO_TRUNCADO = 1e-10
PASOS_POR_T = 16
MIN_PUNTOS_VENTANA = 65
PUNTOS_PERIODO = 128

PARAMETROS_BARRIDO = ("delta_tau", "delta_tau_prima", "delta_phi")


# =============================================================================
# Tipos
# =============================================================================

@dataclass(frozen=True)
class AveragingWindows:
    """T_pc: ventana de colección para t̄; T_ci: ventana de coincidencia para t̃ (math.inf = límite)."""
    T_pc: float = math.inf
    T_ci: float = math.inf

    def __post_init__(self) -> None:
        for nombre in ("T_pc", "T_ci"):
            v = getattr(self, nombre)
            if math.isnan(v) or v <= 0:
                raise ErrorDominio(f"Ventana '{nombre}' debe ser > 0 o infinita (recibido {v}).")


@dataclass(frozen=True)
class Escenario:
    """Todo lo que fija una evaluación de la tasa promediada."""
    csd: CrossSpectralDensity
    resp: SpectralResponse
    paths: PathwayPair
    couplings: CouplingAmplitudes = CouplingAmplitudes()
    ventanas: AveragingWindows = AveragingWindows()
    malla_d: Optional[FrequencyGrid] = None

    def __post_init__(self) -> None:
        verificar_portadoras(self.csd, self.resp)
        if self.malla_d is None:
            object.__setattr__(self, "malla_d", self.resp.malla_diferencia())


@dataclass(frozen=True)
class PromedioTemporal:
    Gamma_p: complex
    Gamma_d: complex
    R: float
    gamma_p: complex
    gamma_d: complex
    I: Tuple[float, float]
    G: Tuple[float, float]
    avisos: Tuple[str, ...] = ()


# =============================================================================
# Integrales temporales
# =============================================================================

def _unicos(avisos) -> Tuple[str, ...]:
    return tuple(dict.fromkeys(avisos))


def _integral_periodica(diag: np.ndarray, malla: FrequencyGrid, delta: float) -> complex:
    # (2π/paso)·Σ p_i²·K_ii·e^{−iω̄_i Δ}
    p = malla.pesos()
    return complex((2.0 * math.pi / malla.spacing) * np.sum(p * p * diag * np.exp(-1j * malla.values * delta)))


def _integral_ventana(
    f: Callable[[np.ndarray], Tuple[np.ndarray, Tuple[str, ...]]],
    a: float,
    b: float,
    paso: float,
    que: str,
    periodo: Optional[float] = None,
) -> Tuple[complex, Tuple[str, ...]]:
    n = max(MIN_PUNTOS_VENTANA, int(math.ceil((b - a) / paso)) + 1)
    n += (n + 1) % 2
    t = np.linspace(a, b, n)
    vals, avisos = f(t)
    pico = float(np.max(np.abs(vals))) if vals.size else 0.0
    if pico > 0 and max(abs(vals[0]), abs(vals[-1])) > TOL_BORDE * pico:
        msg = f"{que}: integrando en el borde de la ventana > {TOL_BORDE:g} del pico (soporte truncado)."
        logger.warning(msg)
        avisos = avisos + (msg,)
    if periodo is not None and (b - a) > periodo:
        msg = f"{que}: ventana ({b - a:g}) mayor que el periodo de la cuadratura ({periodo:g}); hay alias."
        logger.warning(msg)
        avisos = avisos + (msg,)
    return complex(trapezoid(vals, t)), avisos


def _aviso_alias(perfil: Callable[[np.ndarray], np.ndarray], periodo: float, que: str) -> Tuple[str, ...]:
    """
    Con ventana infinita se integra un periodo completo de la cuadratura: el
    integrando debe haber decaído en el punto opuesto a su pico, o las
    réplicas periódicas se solapan.
    """
    t = np.linspace(0.0, periodo, PUNTOS_PERIODO, endpoint=False)
    vals = np.abs(perfil(t))
    k = int(np.argmax(vals))
    pico = float(vals[k])
    opuesto = float(vals[(k + PUNTOS_PERIODO // 2) % PUNTOS_PERIODO])
    if pico > 0 and opuesto > TOL_BORDE * pico:
        msg = (
            f"{que}: el integrando no decae dentro del periodo de la cuadratura ({periodo:g}); "
            "hay alias. Refine el paso de la malla."
        )
        logger.warning(msg)
        return (msg,)
    return ()


def envolvente_p_bar(csd: CrossSpectralDensity, tau1: float, tau2: float, T_pc: float) -> Tuple[complex, Tuple[str, ...]]:
    """e^{+iω_p0(τ1−τ2)}·Γ̄_p (sin portadora)."""
    portadora = np.exp(1j * csd.omega_p0 * (tau1 - tau2))

    def f(t: np.ndarray):
        vals, _, av = gamma_p_valores(csd, tau1, tau2, t)
        return portadora * vals, av

    if csd.es_tabulada:
        malla = csd.malla
        if math.isinf(T_pc):
            avisos: Tuple[str, ...] = ()
            if not csd.diagonal:
                avisos = _aviso_alias(
                    lambda t: transformada_doble(csd.kernel, malla, tau1 - t, tau2 - t), malla.periodo_temporal, "Γ̄_p"
                )
            return _integral_periodica(np.real(np.diag(csd.kernel)), malla, tau1 - tau2), avisos
        paso = math.pi / (8.0 * malla.span_half_width)
        return _integral_ventana(f, -0.5 * T_pc, 0.5 * T_pc, paso, "Γ̄_p", malla.periodo_temporal)

    T = csd.modelo.T
    paso = T / PASOS_POR_T
    if math.isinf(T_pc):
        centro = 0.5 * (tau1 + tau2)
        L = T * math.sqrt(2.0 * math.log(1.0 / PICO_TRUNCADO))
        return _integral_ventana(f, centro - L, centro + L, paso, "Γ̄_p")
    return _integral_ventana(f, -0.5 * T_pc, 0.5 * T_pc, paso, "Γ̄_p")


def envolvente_d_bar(
    resp: SpectralResponse,
    tau1p: float,
    tau2p: float,
    T_ci: float,
    malla: FrequencyGrid,
    alternativas: Tuple[int, int] = (1, 2),
) -> Tuple[complex, Tuple[str, ...]]:
    """e^{+iω_d0(τ′1−τ′2)}·Γ̄_d (sin portadora)."""
    if math.isinf(T_ci):
        g1 = np.atleast_2d(g_response(resp, alternativas[0], malla.values, malla))
        g2 = np.atleast_2d(g_response(resp, alternativas[1], malla.values, malla))
        diag = np.mean(np.conj(g1) * g2, axis=0)

        def perfil(t: np.ndarray) -> np.ndarray:
            G1 = transformada_simple(g1, malla, tau1p - t)
            G2 = transformada_simple(g2, malla, tau2p - t)
            return np.mean(np.conj(G1) * G2, axis=1)

        avisos = _aviso_alias(perfil, malla.periodo_temporal, "Γ̄_d")
        return _integral_periodica(diag, malla, tau1p - tau2p), avisos

    portadora = np.exp(1j * resp.omega_d0 * (tau1p - tau2p))

    def f(t: np.ndarray):
        vals, _, av = gamma_d_valores(resp, tau1p, tau2p, t, malla, alternativas)
        return portadora * vals, av

    paso = math.pi / (8.0 * malla.span_half_width)
    return _integral_ventana(f, -0.5 * T_ci, 0.5 * T_ci, paso, "Γ̄_d", malla.periodo_temporal)


# =============================================================================
# API pública
# =============================================================================

def time_averaged_gamma2(
    csd: CrossSpectralDensity,
    resp: SpectralResponse,
    paths: PathwayPair,
    windows: AveragingWindows = AveragingWindows(),
    malla_d: Optional[FrequencyGrid] = None,
) -> PromedioTemporal:
    """
    Γ̄⁽²⁾ = Γ̄_p·Γ̄_d y normalizaciones

        γ̄_p(Δτ)  = e^{iω_p0Δτ}·Γ̄_p/√(Ī1Ī2)
        γ̄_d(Δτ′) = e^{iω_d0Δτ′}·Γ̄_d/√(Ḡ1Ḡ2)

    Γ̄_p y Γ̄_d incluyen la portadora; γ̄_p y γ̄_d son envolventes.
    """
    verificar_portadoras(csd, resp)
    malla_d = malla_d if malla_d is not None else resp.malla_diferencia()
    a1, a2 = paths.alt1, paths.alt2

    env_p, av1 = envolvente_p_bar(csd, a1.tau, a2.tau, windows.T_pc)
    I1, av2 = envolvente_p_bar(csd, a1.tau, a1.tau, windows.T_pc)
    I2, av3 = envolvente_p_bar(csd, a2.tau, a2.tau, windows.T_pc)

    env_d, av4 = envolvente_d_bar(resp, a1.tau_prima, a2.tau_prima, windows.T_ci, malla_d, (1, 2))
    G1, av5 = envolvente_d_bar(resp, a1.tau_prima, a1.tau_prima, windows.T_ci, malla_d, (1, 1))
    G2, av6 = envolvente_d_bar(resp, a2.tau_prima, a2.tau_prima, windows.T_ci, malla_d, (2, 2))

    I1, I2, G1, G2 = (float(np.real(x)) for x in (I1, I2, G1, G2))
    gp = CoherenceSample(valor=env_p, argumentos=(a1.tau, a2.tau)).normalizado(I1, I2)
    gd = CoherenceSample(valor=env_d, argumentos=(a1.tau_prima, a2.tau_prima)).normalizado(G1, G2)

    return PromedioTemporal(
        Gamma_p=complex(np.exp(-1j * csd.omega_p0 * paths.delta_tau) * env_p),
        Gamma_d=complex(np.exp(-1j * resp.omega_d0 * paths.delta_tau_prima) * env_d),
        R=math.sqrt(max(I1 * I2, 0.0)) * math.sqrt(max(G1 * G2, 0.0)),
        gamma_p=complex(gp.valor),
        gamma_d=complex(gd.valor),
        I=(I1, I2),
        G=(G1, G2),
        avisos=_unicos(av1 + av2 + av3 + av4 + av5 + av6),
    )


def tasa_desde_promedio(
    prom: PromedioTemporal,
    couplings: CouplingAmplitudes,
    paths: PathwayPair,
    omega_p0: float,
    omega_d0: float,
) -> ResultadoTasa:
    """Evalúa la tasa promediada a partir de las salidas de time_averaged_gamma2."""
    k1, k2 = couplings.kappa1, couplings.kappa2
    fase = omega_p0 * paths.delta_tau + omega_d0 * paths.delta_tau_prima + paths.delta_phi
    directos = (k1 * k1 + k2 * k2) * prom.R
    interf = 2.0 * float(np.real(k1 * k2 * prom.R * prom.gamma_p * prom.gamma_d * np.exp(-1j * fase)))
    valor, recortado, av = recortar_tasa(directos + interf, directos, "time_averaged_rate")
    return ResultadoTasa(valor=valor, recortado=recortado, directos=(prom.R, prom.R), avisos=prom.avisos + av)


def time_averaged_rate(
    csd: CrossSpectralDensity,
    resp: SpectralResponse,
    paths: PathwayPair,
    couplings: CouplingAmplitudes,
    windows: AveragingWindows = AveragingWindows(),
    malla_d: Optional[FrequencyGrid] = None,
) -> ResultadoTasa:
    prom = time_averaged_gamma2(csd, resp, paths, windows, malla_d)
    return tasa_desde_promedio(prom, couplings, paths, csd.omega_p0, resp.omega_d0)


# =============================================================================
# Barridos de franjas
# =============================================================================

@dataclass(frozen=True)
class Barrido:
    parametro: str
    inicio: float
    fin: float
    n_puntos: int = 101

    def __post_init__(self) -> None:
        if self.parametro not in PARAMETROS_BARRIDO:
            raise ErrorDominio(
                f"Parámetro de barrido desconocido: '{self.parametro}' (válidos: {', '.join(PARAMETROS_BARRIDO)})."
            )
        if not (math.isfinite(self.inicio) and math.isfinite(self.fin)) or self.fin < self.inicio:
            raise ErrorDominio(f"Rango de barrido inválido: [{self.inicio}, {self.fin}].")
        if int(self.n_puntos) < 1:
            raise ErrorDominio(f"n_puntos debe ser ≥ 1 (recibido {self.n_puntos}).")

    def puntos(self) -> np.ndarray:
        """Rango de ancho cero → un único punto."""
        if self.fin == self.inicio:
            return np.array([float(self.inicio)])
        return np.linspace(self.inicio, self.fin, int(self.n_puntos))


MAPEO_BARRIDO = {
    "delta_tau": "τ_p1 se ajusta para que Δτ = x",
    "delta_tau_prima": "τ_s1 += δ, τ_i1 −= δ con δ tal que Δτ′ = x",
    "delta_phi": "φ_p1 se ajusta para que Δφ = x",
}


def aplicar_barrido(paths: PathwayPair, parametro: str, x: float) -> PathwayPair:
    """Modificación canónica de los parámetros de camino para fijar el valor barrido."""
    a1, a2 = paths.alt1, paths.alt2
    if parametro == "delta_tau":
        return paths.con_alternativa(1, tau_p=x + a2.tau - 0.5 * (a1.tau_s + a1.tau_i))
    if parametro == "delta_tau_prima":
        d = x - paths.delta_tau_prima
        return paths.con_alternativa(1, tau_s=a1.tau_s + d, tau_i=a1.tau_i - d)
    if parametro == "delta_phi":
        return paths.con_alternativa(1, phi_p=x + a2.phi - a1.phi_s - a1.phi_i)
    raise ErrorDominio(f"Parámetro de barrido desconocido: '{parametro}'.")


@dataclass(frozen=True)
class FringeScan:
    parametro: str
    puntos: np.ndarray
    tasas: np.ndarray
    envolvente_p: np.ndarray
    envolvente_d: np.ndarray
    metadatos: Dict[str, Any] = field(default_factory=dict)
    avisos: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if np.any(self.tasas < 0):
            raise ErrorDominio("FringeScan con tasas negativas.")
        if self.puntos.size > 1 and np.any(np.diff(self.puntos) <= 0):
            raise ErrorDominio("Los puntos del barrido deben ser estrictamente crecientes.")

    def como_tabla(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                self.parametro: self.puntos,
                "tasa": self.tasas,
                "abs_gamma_p": self.envolvente_p,
                "abs_gamma_d": self.envolvente_d,
            }
        )


def fringe_scan(escenario: Escenario, sweep: Barrido, hilos: Optional[int] = None) -> FringeScan:
    """
    Vector de tasas promediadas a lo largo del parámetro barrido; los puntos
    se evalúan en paralelo y se ensamblan en orden.
    """
    x = sweep.puntos()

    def evaluar(k: int):
        paths = aplicar_barrido(escenario.paths, sweep.parametro, float(x[k]))
        prom = time_averaged_gamma2(escenario.csd, escenario.resp, paths, escenario.ventanas, escenario.malla_d)
        tasa = tasa_desde_promedio(prom, escenario.couplings, paths, escenario.csd.omega_p0, escenario.resp.omega_d0)
        return tasa.valor, abs(prom.gamma_p), abs(prom.gamma_d), tasa.avisos

    filas = mapear_ordenado(evaluar, list(range(x.size)), hilos)
    avisos = _unicos(a for fila in filas for a in fila[3])
    return FringeScan(
        parametro=sweep.parametro,
        puntos=x,
        tasas=np.array([f[0] for f in filas]),
        envolvente_p=np.array([f[1] for f in filas]),
        envolvente_d=np.array([f[2] for f in filas]),
        metadatos={"mapeo": MAPEO_BARRIDO[sweep.parametro], "barrido": sweep},
        avisos=avisos,
    )


def visibility(scan: FringeScan, window: Optional[Tuple[float, float]] = None) -> float:
    """V = (max − min)/(max + min) dentro de la ventana local (todo el barrido si es None)."""
    if window is None:
        sel = scan.tasas
    else:
        a, b = window
        sel = scan.tasas[(scan.puntos >= a) & (scan.puntos <= b)]
    if sel.size == 0:
        raise ErrorDominio(f"Ventana de visibilidad vacía: {window}.")
    mx, mn = float(np.max(sel)), float(np.min(sel))
    if mx + mn == 0.0:
        return 0.0
    return (mx - mn) / (mx + mn)

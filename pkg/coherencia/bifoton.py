# coherencia/bifoton.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 06 – FUNCIÓN DE CORRELACIÓN DE DOS FOTONES (FORMA FACTORIZADA)

Este módulo calcula:
- Γ_p(τ1, τ2; t̄) = e^{−iω_p0(τ1−τ2)}·Γ_bombeo(τ1−t̄, τ2−t̄)
- Γ_d(τ′1, τ′2; t̃) = e^{−iω_d0(τ′1−τ′2)}·∬ ⟨g_1*(ω̄′)g_2(ω̄″)⟩·e^{−iω̄′(τ′1−t̃)}·e^{+iω̄″(τ′2−t̃)}
- Γ⁽²⁾(t_s, t_i) = Γ_p(·, (t_s+t_i)/2)·Γ_d(·, (t_s−t_i)/2)
- Tasa de coincidencias instantánea:
    R = κ1²R⁽²⁾₁ + κ2²R⁽²⁾₂ + 2·Re[κ1κ2·Γ⁽²⁾·e^{−iΔφ}]

NO calcula promedios temporales (eso lo hace deteccion).
El prefactor global de Γ⁽²⁾ se toma igual a 1 (unidades arbitrarias).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple
import logging

import numpy as np

from .bombeo import CrossSpectralDensity, wk_valores
from .caminos import CouplingAmplitudes, PathwayPair
from .errores import ErrorConfiguracion, ErrorConsistencia
from .malla import FrequencyGrid, cuadratura_doble, cuadratura_simple
from .muestra import CoherenceSample
from .respuesta import SpectralResponse, g_response

logger = logging.getLogger(__name__)

TOL_RECORTE = 1e-10
PUNTOS_POR_ANCHO = 8


# =============================================================================
# Verificaciones cortas
# =============================================================================

def verificar_portadoras(csd: CrossSpectralDensity, resp: SpectralResponse) -> None:
    w0 = csd.omega_p0
    if abs(w0 - resp.omega_p0) > 1e-12 * abs(w0):
        raise ErrorConfiguracion(
            f"Portadora del bombeo ({w0}) distinta de la de la respuesta ({resp.omega_p0})."
        )


def _avisos_resolucion(resp: SpectralResponse, grid: FrequencyGrid) -> Tuple[str, ...]:
    ancho = resp.ancho_efectivo
    if np.isfinite(ancho) and grid.spacing > ancho / PUNTOS_POR_ANCHO:
        msg = (
            f"Malla de diferencia gruesa: paso {grid.spacing:.3e} > ancho/{PUNTOS_POR_ANCHO} "
            f"({ancho / PUNTOS_POR_ANCHO:.3e})."
        )
        logger.warning(msg)
        return (msg,)
    return ()


# =============================================================================
# Γ_p
# =============================================================================

def gamma_p_valores(csd: CrossSpectralDensity, tau1: float, tau2: float, t_bar):
    """Vector de Γ_p sobre un arreglo de t̄ → (valores, error, avisos)."""
    tb = np.atleast_1d(np.asarray(t_bar, dtype=float))
    vals, err, avisos = wk_valores(csd, tau1 - tb, tau2 - tb)
    portadora = np.exp(-1j * csd.omega_p0 * (tau1 - tau2))
    return portadora * vals, err, avisos


def gamma_p(csd: CrossSpectralDensity, tau1: float, tau2: float, t_bar) -> CoherenceSample:
    """
    Γ_p(τ1, τ2; t̄) = e^{−iω_p0(τ1−τ2)}·wk_transform(csd, τ1−t̄, τ2−t̄)

    Tiene la misma forma funcional que la correlación temporal del propio
    bombeo. No depende de la respuesta espectral.
    """
    vals, err, avisos = gamma_p_valores(csd, tau1, tau2, t_bar)
    valor = complex(vals[0]) if np.ndim(t_bar) == 0 else vals
    return CoherenceSample(valor=valor, argumentos=(tau1, tau2, t_bar), avisos=avisos, error_estimado=err)


# =============================================================================
# Γ_d
# =============================================================================

def _g_matriz(resp: SpectralResponse, j: int, grid: FrequencyGrid) -> np.ndarray:
    """g_j sobre la malla como matriz (N_pantallas × n); N = 1 sin pantalla."""
    g = g_response(resp, j, grid.values, grid)
    return np.atleast_2d(g)


def gamma_d_valores(
    resp: SpectralResponse,
    tau1p: float,
    tau2p: float,
    t_tilde,
    grid: FrequencyGrid,
    alternativas: Tuple[int, int] = (1, 2),
):
    """
    Vector de Γ_d sobre un arreglo de t̃, por integrales simples separables:
        Γ_d = e^{−iω_d0Δτ′}·⟨conj(G_1(τ′1−t̃))·G_2(τ′2−t̃)⟩,  G_j(s) = ∫ g_j e^{iω̄s}
    """
    tt = np.atleast_1d(np.asarray(t_tilde, dtype=float))
    g1 = _g_matriz(resp, alternativas[0], grid)
    g2 = _g_matriz(resp, alternativas[1], grid)

    err = 0.0
    avisos: Tuple[str, ...] = _avisos_resolucion(resp, grid)
    G1 = np.empty((g1.shape[0], tt.size), dtype=complex)
    G2 = np.empty((g2.shape[0], tt.size), dtype=complex)
    for k in range(g1.shape[0]):
        r1 = cuadratura_simple(g1[k], grid, tau1p - tt, que="gamma_d")
        r2 = cuadratura_simple(g2[k], grid, tau2p - tt, que="gamma_d")
        G1[k], G2[k] = r1.valores, r2.valores
        err = max(err, r1.error_estimado, r2.error_estimado)
        if k == 0:
            avisos += r1.avisos + r2.avisos

    portadora = np.exp(-1j * resp.omega_d0 * (tau1p - tau2p))
    return portadora * np.mean(np.conj(G1) * G2, axis=0), err, avisos


def gamma_d(
    resp: SpectralResponse,
    tau1p: float,
    tau2p: float,
    t_tilde,
    grid: Optional[FrequencyGrid] = None,
    alternativas: Tuple[int, int] = (1, 2),
) -> CoherenceSample:
    """
    Γ_d(τ′1, τ′2; t̃). Con g determinista el núcleo ⟨g_1* g_2⟩ es separable y
    la integral doble es el producto de dos simples. Con pantalla de fase se
    promedia sobre las N pantallas de cada alternativa.
    """
    grid = grid if grid is not None else resp.malla_diferencia()
    vals, err, avisos = gamma_d_valores(resp, tau1p, tau2p, t_tilde, grid, alternativas)
    valor = complex(vals[0]) if np.ndim(t_tilde) == 0 else vals
    return CoherenceSample(valor=valor, argumentos=(tau1p, tau2p, t_tilde), avisos=avisos, error_estimado=err)


def nucleo_diferencia(resp: SpectralResponse, grid: FrequencyGrid, alternativas: Tuple[int, int] = (1, 2)) -> np.ndarray:
    """K(ω̄′,ω̄″) = ⟨conj(g_1(ω̄′))·g_2(ω̄″)⟩ sobre la malla."""
    g1 = _g_matriz(resp, alternativas[0], grid)
    g2 = _g_matriz(resp, alternativas[1], grid)
    return (np.conj(g1).T @ g2) / g1.shape[0]


def gamma_d_doble(
    resp: SpectralResponse,
    tau1p: float,
    tau2p: float,
    t_tilde,
    grid: FrequencyGrid,
    alternativas: Tuple[int, int] = (1, 2),
) -> CoherenceSample:
    """Γ_d por cuadratura doble del núcleo completo (verificación cruzada)."""
    K = nucleo_diferencia(resp, grid, alternativas)
    tt = np.atleast_1d(np.asarray(t_tilde, dtype=float))
    r = cuadratura_doble(K, grid, tau1p - tt, tau2p - tt, que="gamma_d (doble)")
    vals = np.exp(-1j * resp.omega_d0 * (tau1p - tau2p)) * r.valores
    valor = complex(vals[0]) if np.ndim(t_tilde) == 0 else vals
    return CoherenceSample(valor=valor, argumentos=(tau1p, tau2p, t_tilde), avisos=r.avisos, error_estimado=r.error_estimado)


# =============================================================================
# Γ⁽²⁾ factorizada
# =============================================================================

def gamma2_factorized(
    csd: CrossSpectralDensity,
    resp: SpectralResponse,
    paths: PathwayPair,
    t_s,
    t_i,
    grid: Optional[FrequencyGrid] = None,
    alternativas: Tuple[int, int] = (1, 2),
) -> CoherenceSample:
    """
    Γ⁽²⁾(t_s, t_i) = Γ_p(τ1, τ2; (t_s+t_i)/2)·Γ_d(τ′1, τ′2; (t_s−t_i)/2)

    t_s, t_i pueden ser arreglos (mismo tamaño).
    """
    verificar_portadoras(csd, resp)
    ts = np.asarray(t_s, dtype=float)
    ti = np.asarray(t_i, dtype=float)
    a1, a2 = paths.alt1, paths.alt2
    p = gamma_p(csd, a1.tau, a2.tau, 0.5 * (ts + ti))
    d = gamma_d(resp, a1.tau_prima, a2.tau_prima, 0.5 * (ts - ti), grid, alternativas)
    out = p * d
    return CoherenceSample(
        valor=out.valor,
        argumentos=(t_s, t_i),
        avisos=out.avisos,
        error_estimado=out.error_estimado,
    )


# =============================================================================
# Tasa de coincidencias
# =============================================================================

@dataclass(frozen=True)
class ResultadoTasa:
    valor: float
    recortado: bool = False
    directos: Tuple[float, float] = (0.0, 0.0)
    avisos: Tuple[str, ...] = ()


def recortar_tasa(valor: float, directos: float, que: str = "tasa") -> Tuple[float, bool, Tuple[str, ...]]:
    """
    Tasa ≥ −1e−10·(términos directos) se recorta a 0 con aviso; por debajo
    es un error de consistencia interna.
    """
    if valor >= 0.0:
        return float(valor), False, ()
    if valor >= -TOL_RECORTE * abs(directos):
        msg = f"{que}: valor negativo {valor:.3e} dentro de tolerancia; recortado a 0."
        logger.warning(msg)
        return 0.0, True, (msg,)
    raise ErrorConsistencia(
        f"{que}: valor negativo {valor:.6e} más allá de la tolerancia "
        f"(directos = {directos:.6e}); revise la cuadratura."
    )


def coincidence_rate(
    csd: CrossSpectralDensity,
    resp: SpectralResponse,
    paths: PathwayPair,
    couplings: CouplingAmplitudes,
    t_s: float,
    t_i: float,
    grid: Optional[FrequencyGrid] = None,
) -> ResultadoTasa:
    """
    Ley de interferencia del campo de dos fotones:
        R = κ1²R⁽²⁾₁ + κ2²R⁽²⁾₂ + 2·Re[κ1κ2·Γ⁽²⁾·e^{−iΔφ}]
    R⁽²⁾_j es Γ⁽²⁾ con ambas ranuras ocupadas por la alternativa j.
    """
    grid = grid if grid is not None else resp.malla_diferencia()
    k1, k2 = couplings.kappa1, couplings.kappa2

    r1 = gamma2_factorized(csd, resp, paths.diagonal(1), t_s, t_i, grid, (1, 1))
    r2 = gamma2_factorized(csd, resp, paths.diagonal(2), t_s, t_i, grid, (2, 2))
    cruz = gamma2_factorized(csd, resp, paths, t_s, t_i, grid, (1, 2))

    R1 = float(np.real(r1.valor))
    R2 = float(np.real(r2.valor))
    directos = k1 * k1 * R1 + k2 * k2 * R2
    interf = 2.0 * float(np.real(k1 * k2 * cruz.valor * np.exp(-1j * paths.delta_phi)))
    valor, recortado, av = recortar_tasa(directos + interf, directos, "coincidence_rate")
    return ResultadoTasa(
        valor=valor,
        recortado=recortado,
        directos=(R1, R2),
        avisos=r1.avisos + r2.avisos + cruz.avisos + av,
    )

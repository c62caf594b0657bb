# coherencia/oraculo.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 07 – ORÁCULO MONTE-CARLO (SIN FACTORIZAR)

Este módulo calcula:
- Amplitud bifotónica escalar A_j(t_s, t_i) de cada realización del bombeo
- Γ⁽²⁾ = e^{iΔφ}·⟨conj(A_1)·A_2⟩ promediado sobre realizaciones
- Tasa de coincidencias ⟨|κ1A1 + κ2A2|²⟩
- Error estándar jackknife por bloques

La integral doble en (ω_s, ω_i) se hace en coordenadas suma/diferencia:
    ω_s = ω_s0 + (ω̄_p + ω̄_d)/2,   ω_i = ω_i0 + (ω̄_p − ω̄_d)/2
con lo que
    A_j = e^{iφ_j}·∬ dω̄_p dω̄_d V(ω̄_p)·G(ω̄_p, ω̄_d)
              ·e^{i(ω_p0+ω̄_p)(τ_j−t̄)}·e^{i(ω_d0+ω̄_d)(τ′_j−t̃)}
y el jacobiano constante queda absorbido en las unidades arbitrarias.
No se usa la aproximación de banda estrecha: G incluye la dependencia en ω̄_p
de los filtros.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple
import logging

import numpy as np

from .bifoton import verificar_portadoras
from .bombeo import CrossSpectralDensity
from .caminos import CouplingAmplitudes, PathwayPair
from .errores import ErrorConfiguracion, ErrorDominio
from .malla import FrequencyGrid
from .muestra import CoherenceSample
from .muestreo import Semilla, mapear_bloques
from .respuesta import SpectralResponse

logger = logging.getLogger(__name__)

MIN_REALIZACIONES = 100
BLOQUES_JACKKNIFE = 100


# =============================================================================
# Malla conjunta
# =============================================================================

@dataclass(frozen=True)
class MallaConjunta:
    """
    bombeo:      eje ω̄_p (centro ω_p0)
    diferencia:  eje ω̄_d (centro ω_d0)
    """
    bombeo: FrequencyGrid
    diferencia: FrequencyGrid

    @classmethod
    def para(cls, csd: CrossSpectralDensity, resp: SpectralResponse, diferencia: Optional[FrequencyGrid] = None) -> "MallaConjunta":
        """Eje de bombeo = malla del bombeo (interpolación exacta); eje de diferencia = malla de g."""
        if not csd.es_tabulada:
            raise ErrorConfiguracion("El oráculo requiere una densidad espectral tabulada.")
        return cls(bombeo=csd.malla, diferencia=diferencia if diferencia is not None else resp.malla_diferencia())

    def cubre(self, malla_bombeo: FrequencyGrid) -> None:
        if abs(self.bombeo.center - malla_bombeo.center) > 1e-12 * max(1.0, abs(malla_bombeo.center)):
            raise ErrorConfiguracion("La malla conjunta y la del bombeo tienen portadoras distintas.")
        if self.bombeo.span_half_width < malla_bombeo.span_half_width * (1.0 - 1e-12):
            raise ErrorDominio(
                f"La malla conjunta (±{self.bombeo.span_half_width:g}) no cubre el soporte del bombeo "
                f"(±{malla_bombeo.span_half_width:g})."
            )


def matriz_interpolacion(destino: np.ndarray, origen: np.ndarray) -> np.ndarray:
    """M (n_destino × n_origen) de interpolación lineal; cero fuera de [origen]."""
    eye = np.eye(origen.size)
    return np.column_stack([np.interp(destino, origen, eye[:, k], left=0.0, right=0.0) for k in range(origen.size)])


# =============================================================================
# Núcleos de amplitud
# =============================================================================

def _nucleos(
    resp: SpectralResponse,
    paths: PathwayPair,
    j: int,
    ts: np.ndarray,
    ti: np.ndarray,
    conjunta: MallaConjunta,
    malla_bombeo: FrequencyGrid,
) -> np.ndarray:
    """
    Matriz Q_j (n_bombeo × m) tal que A_j = V @ Q_j para m pares (t_s, t_i).
    """
    alt = paths.alternativa(j)
    wp = conjunta.bombeo.values
    wd = conjunta.diferencia.values
    pp = conjunta.bombeo.pesos()
    pd = conjunta.diferencia.pesos()

    s_p = alt.tau - 0.5 * (ts + ti)
    s_d = alt.tau_prima - 0.5 * (ts - ti)

    G = resp.conjunta(wp, wd)                                     # n_p × n_d
    D = (np.exp(1j * np.outer(s_d, wd)) * pd[None, :]) @ G.T      # m × n_p
    K = pp[None, :] * np.exp(1j * np.outer(s_p, wp)) * D          # m × n_p
    pref = np.exp(1j * alt.phi) * np.exp(1j * resp.omega_p0 * s_p) * np.exp(1j * resp.omega_d0 * s_d)
    K = pref[:, None] * K

    M = matriz_interpolacion(wp, malla_bombeo.values)             # n_p × n_bombeo
    return M.T @ K.T


def biphoton_amplitude(
    realization: np.ndarray,
    malla_bombeo: FrequencyGrid,
    resp: SpectralResponse,
    paths: PathwayPair,
    alternative: int,
    t_s,
    t_i,
    conjunta: MallaConjunta,
):
    """
    A_j(t_s, t_i) para una realización V definida sobre malla_bombeo
    (interpolada linealmente al eje ω̄_p de la malla conjunta).
    Lineal en V. t_s, t_i escalares o arreglos.
    """
    conjunta.cubre(malla_bombeo)
    V = np.asarray(realization, dtype=complex)
    if V.shape != (malla_bombeo.n_points,):
        raise ErrorDominio(f"Realización de longitud {V.shape}; se esperaba {malla_bombeo.n_points}.")
    ts = np.atleast_1d(np.asarray(t_s, dtype=float))
    ti = np.atleast_1d(np.asarray(t_i, dtype=float))
    ts, ti = np.broadcast_arrays(ts, ti)
    A = V @ _nucleos(resp, paths, alternative, ts, ti, conjunta, malla_bombeo)
    return complex(A[0]) if np.ndim(t_s) == 0 and np.ndim(t_i) == 0 else A


# =============================================================================
# Jackknife
# =============================================================================

def jackknife(datos: np.ndarray, n_bloques: int = BLOQUES_JACKKNIFE) -> Tuple[np.ndarray, np.ndarray]:
    """
    Media y error estándar jackknife por bloques (dejando uno fuera) a lo
    largo del eje 0. Para datos complejos el error es el de la media compleja
    (√(var Re + var Im)).
    """
    datos = np.asarray(datos)
    n = datos.shape[0]
    nb = max(2, min(int(n_bloques), n))
    bloques = np.array_split(datos, nb, axis=0)
    sumas = np.array([b.sum(axis=0) for b in bloques])
    tamanos = np.array([b.shape[0] for b in bloques], dtype=float)
    total = sumas.sum(axis=0)

    forma = (nb,) + (1,) * (datos.ndim - 1)
    theta = (total[None, ...] - sumas) / (n - tamanos).reshape(forma)
    theta_media = theta.mean(axis=0)
    var = (nb - 1) / nb * np.sum(np.abs(theta - theta_media[None, ...]) ** 2, axis=0)
    return np.mean(datos, axis=0), np.sqrt(var)


# =============================================================================
# Oráculo
# =============================================================================

@dataclass(frozen=True)
class ResultadoOraculo:
    muestra: CoherenceSample
    error_estandar: np.ndarray
    count: int

    @property
    def valor(self):
        return self.muestra.valor


def _preparar(csd, resp, paths, t_s, t_i, count, conjunta):
    verificar_portadoras(csd, resp)
    if not csd.es_tabulada:
        raise ErrorConfiguracion("El oráculo requiere una densidad espectral tabulada.")
    if resp.pantalla is not None:
        raise ErrorConfiguracion("El oráculo no admite pantalla de fase en g.")
    if int(count) < MIN_REALIZACIONES:
        raise ErrorDominio(f"El oráculo requiere count ≥ {MIN_REALIZACIONES} (recibido {count}).")
    conjunta = conjunta if conjunta is not None else MallaConjunta.para(csd, resp)
    conjunta.cubre(csd.malla)
    ts = np.atleast_1d(np.asarray(t_s, dtype=float))
    ti = np.atleast_1d(np.asarray(t_i, dtype=float))
    ts, ti = np.broadcast_arrays(ts, ti)
    Q1 = _nucleos(resp, paths, 1, ts, ti, conjunta, csd.malla)
    Q2 = _nucleos(resp, paths, 2, ts, ti, conjunta, csd.malla)
    escalar = np.ndim(t_s) == 0 and np.ndim(t_i) == 0
    return Q1, Q2, escalar


def gamma2_oracle_mc(
    csd: CrossSpectralDensity,
    resp: SpectralResponse,
    paths: PathwayPair,
    t_s,
    t_i,
    count: int,
    seed: Semilla,
    conjunta: Optional[MallaConjunta] = None,
    hilos: Optional[int] = None,
) -> ResultadoOraculo:
    """
    Γ⁽²⁾ por fuerza bruta: media de e^{iΔφ}·conj(A_1)·A_2 sobre count
    realizaciones del bombeo, con error estándar jackknife.
    Varios pares (t_s, t_i) comparten el mismo conjunto de realizaciones.
    """
    Q1, Q2, escalar = _preparar(csd, resp, paths, t_s, t_i, count, conjunta)
    fase = np.exp(1j * paths.delta_phi)

    def producto(V: np.ndarray) -> np.ndarray:
        return fase * np.conj(V @ Q1) * (V @ Q2)

    X = np.concatenate(mapear_bloques(csd, count, seed, producto, hilos), axis=0)
    media, se = jackknife(X)
    valor = complex(media[0]) if escalar else media
    muestra = CoherenceSample(valor=valor, argumentos=(t_s, t_i))
    return ResultadoOraculo(muestra=muestra, error_estandar=float(se[0]) if escalar else se, count=int(count))


def coincidence_rate_oracle_mc(
    csd: CrossSpectralDensity,
    resp: SpectralResponse,
    paths: PathwayPair,
    couplings: CouplingAmplitudes,
    t_s,
    t_i,
    count: int,
    seed: Semilla,
    conjunta: Optional[MallaConjunta] = None,
    hilos: Optional[int] = None,
) -> ResultadoOraculo:
    """Tasa ⟨|κ1A1 + κ2A2|²⟩ por Monte-Carlo, con error estándar jackknife."""
    Q1, Q2, escalar = _preparar(csd, resp, paths, t_s, t_i, count, conjunta)
    k1, k2 = couplings.kappa1, couplings.kappa2

    def tasa(V: np.ndarray) -> np.ndarray:
        return np.abs(k1 * (V @ Q1) + k2 * (V @ Q2)) ** 2

    X = np.concatenate(mapear_bloques(csd, count, seed, tasa, hilos), axis=0)
    media, se = jackknife(X)
    if escalar:
        return ResultadoOraculo(CoherenceSample(valor=float(media[0]), argumentos=(t_s, t_i)), float(se[0]), int(count))
    return ResultadoOraculo(CoherenceSample(valor=media, argumentos=(t_s, t_i)), se, int(count))

# coherencia/engine.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO DEL ENGINE

01 Escenario (configuración ya validada)
02 Cálculo según el tipo de corrida
     franson-scan         barrido de Δτ   → tasa promediada
     hom-scan             barrido de Δτ′  → tasa promediada
     bound-sweep          barrido de Δτ   → concurrencia y cota
     factorization-check  Γ⁽²⁾ factorizada vs oráculo Monte-Carlo
     wk-validate          kernel GSM tabulado vs forma cerrada
03 Tabla de resultados + metadatos
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple
import logging
import time

import numpy as np
import pandas as pd

from .bifoton import gamma2_factorized
from .bombeo import csd_closed_form, tabulate_gsm, wk_transform, wk_valores
from .caminos import pathway_deltas
from .configuracion import ScenarioConfig
from .deteccion import Barrido, Escenario, aplicar_barrido, fringe_scan, time_averaged_gamma2
from .entrelazamiento import build_two_qubit, verify_bound
from .errores import ErrorConfiguracion
from .muestreo import hilos_por_defecto, mapear_ordenado
from .oraculo import gamma2_oracle_mc

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RunReport:
    """
    configuracion:  eco del documento de entrada
    tabla:          resultados (una fila por llamada a la operación)
    avisos:         avisos de exactitud acumulados
    tiempo_s:       tiempo de pared
    """
    configuracion: Dict[str, Any]
    tipo: str
    semilla: int
    tabla: pd.DataFrame
    avisos: Tuple[str, ...] = ()
    tiempo_s: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)


def _unicos(avisos) -> Tuple[str, ...]:
    return tuple(dict.fromkeys(avisos))


# =============================================================================
# FASE 02 – BARRIDOS
# =============================================================================

def _escenario(config: ScenarioConfig) -> Escenario:
    return Escenario(
        csd=config.csd,
        resp=config.resp,
        paths=config.paths,
        couplings=config.couplings,
        ventanas=config.ventanas,
        malla_d=config.malla_d,
    )


def _barrido(config: ScenarioConfig, parametro: str) -> Barrido:
    b = config.barrido
    return Barrido(parametro=parametro, inicio=b.inicio, fin=b.fin, n_puntos=b.n_puntos)


def ejecutar_franson(config: ScenarioConfig, hilos: int):
    scan = fringe_scan(_escenario(config), _barrido(config, "delta_tau"), hilos)
    return scan.como_tabla(), scan.avisos, {"mapeo": scan.metadatos["mapeo"]}


def ejecutar_hom(config: ScenarioConfig, hilos: int):
    scan = fringe_scan(_escenario(config), _barrido(config, "delta_tau_prima"), hilos)
    return scan.como_tabla(), scan.avisos, {"mapeo": scan.metadatos["mapeo"]}


def ejecutar_cota(config: ScenarioConfig, hilos: int):
    """Concurrencia del estado de dos qubits y holgura de la cota C ≤ |γ̄_p| a lo largo de Δτ."""
    esc = _escenario(config)
    x = _barrido(config, "delta_tau").puntos()

    def evaluar(k: int):
        paths = aplicar_barrido(esc.paths, "delta_tau", float(x[k]))
        prom = time_averaged_gamma2(esc.csd, esc.resp, paths, esc.ventanas, esc.malla_d)
        dtau, dtaup, dphi = pathway_deltas(paths)
        estado = build_two_qubit(
            esc.couplings, prom.R, prom.gamma_p, prom.gamma_d,
            dtau, dtaup, dphi, esc.csd.omega_p0, esc.resp.omega_d0,
        )
        informe = verify_bound(estado, prom.gamma_p)
        return informe.C, informe.cota, informe.holgura, prom.avisos

    filas = mapear_ordenado(evaluar, list(range(x.size)), hilos)
    tabla = pd.DataFrame(
        {
            "delta_tau": x,
            "C": [f[0] for f in filas],
            "abs_gamma_p": [f[1] for f in filas],
            "holgura": [f[2] for f in filas],
        }
    )
    return tabla, _unicos(a for f in filas for a in f[3]), {}


# =============================================================================
# FASE 02 – VERIFICACIONES
# =============================================================================

def ejecutar_factorizacion(config: ScenarioConfig, hilos: int):
    """Γ⁽²⁾ factorizada frente al oráculo sin factorizar, en los pares (t_s, t_i) pedidos."""
    f = config.factorizacion
    ts = np.array([p[0] for p in f.pares])
    ti = np.array([p[1] for p in f.pares])

    fact = gamma2_factorized(config.csd, config.resp, config.paths, ts, ti, config.malla_d)
    orac = gamma2_oracle_mc(config.csd, config.resp, config.paths, ts, ti, f.realizaciones, config.semilla, hilos=hilos)

    vf = np.asarray(fact.valor, dtype=complex)
    vo = np.asarray(orac.valor, dtype=complex)
    se = np.asarray(orac.error_estandar, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        desv = np.where(se > 0, np.abs(vf - vo) / np.where(se > 0, se, 1.0), np.inf)

    tabla = pd.DataFrame(
        {
            "t_s": ts,
            "t_i": ti,
            "re_factorizado": vf.real,
            "im_factorizado": vf.imag,
            "re_oraculo": vo.real,
            "im_oraculo": vo.imag,
            "error_estandar": se,
            "desviacion_en_se": desv,
        }
    )
    return tabla, fact.avisos, {"realizaciones": orac.count}


def ejecutar_wk(config: ScenarioConfig, hilos: int):
    """wk_transform del kernel GSM tabulado frente a la forma cerrada, en una red t1 × t2."""
    modelo = config.modelo
    tab = config.csd if config.csd.es_tabulada else tabulate_gsm(modelo)
    p = config.validacion_wk
    t = np.linspace(-p.semiancho_T * modelo.T, p.semiancho_T * modelo.T, p.n_red)
    T1, T2 = np.meshgrid(t, t, indexing="ij")
    t1, t2 = T1.ravel(), T2.ravel()

    num = wk_transform(tab, t1, t2)
    cerrado, _, _ = wk_valores(csd_closed_form(modelo), t1, t2)
    vn = np.asarray(num.valor, dtype=complex)
    vc = np.real(cerrado)
    pico = float(np.max(np.abs(vc)))
    error = np.abs(vn - vc) / pico if pico > 0 else np.abs(vn - vc)

    tabla = pd.DataFrame(
        {
            "t1": t1,
            "t2": t2,
            "re_numerico": vn.real,
            "im_numerico": vn.imag,
            "cerrado": vc,
            "error_relativo": error,
        }
    )
    return tabla, num.avisos, {"error_maximo": float(np.max(error)), "T": modelo.T}


EJECUTORES: Dict[str, Callable[[ScenarioConfig, int], Tuple[pd.DataFrame, Tuple[str, ...], Dict[str, Any]]]] = {
    "franson-scan": ejecutar_franson,
    "hom-scan": ejecutar_hom,
    "bound-sweep": ejecutar_cota,
    "factorization-check": ejecutar_factorizacion,
    "wk-validate": ejecutar_wk,
}


# =============================================================================
# FASE 03 – EJECUCIÓN TOTAL
# =============================================================================

def run(config: ScenarioConfig, hilos: Optional[int] = None) -> RunReport:
    if config.tipo not in EJECUTORES:
        raise ErrorConfiguracion(f"Tipo de corrida desconocido: '{config.tipo}'.")
    hilos = hilos_por_defecto() if hilos is None else int(hilos)
    inicio = time.perf_counter()

    logger.info("01 Escenario: tipo %s, semilla %d, %d hilo(s).", config.tipo, config.semilla, hilos)
    logger.info("02 Cálculo (%s).", config.tipo)
    tabla, avisos, extra = EJECUTORES[config.tipo](config, hilos)

    tiempo = time.perf_counter() - inicio
    logger.info("03 Tabla: %d filas en %.3f s (%d aviso(s)).", len(tabla), tiempo, len(avisos))
    return RunReport(
        configuracion=config.crudo,
        tipo=config.tipo,
        semilla=config.semilla,
        tabla=tabla,
        avisos=_unicos(avisos),
        tiempo_s=tiempo,
        extra=extra,
    )

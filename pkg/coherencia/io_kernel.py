# coherencia/io_kernel.py
# -*- coding: utf-8 -*-
"""
Lectura/escritura de kernels tabulados W(ω̄′,ω̄″).

Formato texto (.txt, .dat o cualquier extensión distinta de .npz):

    # coherencia-kernel
    center <float>
    span_half_width <float>
    n_points <int>
    <re> <im>          ← n_points² líneas, orden fila-mayor (W[0,0], W[0,1], ...)

Todos los reales se escriben con 17 cifras significativas (%.17g), por lo que
el viaje escritura → lectura es exacto bit a bit.

Formato binario (.npz): arreglos 'center', 'span_half_width', 'n_points', 'kernel'.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from .bombeo import TIPO_TABULADA, CrossSpectralDensity
from .errores import ErrorConfiguracion
from .malla import FrequencyGrid

MAGICO = "# coherencia-kernel"
CAMPOS = ("center", "span_half_width", "n_points")

Ruta = Union[str, Path]


def _es_binario(ruta: Path) -> bool:
    return ruta.suffix.lower() == ".npz"


def guardar_kernel(csd: CrossSpectralDensity, ruta: Ruta) -> Path:
    if csd.tipo != TIPO_TABULADA:
        raise ErrorConfiguracion("Solo se guardan densidades tabuladas.")
    ruta = Path(ruta)
    m = csd.malla
    K = np.asarray(csd.kernel)

    if _es_binario(ruta):
        np.savez(
            ruta,
            center=np.float64(m.center),
            span_half_width=np.float64(m.span_half_width),
            n_points=np.int64(m.n_points),
            kernel=K,
        )
        return ruta

    pares = np.column_stack([K.real.ravel(), K.imag.ravel()])
    with open(ruta, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{MAGICO}\n")
        f.write(f"center {m.center:.17g}\n")
        f.write(f"span_half_width {m.span_half_width:.17g}\n")
        f.write(f"n_points {m.n_points:d}\n")
        np.savetxt(f, pares, fmt="%.17g")
    return ruta


def _leer_cabecera(lineas) -> dict:
    cab = {}
    for linea in lineas:
        partes = linea.split()
        if len(partes) != 2 or partes[0] not in CAMPOS:
            raise ErrorConfiguracion(f"Cabecera de kernel inválida: '{linea.strip()}'.")
        cab[partes[0]] = partes[1]
    return cab


def cargar_kernel(ruta: Ruta) -> CrossSpectralDensity:
    """Lee un kernel en formato texto o .npz y lo valida (hermítico, PSD)."""
    ruta = Path(ruta)

    if _es_binario(ruta):
        with np.load(ruta) as datos:
            faltan = [c for c in CAMPOS + ("kernel",) if c not in datos]
            if faltan:
                raise ErrorConfiguracion(f"Archivo de kernel sin campos: {faltan}.")
            malla = FrequencyGrid(
                center=float(datos["center"]),
                span_half_width=float(datos["span_half_width"]),
                n_points=int(datos["n_points"]),
            )
            K = np.array(datos["kernel"], dtype=complex)
        return CrossSpectralDensity(tipo=TIPO_TABULADA, malla=malla, kernel=K)

    with open(ruta, "r", encoding="utf-8") as f:
        primera = f.readline().rstrip("\n")
        if primera != MAGICO:
            raise ErrorConfiguracion(f"'{ruta}' no es un archivo de kernel (falta '{MAGICO}').")
        cab = _leer_cabecera([f.readline() for _ in CAMPOS])
        try:
            pares = np.loadtxt(f, dtype=float, ndmin=2)
        except ValueError as e:
            raise ErrorConfiguracion(f"Datos de kernel ilegibles en '{ruta}': {e}.") from e

    try:
        malla = FrequencyGrid(
            center=float(cab["center"]),
            span_half_width=float(cab["span_half_width"]),
            n_points=int(cab["n_points"]),
        )
    except (KeyError, ValueError) as e:
        raise ErrorConfiguracion(f"Cabecera de kernel incompleta o inválida: {e}.") from e

    n = malla.n_points
    if pares.shape != (n * n, 2):
        raise ErrorConfiguracion(f"Se esperaban {n * n} pares (re, im); se leyeron {pares.shape[0]}.")
    K = (pares[:, 0] + 1j * pares[:, 1]).reshape(n, n)
    return CrossSpectralDensity(tipo=TIPO_TABULADA, malla=malla, kernel=K)

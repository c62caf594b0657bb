# coherencia/exportacion.py
# -*- coding: utf-8 -*-
"""
Escritura de resultados de una corrida.

- <salida>          tabla CSV: cabecera de una línea, separador coma,
                    reales con 17 cifras significativas, fin de línea '\\n'
- <salida>.json     metadatos: eco de la configuración, tipo, semilla,
                    columnas, avisos, tiempo de pared, versiones
- <salida>.xlsx     (opcional) libro Excel con hojas Resultados / Metadatos / Avisos

Todos los archivos se escriben en un temporal de la misma carpeta y se
renombran al final (os.replace).
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Union
import json
import logging
import os
import tempfile

import numpy as np
import openpyxl
import pandas as pd
import scipy

from .engine import RunReport

logger = logging.getLogger(__name__)

Ruta = Union[str, Path]

FORMATO_REAL = "%.17g"


def _atomico(ruta: Path, escribir) -> Path:
    ruta.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{ruta.name}.", suffix=f".tmp{ruta.suffix}", dir=ruta.parent)
    os.close(fd)
    try:
        escribir(tmp)
        os.replace(tmp, ruta)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return ruta


def escribir_tabla(tabla: pd.DataFrame, ruta: Ruta) -> Path:
    def escribir(tmp: str) -> None:
        tabla.to_csv(tmp, index=False, float_format=FORMATO_REAL, lineterminator="\n")

    return _atomico(Path(ruta), escribir)


def metadatos(report: RunReport) -> Dict[str, Any]:
    return {
        "tipo": report.tipo,
        "semilla": report.semilla,
        "columnas": list(report.tabla.columns),
        "filas": int(len(report.tabla)),
        "avisos": list(report.avisos),
        "tiempo_s": report.tiempo_s,
        "extra": report.extra,
        "versiones": {
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "pandas": pd.__version__,
        },
        "configuracion": report.configuracion,
    }


def escribir_metadatos(report: RunReport, ruta: Ruta) -> Path:
    texto = json.dumps(metadatos(report), ensure_ascii=False, indent=2, default=str)

    def escribir(tmp: str) -> None:
        with open(tmp, "w", encoding="utf-8", newline="\n") as f:
            f.write(texto + "\n")

    return _atomico(Path(ruta), escribir)


def exportar_resultados_excel(report: RunReport, ruta: Ruta) -> Path:
    """
    Hojas:
    - Resultados
    - Metadatos (clave / valor)
    - Avisos
    """
    meta = metadatos(report)
    filas = [
        {"clave": k, "valor": json.dumps(v, ensure_ascii=False, default=str) if isinstance(v, (dict, list)) else v}
        for k, v in meta.items()
        if k != "avisos"
    ]

    def escribir(tmp: str) -> None:
        with pd.ExcelWriter(tmp, engine="openpyxl") as writer:
            report.tabla.to_excel(writer, sheet_name="Resultados", index=False)
            pd.DataFrame(filas).to_excel(writer, sheet_name="Metadatos", index=False)
            pd.DataFrame({"aviso": list(report.avisos)}).to_excel(writer, sheet_name="Avisos", index=False)
        # ancho de columnas legible
        libro = openpyxl.load_workbook(tmp)
        for hoja in libro.worksheets:
            for col in hoja.columns:
                largo = max(len(str(c.value)) if c.value is not None else 0 for c in col)
                hoja.column_dimensions[col[0].column_letter].width = min(60, max(10, largo + 2))
        libro.save(tmp)

    return _atomico(Path(ruta), escribir)


def escribir_reporte(report: RunReport, salida: Ruta, *, excel: bool = False) -> List[Path]:
    salida = Path(salida)
    rutas = [
        escribir_tabla(report.tabla, salida),
        escribir_metadatos(report, salida.with_name(salida.name + ".json")),
    ]
    if excel:
        rutas.append(exportar_resultados_excel(report, salida.with_name(salida.name + ".xlsx")))
    for r in rutas:
        logger.info("Escrito %s", r)
    return rutas

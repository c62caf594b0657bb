# app.py
# -*- coding: utf-8 -*-
"""
Línea de comandos:

    python app.py run <config.json> [--seed N] [--out RUTA] [--threads N] [--verbose]

Códigos de salida:
    0  éxito
    2  configuración inválida (JSON, clave desconocida, valor fuera de dominio)
    3  error numérico o de consistencia
    4  error de entrada/salida al escribir resultados
"""
from __future__ import annotations

from typing import List, Optional
import argparse
import logging
import os
import sys

import numpy as np

from coherencia.configuracion import cargar_configuracion
from coherencia.engine import run
from coherencia.errores import ErrorCoherencia, ErrorConfiguracion
from coherencia.exportacion import escribir_reporte

logger = logging.getLogger("coherencia")

VAR_LOG = "COHERENCIA_LOG"

SALIDA_OK = 0
SALIDA_CONFIGURACION = 2
SALIDA_NUMERICA = 3
SALIDA_IO = 4


# ============================================================
# Argumentos / logging
# ============================================================
def construir_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherencia",
        description="Coherencia temporal de pares de fotones de conversión paramétrica descendente.",
    )
    sub = parser.add_subparsers(dest="comando", required=True)

    p = sub.add_parser("run", help="Ejecuta el escenario descrito en un archivo JSON.")
    p.add_argument("config", help="Ruta del archivo de configuración (JSON).")
    p.add_argument("--seed", type=int, default=None, help="Semilla (sustituye a 'semilla' del archivo).")
    p.add_argument("--out", default=None, help="Ruta de la tabla CSV (sustituye a 'salida').")
    p.add_argument("--threads", type=int, default=None, help="Hilos de trabajo (por defecto $COHERENCIA_HILOS o 1).")
    p.add_argument("--verbose", "-v", action="count", default=0, help="-v: INFO, -vv: DEBUG.")
    return parser


def configurar_logging(verbose: int) -> None:
    if verbose >= 2:
        nivel = logging.DEBUG
    elif verbose == 1:
        nivel = logging.INFO
    else:
        nivel = getattr(logging, os.environ.get(VAR_LOG, "WARNING").strip().upper(), logging.WARNING)
    logging.basicConfig(
        level=nivel,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


# ============================================================
# Comando run
# ============================================================
def comando_run(args: argparse.Namespace) -> int:
    if args.threads is not None and args.threads < 1:
        logger.error("--threads debe ser ≥ 1 (recibido %d).", args.threads)
        return SALIDA_CONFIGURACION

    try:
        config = cargar_configuracion(args.config, semilla=args.seed, salida=args.out)
    except ErrorConfiguracion as e:
        logger.error("Configuración inválida: %s", e)
        return SALIDA_CONFIGURACION
    except OSError as e:
        logger.error("No se pudo leer la configuración o el kernel: %s", e)
        return SALIDA_IO

    try:
        report = run(config, hilos=args.threads)
    except ErrorConfiguracion as e:
        logger.error("Configuración inválida: %s", e)
        return SALIDA_CONFIGURACION
    except (ErrorCoherencia, np.linalg.LinAlgError) as e:
        logger.error("Error numérico: %s", e)
        return SALIDA_NUMERICA

    try:
        escribir_reporte(report, config.salida, excel=config.excel)
    except OSError as e:
        logger.error("No se pudieron escribir los resultados: %s", e)
        return SALIDA_IO

    for aviso in report.avisos:
        print(f"AVISO: {aviso}", file=sys.stderr)
    print(f"{config.tipo}: {len(report.tabla)} filas → {config.salida} ({report.tiempo_s:.2f} s)")
    return SALIDA_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = construir_parser().parse_args(argv)
    configurar_logging(args.verbose)
    if args.comando == "run":
        return comando_run(args)
    return SALIDA_CONFIGURACION


if __name__ == "__main__":
    sys.exit(main())

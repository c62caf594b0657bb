# coherencia/muestra.py
# -*- coding: utf-8 -*-
"""
Contenedor de valores de coherencia (Γ_p, Γ_d, Γ⁽²⁾, γ̄) con su metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union

import numpy as np

from .errores import ErrorConsistencia

Complejo = Union[complex, np.ndarray]

TOL_NORMALIZADO = 1e-10


@dataclass(frozen=True)
class CoherenceSample:
    """
    valor:          complejo (o arreglo, si se evaluó un vector de argumentos)
    argumentos:     los dos argumentos temporales (y el tercero, si aplica)
    normalizacion:  (d1, d2) valores diagonales usados para normalizar, o None
    avisos:         avisos de exactitud acumulados
    error_estimado: error de cuadratura estimado (relativo a ∬|W|)
    """
    valor: Complejo
    argumentos: Tuple
    normalizacion: Optional[Tuple[Complejo, Complejo]] = None
    avisos: Tuple[str, ...] = ()
    error_estimado: float = 0.0

    def __post_init__(self) -> None:
        if self.normalizacion is not None:
            exceso = np.max(np.abs(self.valor)) - 1.0
            if exceso > TOL_NORMALIZADO:
                raise ErrorConsistencia(
                    f"Grado de coherencia normalizado con |γ| = {1.0 + exceso:.12g} > 1."
                )

    @property
    def con_aviso(self) -> bool:
        return bool(self.avisos)

    def normalizado(self, d1: Complejo, d2: Complejo) -> "CoherenceSample":
        """γ = Γ/√(d1·d2), con d1, d2 diagonales al mismo tercer argumento."""
        d1r = np.real(d1)
        d2r = np.real(d2)
        den = np.sqrt(d1r * d2r)
        with np.errstate(divide="ignore", invalid="ignore"):
            gamma = np.where(den > 0, np.asarray(self.valor) / np.where(den > 0, den, 1.0), 0.0)
        if np.ndim(gamma) == 0:
            gamma = complex(gamma)
        return replace(self, valor=gamma, normalizacion=(d1, d2))

    def __mul__(self, otra: "CoherenceSample") -> "CoherenceSample":
        return CoherenceSample(
            valor=self.valor * otra.valor,
            argumentos=self.argumentos + otra.argumentos,
            avisos=self.avisos + otra.avisos,
            error_estimado=max(self.error_estimado, otra.error_estimado),
        )

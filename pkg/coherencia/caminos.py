# coherencia/caminos.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 04 – ÁLGEBRA DE CAMINOS

Este módulo calcula:
- Tiempos y fases derivados de cada alternativa j ∈ {1, 2}:
    τ_j  = τ_pj + (τ_sj + τ_ij)/2
    τ′_j = (τ_sj − τ_ij)/2
    φ_j  = φ_pj + φ_sj + φ_ij
- Diferencias Δτ = τ_1 − τ_2, Δτ′ = τ′_1 − τ′_2, Δφ = φ_1 − φ_2
- Amplitudes de acoplamiento κ_j = κ_sj·κ_ij

Los derivados se recalculan siempre desde los doce parámetros (no se guardan).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Tuple
import math

from .errores import ErrorDominio


# =============================================================================
# Tipos
# =============================================================================

@dataclass(frozen=True)
class Alternativa:
    """Tiempos de tránsito (bombeo, señal, idler) y fases de una alternativa."""
    tau_p: float = 0.0
    tau_s: float = 0.0
    tau_i: float = 0.0
    phi_p: float = 0.0
    phi_s: float = 0.0
    phi_i: float = 0.0

    def __post_init__(self) -> None:
        for nombre, v in vars(self).items():
            if not math.isfinite(v):
                raise ErrorDominio(f"Parámetro de camino '{nombre}' no finito: {v}.")

    @property
    def tau(self) -> float:
        return self.tau_p + 0.5 * (self.tau_s + self.tau_i)

    @property
    def tau_prima(self) -> float:
        return 0.5 * (self.tau_s - self.tau_i)

    @property
    def phi(self) -> float:
        return self.phi_p + self.phi_s + self.phi_i


@dataclass(frozen=True)
class PathwayPair:
    alt1: Alternativa = Alternativa()
    alt2: Alternativa = Alternativa()

    def alternativa(self, j: int) -> Alternativa:
        if j == 1:
            return self.alt1
        if j == 2:
            return self.alt2
        raise ErrorDominio(f"Alternativa inválida: {j} (debe ser 1 o 2).")

    def intercambiar(self) -> "PathwayPair":
        return PathwayPair(alt1=self.alt2, alt2=self.alt1)

    def diagonal(self, j: int) -> "PathwayPair":
        """Ambas ranuras ocupadas por la alternativa j (términos directos R⁽²⁾)."""
        a = self.alternativa(j)
        return PathwayPair(alt1=a, alt2=a)

    def con_alternativa(self, j: int, **cambios) -> "PathwayPair":
        nueva = replace(self.alternativa(j), **cambios)
        return replace(self, alt1=nueva) if j == 1 else replace(self, alt2=nueva)

    @property
    def delta_tau(self) -> float:
        return self.alt1.tau - self.alt2.tau

    @property
    def delta_tau_prima(self) -> float:
        return self.alt1.tau_prima - self.alt2.tau_prima

    @property
    def delta_phi(self) -> float:
        return self.alt1.phi - self.alt2.phi


@dataclass(frozen=True)
class CouplingAmplitudes:
    kappa_s1: float = 1.0
    kappa_i1: float = 1.0
    kappa_s2: float = 1.0
    kappa_i2: float = 1.0

    def __post_init__(self) -> None:
        for nombre, v in vars(self).items():
            if not (math.isfinite(v) and v >= 0):
                raise ErrorDominio(f"Acoplamiento '{nombre}' debe ser finito y ≥ 0 (recibido {v}).")

    @classmethod
    def simples(cls, kappa1: float, kappa2: float) -> "CouplingAmplitudes":
        """κ_s1 = κ1, κ_s2 = κ2, idlers unitarios."""
        return cls(kappa_s1=kappa1, kappa_i1=1.0, kappa_s2=kappa2, kappa_i2=1.0)

    @property
    def kappa1(self) -> float:
        return self.kappa_s1 * self.kappa_i1

    @property
    def kappa2(self) -> float:
        return self.kappa_s2 * self.kappa_i2


# =============================================================================
# API pública
# =============================================================================

def pathway_deltas(paths: PathwayPair) -> Tuple[float, float, float]:
    """(Δτ, Δτ′, Δφ) evaluados exactamente desde los doce parámetros."""
    return paths.delta_tau, paths.delta_tau_prima, paths.delta_phi


def franson(delta: float, fase: float = 0.0) -> PathwayPair:
    """Brazo largo en ambos fotones: τ_s1 − τ_s2 = τ_i1 − τ_i2 = δ."""
    return PathwayPair(alt1=Alternativa(tau_s=delta, tau_i=delta, phi_p=fase), alt2=Alternativa())


def hom(delta: float) -> PathwayPair:
    """τ_s1 = δ, τ_i2 = δ: Δτ = 0, Δτ′ = δ."""
    return PathwayPair(alt1=Alternativa(tau_s=delta), alt2=Alternativa(tau_i=delta))

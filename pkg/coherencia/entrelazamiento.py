# coherencia/entrelazamiento.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 09 – ESTADO DE DOS QUBITS TIEMPO-ENERGÍA

Este módulo calcula:
- Estado X en la base {|s1 i1⟩, |s1 i2⟩, |s2 i1⟩, |s2 i2⟩}:
      ρ = [[a, 0, 0, c], [0, 0, 0, 0], [0, 0, 0, 0], [c*, 0, 0, b]]
  con
      η = 1/(κ1²R̄⁽²⁾ + κ2²R̄⁽²⁾),  a = ηκ1²R̄⁽²⁾,  b = ηκ2²R̄⁽²⁾
      c = ηκ1κ2R̄⁽²⁾·γ̄_p·γ̄_d·e^{i(ω_p0Δτ + ω_d0Δτ′ + Δφ)}
- Concurrencia en forma cerrada C = 2|c|
- Concurrencia de Wootters para cualquier matriz densidad 4×4
- Cota C ≤ |γ̄_p|

Solo el módulo de c entra en la concurrencia; el signo de la fase de c no
afecta ningún resultado.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
import logging
import math

import numpy as np
from scipy import linalg

from .caminos import CouplingAmplitudes
from .errores import ErrorDominio, ErrorEstadoDegenerado

logger = logging.getLogger(__name__)

TOL_PROBABILIDAD = 1e-12
TOL_COHERENCIA = 1e-12
TOL_GAMMA = 1e-10
TOL_HERMITICA = 1e-12
TOL_TRAZA = 1e-12
TOL_PSD = 1e-10
TOL_COTA = 1e-12

# σ_y ⊗ σ_y
YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


# =============================================================================
# Tipos
# =============================================================================

@dataclass(frozen=True)
class TwoQubitXState:
    """
    a, b:    poblaciones de |s1 i1⟩ y |s2 i2⟩
    c:       coherencia entre ambas
    kappa1, kappa2, gamma_d: datos de construcción (opcionales)
    """
    a: float
    b: float
    c: complex
    kappa1: Optional[float] = None
    kappa2: Optional[float] = None
    gamma_d: Optional[complex] = None

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0 or abs(self.a + self.b - 1.0) > TOL_PROBABILIDAD:
            raise ErrorDominio(f"Poblaciones inválidas: a = {self.a}, b = {self.b} (a, b ≥ 0, a + b = 1).")
        if abs(self.c) > math.sqrt(self.a * self.b) + TOL_COHERENCIA:
            raise ErrorDominio(
                f"|c| = {abs(self.c):.15g} > √(ab) = {math.sqrt(self.a * self.b):.15g}: estado no positivo."
            )


@dataclass(frozen=True)
class DensityMatrix4:
    matriz: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matriz, dtype=complex)
        if m.shape != (4, 4):
            raise ErrorDominio(f"Matriz densidad de forma {m.shape}; se esperaba (4, 4).")
        if not np.all(np.isfinite(m)):
            raise ErrorDominio("Matriz densidad con valores no finitos.")
        if np.max(np.abs(m - m.conj().T)) > TOL_HERMITICA:
            raise ErrorDominio("Matriz densidad no hermítica.")
        traza = complex(np.trace(m))
        if abs(traza - 1.0) > TOL_TRAZA:
            raise ErrorDominio(f"Traza de la matriz densidad {traza.real:.15g} ≠ 1.")
        minimo = float(linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
        if minimo < -TOL_PSD:
            raise ErrorDominio(f"Matriz densidad no semidefinida positiva (autovalor mínimo {minimo:.3e}).")
        m.setflags(write=False)
        object.__setattr__(self, "matriz", m)

    @classmethod
    def desde_x(cls, state: TwoQubitXState) -> "DensityMatrix4":
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = state.a
        m[3, 3] = state.b
        m[0, 3] = state.c
        m[3, 0] = np.conj(state.c)
        return cls(m)


@dataclass(frozen=True)
class InformeCota:
    C: float
    cota: float
    cumple: bool
    holgura: float
    igualdad: bool = False


# =============================================================================
# API pública
# =============================================================================

def build_two_qubit(
    couplings: CouplingAmplitudes,
    R: float,
    gamma_p: complex,
    gamma_d: complex,
    delta_tau: float,
    delta_tau_prima: float,
    delta_phi: float,
    omega_p0: float,
    omega_d0: float,
) -> TwoQubitXState:
    k1, k2 = couplings.kappa1, couplings.kappa2
    if k1 == 0.0 and k2 == 0.0:
        raise ErrorEstadoDegenerado("κ1 = κ2 = 0: el estado de dos qubits no está definido.")
    if not (math.isfinite(R) and R > 0):
        raise ErrorEstadoDegenerado(f"R̄⁽²⁾ = {R}: la normalización η no está definida.")
    for nombre, g in (("γ̄_p", gamma_p), ("γ̄_d", gamma_d)):
        if abs(g) > 1.0 + TOL_GAMMA:
            raise ErrorDominio(f"|{nombre}| = {abs(g):.12g} > 1.")

    eta = 1.0 / ((k1 * k1 + k2 * k2) * R)
    producto = complex(gamma_p) * complex(gamma_d)
    if abs(producto) > 1.0:
        producto /= abs(producto)
    fase = omega_p0 * delta_tau + omega_d0 * delta_tau_prima + delta_phi
    a = eta * k1 * k1 * R
    return TwoQubitXState(
        a=a,
        b=1.0 - a,
        c=complex(eta * k1 * k2 * R * producto * np.exp(1j * fase)),
        kappa1=k1,
        kappa2=k2,
        gamma_d=complex(gamma_d),
    )


def concurrence_x(state: TwoQubitXState) -> float:
    """C = 2|c| (bloque central nulo)."""
    return 2.0 * abs(state.c)


def concurrence_wootters(rho: DensityMatrix4) -> float:
    """
    C = max(0, λ1 − λ2 − λ3 − λ4), λ raíces de los autovalores de ρ·(Y⊗Y)·ρ*·(Y⊗Y)
    en orden decreciente.

    Con ρ = B·Bᴴ (B = V·√e de la descomposición espectral) esas raíces son
    los valores singulares de Bᵀ·(Y⊗Y)·B.
    """
    e, V = linalg.eigh(rho.matriz)
    B = V * np.sqrt(np.clip(e, 0.0, None))[None, :]
    lam = np.sort(linalg.svdvals(B.T @ YY @ B))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def verify_bound(state: TwoQubitXState, gamma_p: complex) -> InformeCota:
    """
    C ≤ |γ̄_p|. Caso de igualdad: κ1 = κ2 y |γ̄_d| = 1 (requiere los datos
    de construcción del estado).
    """
    C = concurrence_x(state)
    cota = abs(complex(gamma_p))
    igualdad = (
        state.kappa1 is not None
        and state.gamma_d is not None
        and state.kappa1 == state.kappa2
        and abs(abs(state.gamma_d) - 1.0) <= TOL_COTA
    )
    informe = InformeCota(C=C, cota=cota, cumple=C <= cota + TOL_COTA, holgura=cota - C, igualdad=bool(igualdad))
    if not informe.cumple:
        logger.warning("Cota violada: C = %.15g > |γ̄_p| = %.15g.", C, cota)
    return informe

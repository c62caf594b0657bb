# coherencia/errores.py
# -*- coding: utf-8 -*-
"""
Jerarquía de errores del paquete.

Todas heredan de ValueError, igual que las validaciones de entrada del
resto del proyecto (``raise ValueError(...)``), para que el código que ya
captura ValueError siga funcionando.
"""

from __future__ import annotations


class ErrorCoherencia(ValueError):
    """Raíz de los errores numéricos y de dominio del paquete."""


class ErrorDominio(ErrorCoherencia):
    """Entrada fuera del dominio (no finita, ventana vacía, malla insuficiente)."""


class ErrorConfiguracion(ErrorCoherencia):
    """Modelo desconocido, clave desconocida o valor inválido en la configuración."""


class ErrorNoPSD(ErrorCoherencia):
    """Núcleo que no es semidefinido positivo (falla la factorización)."""


class ErrorLimiteNoSoportado(ErrorCoherencia):
    """Forma cerrada pedida en un límite marcado (p. ej. Δω_c = ∞)."""


class ErrorConsistencia(ErrorCoherencia):
    """Fallo de consistencia interna (tasa negativa más allá de la tolerancia)."""


class ErrorEstadoDegenerado(ErrorCoherencia):
    """Estado de dos qubits indefinido (κ1 = κ2 = 0)."""

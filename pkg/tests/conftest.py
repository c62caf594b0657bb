# tests/conftest.py
# -*- coding: utf-8 -*-
from __future__ import annotations

import json
import math

import pytest

from coherencia.bombeo import GaussianSchellModel, csd_closed_form, tabulate_gsm
from coherencia.respuesta import ModeloEspectral, SpectralResponse

OMEGA_P0 = 50.0


@pytest.fixture
def modelo_gsm() -> GaussianSchellModel:
    return GaussianSchellModel(A=1.0, delta_p=1.0, delta_c=1.0, omega_p0=OMEGA_P0)


@pytest.fixture
def csd_tab(modelo_gsm):
    return tabulate_gsm(modelo_gsm)


@pytest.fixture
def csd_cerrada(modelo_gsm):
    return csd_closed_form(modelo_gsm)


def respuesta_gaussiana(omega_p0: float, sigma_g: float, **kw) -> SpectralResponse:
    """g(ω̄_d) = exp(−ω̄_d²/(2σ_g²)) mediante dos filtros gaussianos de ancho σ_g/√2."""
    filtro = ModeloEspectral("gaussiano", sigma_g / math.sqrt(2.0))
    return SpectralResponse.degenerada(omega_p0, filtro_s=filtro, filtro_i=filtro, **kw)


@pytest.fixture
def resp_gauss() -> SpectralResponse:
    return respuesta_gaussiana(OMEGA_P0, 10.0)


@pytest.fixture
def escribir_config(tmp_path):
    def _escribir(documento: dict, nombre: str = "escenario.json"):
        ruta = tmp_path / nombre
        ruta.write_text(json.dumps(documento), encoding="utf-8")
        return ruta

    return _escribir


def documento_base(tipo: str, **extra) -> dict:
    doc = {
        "tipo": tipo,
        "semilla": 7,
        "salida": "salida.csv",
        "bombeo": {"modelo": "gsm", "A": 1.0, "ancho_banda": 1.0, "ancho_correlacion": 1.0, "omega_p0": OMEGA_P0},
        "respuesta": {
            "filtro_s": {"modelo": "gaussiano", "parametro": 10.0 / math.sqrt(2.0)},
            "filtro_i": {"modelo": "gaussiano", "parametro": 10.0 / math.sqrt(2.0)},
        },
    }
    doc.update(extra)
    return doc

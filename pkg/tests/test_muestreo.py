# tests/test_muestreo.py
from __future__ import annotations

import math

import numpy as np
import pytest

from coherencia.bombeo import GaussianSchellModel, TIPO_TABULADA, CrossSpectralDensity, csd_closed_form, tabulate_gsm
from coherencia.errores import ErrorConfiguracion, ErrorDominio
from coherencia.malla import FrequencyGrid
from coherencia.muestreo import (
    VAR_HILOS,
    FieldRealizationSet,
    campo_fase_real,
    empirical_csd,
    error_frobenius,
    hilos_por_defecto,
    sample_realizations,
)


def test_un_solo_vector(csd_tab):
    s = sample_realizations(csd_tab, 1, seed=0)
    assert s.count == 1
    assert s.realizaciones.shape == (1, csd_tab.malla.n_points)


def test_kernel_nulo_da_realizaciones_nulas():
    m = FrequencyGrid(center=5.0, span_half_width=1.0, n_points=9)
    csd = CrossSpectralDensity(tipo=TIPO_TABULADA, malla=m, kernel=np.zeros((9, 9), dtype=complex))
    s = sample_realizations(csd, 5, seed=1)
    assert not np.any(s.realizaciones)


def test_determinista_por_semilla_e_independiente_de_hilos(csd_tab):
    a = sample_realizations(csd_tab, 3000, seed=11, hilos=1)
    b = sample_realizations(csd_tab, 3000, seed=11, hilos=4)
    c = sample_realizations(csd_tab, 3000, seed=12, hilos=1)
    assert np.array_equal(a.realizaciones, b.realizaciones)
    assert not np.array_equal(a.realizaciones, c.realizaciones)


def test_requiere_kernel_tabulado(csd_cerrada):
    with pytest.raises(ErrorConfiguracion):
        sample_realizations(csd_cerrada, 10, seed=0)


def test_count_invalido(csd_tab):
    with pytest.raises(ErrorDominio):
        sample_realizations(csd_tab, 0, seed=0)


def test_fidelidad_del_muestreo(csd_tab):
    err_100 = error_frobenius(empirical_csd(sample_realizations(csd_tab, 100, seed=5)), csd_tab)
    err_10k = error_frobenius(empirical_csd(sample_realizations(csd_tab, 10_000, seed=5)), csd_tab)
    assert err_10k < 0.05
    assert err_10k < err_100


def test_bombeo_coherente_es_determinista():
    m = GaussianSchellModel(A=4.0, delta_p=1.0, delta_c=math.inf, omega_p0=10.0)
    csd = tabulate_gsm(m)
    s = sample_realizations(csd, 3, seed=0)
    u = 2.0 * np.exp(-csd.malla.values ** 2 / 4.0)
    for fila in s.realizaciones:
        np.testing.assert_allclose(fila, u, rtol=1e-14)
    assert error_frobenius(empirical_csd(s), csd) < 1e-12


def test_empirica_de_copias_identicas():
    m = FrequencyGrid(center=2.0, span_half_width=1.0, n_points=5)
    v = np.array([1.0, 1j, -0.5, 2.0 + 1.0j, 0.0])
    esperado = np.outer(np.conj(v), v)
    copias = empirical_csd(FieldRealizationSet(malla=m, realizaciones=np.vstack([v, v, v])))
    np.testing.assert_allclose(copias.kernel, esperado, atol=1e-15)
    signos = empirical_csd(FieldRealizationSet(malla=m, realizaciones=np.vstack([v, -v])))
    np.testing.assert_allclose(signos.kernel, esperado, atol=1e-15)


def test_empirica_requiere_dos():
    m = FrequencyGrid(center=2.0, span_half_width=1.0, n_points=3)
    with pytest.raises(ErrorDominio):
        empirical_csd(FieldRealizationSet(malla=m, realizaciones=np.ones((1, 3))))


def test_fases_reales_con_varianza_pedida():
    m = FrequencyGrid(center=0.0, span_half_width=6.0, n_points=65)
    theta = campo_fase_real(m, rms=0.5, ancho_correlacion=1.0, count=4000, seed=2)
    assert theta.shape == (4000, 65)
    assert np.isrealobj(theta)
    assert np.var(theta[:, 32]) == pytest.approx(0.25, rel=0.1)


def test_hilos_desde_entorno(monkeypatch):
    monkeypatch.setenv(VAR_HILOS, "3")
    assert hilos_por_defecto() == 3
    monkeypatch.setenv(VAR_HILOS, "cero")
    with pytest.raises(ErrorConfiguracion):
        hilos_por_defecto()
    monkeypatch.delenv(VAR_HILOS)
    assert hilos_por_defecto() == 1

# tests/test_malla.py
from __future__ import annotations

import math

import numpy as np
import pytest

from coherencia.errores import ErrorDominio
from coherencia.malla import FrequencyGrid, cuadratura_doble, cuadratura_simple


def test_malla_impar_contiene_el_centro():
    m = FrequencyGrid(center=10.0, span_half_width=3.0, n_points=7)
    assert m.spacing == pytest.approx(1.0)
    assert m.values[3] == 0.0
    assert m.absolutas[3] == 10.0
    assert np.all(np.diff(m.values) > 0)


@pytest.mark.parametrize("n", [4, 1, 2.5, 9.0, True, "9"])
def test_malla_rechaza_n_invalido(n):
    with pytest.raises(ErrorDominio):
        FrequencyGrid(center=1.0, span_half_width=1.0, n_points=n)


def test_malla_acepta_enteros_de_numpy():
    m = FrequencyGrid(center=1.0, span_half_width=1.0, n_points=np.int64(9))
    assert type(m.n_points) is int
    assert m.values.shape == (9,)


def test_malla_rechaza_semiancho_no_positivo():
    with pytest.raises(ErrorDominio):
        FrequencyGrid(center=1.0, span_half_width=0.0)


def test_centrada_regla_seis_anchos():
    m = FrequencyGrid.centrada(5.0, 2.0)
    assert m.span_half_width == 12.0
    assert m.n_points == 257


def test_cuadratura_simple_gaussiana():
    m = FrequencyGrid(center=0.0, span_half_width=8.0, n_points=257)
    g = np.exp(-m.values ** 2 / 2.0)
    r = cuadratura_simple(g, m, np.array([0.0, 1.0]))
    esperado = math.sqrt(2.0 * math.pi) * np.exp(-np.array([0.0, 1.0]) ** 2 / 2.0)
    np.testing.assert_allclose(r.valores.real, esperado, rtol=1e-10)
    assert r.error_estimado < 1e-4
    assert r.avisos == ()


def test_cuadratura_gruesa_emite_aviso():
    m = FrequencyGrid(center=0.0, span_half_width=8.0, n_points=9)
    g = np.exp(-m.values ** 2 / (2.0 * 0.3 ** 2))
    r = cuadratura_simple(g, m, 0.0)
    assert r.error_estimado > 1e-4
    assert r.avisos


def test_cuadratura_doble_diagonal_conserva_masa():
    m = FrequencyGrid(center=0.0, span_half_width=6.0, n_points=129)
    S = np.exp(-m.values ** 2 / 2.0)
    K = np.diag(S / m.spacing).astype(complex)
    r = cuadratura_doble(K, m, 0.0, 0.0, diagonal=True)
    assert r.valores[0].real == pytest.approx(math.sqrt(2.0 * math.pi), rel=1e-8)
    assert r.error_estimado < 1e-4

# tests/test_bifoton.py
from __future__ import annotations

import math

import numpy as np
import pytest

from coherencia.bifoton import (
    coincidence_rate,
    gamma2_factorized,
    gamma_d,
    gamma_d_doble,
    gamma_p,
    recortar_tasa,
)
from coherencia.bombeo import (
    TIPO_TABULADA,
    CrossSpectralDensity,
    espectro_gaussiano,
    gsm_temporal_correlation,
    stationary_csd,
)
from coherencia.caminos import Alternativa, CouplingAmplitudes, PathwayPair, franson
from coherencia.errores import ErrorConfiguracion, ErrorConsistencia
from coherencia.malla import FrequencyGrid
from coherencia.respuesta import PhaseScreen, SpectralResponse

from conftest import OMEGA_P0, respuesta_gaussiana


# ------------------------------------------------------------------
# Γ_p
# ------------------------------------------------------------------

def test_gamma_p_diagonal_real_no_negativa(csd_tab):
    for tb in (-0.5, 0.0, 0.5):
        v = gamma_p(csd_tab, 0.4, 0.4, tb).valor
        assert abs(v.imag) < 1e-10 * abs(v.real)
        assert v.real >= 0


def test_gamma_p_misma_forma_que_el_bombeo(csd_tab, modelo_gsm):
    tb = np.linspace(-2.0, 2.0, 9)
    num = gamma_p(csd_tab, 0.5, 0.0, tb).valor
    cerrado = gsm_temporal_correlation(modelo_gsm, 0.5 - tb, -tb)
    assert np.max(np.abs(np.abs(num) - cerrado)) / np.max(cerrado) < 1e-6


def test_gamma_p_estacionario_invariante_ante_traslaciones():
    csd = stationary_csd(FrequencyGrid.centrada(OMEGA_P0, 1.0), espectro_gaussiano(1.0, 1.0))
    ref = gamma_p(csd, 0.8, 0.1, 0.0).valor
    for s in (-2.0, -0.5, 0.3, 1.0, 2.5):
        assert abs(gamma_p(csd, 0.8, 0.1, s).valor - ref) <= 1e-10 * abs(ref)


def test_gamma_p_lleva_la_portadora(csd_tab):
    a = gamma_p(csd_tab, 0.3, 0.0, 0.0).valor
    env = a * np.exp(1j * OMEGA_P0 * 0.3)
    assert abs(env.imag) < 1e-9 * abs(env)


# ------------------------------------------------------------------
# Γ_d
# ------------------------------------------------------------------

def test_gamma_d_respuesta_plana():
    r = SpectralResponse.degenerada(OMEGA_P0)
    m = r.malla_diferencia(n_points=33, ancho=1.0)
    v = gamma_d(r, 0.0, 0.0, 0.0, m).valor
    # (∫ 1 dω̄)² sobre la malla
    assert v.real == pytest.approx((2.0 * m.span_half_width) ** 2, rel=1e-12)
    assert abs(v.imag) < 1e-12 * v.real


def test_gamma_d_gaussiana_forma_cerrada():
    sigma = 4.0
    r = respuesta_gaussiana(OMEGA_P0, sigma)
    s1, s2 = 0.2, -0.1
    v = gamma_d(r, s1, s2, 0.0).valor
    esperado = 2.0 * math.pi * sigma ** 2 * math.exp(-(sigma ** 2) * (s1 ** 2 + s2 ** 2) / 2.0)
    assert abs(v) == pytest.approx(esperado, rel=1e-7)
    assert gamma_d(r, 0.3, 0.3, 0.1).valor.real >= 0


def test_gamma_d_separable_igual_a_doble():
    r = respuesta_gaussiana(OMEGA_P0, 3.0, pantalla=PhaseScreen(rms=0.4, ancho_correlacion=2.0, realizaciones=8))
    m = r.malla_diferencia(n_points=65)
    tt = np.array([-0.2, 0.0, 0.4])
    a = gamma_d(r, 0.5, 0.1, tt, m).valor
    b = gamma_d_doble(r, 0.5, 0.1, tt, m).valor
    np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-12 * np.max(np.abs(a)))


# ------------------------------------------------------------------
# Γ⁽²⁾
# ------------------------------------------------------------------

def test_factor_nulo_da_producto_nulo(resp_gauss):
    m = FrequencyGrid.centrada(OMEGA_P0, 1.0, n_points=33)
    cero = CrossSpectralDensity(tipo=TIPO_TABULADA, malla=m, kernel=np.zeros((33, 33), dtype=complex))
    assert gamma2_factorized(cero, resp_gauss, franson(0.5), 0.1, -0.1).valor == 0


def test_gamma2_gsm_gaussiana(csd_tab, modelo_gsm):
    sigma = 10.0
    r = respuesta_gaussiana(OMEGA_P0, sigma)
    paths = PathwayPair(Alternativa(tau_s=0.6, tau_i=0.2), Alternativa(tau_p=0.1))
    ts, ti = 0.15, 0.05
    tb, tt = 0.5 * (ts + ti), 0.5 * (ts - ti)
    a1, a2 = paths.alt1, paths.alt2
    p = gsm_temporal_correlation(modelo_gsm, a1.tau - tb, a2.tau - tb)
    s1, s2 = a1.tau_prima - tt, a2.tau_prima - tt
    d = 2.0 * math.pi * sigma ** 2 * math.exp(-(sigma ** 2) * (s1 ** 2 + s2 ** 2) / 2.0)
    v = gamma2_factorized(csd_tab, r, paths, ts, ti).valor
    assert abs(v) == pytest.approx(p * d, rel=1e-6)


def test_intercambio_conjuga(csd_tab, resp_gauss):
    paths = PathwayPair(Alternativa(tau_s=0.3, tau_i=0.1, phi_p=0.2), Alternativa(tau_p=0.05, tau_i=0.2))
    a = gamma2_factorized(csd_tab, resp_gauss, paths, 0.1, 0.0).valor
    b = gamma2_factorized(csd_tab, resp_gauss, paths.intercambiar(), 0.1, 0.0, alternativas=(2, 1)).valor
    assert abs(a - np.conj(b)) < 1e-10 * abs(a)


def test_portadoras_incompatibles(csd_tab):
    r = respuesta_gaussiana(OMEGA_P0 + 1.0, 5.0)
    with pytest.raises(ErrorConfiguracion):
        gamma2_factorized(csd_tab, r, franson(0.1), 0.0, 0.0)


# ------------------------------------------------------------------
# Tasa de coincidencias
# ------------------------------------------------------------------

def test_tasa_sin_segunda_alternativa(csd_tab, resp_gauss):
    paths = franson(0.4)
    r = coincidence_rate(csd_tab, resp_gauss, paths, CouplingAmplitudes.simples(1.5, 0.0), 0.1, 0.0)
    R1 = gamma2_factorized(csd_tab, resp_gauss, paths.diagonal(1), 0.1, 0.0, alternativas=(1, 1)).valor.real
    assert r.valor == pytest.approx(1.5 ** 2 * R1, rel=1e-12)


def test_tasa_caminos_identicos(csd_tab, resp_gauss):
    paths = PathwayPair()
    r = coincidence_rate(csd_tab, resp_gauss, paths, CouplingAmplitudes.simples(1.0, 1.0), 0.0, 0.0)
    assert r.valor == pytest.approx(4.0 * r.directos[0], rel=1e-12)


def test_barrido_de_fase_extremos(csd_tab, resp_gauss):
    base = PathwayPair(Alternativa(tau_s=0.3, tau_i=0.3), Alternativa())
    cruz = gamma2_factorized(csd_tab, resp_gauss, base, 0.05, 0.0).valor
    fases = np.linspace(0.0, 2.0 * math.pi, 73)
    acop = CouplingAmplitudes.simples(1.0, 1.0)

    def tasa(fase):
        return coincidence_rate(csd_tab, resp_gauss, base.con_alternativa(1, phi_p=fase), acop, 0.05, 0.0).valor

    arg = float(np.angle(cruz))
    maximo, minimo = tasa(arg), tasa(arg + math.pi)
    valores = np.array([tasa(f) for f in fases])
    assert np.all(valores <= maximo * (1 + 1e-10))
    assert np.all(valores >= minimo - 1e-10 * maximo)


def test_tasa_no_negativa_en_sorteos(csd_tab):
    rng = np.random.default_rng(21)
    for _ in range(1000):
        resp = respuesta_gaussiana(OMEGA_P0, rng.uniform(2.0, 20.0))
        a1 = Alternativa(*rng.uniform(-1.0, 1.0, 3), *rng.uniform(0.0, 2 * math.pi, 3))
        a2 = Alternativa(*rng.uniform(-1.0, 1.0, 3), *rng.uniform(0.0, 2 * math.pi, 3))
        k = rng.uniform(0.0, 2.0, 4)
        r = coincidence_rate(csd_tab, resp, PathwayPair(a1, a2), CouplingAmplitudes(*k), *rng.uniform(-1.0, 1.0, 2))
        assert r.valor >= 0.0


def test_recorte_de_tasa():
    assert recortar_tasa(-1e-12, 1.0)[:2] == (0.0, True)
    with pytest.raises(ErrorConsistencia):
        recortar_tasa(-1e-3, 1.0)

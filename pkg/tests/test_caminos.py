# tests/test_caminos.py
from __future__ import annotations

import math

import pytest

from coherencia.caminos import Alternativa, CouplingAmplitudes, PathwayPair, franson, hom, pathway_deltas
from coherencia.errores import ErrorDominio


def test_todo_cero():
    assert pathway_deltas(PathwayPair()) == (0.0, 0.0, 0.0)


def test_franson():
    p = franson(0.8, fase=0.3)
    assert pathway_deltas(p) == pytest.approx((0.8, 0.0, 0.3))


def test_hom():
    assert pathway_deltas(hom(1.5)) == pytest.approx((0.0, 1.5, 0.0))


def test_derivados_desde_los_doce_parametros():
    a1 = Alternativa(tau_p=1.0, tau_s=0.4, tau_i=0.2, phi_p=0.1, phi_s=0.2, phi_i=0.3)
    a2 = Alternativa(tau_p=0.5, tau_s=0.0, tau_i=0.6, phi_p=-0.1)
    p = PathwayPair(a1, a2)
    assert a1.tau == pytest.approx(1.3)
    assert a1.tau_prima == pytest.approx(0.1)
    assert a1.phi == pytest.approx(0.6)
    assert p.delta_tau == pytest.approx(1.3 - 0.8)
    assert p.delta_tau_prima == pytest.approx(0.1 - (-0.3))
    assert p.delta_phi == pytest.approx(0.7)


def test_antisimetria_al_intercambiar():
    p = PathwayPair(Alternativa(tau_p=0.3, tau_s=1.0, phi_s=0.5), Alternativa(tau_i=0.7))
    q = p.intercambiar()
    assert q.delta_tau == -p.delta_tau
    assert q.delta_tau_prima == -p.delta_tau_prima
    assert q.delta_phi == -p.delta_phi


def test_con_alternativa_no_altera_la_otra():
    p = franson(1.0)
    q = p.con_alternativa(1, phi_p=2.0)
    assert q.alt2 == p.alt2
    assert q.delta_phi == pytest.approx(2.0)


def test_parametro_no_finito():
    with pytest.raises(ErrorDominio):
        Alternativa(tau_s=math.inf)


def test_acoplamientos():
    c = CouplingAmplitudes(kappa_s1=2.0, kappa_i1=0.5, kappa_s2=3.0, kappa_i2=1.0)
    assert (c.kappa1, c.kappa2) == (1.0, 3.0)
    assert CouplingAmplitudes.simples(2.0, 1.0).kappa1 == 2.0
    with pytest.raises(ErrorDominio):
        CouplingAmplitudes(kappa_s1=-1.0)

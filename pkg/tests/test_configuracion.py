# tests/test_configuracion.py
from __future__ import annotations

import math

import numpy as np
import pytest

from coherencia.bombeo import GaussianSchellModel, tabulate_gsm
from coherencia.configuracion import cargar_configuracion, construir_configuracion, leer_documento
from coherencia.errores import ErrorConfiguracion
from coherencia.io_kernel import guardar_kernel
from coherencia.malla import FrequencyGrid

from conftest import OMEGA_P0, documento_base

BARRIDO = {"inicio": 0.0, "fin": 1.0, "n_puntos": 11}


def test_escenario_minimo(tmp_path, escribir_config):
    doc = documento_base("franson-scan", barrido=BARRIDO, caminos={"franson": {"delta": 0.5}})
    c = cargar_configuracion(escribir_config(doc))
    assert c.tipo == "franson-scan"
    assert c.semilla == 7
    assert c.salida == tmp_path / "salida.csv"
    assert c.csd.es_tabulada
    assert c.resp.omega_p0 == OMEGA_P0
    assert c.paths.delta_tau == pytest.approx(0.5)
    assert c.barrido.n_puntos == 11
    assert math.isinf(c.ventanas.T_pc)
    assert c.crudo["tipo"] == "franson-scan"


def test_linea_de_comandos_tiene_prioridad(tmp_path):
    doc = documento_base("bound-sweep", barrido=BARRIDO)
    c = construir_configuracion(doc, base=tmp_path, semilla=99, salida=tmp_path / "otra.csv")
    assert c.semilla == 99
    assert c.salida == tmp_path / "otra.csv"


@pytest.mark.parametrize(
    "cambio",
    [
        {"desconocida": 1},
        {"bombeo": {"modelo": "gsm", "ancho_banda": 1.0, "omega_p0": OMEGA_P0, "ancho_correlacion": 1.0, "color": 3}},
        {"respuesta": {"filtro_s": {"modelo": "gaussiano", "parametro": 1.0, "orden": 2}}},
        {"ventanas": {"T_pc": 1.0, "T_xx": 2.0}},
    ],
)
def test_claves_desconocidas(tmp_path, cambio):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc.update(cambio)
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_infinito_como_cadena(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO, ventanas={"T_pc": "inf", "T_ci": 4.0})
    doc["bombeo"]["ancho_correlacion"] = "inf"
    c = construir_configuracion(doc, base=tmp_path)
    assert c.modelo.es_coherente
    assert math.isinf(c.ventanas.T_pc)
    assert c.ventanas.T_ci == 4.0


@pytest.mark.parametrize("valor", [True, "uno", None, [1.0]])
def test_tipos_incorrectos(tmp_path, valor):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc["bombeo"]["ancho_banda"] = valor
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_infinito_no_permitido_en_el_ancho_de_banda(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc["bombeo"]["ancho_banda"] = "inf"
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_valor_fuera_de_dominio_es_error_de_configuracion(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc["bombeo"]["ancho_banda"] = -1.0
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_portadoras_que_no_suman(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc["respuesta"].update({"omega_s0": 30.0, "omega_i0": 30.0})
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_barrido_obligatorio(tmp_path):
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(documento_base("hom-scan"), base=tmp_path)


def test_tipo_desconocido(tmp_path):
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(documento_base("otro"), base=tmp_path)


def test_caminos_con_nombre_y_explicitos(tmp_path):
    doc = documento_base(
        "franson-scan", barrido=BARRIDO, caminos={"franson": {"delta": 1.0}, "alternativa_1": {"tau_s": 1.0}}
    )
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_caminos_explicitos(tmp_path):
    doc = documento_base(
        "hom-scan",
        barrido=BARRIDO,
        caminos={"alternativa_1": {"tau_s": 0.4, "phi_p": 0.2}, "alternativa_2": {"tau_i": 0.4}},
    )
    c = construir_configuracion(doc, base=tmp_path)
    assert c.paths.delta_tau_prima == pytest.approx(0.4)
    assert c.paths.delta_phi == pytest.approx(0.2)


def test_kernel_desde_archivo_relativo(tmp_path, escribir_config):
    m = GaussianSchellModel(A=1.0, delta_p=1.0, delta_c=2.0, omega_p0=OMEGA_P0)
    csd = tabulate_gsm(m, FrequencyGrid.centrada(OMEGA_P0, 1.5, n_points=65))
    (tmp_path / "datos").mkdir()
    guardar_kernel(csd, tmp_path / "datos" / "kernel.txt")
    doc = documento_base("factorization-check", factorizacion={"pares": [[0.0, 0.0]], "realizaciones": 200})
    doc["bombeo"] = {"modelo": "archivo", "ruta": "datos/kernel.txt"}
    c = cargar_configuracion(escribir_config(doc))
    assert np.array_equal(c.csd.kernel, csd.kernel)
    assert c.factorizacion.pares == ((0.0, 0.0),)
    assert c.factorizacion.realizaciones == 200


def test_kernel_inexistente_no_es_error_de_configuracion(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc["bombeo"] = {"modelo": "archivo", "ruta": "no_existe.txt"}
    with pytest.raises(FileNotFoundError):
        construir_configuracion(doc, base=tmp_path)


def test_factorizacion_requiere_bombeo_tabulado(tmp_path):
    doc = documento_base("factorization-check", factorizacion={"pares": [[0.0, 0.0]]})
    doc["bombeo"]["tabular"] = False
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


@pytest.mark.parametrize("pares", [[], [[0.0]], [[0.0, "a"]], "0,0"])
def test_pares_mal_formados(tmp_path, pares):
    doc = documento_base("factorization-check", factorizacion={"pares": pares})
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_validacion_wk_requiere_gsm(tmp_path):
    doc = documento_base("wk-validate")
    doc["bombeo"] = {"modelo": "estacionario", "ancho_banda": 1.0, "omega_p0": OMEGA_P0}
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_respuesta_plana_sin_ancho_de_malla(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO, respuesta={})
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)
    doc["mallas"] = {"diferencia": {"ancho": 2.0, "n_puntos": 65}}
    c = construir_configuracion(doc, base=tmp_path)
    assert c.malla_d.span_half_width == pytest.approx(12.0)
    assert c.malla_d.n_points == 65


def test_pantalla_de_fase_hereda_la_semilla(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc["respuesta"]["pantalla_fase"] = {"rms": 0.3, "ancho_correlacion": 2.0}
    c = construir_configuracion(doc, base=tmp_path, semilla=5)
    assert c.resp.pantalla.semilla == 5
    assert c.resp.pantalla.realizaciones == 256


def test_json_invalido(tmp_path):
    ruta = tmp_path / "roto.json"
    ruta.write_text("{ tipo: ", encoding="utf-8")
    with pytest.raises(ErrorConfiguracion):
        leer_documento(ruta)
    with pytest.raises(FileNotFoundError):
        leer_documento(tmp_path / "ausente.json")


@pytest.mark.parametrize("valor", [math.nan, math.inf, -math.inf])
def test_nan_e_infinito_numericos_rechazados(tmp_path, valor):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc["bombeo"]["omega_p0"] = valor
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_nan_en_los_pares_rechazado(tmp_path):
    doc = documento_base("factorization-check", factorizacion={"pares": [[0.0, math.nan]]})
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


@pytest.mark.parametrize("valor", ["Infinity", "INF", "infinito"])
def test_variantes_de_infinito_en_ventanas(tmp_path, valor):
    doc = documento_base("franson-scan", barrido=BARRIDO, ventanas={"T_ci": valor})
    c = construir_configuracion(doc, base=tmp_path)
    assert math.isinf(c.ventanas.T_ci)


def test_entero_donde_se_espera_booleano(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO, excel=1)
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(doc, base=tmp_path)


def test_entero_aceptado_como_real(tmp_path):
    doc = documento_base("franson-scan", barrido={"inicio": 0, "fin": 2, "n_puntos": 5})
    c = construir_configuracion(doc, base=tmp_path)
    assert c.barrido.fin == 2.0
    assert c.barrido.n_puntos == 5


def test_mensaje_indica_la_clave(tmp_path):
    doc = documento_base("franson-scan", barrido=BARRIDO)
    doc["bombeo"]["ancho_banda"] = "1.0"
    with pytest.raises(ErrorConfiguracion, match="bombeo"):
        construir_configuracion(doc, base=tmp_path)


def test_directorio_como_configuracion(tmp_path):
    (tmp_path / "escenario.json").mkdir()
    with pytest.raises(OSError):
        leer_documento(tmp_path / "escenario.json")


@pytest.mark.parametrize("barrido", [{"inicio": 1.0, "fin": 0.0}, {"inicio": 0.0, "fin": 1.0, "n_puntos": 0}])
def test_barrido_mal_formado(tmp_path, barrido):
    with pytest.raises(ErrorConfiguracion):
        construir_configuracion(documento_base("bound-sweep", barrido=barrido), base=tmp_path)

# tests/test_cli.py
from __future__ import annotations

import json
import math

import numpy as np
import pandas as pd
import pytest

from app import SALIDA_CONFIGURACION, SALIDA_IO, SALIDA_NUMERICA, SALIDA_OK, main

from conftest import documento_base

BARRIDO = {"inicio": -2.0, "fin": 2.0, "n_puntos": 9}


def test_franson_escribe_tabla_y_metadatos(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("franson-scan", barrido=BARRIDO))
    assert main(["run", str(ruta)]) == SALIDA_OK

    tabla = pd.read_csv(tmp_path / "salida.csv")
    assert list(tabla.columns) == ["delta_tau", "tasa", "abs_gamma_p", "abs_gamma_d"]
    assert len(tabla) == 9
    np.testing.assert_allclose(tabla["abs_gamma_p"], np.exp(-tabla["delta_tau"] ** 2 / 2.0), atol=1e-3)
    assert np.all(tabla["tasa"] >= 0)

    meta = json.loads((tmp_path / "salida.csv.json").read_text(encoding="utf-8"))
    assert meta["tipo"] == "franson-scan"
    assert meta["semilla"] == 7
    assert meta["columnas"] == list(tabla.columns)
    assert meta["configuracion"]["barrido"] == BARRIDO
    assert set(meta["versiones"]) == {"numpy", "scipy", "pandas"}


def test_hom_envolvente_de_diferencia(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("hom-scan", barrido={"inicio": 0.0, "fin": 0.3, "n_puntos": 7}))
    assert main(["run", str(ruta), "--out", str(tmp_path / "hom.csv")]) == SALIDA_OK
    tabla = pd.read_csv(tmp_path / "hom.csv")
    x = tabla["delta_tau_prima"].to_numpy()
    # g gaussiano de ancho 10 en ω̄_d
    np.testing.assert_allclose(tabla["abs_gamma_d"], np.exp(-100.0 * x ** 2 / 4.0), atol=1e-6)


def test_cota_con_holgura_no_negativa(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("bound-sweep", barrido=BARRIDO))
    assert main(["run", str(ruta)]) == SALIDA_OK
    tabla = pd.read_csv(tmp_path / "salida.csv")
    assert list(tabla.columns) == ["delta_tau", "C", "abs_gamma_p", "holgura"]
    assert np.all(tabla["holgura"] >= -1e-12)
    # acoplamientos iguales y γ̄_d = 1: la cota se alcanza
    np.testing.assert_allclose(tabla["C"], tabla["abs_gamma_p"], atol=1e-12)


def test_validacion_wk(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("wk-validate", validacion_wk={"n_red": 5}))
    assert main(["run", str(ruta)]) == SALIDA_OK
    tabla = pd.read_csv(tmp_path / "salida.csv")
    assert len(tabla) == 25
    assert tabla["error_relativo"].max() < 1e-6
    meta = json.loads((tmp_path / "salida.csv.json").read_text(encoding="utf-8"))
    assert meta["extra"]["error_maximo"] < 1e-6


def test_factorizacion_columnas_y_repetibilidad(tmp_path, escribir_config):
    doc = documento_base(
        "factorization-check",
        caminos={"franson": {"delta": 0.5}},
        factorizacion={"pares": [[0.0, 0.0], [0.3, 0.1]], "realizaciones": 200},
    )
    ruta = escribir_config(doc)
    assert main(["run", str(ruta), "--out", str(tmp_path / "a.csv"), "--threads", "1"]) == SALIDA_OK
    assert main(["run", str(ruta), "--out", str(tmp_path / "b.csv"), "--threads", "2"]) == SALIDA_OK
    a = (tmp_path / "a.csv").read_bytes()
    assert a == (tmp_path / "b.csv").read_bytes()
    tabla = pd.read_csv(tmp_path / "a.csv")
    assert list(tabla.columns) == [
        "t_s", "t_i", "re_factorizado", "im_factorizado", "re_oraculo", "im_oraculo",
        "error_estandar", "desviacion_en_se",
    ]
    assert np.all(tabla["error_estandar"] > 0)


def test_tablas_identicas_byte_a_byte(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("franson-scan", barrido=BARRIDO))
    assert main(["run", str(ruta), "--out", str(tmp_path / "uno.csv")]) == SALIDA_OK
    assert main(["run", str(ruta), "--out", str(tmp_path / "dos.csv")]) == SALIDA_OK
    assert (tmp_path / "uno.csv").read_bytes() == (tmp_path / "dos.csv").read_bytes()
    texto = (tmp_path / "uno.csv").read_text(encoding="utf-8")
    assert "\r" not in texto
    assert texto.splitlines()[0] == "delta_tau,tasa,abs_gamma_p,abs_gamma_d"


def test_semilla_desde_la_linea_de_comandos(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("franson-scan", barrido=BARRIDO))
    assert main(["run", str(ruta), "--seed", "31"]) == SALIDA_OK
    meta = json.loads((tmp_path / "salida.csv.json").read_text(encoding="utf-8"))
    assert meta["semilla"] == 31


def test_excel_opcional(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("franson-scan", barrido=BARRIDO, excel=True))
    assert main(["run", str(ruta)]) == SALIDA_OK
    hojas = pd.read_excel(tmp_path / "salida.csv.xlsx", sheet_name=None)
    assert set(hojas) == {"Resultados", "Metadatos", "Avisos"}
    assert len(hojas["Resultados"]) == 9
    assert not any(p.name.startswith(".salida") for p in tmp_path.iterdir())


# ------------------------------------------------------------------
# Códigos de salida
# ------------------------------------------------------------------

def test_clave_invalida_sin_salida(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("franson-scan", barrido=BARRIDO, sobrante=1))
    assert main(["run", str(ruta)]) == SALIDA_CONFIGURACION
    assert not (tmp_path / "salida.csv").exists()
    assert not (tmp_path / "salida.csv.json").exists()


def test_configuracion_inexistente(tmp_path):
    assert main(["run", str(tmp_path / "nada.json")]) == SALIDA_IO


def test_configuracion_ilegible_es_error_de_lectura(tmp_path):
    (tmp_path / "carpeta.json").mkdir()
    assert main(["run", str(tmp_path / "carpeta.json")]) == SALIDA_IO


def test_kernel_inexistente_es_error_de_lectura(tmp_path, escribir_config):
    doc = documento_base("franson-scan", barrido=BARRIDO, bombeo={"modelo": "archivo", "ruta": "no_existe.txt"})
    assert main(["run", str(escribir_config(doc))]) == SALIDA_IO
    assert not (tmp_path / "salida.csv").exists()


def test_tipo_incorrecto_es_error_de_configuracion(tmp_path, escribir_config):
    doc = documento_base("franson-scan", barrido={"inicio": "0", "fin": 1.0})
    assert main(["run", str(escribir_config(doc))]) == SALIDA_CONFIGURACION


def test_hilos_invalidos(tmp_path, escribir_config):
    ruta = escribir_config(documento_base("franson-scan", barrido=BARRIDO))
    assert main(["run", str(ruta), "--threads", "0"]) == SALIDA_CONFIGURACION


def test_error_numerico(tmp_path, escribir_config):
    doc = documento_base("factorization-check", factorizacion={"pares": [[0.0, 0.0]], "realizaciones": 50})
    assert main(["run", str(escribir_config(doc))]) == SALIDA_NUMERICA
    assert not (tmp_path / "salida.csv").exists()


def test_error_de_escritura(tmp_path, escribir_config):
    (tmp_path / "bloqueo").write_text("", encoding="utf-8")
    ruta = escribir_config(documento_base("franson-scan", barrido=BARRIDO))
    assert main(["run", str(ruta), "--out", str(tmp_path / "bloqueo" / "x.csv")]) == SALIDA_IO


def test_sin_subcomando():
    with pytest.raises(SystemExit):
        main([])


def test_avisos_a_stderr(tmp_path, escribir_config, capsys):
    doc = documento_base("franson-scan", barrido=BARRIDO, ventanas={"T_pc": 2.0})
    assert main(["run", str(escribir_config(doc))]) == SALIDA_OK
    err = capsys.readouterr().err
    assert "AVISO" in err
    meta = json.loads((tmp_path / "salida.csv.json").read_text(encoding="utf-8"))
    assert any("borde" in a for a in meta["avisos"])
    assert math.isfinite(meta["tiempo_s"])

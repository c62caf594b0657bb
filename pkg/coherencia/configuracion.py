# coherencia/configuracion.py
# -*- coding: utf-8 -*-
"""
ORDEN LÓGICO: 10 – CONFIGURACIÓN DE ESCENARIOS

Lee un documento JSON, lo valida contra el esquema (modelos pydantic) y lo
convierte en un ScenarioConfig con los objetos del escenario ya construidos.

Reglas:
- Toda clave desconocida, en cualquier nivel, es error de configuración.
- Sin conversiones implícitas: "1.0" no es un número y 1 no es un booleano.
- NaN e infinitos se rechazan; el infinito se escribe como la cadena "inf"
  y solo donde tiene sentido (ancho_correlacion del bombeo y ventanas).
- Las rutas relativas (kernel tabulado, salida) se resuelven respecto a la
  carpeta del archivo de configuración.
- Un archivo que no se puede leer (configuración o kernel) no es error de
  configuración: el OSError se propaga tal cual.

Ver readme.md para el esquema completo.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Annotated, Any, ClassVar, Dict, Iterator, Literal, Optional, Tuple, Union
import json
import logging
import math

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    StrictBool,
    StrictFloat,
    StrictInt,
    StrictStr,
    ValidationError,
    field_validator,
    model_validator,
)

from .bombeo import (
    CrossSpectralDensity,
    GaussianSchellModel,
    csd_closed_form,
    espectro_gaussiano,
    malla_para_gsm,
    stationary_csd,
    tabulate_gsm,
)
from .caminos import Alternativa, CouplingAmplitudes, PathwayPair, franson, hom
from .deteccion import AveragingWindows
from .errores import ErrorCoherencia, ErrorConfiguracion
from .io_kernel import cargar_kernel
from .malla import N_PUNTOS_DEFECTO, SIGMAS_DEFECTO, FrequencyGrid
from .respuesta import N_PUNTOS_DIFERENCIA, ModeloEspectral, PhaseScreen, SpectralResponse

logger = logging.getLogger(__name__)

Ruta = Union[str, Path]


# =============================================================================
# Parámetros
# =============================================================================

TiposCorrida = Literal["franson-scan", "hom-scan", "bound-sweep", "factorization-check", "wk-validate"]
CON_BARRIDO = ("franson-scan", "hom-scan", "bound-sweep")

VALORES_INFINITO = ("inf", "infinito", "infinity")

REALIZACIONES_DEFECTO = 20000
REALIZACIONES_PANTALLA = 256
N_PUNTOS_BARRIDO = 101
N_RED_WK = 11
SEMIANCHO_WK = 5.0


# =============================================================================
# Modelo base
# =============================================================================

def _flotantes(v: Any) -> Iterator[float]:
    if isinstance(v, float):
        yield v
    elif isinstance(v, (tuple, list)):
        for x in v:
            yield from _flotantes(x)


def _infinito(v: Any) -> Any:
    if isinstance(v, str) and v.strip().lower() in VALORES_INFINITO:
        return math.inf
    return v


class ModeloEstricto(BaseModel):
    """
    Raíz de todas las secciones: claves desconocidas prohibidas, valores
    inmutables y sin NaN/infinito (salvo los campos de ADMITEN_INFINITO).
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    ADMITEN_INFINITO: ClassVar[Tuple[str, ...]] = ()

    @model_validator(mode="after")
    def _rechazar_nan_inf(self) -> "ModeloEstricto":
        for nombre in type(self).model_fields:
            for v in _flotantes(getattr(self, nombre)):
                if math.isnan(v) or (math.isinf(v) and nombre not in self.ADMITEN_INFINITO):
                    raise ValueError(f"'{nombre}' contiene {v!r}, que no está permitido.")
        return self


# =============================================================================
# Bombeo
# =============================================================================

class BombeoGSM(ModeloEstricto):
    ADMITEN_INFINITO: ClassVar[Tuple[str, ...]] = ("ancho_correlacion",)

    modelo: Literal["gsm"]
    A: StrictFloat = 1.0
    ancho_banda: StrictFloat
    ancho_correlacion: StrictFloat
    omega_p0: StrictFloat
    tabular: StrictBool = True
    n_puntos: StrictInt = N_PUNTOS_DEFECTO
    sigmas: StrictFloat = SIGMAS_DEFECTO

    @field_validator("ancho_correlacion", mode="before")
    @classmethod
    def _ancho_infinito(cls, v: Any) -> Any:
        return _infinito(v)

    def construir(self, base: Path) -> Tuple[CrossSpectralDensity, Optional[GaussianSchellModel]]:
        m = GaussianSchellModel(
            A=self.A,
            delta_p=self.ancho_banda,
            delta_c=self.ancho_correlacion,
            omega_p0=self.omega_p0,
        )
        if not self.tabular:
            return csd_closed_form(m), m
        return tabulate_gsm(m, malla_para_gsm(m, self.n_puntos, self.sigmas)), m


class BombeoEstacionario(ModeloEstricto):
    modelo: Literal["estacionario"]
    A: StrictFloat = 1.0
    ancho_banda: StrictFloat
    omega_p0: StrictFloat
    n_puntos: StrictInt = N_PUNTOS_DEFECTO
    sigmas: StrictFloat = SIGMAS_DEFECTO

    def construir(self, base: Path) -> Tuple[CrossSpectralDensity, Optional[GaussianSchellModel]]:
        malla = FrequencyGrid.centrada(self.omega_p0, self.ancho_banda, self.n_puntos, self.sigmas)
        return stationary_csd(malla, espectro_gaussiano(self.A, self.ancho_banda)), None


class BombeoArchivo(ModeloEstricto):
    modelo: Literal["archivo"]
    ruta: StrictStr = Field(min_length=1)

    def construir(self, base: Path) -> Tuple[CrossSpectralDensity, Optional[GaussianSchellModel]]:
        return cargar_kernel(_resolver(self.ruta, base)), None


SeccionBombeo = Annotated[Union[BombeoGSM, BombeoEstacionario, BombeoArchivo], Field(discriminator="modelo")]


# =============================================================================
# Respuesta espectral
# =============================================================================

class SeccionModeloEspectral(ModeloEstricto):
    modelo: StrictStr = "unidad"
    parametro: Optional[StrictFloat] = None

    def construir(self) -> ModeloEspectral:
        return ModeloEspectral(modelo=self.modelo, parametro=self.parametro)


class SeccionPantalla(ModeloEstricto):
    rms: StrictFloat
    ancho_correlacion: StrictFloat
    realizaciones: StrictInt = REALIZACIONES_PANTALLA
    semilla: Optional[StrictInt] = None


class SeccionRespuesta(ModeloEstricto):
    omega_s0: Optional[StrictFloat] = None
    omega_i0: Optional[StrictFloat] = None
    empatamiento: SeccionModeloEspectral = Field(default_factory=SeccionModeloEspectral)
    filtro_s: SeccionModeloEspectral = Field(default_factory=SeccionModeloEspectral)
    filtro_i: SeccionModeloEspectral = Field(default_factory=SeccionModeloEspectral)
    pantalla_fase: Optional[SeccionPantalla] = None

    def construir(self, omega_p0: float, semilla: int) -> SpectralResponse:
        pantalla = None
        if self.pantalla_fase is not None:
            p = self.pantalla_fase
            pantalla = PhaseScreen(
                rms=p.rms,
                ancho_correlacion=p.ancho_correlacion,
                realizaciones=p.realizaciones,
                semilla=semilla if p.semilla is None else p.semilla,
            )
        ws = 0.5 * omega_p0 if self.omega_s0 is None else self.omega_s0
        wi = omega_p0 - ws if self.omega_i0 is None else self.omega_i0
        return SpectralResponse(
            omega_s0=ws,
            omega_i0=wi,
            omega_p0=omega_p0,
            empatamiento=self.empatamiento.construir(),
            filtro_s=self.filtro_s.construir(),
            filtro_i=self.filtro_i.construir(),
            pantalla=pantalla,
        )


# =============================================================================
# Caminos y acoplamientos
# =============================================================================

class SeccionAlternativa(ModeloEstricto):
    tau_p: StrictFloat = 0.0
    tau_s: StrictFloat = 0.0
    tau_i: StrictFloat = 0.0
    phi_p: StrictFloat = 0.0
    phi_s: StrictFloat = 0.0
    phi_i: StrictFloat = 0.0

    def construir(self) -> Alternativa:
        return Alternativa(**self.model_dump())


class SeccionFranson(ModeloEstricto):
    delta: StrictFloat = 0.0
    fase: StrictFloat = 0.0


class SeccionHom(ModeloEstricto):
    delta: StrictFloat = 0.0


class SeccionCaminos(ModeloEstricto):
    """Doce parámetros explícitos o un arreglo con nombre (franson / hom)."""
    alternativa_1: Optional[SeccionAlternativa] = None
    alternativa_2: Optional[SeccionAlternativa] = None
    franson: Optional[SeccionFranson] = None
    hom: Optional[SeccionHom] = None

    @model_validator(mode="after")
    def _una_sola_forma(self) -> "SeccionCaminos":
        nombrados = [k for k in ("franson", "hom") if getattr(self, k) is not None]
        if nombrados and (self.alternativa_1 is not None or self.alternativa_2 is not None):
            raise ValueError("use alternativas explícitas o un arreglo con nombre, no ambos.")
        if len(nombrados) > 1:
            raise ValueError("solo un arreglo con nombre por escenario.")
        return self

    def construir(self) -> PathwayPair:
        if self.franson is not None:
            return franson(self.franson.delta, self.franson.fase)
        if self.hom is not None:
            return hom(self.hom.delta)
        return PathwayPair(
            alt1=(self.alternativa_1 or SeccionAlternativa()).construir(),
            alt2=(self.alternativa_2 or SeccionAlternativa()).construir(),
        )


class SeccionAcoplamientos(ModeloEstricto):
    kappa_s1: StrictFloat = 1.0
    kappa_i1: StrictFloat = 1.0
    kappa_s2: StrictFloat = 1.0
    kappa_i2: StrictFloat = 1.0

    def construir(self) -> CouplingAmplitudes:
        return CouplingAmplitudes(**self.model_dump())


class SeccionVentanas(ModeloEstricto):
    ADMITEN_INFINITO: ClassVar[Tuple[str, ...]] = ("T_pc", "T_ci")

    T_pc: StrictFloat = math.inf
    T_ci: StrictFloat = math.inf

    @field_validator("T_pc", "T_ci", mode="before")
    @classmethod
    def _ventana_infinita(cls, v: Any) -> Any:
        return _infinito(v)

    def construir(self) -> AveragingWindows:
        return AveragingWindows(T_pc=self.T_pc, T_ci=self.T_ci)


# =============================================================================
# Mallas y parámetros de cada tipo de corrida
# =============================================================================

class SeccionMallaDiferencia(ModeloEstricto):
    n_puntos: StrictInt = N_PUNTOS_DIFERENCIA
    sigmas: StrictFloat = SIGMAS_DEFECTO
    ancho: Optional[StrictFloat] = None


class SeccionMallas(ModeloEstricto):
    diferencia: SeccionMallaDiferencia = Field(default_factory=SeccionMallaDiferencia)


class ParametrosBarrido(ModeloEstricto):
    inicio: StrictFloat
    fin: StrictFloat
    n_puntos: StrictInt = Field(default=N_PUNTOS_BARRIDO, ge=1)

    @model_validator(mode="after")
    def _rango_creciente(self) -> "ParametrosBarrido":
        if self.fin < self.inicio:
            raise ValueError(f"rango de barrido decreciente [{self.inicio}, {self.fin}].")
        return self


class ParametrosFactorizacion(ModeloEstricto):
    pares: Tuple[Tuple[StrictFloat, StrictFloat], ...] = Field(min_length=1)
    realizaciones: StrictInt = REALIZACIONES_DEFECTO


class ParametrosWK(ModeloEstricto):
    n_red: StrictInt = Field(default=N_RED_WK, ge=1)
    semiancho_T: StrictFloat = SEMIANCHO_WK


# =============================================================================
# Documento completo
# =============================================================================

class DocumentoEscenario(ModeloEstricto):
    """Esquema del archivo JSON de un escenario."""
    tipo: TiposCorrida
    semilla: StrictInt = Field(default=0, ge=0)
    salida: Optional[StrictStr] = None
    excel: StrictBool = False
    bombeo: SeccionBombeo
    respuesta: Optional[SeccionRespuesta] = None
    caminos: SeccionCaminos = Field(default_factory=SeccionCaminos)
    acoplamientos: SeccionAcoplamientos = Field(default_factory=SeccionAcoplamientos)
    ventanas: SeccionVentanas = Field(default_factory=SeccionVentanas)
    mallas: SeccionMallas = Field(default_factory=SeccionMallas)
    barrido: Optional[ParametrosBarrido] = None
    factorizacion: Optional[ParametrosFactorizacion] = None
    validacion_wk: ParametrosWK = Field(default_factory=ParametrosWK)

    @model_validator(mode="after")
    def _secciones_del_tipo(self) -> "DocumentoEscenario":
        if self.tipo in CON_BARRIDO and self.barrido is None:
            raise ValueError(f"'{self.tipo}' requiere la sección 'barrido'.")
        if self.tipo == "factorization-check":
            if self.factorizacion is None:
                raise ValueError("'factorization-check' requiere la sección 'factorizacion'.")
            if isinstance(self.bombeo, BombeoGSM) and not self.bombeo.tabular:
                raise ValueError("'factorization-check' requiere un bombeo tabulado ('tabular': true).")
        if self.tipo == "wk-validate":
            if not isinstance(self.bombeo, BombeoGSM):
                raise ValueError("'wk-validate' requiere un bombeo 'gsm'.")
        elif self.respuesta is None:
            raise ValueError(f"'{self.tipo}' requiere la sección 'respuesta'.")
        return self


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Escenario completo, con los objetos ya construidos a partir del
    documento validado. ``crudo`` es el documento tal cual se leyó (eco para
    los metadatos de la corrida).
    """

    tipo: TiposCorrida
    semilla: int
    salida: Path
    csd: CrossSpectralDensity
    modelo: Optional[GaussianSchellModel] = None
    resp: Optional[SpectralResponse] = None
    paths: PathwayPair = PathwayPair()
    couplings: CouplingAmplitudes = CouplingAmplitudes()
    ventanas: AveragingWindows = AveragingWindows()
    malla_d: Optional[FrequencyGrid] = None
    barrido: Optional[ParametrosBarrido] = None
    factorizacion: Optional[ParametrosFactorizacion] = None
    validacion_wk: ParametrosWK = field(default_factory=ParametrosWK)
    excel: bool = False
    crudo: Dict[str, Any] = field(default_factory=dict)


# =============================================================================
# Funciones base
# =============================================================================

def _resolver(valor: str, base: Path) -> Path:
    p = Path(valor)
    return p if p.is_absolute() else base / p


def _mensaje(e: ValidationError) -> str:
    partes = []
    for err in e.errors():
        donde = ".".join(str(x) for x in err["loc"]) or "configuración"
        partes.append(f"{donde}: {err['msg']}")
    return "; ".join(partes)


def _malla_diferencia(s: SeccionMallaDiferencia, resp: Optional[SpectralResponse]) -> Optional[FrequencyGrid]:
    if resp is None:
        return None
    return resp.malla_diferencia(s.n_puntos, s.sigmas, s.ancho)


# =============================================================================
# API pública
# =============================================================================

def validar_documento(crudo: Any) -> DocumentoEscenario:
    try:
        return DocumentoEscenario.model_validate(crudo)
    except ValidationError as e:
        raise ErrorConfiguracion(_mensaje(e)) from e


def construir_configuracion(
    crudo: Dict[str, Any],
    *,
    base: Optional[Path] = None,
    semilla: Optional[int] = None,
    salida: Optional[Ruta] = None,
) -> ScenarioConfig:
    """
    Valida el documento y construye los objetos del escenario.
    ``semilla`` y ``salida`` (de la línea de comandos) tienen prioridad sobre
    los valores del documento.
    """
    base = Path(base) if base is not None else Path.cwd()
    doc = validar_documento(crudo)

    sem = doc.semilla if semilla is None else int(semilla)
    if sem < 0:
        raise ErrorConfiguracion(f"La semilla debe ser ≥ 0 (recibido {sem}).")
    if salida is not None:
        ruta_salida = Path(salida)
    elif doc.salida:
        ruta_salida = _resolver(doc.salida, base)
    else:
        raise ErrorConfiguracion("Falta la ruta de salida ('salida' o --out).")

    try:
        csd, modelo = doc.bombeo.construir(base)
        resp = doc.respuesta.construir(csd.omega_p0, sem) if doc.respuesta is not None and doc.tipo != "wk-validate" else None
        return ScenarioConfig(
            tipo=doc.tipo,
            semilla=sem,
            salida=ruta_salida,
            csd=csd,
            modelo=modelo,
            resp=resp,
            paths=doc.caminos.construir(),
            couplings=doc.acoplamientos.construir(),
            ventanas=doc.ventanas.construir(),
            malla_d=_malla_diferencia(doc.mallas.diferencia, resp),
            barrido=doc.barrido if doc.tipo in CON_BARRIDO else None,
            factorizacion=doc.factorizacion if doc.tipo == "factorization-check" else None,
            validacion_wk=doc.validacion_wk,
            excel=doc.excel,
            crudo=dict(crudo),
        )
    except ErrorConfiguracion:
        raise
    except ErrorCoherencia as e:
        # valores fuera de dominio dentro del documento también son de configuración
        raise ErrorConfiguracion(str(e)) from e


def leer_documento(ruta: Ruta) -> Dict[str, Any]:
    """JSON de la configuración; los errores de lectura (OSError) se propagan."""
    ruta = Path(ruta)
    with open(ruta, "rb") as f:
        datos = f.read()
    try:
        crudo = json.loads(datos.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise ErrorConfiguracion(f"'{ruta}' no es texto UTF-8: {e}.") from e
    except json.JSONDecodeError as e:
        raise ErrorConfiguracion(f"JSON inválido en '{ruta}': {e}.") from e
    if not isinstance(crudo, dict):
        raise ErrorConfiguracion("La configuración debe ser un objeto JSON.")
    return crudo


def cargar_configuracion(ruta: Ruta, *, semilla: Optional[int] = None, salida: Optional[Ruta] = None) -> ScenarioConfig:
    ruta = Path(ruta)
    crudo = leer_documento(ruta)
    config = construir_configuracion(crudo, base=ruta.parent, semilla=semilla, salida=salida)
    logger.info("Configuración '%s' validada (tipo %s, semilla %d).", ruta, config.tipo, config.semilla)
    return config

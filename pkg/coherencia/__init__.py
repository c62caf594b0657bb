# coherencia/__init__.py
# -*- coding: utf-8 -*-
"""Coherencia temporal de fotones de conversión paramétrica descendente con bombeo parcialmente coherente."""

from .bombeo import (
    CrossSpectralDensity,
    GaussianSchellModel,
    csd_closed_form,
    gsm_coherence_time,
    gsm_csd,
    gsm_temporal_correlation,
    stationary_csd,
    tabulate_gsm,
    wk_transform,
)
from .bifoton import coincidence_rate, gamma2_factorized, gamma_d, gamma_p
from .caminos import Alternativa, CouplingAmplitudes, PathwayPair, pathway_deltas
from .deteccion import AveragingWindows, FringeScan, fringe_scan, time_averaged_gamma2, time_averaged_rate, visibility
from .entrelazamiento import (
    DensityMatrix4,
    TwoQubitXState,
    build_two_qubit,
    concurrence_wootters,
    concurrence_x,
    verify_bound,
)
from .malla import FrequencyGrid
from .muestra import CoherenceSample
from .muestreo import FieldRealizationSet, empirical_csd, sample_realizations
from .oraculo import biphoton_amplitude, coincidence_rate_oracle_mc, gamma2_oracle_mc
from .respuesta import PhaseScreen, SpectralResponse, g_response

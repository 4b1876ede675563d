"""Geodesics of planar 2-linkages, their elastica and soliton tracks, and exact proofs."""

from .backlund import BacklundResult, backlund_transform, soliton_constants_from_elastica
from .curves import (CurvatureSeries, PlanarCurve, elastica_residual, fit_soliton_ab, frenet_fd,
                     inflectional_ic, mu_classify, soliton2_residual)
from .elliptic import jacobi_cn
from .estimators import SolitonFitter
from .linkage import ConfigPoint, ConservedSet, Params, PhaseState, ReducedState
from .ode import IntegratorSpec, Trajectory, integrate
from .simulate import simulate_geodesic, simulate_singular

__version__ = "0.1.0"

__all__ = ["BacklundResult", "ConfigPoint", "ConservedSet", "CurvatureSeries", "IntegratorSpec",
           "Params", "PhaseState", "PlanarCurve", "ReducedState", "SolitonFitter", "Trajectory",
           "backlund_transform", "elastica_residual", "fit_soliton_ab", "frenet_fd",
           "inflectional_ic", "integrate", "jacobi_cn", "mu_classify", "simulate_geodesic",
           "simulate_singular", "soliton2_residual", "soliton_constants_from_elastica"]

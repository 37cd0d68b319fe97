"""Cusp classification and evolutes of plane-curve germs via exact jet arithmetic."""

from .classify import CuspClass, Kind, Witness, classify, cuspidal_curvature, kappa_q, normal_form
from .curve import CurveJet, PlaneVec, det2, deriv_vec, rotate90
from .evolute import EvoluteChain, curvature_pair, evolute_chain, legendre_frame, negative_criterion
from .expr import parse_curve, to_jet
from .jet import FLOAT, RATIONAL, Jet

__all__ = [
    "FLOAT", "RATIONAL", "CuspClass", "CurveJet", "EvoluteChain", "Jet", "Kind", "PlaneVec", "Witness",
    "classify", "curvature_pair", "cuspidal_curvature", "det2", "deriv_vec", "evolute_chain", "kappa_q",
    "legendre_frame", "negative_criterion", "normal_form", "parse_curve", "rotate90", "to_jet",
]

__version__ = "0.1.0"

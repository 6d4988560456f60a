"""Numerical lab for the birational maps f_a(x, y) = (y(x+a)/(x-1), x+a-1), a > 1."""
from .core import (INF, ExtPoint, MapResult, Outcome, eval_f, eval_f_inv, fixed_point,
                   jacobian_f, sigma, tau)
from .algebraic import (Bidegree, indeterminacy_orbit, intersection_number, pullback_bideg,
                        pushforward_bideg)
from .regions import (AdaptedCoords, OrbitClass, OrbitTag, RegionTag, adapted_from, adapted_to,
                      blade_transition, classify_biorbit, classify_orbit, region_of)
from .normal_form import NormalFormData, QuadraticData, local_quadratic, normal_form, rotation_number
from .a3 import (Arc, area_eta, comparison_gap, escape_time_bound, phi, trace_arc,
                 wedge_chart, wedge_membership, wedge_transition, wedge_unchart)
from .raster import BasinRaster, Viewport, render_basin, write_image, write_stats
from .estimators import BiorbitClassifier, BladeChart, OrbitClassifier, WedgeChart

__all__ = [
    "INF", "ExtPoint", "MapResult", "Outcome", "eval_f", "eval_f_inv", "fixed_point", "jacobian_f",
    "sigma", "tau", "Bidegree", "indeterminacy_orbit", "intersection_number", "pullback_bideg",
    "pushforward_bideg", "AdaptedCoords", "OrbitClass", "OrbitTag", "RegionTag", "adapted_from",
    "adapted_to", "blade_transition", "classify_biorbit", "classify_orbit", "region_of",
    "NormalFormData", "QuadraticData", "local_quadratic", "normal_form", "rotation_number", "Arc",
    "area_eta", "comparison_gap", "escape_time_bound", "phi", "trace_arc", "wedge_chart",
    "wedge_membership", "wedge_transition", "wedge_unchart", "BasinRaster", "Viewport",
    "render_basin", "write_image", "write_stats", "BiorbitClassifier", "BladeChart",
    "OrbitClassifier", "WedgeChart",
]

__version__ = "0.1.0"

"""Discrete evolutes and involutes of cooriented polygons and their smooth analogues."""

from .a_evolute import OrientedPolygon, a_c_evolute, a_o_evolute
from .dynamics import iterate, normalize
from .errors import EvolabError
from .geometry import CoorientedLine, Isometry, Polygon, compose_reflections, quasiperimeter
from .harmonics import decompose_equiangular, harmonic_polygon, hypocycloid
from .involute import a_evolvent, a_involute_family, p_evolvent, p_involute_family
from .p_evolute import p_evolute_transform, p_matrix, spectral_report
from .smooth import SupportPoly, evolute_smooth, evolvent_smooth

__version__ = "0.1.0"

__all__ = [
    "CoorientedLine",
    "EvolabError",
    "Isometry",
    "OrientedPolygon",
    "Polygon",
    "SupportPoly",
    "a_c_evolute",
    "a_evolvent",
    "a_involute_family",
    "a_o_evolute",
    "compose_reflections",
    "decompose_equiangular",
    "evolute_smooth",
    "evolvent_smooth",
    "harmonic_polygon",
    "hypocycloid",
    "iterate",
    "normalize",
    "p_evolute_transform",
    "p_evolvent",
    "p_involute_family",
    "p_matrix",
    "quasiperimeter",
    "spectral_report",
]

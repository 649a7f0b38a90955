"""A-coordinates, outitudes and canonical cell decompositions of decorated
convex projective structures on punctured surfaces."""

from .coords import ACoords, XCoords, flip_transform, outitude, outitudes, to_x_coords
from .errors import ComputationError, FGError, ValidationError
from .surface import IdealTriangulation, SurfaceSignature, build_triangulation, flip_edge

__version__ = "0.1.0"

__all__ = [
    "ACoords", "XCoords", "flip_transform", "outitude", "outitudes", "to_x_coords",
    "ComputationError", "FGError", "ValidationError",
    "IdealTriangulation", "SurfaceSignature", "build_triangulation", "flip_edge",
]

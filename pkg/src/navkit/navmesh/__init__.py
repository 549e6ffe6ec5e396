"""Recast-style navmesh construction: voxelize, filter, partition, polygonize."""

from .config import BuildConfig
from .heightfield import Heightfield, Span, build_regions, filter_walkable, voxelize
from .contour import Contour, ContourSet, trace_contours
from .polymesh import NavPolyMesh, polygonize
from .builder import build_navmesh

__all__ = [
    "BuildConfig",
    "Heightfield",
    "Span",
    "voxelize",
    "filter_walkable",
    "build_regions",
    "Contour",
    "ContourSet",
    "trace_contours",
    "NavPolyMesh",
    "polygonize",
    "build_navmesh",
]

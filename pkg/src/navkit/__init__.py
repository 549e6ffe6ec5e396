"""navkit: headless navigation engine and scenario benchmark harness."""

__version__ = "0.1.0"

from .geometry import Aabb, Ray, TriMesh, Vec3, load_obj

__all__ = ["Aabb", "Ray", "TriMesh", "Vec3", "load_obj", "__version__"]

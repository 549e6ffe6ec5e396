"""Core linear algebra, triangle-mesh ingestion, and spatial predicates.

World convention: +y is up, units are meters. All value types here are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

from .errors import GeometryError, ParseError

_EPS = 1e-9


@dataclass(frozen=True, slots=True)
class Vec3:
    """Immutable 3D point/vector. Components must be finite."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise GeometryError(f"non-finite component in Vec3({self.x}, {self.y}, {self.z})")

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def length(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def length_xz(self) -> float:
        return math.hypot(self.x, self.z)

    def normalized(self) -> "Vec3":
        n = self.length()
        if n < _EPS:
            raise GeometryError("cannot normalize a zero-length vector")
        return Vec3(self.x / n, self.y / n, self.z / n)

    def distance_to(self, other: "Vec3") -> float:
        return math.sqrt(
            (self.x - other.x) ** 2 + (self.y - other.y) ** 2 + (self.z - other.z) ** 2
        )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


UP = Vec3(0.0, 1.0, 0.0)
ZERO = Vec3(0.0, 0.0, 0.0)


@dataclass(frozen=True, slots=True)
class Aabb:
    """Axis-aligned box, closed on all faces. min <= max component-wise."""

    min: Vec3
    max: Vec3

    def __post_init__(self):
        if self.min.x > self.max.x or self.min.y > self.max.y or self.min.z > self.max.z:
            raise GeometryError(f"Aabb min {self.min} exceeds max {self.max}")

    def contains(self, p: Vec3) -> bool:
        return (
            self.min.x <= p.x <= self.max.x
            and self.min.y <= p.y <= self.max.y
            and self.min.z <= p.z <= self.max.z
        )

    def expanded(self, margin: float) -> "Aabb":
        m = Vec3(margin, margin, margin)
        return Aabb(self.min - m, self.max + m)

    def union(self, other: "Aabb") -> "Aabb":
        return Aabb(
            Vec3(min(self.min.x, other.min.x), min(self.min.y, other.min.y), min(self.min.z, other.min.z)),
            Vec3(max(self.max.x, other.max.x), max(self.max.y, other.max.y), max(self.max.z, other.max.z)),
        )

    @staticmethod
    def of_points(points) -> "Aabb":
        pts = list(points)
        if not pts:
            raise GeometryError("Aabb.of_points needs at least one point")
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        zs = [p.z for p in pts]
        return Aabb(Vec3(min(xs), min(ys), min(zs)), Vec3(max(xs), max(ys), max(zs)))


@dataclass(frozen=True, slots=True)
class Ray:
    """Origin plus unit direction, limited to max_distance meters."""

    origin: Vec3
    direction: Vec3
    max_distance: float

    def __post_init__(self):
        if abs(self.direction.length() - 1.0) > 1e-9:
            raise GeometryError("ray direction must be unit length")
        if self.max_distance <= 0:
            raise GeometryError("ray max_distance must be positive")


@dataclass(frozen=True)
class TriMesh:
    """Triangle soup; indices reference the vertex list."""

    vertices: tuple[Vec3, ...]
    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        for tri in self.triangles:
            for idx in tri:
                if not (0 <= idx < n):
                    raise GeometryError(f"triangle index {idx} out of range (0..{n - 1})")

    def triangle_points(self, i: int) -> tuple[Vec3, Vec3, Vec3]:
        a, b, c = self.triangles[i]
        return self.vertices[a], self.vertices[b], self.vertices[c]

    def bounds(self) -> Aabb:
        return Aabb.of_points(self.vertices)


def triangle_area(a: Vec3, b: Vec3, c: Vec3) -> float:
    return 0.5 * (b - a).cross(c - a).length()


def triangle_normal(a: Vec3, b: Vec3, c: Vec3) -> Vec3:
    """Unit normal canonicalized to point upward (y >= 0)."""
    n = (b - a).cross(c - a)
    ln = n.length()
    if ln < _EPS:
        raise GeometryError("degenerate triangle has no normal")
    n = Vec3(n.x / ln, n.y / ln, n.z / ln)
    if n.y < 0:
        n = Vec3(-n.x, -n.y, -n.z)
    return n


def triangle_slope_deg(a: Vec3, b: Vec3, c: Vec3) -> float:
    """Angle in degrees between the upward-canonicalized normal and +y, in [0, 90]."""
    n = triangle_normal(a, b, c)
    cos_t = max(-1.0, min(1.0, n.y))
    return math.degrees(math.acos(cos_t))


def segment_intersects_aabb(p: Vec3, q: Vec3, box: Aabb) -> bool:
    """Closed-set slab test: boundary contact counts as a hit."""
    d = q - p
    tmin, tmax = 0.0, 1.0
    for axis in ("x", "y", "z"):
        pa = getattr(p, axis)
        da = getattr(d, axis)
        lo = getattr(box.min, axis)
        hi = getattr(box.max, axis)
        if abs(da) < _EPS:
            if pa < lo - _EPS or pa > hi + _EPS:
                return False
        else:
            t1 = (lo - pa) / da
            t2 = (hi - pa) / da
            if t1 > t2:
                t1, t2 = t2, t1
            tmin = max(tmin, t1)
            tmax = min(tmax, t2)
            if tmin > tmax + _EPS:
                return False
    return True


def _parse_face_vertex(token: str, line_no: int) -> int:
    # OBJ face tokens may carry /vt/vn suffixes; only the vertex index is used.
    head = token.split("/", 1)[0]
    try:
        idx = int(head)
    except ValueError:
        raise ParseError(f"bad face vertex {token!r}", line_no) from None
    if idx == 0:
        raise ParseError("OBJ indices are 1-based; 0 is invalid", line_no)
    return idx


def load_obj(source) -> TriMesh:
    """Parse a v/f subset of OBJ text into a TriMesh.

    Polygonal faces are fan-triangulated; degenerate (zero-area) triangles are
    dropped. Normals, texcoords, and materials are ignored. Raises ParseError
    with the line number for malformed records and out-of-range face indices.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    elif hasattr(source, "read"):
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    else:
        raise TypeError(f"unsupported OBJ source {type(source)!r}")

    vertices: list[Vec3] = []
    triangles: list[tuple[int, int, int]] = []
    for line_no, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        rec = parts[0]
        if rec == "v":
            if len(parts) < 4:
                raise ParseError(f"vertex record needs 3 coordinates, got {len(parts) - 1}", line_no)
            try:
                x, y, z = float(parts[1]), float(parts[2]), float(parts[3])
            except ValueError:
                raise ParseError(f"bad vertex coordinate in {line!r}", line_no) from None
            vertices.append(Vec3(x, y, z))
        elif rec == "f":
            if len(parts) < 4:
                raise ParseError("face record needs at least 3 vertices", line_no)
            idxs = []
            for token in parts[1:]:
                idx = _parse_face_vertex(token, line_no)
                if idx < 0:
                    idx = len(vertices) + idx
                else:
                    idx -= 1
                if not (0 <= idx < len(vertices)):
                    raise ParseError(
                        f"face index {token} out of range (have {len(vertices)} vertices)", line_no
                    )
                idxs.append(idx)
            for k in range(1, len(idxs) - 1):
                triangles.append((idxs[0], idxs[k], idxs[k + 1]))
        # vn/vt/usemtl/o/g/s and other records are ignored.

    kept = []
    for tri in triangles:
        a, b, c = (vertices[i] for i in tri)
        if triangle_area(a, b, c) > _EPS:
            kept.append(tri)
    return TriMesh(tuple(vertices), tuple(kept))


def dump_obj(mesh: TriMesh) -> str:
    """Serialize a TriMesh back to OBJ text (inverse of load_obj)."""
    out = []
    for v in mesh.vertices:
        out.append(f"v {v.x!r} {v.y!r} {v.z!r}")
    for a, b, c in mesh.triangles:
        out.append(f"f {a + 1} {b + 1} {c + 1}")
    return "\n".join(out) + "\n"

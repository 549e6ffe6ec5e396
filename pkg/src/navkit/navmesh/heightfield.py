"""Voxelization of triangle meshes into span heightfields, plus walkability
filtering and region partitioning.

A heightfield column holds disjoint solid spans in integer cell units relative
to the field origin. The walkable surface of a span is its *top* (y_max); all
step/climb comparisons operate on span tops.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from ..errors import CapacityError, GeometryError
from ..geometry import TriMesh, Vec3, triangle_slope_deg
from .config import BuildConfig

# Neighbor order: west, north, east, south (x-, z+, x+, z-).
DIR_DX = (-1, 0, 1, 0)
DIR_DZ = (0, 1, 0, -1)


class Span:
    """Solid vertical interval [y_min, y_max) in cell units within one column."""

    __slots__ = ("y_min", "y_max", "walkable", "region")

    def __init__(self, y_min: int, y_max: int, walkable: bool):
        self.y_min = y_min
        self.y_max = y_max
        self.walkable = walkable
        self.region = 0

    @property
    def floor(self) -> int:
        return self.y_max

    def __repr__(self):
        return f"Span({self.y_min}, {self.y_max}, walkable={self.walkable}, region={self.region})"


@dataclass
class Heightfield:
    """Column-major grid of span lists. Spans stay sorted and disjoint."""

    origin: Vec3
    width: int
    depth: int
    cell_size: float
    cell_height: float
    columns: list = field(default_factory=list)
    region_count: int = 0

    def __post_init__(self):
        if not self.columns:
            self.columns = [[] for _ in range(self.width * self.depth)]

    def column(self, x: int, z: int) -> list:
        return self.columns[x + z * self.width]

    def in_bounds(self, x: int, z: int) -> bool:
        return 0 <= x < self.width and 0 <= z < self.depth

    def add_span(self, x: int, z: int, y_min: int, y_max: int, walkable: bool) -> None:
        """Insert a solid span, merging with overlapping or touching spans.

        On merge the walkable flag of the span with the higher top wins
        (ties combine with OR) so thin walkable decks survive being merged
        into supporting geometry.
        """
        col = self.column(x, z)
        new = Span(y_min, y_max, walkable)
        i = 0
        while i < len(col):
            cur = col[i]
            if cur.y_min > new.y_max:
                break
            if cur.y_max < new.y_min:
                i += 1
                continue
            # Overlap or touch: absorb and keep scanning.
            if cur.y_max > new.y_max:
                new.walkable = cur.walkable
            elif cur.y_max == new.y_max:
                new.walkable = new.walkable or cur.walkable
            new.y_min = min(new.y_min, cur.y_min)
            new.y_max = max(new.y_max, cur.y_max)
            col.pop(i)
        col.insert(i, new)

    def walkable_spans(self):
        """Yield (x, z, span) for every walkable span in deterministic scan order."""
        for z in range(self.depth):
            for x in range(self.width):
                for span in self.column(x, z):
                    if span.walkable:
                        yield x, z, span

    def connected_span(self, x: int, z: int, span: Span, direction: int, climb_cells: int):
        """Walkable span in the neighbor column reachable within the climb limit.

        Returns the neighbor span minimizing |floor difference| or None.
        """
        nx, nz = x + DIR_DX[direction], z + DIR_DZ[direction]
        if not self.in_bounds(nx, nz):
            return None
        best = None
        best_d = climb_cells + 1
        for ns in self.column(nx, nz):
            if not ns.walkable:
                continue
            d = abs(ns.floor - span.floor)
            if d <= climb_cells and d < best_d:
                best = ns
                best_d = d
        return best


def _clip_poly(verts: list, axis: int, sign: float, offset: float) -> list:
    """Sutherland-Hodgman clip of a polygon against sign*coord <= offset.

    Vertices are (x_cells, y_world, z_cells) triples; axis 0 clips x, 2 clips z.
    """
    out = []
    n = len(verts)
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        da = sign * a[axis] - offset
        db = sign * b[axis] - offset
        if da <= 0:
            out.append(a)
        if (da < 0 < db) or (db < 0 < da):
            t = da / (da - db)
            out.append(
                (
                    a[0] + (b[0] - a[0]) * t,
                    a[1] + (b[1] - a[1]) * t,
                    a[2] + (b[2] - a[2]) * t,
                )
            )
    return out


def voxelize(mesh: TriMesh, config: BuildConfig, max_cells: int = 64_000_000) -> Heightfield:
    """Conservatively rasterize every triangle into column spans.

    A span is marked walkable iff its source triangle slope is at most
    ``max_slope_deg``. Raises CapacityError when the xz grid would exceed
    ``max_cells`` columns.
    """
    if not mesh.triangles:
        raise GeometryError("cannot voxelize an empty mesh")
    bounds = mesh.bounds()
    cs, ch = config.cell_size, config.cell_height
    width = max(1, int(math.ceil((bounds.max.x - bounds.min.x) / cs - 1e-6)))
    depth = max(1, int(math.ceil((bounds.max.z - bounds.min.z) / cs - 1e-6)))
    if width * depth > max_cells:
        raise CapacityError(
            f"heightfield of {width}x{depth} columns exceeds the {max_cells} cell cap"
        )
    hf = Heightfield(bounds.min, width, depth, cs, ch)
    oy = bounds.min.y

    for ti in range(len(mesh.triangles)):
        a, b, c = mesh.triangle_points(ti)
        walkable = triangle_slope_deg(a, b, c) <= config.max_slope_deg + 1e-9
        # Cell-space xz, world y.
        tri = [
            ((p.x - bounds.min.x) / cs, p.y, (p.z - bounds.min.z) / cs) for p in (a, b, c)
        ]
        z0 = max(0, int(math.floor(min(p[2] for p in tri))))
        z1 = min(depth - 1, int(math.floor(max(p[2] for p in tri))))
        for z in range(z0, z1 + 1):
            row = _clip_poly(tri, 2, -1.0, -float(z))
            if len(row) < 3:
                continue
            row = _clip_poly(row, 2, 1.0, float(z + 1))
            if len(row) < 3:
                continue
            x0 = max(0, int(math.floor(min(p[0] for p in row))))
            x1 = min(width - 1, int(math.floor(max(p[0] for p in row))))
            for x in range(x0, x1 + 1):
                cell = _clip_poly(row, 0, -1.0, -float(x))
                if len(cell) < 3:
                    continue
                cell = _clip_poly(cell, 0, 1.0, float(x + 1))
                if len(cell) < 3:
                    continue
                y_lo = min(p[1] for p in cell)
                y_hi = max(p[1] for p in cell)
                smin = int(math.floor((y_lo - oy) / ch + 1e-9))
                smax = int(math.ceil((y_hi - oy) / ch - 1e-9))
                if smax <= smin:
                    smax = smin + 1
                hf.add_span(x, z, smin, smax, walkable)
    return hf


def filter_walkable(field: Heightfield, config: BuildConfig) -> Heightfield:
    """Strip walkability where the agent cannot stand.

    Two passes, mutating in place: ceiling clearance below walkable_height,
    then a Chebyshev-distance erosion of ``erosion_cells`` around any span
    boundary so agents of ``agent_radius`` keep their center on the mesh.
    """
    ch = field.cell_height
    for col in field.columns:
        for i, span in enumerate(col):
            if not span.walkable:
                continue
            if i + 1 < len(col):
                gap = col[i + 1].y_min - span.y_max
                if gap * ch < config.walkable_height - 1e-9:
                    span.walkable = False

    radius = config.erosion_cells
    if radius <= 0:
        return field
    climb = config.climb_cells
    spans = [(x, z, s) for x, z, s in field.walkable_spans()]
    dist = {}
    queue = deque()
    for x, z, s in spans:
        for d in range(4):
            if field.connected_span(x, z, s, d, climb) is None:
                dist[id(s)] = 0
                queue.append((x, z, s))
                break
    # Multi-source BFS over the 8-neighborhood; each hop is Chebyshev distance 1.
    diag = [(0, 1), (1, 2), (2, 3), (3, 0)]
    while queue:
        x, z, s = queue.popleft()
        d0 = dist[id(s)]
        neighbors = []
        for d in range(4):
            ns = field.connected_span(x, z, s, d, climb)
            if ns is not None:
                neighbors.append((x + DIR_DX[d], z + DIR_DZ[d], ns))
        for d1, d2 in diag:
            nx, nz = x + DIR_DX[d1] + DIR_DX[d2], z + DIR_DZ[d1] + DIR_DZ[d2]
            for first, second in ((d1, d2), (d2, d1)):
                n1 = field.connected_span(x, z, s, first, climb)
                if n1 is None:
                    continue
                ds = field.connected_span(
                    x + DIR_DX[first], z + DIR_DZ[first], n1, second, climb
                )
                if ds is not None:
                    neighbors.append((nx, nz, ds))
                    break
        for nx, nz, ns in neighbors:
            if id(ns) not in dist or dist[id(ns)] > d0 + 1:
                dist[id(ns)] = d0 + 1
                queue.append((nx, nz, ns))
    for x, z, s in spans:
        if dist.get(id(s), radius) < radius:
            s.walkable = False
    return field


def build_regions(field: Heightfield, config: BuildConfig) -> Heightfield:
    """Label walkable spans with 4-connected region ids (starting at 1).

    Connectivity respects the climb limit. A region never contains two spans
    of the same column, so overlapping floors (multi-level geometry) split
    into separate regions joined later through portals.
    """
    climb = config.climb_cells
    next_region = 1
    for sx, sz, seed in field.walkable_spans():
        if seed.region != 0:
            continue
        region = next_region
        next_region += 1
        seed.region = region
        occupied = {(sx, sz)}
        queue = deque([(sx, sz, seed)])
        while queue:
            x, z, s = queue.popleft()
            for d in range(4):
                ns = field.connected_span(x, z, s, d, climb)
                if ns is None or ns.region != 0:
                    continue
                nx, nz = x + DIR_DX[d], z + DIR_DZ[d]
                if (nx, nz) in occupied:
                    continue
                ns.region = region
                occupied.add((nx, nz))
                queue.append((nx, nz, ns))
    field.region_count = next_region - 1
    return field

"""Parametric desk-scale test mesh generators.

Every generator is deterministic for a fixed seed.  Jitter displaces interior
vertices only, by a fraction of the local edge length; displacements that
would invert an element are redrawn at half amplitude until the mesh is
valid.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .mesh import ElementType, Mesh, detect_boundary, validate

KINDS = (
    "jittered-square-tri",
    "disk-tri",
    "quad-grid-with-hole",
    "cube-tet",
    "cube-hex",
    "two-triangle-flip",
)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    resolution: int = 10
    jitter: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown generator kind {self.kind!r}")
        if not (0.0 <= self.jitter < 0.5):
            raise InvalidSpec("jitter must lie in [0, 0.5)")
        if self.kind != "two-triangle-flip" and self.resolution < 2:
            raise InvalidSpec("resolution must be >= 2")


def _apply_jitter(mesh, amplitude, rng, max_rounds=60):
    """Displace interior vertices, redrawing any displacement that produces
    an inverted element (halving the amplitude each round)."""
    if amplitude <= 0:
        return mesh
    interior = np.flatnonzero(~mesh.boundary_mask)
    if not len(interior):
        return mesh
    verts = mesh.vertices.copy()
    base = verts[interior].copy()
    scale = np.full(len(interior), amplitude)
    verts[interior] = base + rng.uniform(-1, 1, base.shape) * scale[:, None]
    current = mesh.with_vertices(verts)
    for _ in range(max_rounds):
        bad = validate(current)
        if not bad:
            return current
        bad_verts = np.unique(mesh.elements[bad])
        redraw = np.isin(interior, bad_verts)
        scale[redraw] *= 0.5
        verts[interior[redraw]] = (
            base[redraw]
            + rng.uniform(-1, 1, (redraw.sum(), verts.shape[1])) * scale[redraw, None]
        )
        current = mesh.with_vertices(verts)
    # Last resort: pin the stubborn vertices back to the unjittered grid.
    verts[interior[redraw]] = base[redraw]
    current = mesh.with_vertices(verts)
    return current if not validate(current) else mesh


def _square_tri(resolution):
    n = resolution
    xs = np.linspace(0.0, 1.0, n + 1)
    vx, vy = np.meshgrid(xs, xs, indexing="xy")
    verts = np.column_stack([vx.ravel(), vy.ravel()])

    def vid(i, j):
        return j * (n + 1) + i

    tris = []
    for j in range(n):
        for i in range(n):
            v00, v10 = vid(i, j), vid(i + 1, j)
            v01, v11 = vid(i, j + 1), vid(i + 1, j + 1)
            tris.append((v00, v10, v11))
            tris.append((v00, v11, v01))
    mesh = Mesh(verts, np.array(tris), ElementType.TRIANGLE)
    return mesh, detect_boundary(mesh)


def _disk_tri(resolution):
    rings = resolution
    m = 4 * resolution
    verts = [(0.0, 0.0)]
    for k in range(1, rings + 1):
        radius = k / rings
        ang = 2.0 * np.pi * np.arange(m) / m
        verts.extend(zip(radius * np.cos(ang), radius * np.sin(ang)))
    verts = np.array(verts)

    def vid(ring, j):
        return 1 + (ring - 1) * m + (j % m)

    tris = []
    for j in range(m):
        tris.append((0, vid(1, j), vid(1, j + 1)))
    for k in range(1, rings):
        for j in range(m):
            a0, a1 = vid(k, j), vid(k, j + 1)
            b0, b1 = vid(k + 1, j), vid(k + 1, j + 1)
            tris.append((a0, b0, b1))
            tris.append((a0, b1, a1))
    boundary = {vid(rings, j) for j in range(m)}
    return Mesh(verts, np.array(tris), ElementType.TRIANGLE), boundary


def _quad_grid_with_hole(resolution):
    n = resolution
    xs = np.linspace(0.0, 1.0, n + 1)
    vx, vy = np.meshgrid(xs, xs, indexing="xy")
    verts = np.column_stack([vx.ravel(), vy.ravel()])

    def vid(i, j):
        return j * (n + 1) + i

    quads = []
    hole_r = 0.25
    for j in range(n):
        for i in range(n):
            cx, cy = (i + 0.5) / n, (j + 0.5) / n
            if (cx - 0.5) ** 2 + (cy - 0.5) ** 2 < hole_r**2:
                continue
            quads.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)))
    quads = np.array(quads)
    used = np.unique(quads)
    remap = -np.ones(len(verts), dtype=np.int64)
    remap[used] = np.arange(len(used))
    mesh = Mesh(verts[used], remap[quads], ElementType.QUAD)
    return mesh, detect_boundary(mesh)


def _cube_grid(resolution):
    n = resolution
    xs = np.linspace(0.0, 1.0, n + 1)
    vx, vy, vz = np.meshgrid(xs, xs, xs, indexing="ij")
    verts = np.column_stack([vx.ravel(), vy.ravel(), vz.ravel()])

    def vid(i, j, k):
        return (i * (n + 1) + j) * (n + 1) + k

    return verts, vid, n


#: Kuhn subdivision of the unit cube into six positively oriented tetrahedra;
#: offsets are (di, dj, dk) corner displacements.
_KUHN_TETS = (
    ((0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)),
    ((0, 0, 0), (1, 1, 0), (0, 1, 0), (1, 1, 1)),
    ((0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 1, 1)),
    ((0, 0, 0), (0, 1, 1), (0, 0, 1), (1, 1, 1)),
    ((0, 0, 0), (0, 0, 1), (1, 0, 1), (1, 1, 1)),
    ((0, 0, 0), (1, 0, 1), (1, 0, 0), (1, 1, 1)),
)


def _cube_tet(resolution):
    verts, vid, n = _cube_grid(resolution)
    tets = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for tet in _KUHN_TETS:
                    tets.append(tuple(
                        vid(i + di, j + dj, k + dk) for di, dj, dk in tet
                    ))
    mesh = Mesh(verts, np.array(tets), ElementType.TET)
    return mesh, detect_boundary(mesh)


def _cube_hex(resolution):
    verts, vid, n = _cube_grid(resolution)
    hexes = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                bottom = [vid(i, j, k), vid(i + 1, j, k),
                          vid(i + 1, j + 1, k), vid(i, j + 1, k)]
                top = [vid(i, j, k + 1), vid(i + 1, j, k + 1),
                       vid(i + 1, j + 1, k + 1), vid(i, j + 1, k + 1)]
                hexes.append(bottom + top)
    mesh = Mesh(verts, np.array(hexes), ElementType.HEX)
    return mesh, detect_boundary(mesh)


#: Two thin triangles sharing an edge; one unguarded smoothing step reverses
#: the orientation of exactly one of them.
FLIP_VERTICES = np.array([
    (0.73, -0.5),
    (-0.64, 0.3),
    (-0.24, 0.07),
    (0.5, -0.06),
])
FLIP_TRIANGLES = np.array([(0, 2, 1), (1, 2, 3)])


def generate(spec):
    """Build the mesh described by a GeneratorSpec."""
    if spec.kind == "two-triangle-flip":
        return Mesh(FLIP_VERTICES, FLIP_TRIANGLES, ElementType.TRIANGLE,
                    boundary_vertices=())

    builders = {
        "jittered-square-tri": _square_tri,
        "disk-tri": _disk_tri,
        "quad-grid-with-hole": _quad_grid_with_hole,
        "cube-tet": _cube_tet,
        "cube-hex": _cube_hex,
    }
    mesh, boundary = builders[spec.kind](spec.resolution)
    mesh = Mesh(mesh.vertices, mesh.elements, mesh.element_type, boundary)
    rng = np.random.default_rng(spec.seed)
    edge = 1.0 / spec.resolution
    return _apply_jitter(mesh, spec.jitter * edge, rng)

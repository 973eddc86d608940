"""Mesh data model: vertices, homogeneous connectivity, adjacency, boundary
detection and validity reporting."""

import enum

import numpy as np

from .errors import InvalidMesh, InvalidTopology
from .geometry import (
    EPS_DEGENERATE,
    HEX_CORNER_TETS,
    HEX_FACES,
    signed_areas_2d,
    triangle_normals,
)


class ElementType(enum.Enum):
    TRIANGLE = "triangle"
    QUAD = "quad"
    TET = "tet"
    HEX = "hex"


NODES_PER_ELEMENT = {
    ElementType.TRIANGLE: 3,
    ElementType.QUAD: 4,
    ElementType.TET: 4,
    ElementType.HEX: 8,
}

#: Edges of each element type (index pairs), used for boundary detection on
#: 2D meshes and for Laplace neighborhoods.
ELEMENT_EDGES = {
    ElementType.TRIANGLE: ((0, 1), (1, 2), (2, 0)),
    ElementType.QUAD: ((0, 1), (1, 2), (2, 3), (3, 0)),
    ElementType.TET: ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
    ElementType.HEX: (
        (0, 1), (1, 2), (2, 3), (3, 0),
        (4, 5), (5, 6), (6, 7), (7, 4),
        (0, 4), (1, 5), (2, 6), (3, 7),
    ),
}

#: Faces of the volume element types; boundary facets for 3D meshes.
ELEMENT_FACES = {
    ElementType.TET: ((0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)),
    ElementType.HEX: tuple(map(tuple, HEX_FACES)),
}


class Mesh:
    """Immutable mesh snapshot: vertex coordinates, one element type, and a
    set of boundary vertices that smoothers keep fixed."""

    def __init__(self, vertices, elements, element_type, boundary_vertices=None):
        self.vertices = np.array(vertices, dtype=float, order="C")
        self.elements = np.array(elements, dtype=np.int64, order="C")
        if isinstance(element_type, str):
            element_type = ElementType(element_type)
        self.element_type = element_type

        if self.vertices.ndim != 2 or self.vertices.shape[1] not in (2, 3):
            raise InvalidMesh("vertices must be an (N, 2) or (N, 3) array")
        if not np.all(np.isfinite(self.vertices)):
            raise InvalidMesh("vertex coordinates must be finite")
        k = NODES_PER_ELEMENT[element_type]
        if self.elements.ndim != 2 or self.elements.shape[1] != k:
            raise InvalidMesh(
                f"{element_type.value} elements need {k} vertex indices each"
            )
        if self.elements.size:
            if self.elements.min() < 0 or self.elements.max() >= len(self.vertices):
                raise InvalidMesh("element index out of range")
            sorted_elems = np.sort(self.elements, axis=1)
            if np.any(sorted_elems[:, 1:] == sorted_elems[:, :-1]):
                raise InvalidMesh("element repeats a vertex index")
        if element_type in (ElementType.TET, ElementType.HEX) and self.dimension != 3:
            raise InvalidMesh(f"{element_type.value} meshes must be 3D")
        if element_type is ElementType.QUAD and self.dimension != 2:
            raise InvalidMesh("quad meshes must be 2D")

        mask = np.zeros(len(self.vertices), dtype=bool)
        if boundary_vertices is not None:
            idx = np.asarray(sorted(boundary_vertices), dtype=np.int64)
            if idx.size and (idx.min() < 0 or idx.max() >= len(self.vertices)):
                raise InvalidMesh("boundary vertex index out of range")
            mask[idx] = True
        self.boundary_mask = mask
        self.vertices.setflags(write=False)
        self.elements.setflags(write=False)
        self.boundary_mask.setflags(write=False)

    @property
    def dimension(self):
        return self.vertices.shape[1]

    @property
    def boundary_vertices(self):
        return set(np.flatnonzero(self.boundary_mask).tolist())

    def with_vertices(self, vertices):
        """Copy with new vertex positions, identical connectivity and flags."""
        return Mesh(
            vertices, self.elements, self.element_type,
            np.flatnonzero(self.boundary_mask),
        )

    def element_points(self):
        """Vertex coordinates per element, shape (n, k, dim)."""
        return self.vertices[self.elements]

    def __eq__(self, other):
        if not isinstance(other, Mesh):
            return NotImplemented
        return (
            self.element_type is other.element_type
            and self.vertices.shape == other.vertices.shape
            and np.array_equal(self.vertices, other.vertices)
            and np.array_equal(self.elements, other.elements)
            and np.array_equal(self.boundary_mask, other.boundary_mask)
        )


def build_adjacency(mesh):
    """Per-vertex arrays of incident element indices, duplicate-free."""
    n_verts = len(mesh.vertices)
    flat = mesh.elements.ravel()
    elem_ids = np.repeat(np.arange(len(mesh.elements)), mesh.elements.shape[1])
    order = np.argsort(flat, kind="stable")
    counts = np.bincount(flat, minlength=n_verts)
    splits = np.cumsum(counts)[:-1]
    return [np.sort(part) for part in np.split(elem_ids[order], splits)]


def _boundary_facets(mesh):
    if mesh.element_type in ELEMENT_FACES and mesh.dimension == 3:
        local = ELEMENT_FACES[mesh.element_type]
    else:
        local = ELEMENT_EDGES[mesh.element_type]
    facets = np.concatenate([mesh.elements[:, list(f)] for f in local])
    return facets


def detect_boundary(mesh):
    """Vertices on facets (edges in 2D, faces in 3D) owned by exactly one
    element.  Raises InvalidTopology if a facet is shared by more than two."""
    if not len(mesh.elements):
        return set()
    facets = _boundary_facets(mesh)
    keys = np.sort(facets, axis=1)
    uniq, inverse, counts = np.unique(
        keys, axis=0, return_inverse=True, return_counts=True
    )
    if np.any(counts > 2):
        bad = int(np.flatnonzero(counts > 2)[0])
        raise InvalidTopology(
            f"facet {tuple(uniq[bad].tolist())} is shared by {counts[bad]} elements"
        )
    boundary = uniq[counts == 1]
    return set(np.unique(boundary).tolist())


def _element_scales(points):
    """Characteristic length per element: the largest coordinate span."""
    return np.ptp(points, axis=1).max(axis=-1)


def element_signed_measures(points, element_type, reference_normals=None):
    """Signed size of each element, positive for valid orientation.

    Triangles: twice the signed area (2D) or the dot product of the normal
    with a per-element reference normal (3D).  Quads: the signed polygon area.
    Tets: the signed volume determinant.  Hexes: the smallest of the eight
    corner-tetrahedron determinants.
    """
    points = np.asarray(points, dtype=float)
    if element_type is ElementType.TRIANGLE:
        if points.shape[-1] == 2:
            return 2.0 * signed_areas_2d(points)
        if reference_normals is None:
            raise InvalidMesh("3D triangle orientation needs reference normals")
        return np.einsum("...i,...i->...", triangle_normals(points),
                         np.asarray(reference_normals, dtype=float))
    if element_type is ElementType.QUAD:
        x, y = points[..., 0], points[..., 1]
        xn, yn = np.roll(x, -1, axis=-1), np.roll(y, -1, axis=-1)
        return 0.5 * np.sum(x * yn - xn * y, axis=-1)
    if element_type is ElementType.TET:
        d = points[..., 1:, :] - points[..., :1, :]
        return np.linalg.det(d)
    if element_type is ElementType.HEX:
        return hex_corner_dets(points).min(axis=-1)
    raise InvalidMesh(f"unsupported element type {element_type}")


def hex_corner_dets(points):
    """Determinants of the eight corner tetrahedra of each hexahedron."""
    points = np.asarray(points, dtype=float)
    tets = points[..., HEX_CORNER_TETS, :]
    d = tets[..., 1:, :] - tets[..., :1, :]
    return np.linalg.det(d)


def validate(mesh, reference_orientation=None, reference_normals=None):
    """Indices of inverted or (near-)degenerate elements.

    `reference_orientation` is a per-element sign array (+1 by default);
    `reference_normals` supplies the comparison normals for 3D triangle
    meshes.  Reporting only; never raises for bad elements.
    """
    n = len(mesh.elements)
    if n == 0:
        return []
    points = mesh.element_points()
    measures = element_signed_measures(points, mesh.element_type, reference_normals)
    if reference_orientation is None:
        signs = np.ones(n)
    else:
        signs = np.asarray(reference_orientation, dtype=float)
    scale = _element_scales(points)
    power = {"triangle": 2, "quad": 2, "tet": 3, "hex": 3}[mesh.element_type.value]
    threshold = EPS_DEGENERATE * scale**power
    bad = measures * signs <= threshold
    return np.flatnonzero(bad).tolist()

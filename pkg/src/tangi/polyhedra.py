"""Cube and cuboctahedron models, sphere-to-face assignment, and 2D unfolding.

Both solids are centered on the origin with their square faces on the planes
x,y,z = +/-1, so "model units" put every square face at distance 1 from the
center. Face ordering is part of the stable contract:

  cube:          0..5  = +X, -X, +Y, -Y, +Z, -Z
  cuboctahedron: 0..5  = the same six squares,
                 6..13 = triangles by octant sign (sx,sy,sz) in the order
                         (+++), (++-), (+-+), (+--), (-++), (-+-), (--+), (---)

Face vertex rings are counterclockwise seen from outside, starting at the
lowest vertex index. A net unfolds the faces into the plane along a spanning
tree of the face-adjacency graph; glue tabs are 45-degree-shouldered
trapezoids on one side of each cut-edge pair.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .raster import FacePlaneSpec

SHAPES = ("cube", "cuboctahedron")


@dataclass(frozen=True)
class Edge:
    """Undirected model edge (v0 < v1) with its two incident faces."""

    v0: int
    v1: int
    faces: tuple[int, int]

    @property
    def key(self) -> tuple[int, int]:
        return (self.v0, self.v1)


@dataclass(frozen=True)
class FaceFrame:
    """Planar frame of one face: centroid, outward normal, plane offset, and an
    in-plane basis with e1 along the ring's first edge."""

    centroid: np.ndarray
    normal: np.ndarray
    h: float
    e1: np.ndarray
    e2: np.ndarray
    polygon2d: np.ndarray  # ring vertices in (e1, e2) coords, centroid origin


@dataclass(frozen=True)
class PolyhedronModel:
    name: str
    vertices: np.ndarray  # (V, 3)
    faces: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]
    face_frames: tuple[FaceFrame, ...]

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def face_plane_spec(self, face: int, px_per_unit: float) -> FacePlaneSpec:
        fr = self.face_frames[face]
        return FacePlaneSpec(fr.centroid, fr.e1, fr.e2, fr.polygon2d, px_per_unit)

    def adjacency(self) -> dict[tuple[int, int], Edge]:
        """Face-pair -> shared edge, both orders."""
        out = {}
        for e in self.edges:
            f0, f1 = e.faces
            out[(f0, f1)] = e
            out[(f1, f0)] = e
        return out


def _ring_ccw(vertices: np.ndarray, idxs: list[int], normal: np.ndarray) -> tuple[int, ...]:
    """Order vertex indices counterclockwise about the outward normal, starting
    at the smallest index."""
    centroid = vertices[idxs].mean(axis=0)
    b1 = vertices[idxs[0]] - centroid
    b1 /= np.linalg.norm(b1)
    b2 = np.cross(normal, b1)
    ang = [
        math.atan2(float((vertices[i] - centroid) @ b2), float((vertices[i] - centroid) @ b1))
        for i in idxs
    ]
    ring = [i for _, i in sorted(zip(ang, idxs))]
    start = ring.index(min(ring))
    return tuple(ring[start:] + ring[:start])


def _build_model(name: str, vertices: np.ndarray, face_vertex_sets: list[list[int]]) -> PolyhedronModel:
    faces = []
    frames = []
    for idxs in face_vertex_sets:
        centroid = vertices[idxs].mean(axis=0)
        normal = centroid / np.linalg.norm(centroid)
        ring = _ring_ccw(vertices, idxs, normal)
        faces.append(ring)
        h = float(centroid @ normal)
        if h <= 0:
            raise AssertionError("face normal does not point outward")
        for i in ring:
            if abs(float((vertices[i] - centroid) @ normal)) > 1e-9:
                raise AssertionError("face vertices not coplanar")
        e1 = vertices[ring[1]] - vertices[ring[0]]
        e1 = e1 / np.linalg.norm(e1)
        e2 = np.cross(normal, e1)
        poly = np.array([[(vertices[i] - centroid) @ e1, (vertices[i] - centroid) @ e2] for i in ring])
        frames.append(FaceFrame(centroid, normal, h, e1, e2, poly))

    edge_faces: dict[tuple[int, int], list[int]] = {}
    for fi, ring in enumerate(faces):
        for a, b in zip(ring, ring[1:] + ring[:1]):
            edge_faces.setdefault((min(a, b), max(a, b)), []).append(fi)
    edges = []
    for (a, b), fs in sorted(edge_faces.items()):
        if len(fs) != 2:
            raise AssertionError(f"edge ({a},{b}) shared by {len(fs)} faces")
        edges.append(Edge(a, b, (min(fs), max(fs))))
    if len(vertices) - len(edges) + len(faces) != 2:
        raise AssertionError("Euler characteristic != 2")
    return PolyhedronModel(name, vertices, tuple(faces), tuple(edges), tuple(frames))


def make_cube() -> PolyhedronModel:
    verts = np.array(list(itertools.product((-1.0, 1.0), repeat=3)))
    face_sets = []
    for axis in range(3):
        for sign in (1.0, -1.0):
            face_sets.append([i for i, v in enumerate(verts) if v[axis] == sign])
    return _build_model("cube", verts, face_sets)


def make_cuboctahedron() -> PolyhedronModel:
    verts = np.array(sorted({p for t in itertools.permutations((-1.0, 1.0, 0.0)) for p in [t]}
                            | {p for t in itertools.permutations((-1.0, -1.0, 0.0)) for p in [t]}
                            | {p for t in itertools.permutations((1.0, 1.0, 0.0)) for p in [t]}))
    face_sets = []
    for axis in range(3):
        for sign in (1.0, -1.0):
            face_sets.append([i for i, v in enumerate(verts) if v[axis] == sign])
    for sx, sy, sz in itertools.product((1.0, -1.0), repeat=3):
        face_sets.append(
            [
                i
                for i, v in enumerate(verts)
                if (v[0] * sx > 0 or v[0] == 0)
                and (v[1] * sy > 0 or v[1] == 0)
                and (v[2] * sz > 0 or v[2] == 0)
            ]
        )
    return _build_model("cuboctahedron", verts, face_sets)


def get_model(shape: str) -> PolyhedronModel:
    if shape == "cube":
        return make_cube()
    if shape == "cuboctahedron":
        return make_cuboctahedron()
    raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")


def face_for_direction(model: PolyhedronModel, d: np.ndarray) -> int:
    """Face whose plane the ray from the center along d pierces first; ties
    within 1e-12 go to the lowest face index."""
    scores = face_scores(model, np.asarray(d, dtype=float)[None, :])[0]
    return int(np.argmax(scores >= scores.max() - 1e-12))


def face_scores(model: PolyhedronModel, dirs: np.ndarray) -> np.ndarray:
    """(N, F) array of d.n/h; the argmax per row is the pierced face."""
    normals = np.stack([fr.normal for fr in model.face_frames])
    hs = np.array([fr.h for fr in model.face_frames])
    return (dirs @ normals.T) / hs


def faces_for_directions(model: PolyhedronModel, dirs: np.ndarray) -> np.ndarray:
    scores = face_scores(model, dirs)
    return np.argmax(scores >= scores.max(axis=1, keepdims=True) - 1e-12, axis=1)


def face_distortion(model: PolyhedronModel, face: int) -> float:
    """Worst gnomonic radial scale on the face: max over its vertices of
    sec^2 of the angle to the face normal."""
    fr = model.face_frames[face]
    worst = 0.0
    for i in model.faces[face]:
        v = model.vertices[i]
        cos = float(fr.normal @ (v / np.linalg.norm(v)))
        worst = max(worst, 1.0 / (cos * cos))
    return worst


# --- unfolding ---------------------------------------------------------------


@dataclass(frozen=True)
class TabStyle:
    """Glue-tab trapezoid: height as a fraction of its edge, 45-degree
    shoulders, optionally capped (in mm, applied at print scale)."""

    height_frac: float = 0.3
    cap_mm: float = 8.0

    def __post_init__(self):
        if not 0 < self.height_frac <= 0.5:
            raise ValueError("tab height fraction must be in (0, 0.5]")


@dataclass(frozen=True)
class FoldEdge:
    p0: np.ndarray
    p1: np.ndarray
    edge: tuple[int, int]


@dataclass(frozen=True)
class CutEdge:
    p0: np.ndarray
    p1: np.ndarray
    edge: tuple[int, int]
    face: int


@dataclass(frozen=True)
class Tab:
    polygon: np.ndarray  # (4, 2): base0, base1, top1, top0
    edge: tuple[int, int]
    face: int

    @property
    def base(self) -> tuple[np.ndarray, np.ndarray]:
        return self.polygon[0], self.polygon[1]


@dataclass(frozen=True)
class NetLayout:
    model_name: str
    placed_faces: tuple[np.ndarray, ...]  # per face, ring vertices in net coords
    transforms: tuple[tuple[np.ndarray, np.ndarray], ...]  # per face (R 2x2, t 2)
    vertex_pos: tuple[dict, ...]  # per face, vertex index -> placed 2D point
    spanning_tree: tuple[tuple[int, int, tuple[int, int]], ...]
    fold_edges: tuple[FoldEdge, ...]
    cut_edges: tuple[CutEdge, ...]
    tabs: tuple[Tab, ...]

    def bounds(self, include_tabs: bool = True) -> tuple[np.ndarray, np.ndarray]:
        pts = [p for poly in self.placed_faces for p in poly]
        if include_tabs:
            pts += [p for tab in self.tabs for p in tab.polygon]
        arr = np.array(pts)
        return arr.min(axis=0), arr.max(axis=0)


class NetOverlapError(ValueError):
    def __init__(self, f0: int, f1: int):
        super().__init__(f"unfolded faces {f0} and {f1} overlap")
        self.faces = (f0, f1)


def _clip_convex(subject: np.ndarray, clip: np.ndarray) -> np.ndarray:
    """Sutherland-Hodgman: subject polygon clipped to a counterclockwise convex
    polygon. Returns the (possibly empty) clipped ring."""
    out = list(subject)
    for i in range(len(clip)):
        a, b = clip[i], clip[(i + 1) % len(clip)]
        ex, ey = b[0] - a[0], b[1] - a[1]
        if not out:
            return np.empty((0, 2))
        inp, out = out, []
        prev = inp[-1]
        prev_in = ex * (prev[1] - a[1]) - ey * (prev[0] - a[0]) >= 0
        for cur in inp:
            cur_in = ex * (cur[1] - a[1]) - ey * (cur[0] - a[0]) >= 0
            if cur_in != prev_in:
                dp = ex * (prev[1] - a[1]) - ey * (prev[0] - a[0])
                dc = ex * (cur[1] - a[1]) - ey * (cur[0] - a[0])
                t = dp / (dp - dc)
                out.append(prev + t * (cur - prev))
            if cur_in:
                out.append(cur)
            prev, prev_in = cur, cur_in
    return np.array(out) if out else np.empty((0, 2))


def _poly_area(poly: np.ndarray) -> float:
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))


def intersection_area(subject: np.ndarray, clip_ccw: np.ndarray) -> float:
    return _poly_area(_clip_convex(subject, clip_ccw))


def _tree_root_and_children(model: PolyhedronModel, tree) -> tuple[int, list[tuple[int, int]]]:
    pairs = [(int(p), int(c)) for p, c in tree]
    if len(pairs) != model.num_faces - 1:
        raise ValueError("spanning tree must have F-1 edges")
    children = [c for _, c in pairs]
    if len(set(children)) != len(children):
        raise ValueError("spanning tree places a face twice")
    roots = set(range(model.num_faces)) - set(children)
    if len(roots) != 1:
        raise ValueError("spanning tree does not cover every face exactly once")
    return roots.pop(), pairs


def unfold(
    model: PolyhedronModel,
    tree=None,
    tab_style: TabStyle = TabStyle(),
    tab_cap_units: float | None = None,
    check_overlap: bool = True,
) -> NetLayout:
    """Flatten the faces into the plane along a spanning tree.

    Each child face is placed by the orientation-preserving isometry that lays
    its template onto the parent's placed copy of their shared edge; shared
    vertices are snapped to the parent's exact coordinates so folds coincide
    bitwise. Raises NetOverlapError when placed faces overlap (unless
    check_overlap is off, for building deliberately bad nets in tests).
    """
    if tree is None:
        tree = default_spanning_tree(model.name)
    root, pairs = _tree_root_and_children(model, tree)
    adj = model.adjacency()
    for p, c in pairs:
        if (p, c) not in adj:
            raise ValueError(f"tree edge ({p},{c}) is not a face adjacency")

    placed: dict[int, dict[int, np.ndarray]] = {}
    transforms: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def template(face: int) -> dict[int, np.ndarray]:
        ring = model.faces[face]
        poly = model.face_frames[face].polygon2d
        return {v: poly[i] for i, v in enumerate(ring)}

    placed[root] = template(root)
    transforms[root] = (np.eye(2), np.zeros(2))

    remaining = list(pairs)
    tree_order: list[tuple[int, int, tuple[int, int]]] = []
    while remaining:
        progressed = False
        for p, c in list(remaining):
            if p not in placed:
                continue
            remaining.remove((p, c))
            progressed = True
            edge = adj[(p, c)]
            tree_order.append((p, c, edge.key))
            tmpl = template(c)
            # ring direction differs between the two faces; matching the 3D
            # vertex ids keeps the child on the far side of the fold
            pa, pb = placed[p][edge.v0], placed[p][edge.v1]
            ca, cb = tmpl[edge.v0], tmpl[edge.v1]
            ang = math.atan2(pb[1] - pa[1], pb[0] - pa[0]) - math.atan2(cb[1] - ca[1], cb[0] - ca[0])
            rot = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
            trans = pa - rot @ ca
            pos = {v: rot @ q + trans for v, q in tmpl.items()}
            pos[edge.v0] = pa.copy()
            pos[edge.v1] = pb.copy()
            placed[c] = pos
            transforms[c] = (rot, trans)
        if not progressed:
            raise ValueError("spanning tree is not connected to the root")

    placed_faces = tuple(
        np.array([placed[f][v] for v in model.faces[f]]) for f in range(model.num_faces)
    )

    fold_edges = tuple(
        FoldEdge(placed[p][e0], placed[p][e1], (e0, e1)) for p, c, (e0, e1) in tree_order
    )
    tree_keys = {key for _, _, key in tree_order}

    cut_edges = []
    tabs = []
    cap = math.inf if tab_cap_units is None else tab_cap_units
    for edge in model.edges:
        if edge.key in tree_keys:
            continue
        for face in edge.faces:
            cut_edges.append(CutEdge(placed[face][edge.v0], placed[face][edge.v1], edge.key, face))
        face = edge.faces[0]  # tab goes on the smaller face index
        q0, q1 = placed[face][edge.v0], placed[face][edge.v1]
        # stick outward: for a counterclockwise face ring the outward normal of
        # a boundary edge is to the right of the ring direction
        ring = model.faces[face]
        i0 = ring.index(edge.v0)
        if ring[(i0 + 1) % len(ring)] != edge.v1:  # ring traverses v1 -> v0
            q0, q1 = q1, q0
        d = q1 - q0
        elen = float(np.linalg.norm(d))
        d = d / elen
        n = np.array([d[1], -d[0]])
        h = min(tab_style.height_frac * elen, cap)
        tabs.append(
            Tab(
                np.array([q0, q1, q1 + h * n - h * d, q0 + h * n + h * d]),
                edge.key,
                face,
            )
        )

    net = NetLayout(
        model.name,
        placed_faces,
        tuple(transforms[f] for f in range(model.num_faces)),
        tuple(placed[f] for f in range(model.num_faces)),
        tuple(tree_order),
        fold_edges,
        tuple(cut_edges),
        tuple(tabs),
    )
    if check_overlap:
        areas = [_poly_area(p) for p in net.placed_faces]
        tol = 1e-12 * min(areas)
        for i in range(model.num_faces):
            for j in range(i + 1, model.num_faces):
                if intersection_area(net.placed_faces[i], net.placed_faces[j]) > tol:
                    raise NetOverlapError(i, j)
    return net


@dataclass
class NetReport:
    isometry_ok: bool = True
    fold_ok: bool = True
    overlap_ok: bool = True
    tab_ok: bool = True
    messages: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.isometry_ok and self.fold_ok and self.overlap_ok and self.tab_ok


def validate_net(net: NetLayout, model: PolyhedronModel) -> NetReport:
    """Check isometry, fold coincidence, face non-overlap, and tab clearance."""
    rep = NetReport()
    for f, ring in enumerate(model.faces):
        poly = net.placed_faces[f]
        for i in range(len(ring)):
            a3 = model.vertices[ring[i]]
            b3 = model.vertices[ring[(i + 1) % len(ring)]]
            len3 = float(np.linalg.norm(b3 - a3))
            len2 = float(np.linalg.norm(poly[(i + 1) % len(poly)] - poly[i]))
            if abs(len2 - len3) > 1e-9 * len3:
                rep.isometry_ok = False
                rep.messages.append(f"face {f}: edge length {len2} != {len3}")

    for p, c, (v0, v1) in net.spanning_tree:
        for v in (v0, v1):
            if not np.array_equal(net.vertex_pos[p][v], net.vertex_pos[c][v]):
                rep.fold_ok = False
                rep.messages.append(f"fold ({p},{c}): vertex {v} does not coincide")

    areas = [_poly_area(p) for p in net.placed_faces]
    tol = 1e-12 * min(areas)
    n = len(net.placed_faces)
    for i in range(n):
        for j in range(i + 1, n):
            a = intersection_area(net.placed_faces[i], net.placed_faces[j])
            if a > tol:
                rep.overlap_ok = False
                rep.messages.append(f"faces {i} and {j} overlap (area {a})")

    for tab in net.tabs:
        for f in range(n):
            a = intersection_area(tab.polygon, net.placed_faces[f])
            if a > tol:
                rep.tab_ok = False
                rep.messages.append(f"tab on edge {tab.edge} overlaps face {f} (area {a})")
    return rep


# Default spanning trees. The cube net is the familiar cross; the
# cuboctahedron tree runs a square-triangle band around the solid and hangs
# the remaining faces off it (validated by validate_net in the test suite).
_CUBE_TREE = ((5, 0), (5, 2), (5, 1), (5, 3), (0, 4))
_CUBOCTA_TREE = (
    (0, 8), (8, 4), (4, 12), (12, 1), (1, 13), (13, 5), (5, 9),
    (8, 3), (0, 6), (6, 2), (4, 10), (1, 11), (5, 7),
)


def default_spanning_tree(shape: str):
    if shape == "cube":
        return _CUBE_TREE
    if shape == "cuboctahedron":
        return _CUBOCTA_TREE
    raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")

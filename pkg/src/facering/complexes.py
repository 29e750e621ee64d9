"""Abstract simplicial complexes stored by their inclusion-maximal faces.

Vertices are dense integers ``0..n-1``; human-readable labels live in a side
table (see :mod:`facering.serialize`).  Complexes are immutable: every
operation returns a fresh complex and never touches its input, so concurrent
readers are safe.

Conventions for the two degenerate complexes: the *void* complex has no faces
at all (``facets == frozenset()``); the *irrelevant* complex has the empty
face as its only facet.  ``dim`` is ``-1`` for the irrelevant complex and
``-2`` for the void one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    FaceNotInComplex,
    NotDisklike,
    NotPure2Dimensional,
    VertexClash,
)

Face = tuple  # strictly increasing tuple of vertex ids; () is the empty face


def as_face(vertices) -> Face:
    """Normalize an iterable of vertex ids into a Face, rejecting duplicates."""
    f = tuple(sorted(vertices))
    for a, b in zip(f, f[1:]):
        if a == b:
            raise ValueError(f"duplicate vertex {a} in face {f}")
    return f


def _is_antichain_violation(f, g):
    return set(f) <= set(g)


class SimplicialComplex:
    """A complex on groundset ``{0..n-1}`` stored by its maximal faces."""

    __slots__ = ("n", "facets", "_face_set", "_faces_by_dim")

    def __init__(self, n: int, facets, _skip_checks: bool = False):
        facets = frozenset(as_face(f) for f in facets)
        if not _skip_checks:
            for f in facets:
                if f and (f[0] < 0 or f[-1] >= n):
                    raise ValueError(f"facet {f} has a vertex outside 0..{n - 1}")
            for f in facets:
                for g in facets:
                    if f != g and _is_antichain_violation(f, g):
                        raise ValueError(f"facet {f} is contained in facet {g}")
        self.n = n
        self.facets = facets
        self._face_set = None
        self._faces_by_dim = None

    @classmethod
    def from_faces(cls, n: int, faces) -> "SimplicialComplex":
        """Build from an arbitrary family of faces, keeping only maximal ones."""
        faces = [as_face(f) for f in faces]
        maximal = [
            f
            for f in faces
            if not any(f != g and set(f) < set(g) for g in faces)
        ]
        return cls(n, maximal)

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self) -> int:
        if not self.facets:
            return -2
        return max(len(f) for f in self.facets) - 1

    def is_void(self) -> bool:
        return not self.facets

    def vertices(self) -> tuple:
        return tuple(sorted(set(itertools.chain.from_iterable(self.facets))))

    @property
    def face_set(self) -> frozenset:
        """All faces of the complex, the empty face included (lazy)."""
        if self._face_set is None:
            out = set()
            for f in self.facets:
                for k in range(len(f) + 1):
                    out.update(itertools.combinations(f, k))
            self._face_set = frozenset(out)
        return self._face_set

    def contains(self, face) -> bool:
        return as_face(face) in self.face_set

    def faces(self, k: int) -> list:
        """All k-faces in lexicographic order; ``k == -1`` yields the empty face."""
        if self._faces_by_dim is None:
            by_dim = {}
            for f in self.face_set:
                by_dim.setdefault(len(f) - 1, set()).add(f)
            self._faces_by_dim = {d: sorted(fs) for d, fs in by_dim.items()}
        if k < -1:
            raise ValueError(f"face dimension {k} < -1")
        return list(self._faces_by_dim.get(k, []))

    def f_vector(self) -> tuple:
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(self.faces(k)) for k in range(self.dim + 1))

    # -- subcomplex operations --------------------------------------------

    def star(self, face) -> "SimplicialComplex":
        """Faces whose union with ``face`` is still a face."""
        f = as_face(face)
        if f not in self.face_set:
            raise FaceNotInComplex(f"{f} is not a face")
        fs = set(f)
        return SimplicialComplex(
            self.n, [g for g in self.facets if fs <= set(g)], _skip_checks=True
        )

    def link(self, face) -> "SimplicialComplex":
        """``{t - face : face <= t in self}``.  Vertex ids are preserved."""
        f = as_face(face)
        if f not in self.face_set:
            raise FaceNotInComplex(f"{f} is not a face")
        fs = set(f)
        return SimplicialComplex(
            self.n,
            [tuple(v for v in g if v not in fs) for g in self.facets if fs <= set(g)],
            _skip_checks=True,
        )

    def deletion(self, face) -> "SimplicialComplex":
        """The maximal subcomplex containing no face that includes ``face``.

        Deleting an absent face returns the complex unchanged; deleting the
        empty face returns the void complex.
        """
        f = as_face(face)
        fs = set(f)
        keep = []
        for g in self.facets:
            if not fs <= set(g):
                keep.append(g)
            else:
                # maximal subfaces of g avoiding f: drop one vertex of f each
                for x in f:
                    keep.append(tuple(v for v in g if v != x))
        return SimplicialComplex.from_faces(self.n, keep)

    def delete_vertices(self, vertices) -> "SimplicialComplex":
        out = self
        for v in sorted(set(vertices)):
            out = out.deletion((v,))
        return out

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(f in other.face_set for f in self.facets)

    def connected(self) -> bool:
        verts = self.vertices()
        if not verts:
            return True
        comp = {verts[0]}
        frontier = [verts[0]]
        adjacency = {v: set() for v in verts}
        for g in self.facets:
            for a, b in itertools.combinations(g, 2):
                adjacency[a].add(b)
                adjacency[b].add(a)
        while frontier:
            v = frontier.pop()
            for w in adjacency[v]:
                if w not in comp:
                    comp.add(w)
                    frontier.append(w)
        return len(comp) == len(verts)

    # -- dunder conveniences ----------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.n == other.n
            and self.facets == other.facets
        )

    def __hash__(self):
        return hash((self.n, self.facets))

    def __repr__(self):
        return f"SimplicialComplex(n={self.n}, facets={sorted(self.facets)})"


# -- surface recognition ----------------------------------------------------

SPHERE2 = "sphere2"
DISK2 = "disk2"
EMPTY = "empty"
OTHER = "other"


@dataclass(frozen=True)
class SurfaceClass:
    tag: str
    boundary_cycle: tuple | None = None


def _edge_triangle_counts(c: SimplicialComplex) -> dict:
    counts = {e: 0 for e in c.faces(1)} if c.dim >= 1 else {}
    if c.dim >= 2:
        for t in c.faces(2):
            for e in itertools.combinations(t, 2):
                counts[e] += 1
    return counts


def _link_graph(c: SimplicialComplex, v: int):
    """Neighbors of v and the edges among them coming from triangles at v."""
    nbrs = set()
    edges = set()
    for t in c.faces(2):
        if v in t:
            a, b = (x for x in t if x != v)
            nbrs.update((a, b))
            edges.add((min(a, b), max(a, b)))
    for e in c.faces(1):
        if v in e:
            nbrs.add(e[0] if e[1] == v else e[1])
    return nbrs, edges


def _is_single_cycle(nbrs, edges) -> bool:
    if len(nbrs) < 3 or len(edges) != len(nbrs):
        return False
    deg = {v: 0 for v in nbrs}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if any(d != 2 for d in deg.values()):
        return False
    return _graph_connected(nbrs, edges)


def _is_single_path(nbrs, edges) -> bool:
    if not nbrs:
        return False
    if len(edges) != len(nbrs) - 1:
        return False
    deg = {v: 0 for v in nbrs}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if sum(1 for d in deg.values() if d == 1) != (2 if edges else 0):
        return False
    if any(d > 2 for d in deg.values()):
        return False
    return _graph_connected(nbrs, edges)


def _graph_connected(verts, edges) -> bool:
    verts = set(verts)
    if not verts:
        return True
    adjacency = {v: set() for v in verts}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    start = next(iter(sorted(verts)))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def _trace_cycle(edges) -> tuple | None:
    """Walk a set of edges forming a single cycle; canonical rotation/direction."""
    adjacency = {}
    for a, b in edges:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    if any(len(v) != 2 for v in adjacency.values()):
        return None
    start = min(adjacency)
    nxt = min(adjacency[start])
    cycle = [start, nxt]
    while True:
        prev, cur = cycle[-2], cycle[-1]
        a, b = adjacency[cur]
        step = b if a == prev else a
        if step == start:
            break
        cycle.append(step)
        if len(cycle) > len(adjacency):
            return None
    if len(cycle) != len(adjacency):
        return None
    return tuple(cycle)


def boundary_complex(c: SimplicialComplex) -> SimplicialComplex:
    """Faces of a complex of dimension <= 2 that are 'free' in the surface sense.

    Generated by edges lying in anything other than exactly two triangles
    (boundary edges of a surface piece, plus dangling/maximal edges) together
    with vertices in no edge at all.  For a pure 2-complex this is the usual
    topological boundary.
    """
    if c.dim > 2:
        raise NotPure2Dimensional(f"dim {c.dim} > 2")
    if c.is_void() or c.dim < 0:
        return SimplicialComplex(c.n, [])
    counts = _edge_triangle_counts(c)
    free_edges = [e for e, k in counts.items() if k != 2]
    lone_vertices = [
        v for (v,) in c.faces(0) if not any(v in e for e in counts)
    ]
    return SimplicialComplex.from_faces(
        c.n, free_edges + [(v,) for v in lone_vertices]
    )


def classify_surface(c: SimplicialComplex) -> SurfaceClass:
    """Recognize triangulated 2-spheres and 2-disks.

    Expects a pure 2-dimensional complex (or an empty one).  A sphere must be
    connected with every edge in exactly two triangles, every vertex link a
    single cycle, and Euler characteristic 2.  A disk must be connected with
    Euler characteristic 1, boundary edges forming one simple cycle, and
    vertex links that are single cycles or single paths.
    """
    if c.is_void() or c.dim == -1:
        return SurfaceClass(EMPTY)
    if c.dim != 2 or any(len(f) != 3 for f in c.facets):
        raise NotPure2Dimensional(f"facets of mixed or wrong dimension (dim={c.dim})")
    counts = _edge_triangle_counts(c)
    if not c.connected():
        return SurfaceClass(OTHER)
    chi = c.euler_characteristic()
    links = {v: _link_graph(c, v) for v in c.vertices()}

    if all(k == 2 for k in counts.values()):
        if chi == 2 and all(_is_single_cycle(*lk) for lk in links.values()):
            return SurfaceClass(SPHERE2)
        return SurfaceClass(OTHER)

    if any(k > 2 for k in counts.values()) or chi != 1:
        return SurfaceClass(OTHER)
    bd_edges = [e for e, k in counts.items() if k == 1]
    cycle = _trace_cycle(bd_edges)
    if cycle is None or len(cycle) < 3:
        return SurfaceClass(OTHER)
    bd_verts = set(cycle)
    for v, lk in links.items():
        ok = _is_single_path(*lk) if v in bd_verts else _is_single_cycle(*lk)
        if not ok:
            return SurfaceClass(OTHER)
    return SurfaceClass(DISK2, cycle)


def split_into_disks(c: SimplicialComplex) -> list:
    """Decompose a union of disks glued along vertices into its disk pieces.

    Pieces are the equivalence classes of triangles under sharing an edge.
    Raises NotDisklike when a piece fails to classify as a 2-disk.  The empty
    complex yields an empty list; pieces are returned sorted by their least
    facet.
    """
    if c.is_void():
        return []
    if c.dim != 2 or any(len(f) != 3 for f in c.facets):
        raise NotPure2Dimensional(f"not pure 2-dimensional (dim={c.dim})")
    counts = _edge_triangle_counts(c)
    if any(k > 2 for k in counts.values()):
        raise NotDisklike("an edge lies in more than two triangles")

    triangles = sorted(c.facets)
    parent = {t: t for t in triangles}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    by_edge = {}
    for t in triangles:
        for e in itertools.combinations(t, 2):
            by_edge.setdefault(e, []).append(t)
    for ts in by_edge.values():
        for a, b in zip(ts, ts[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

    groups = {}
    for t in triangles:
        groups.setdefault(find(t), []).append(t)
    pieces = [
        SimplicialComplex(c.n, ts, _skip_checks=True)
        for ts in sorted(groups.values(), key=lambda ts: min(ts))
    ]
    for p in pieces:
        if classify_surface(p).tag != DISK2:
            raise NotDisklike(f"piece with facets {sorted(p.facets)} is not a 2-disk")
    return pieces


def stellar_subdivide(
    c: SimplicialComplex, face, new_vertex: int
) -> SimplicialComplex:
    """Replace the star of ``face`` by the cone over its boundary from a new vertex.

    ``face`` must have dimension >= 1 and ``new_vertex`` must be the next
    unused id ``c.n`` (vertex ids stay dense).
    """
    f = as_face(face)
    if f not in c.face_set:
        raise FaceNotInComplex(f"{f} is not a face")
    if len(f) < 2:
        raise ValueError(f"stellar subdivision needs dim(face) >= 1, got {f}")
    if new_vertex != c.n:
        raise VertexClash(
            f"new vertex must be the next dense id {c.n}, got {new_vertex}"
        )
    star = c.star(f)
    bd = boundary_complex(star)
    cones = [g + (new_vertex,) for g in bd.facets]
    rest = [g for g in c.deletion(f).facets]
    return SimplicialComplex.from_faces(c.n + 1, rest + cones)

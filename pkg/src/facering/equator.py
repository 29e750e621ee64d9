"""Equator detection and the dichotomy harness.

An equator of a realized 2-sphere is an embedded simple cycle in the
1-skeleton whose vertices all lie in one linear hyperplane (through the
origin).  Detection is complete for d = 3: any hyperplane containing a cycle
contains two independent vertex vectors (consecutive cycle vertices span an
edge, and edges of a proper realization are independent), so it suffices to
scan the hyperplanes spanned by vertex pairs.

The harness cross-checks the dichotomy on one instance: when no equator
exists the peeling construction must produce a verified Lefschetz element.
The converse fails (the coordinate octahedron has equators and the Lefschetz
property), which the harness records as a witness rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import SimplicialComplex
from .errors import DichotomyViolation, DimensionNotThree, ImproperRealization
from .geometry import Realization, cross, dot, is_proper, primitive_normal
from .lefschetz import PeelResult, SearchResult, construct_lefschetz, random_search


@dataclass(frozen=True)
class EquatorCertificate:
    cycle: tuple  # vertex ids, consecutive ones (cyclically) spanning edges
    normal: tuple  # primitive integer normal of the hyperplane

    def to_json(self, labels=None) -> dict:
        name = (lambda v: labels[v]) if labels is not None else str
        return {
            "cycle": [name(v) for v in self.cycle],
            "hyperplane_normal": list(self.normal),
        }


def _canonical_cycle(cycle) -> tuple:
    """Least rotation starting at the least vertex, direction tie-broken."""
    n = len(cycle)
    i = cycle.index(min(cycle))
    forward = tuple(cycle[(i + j) % n] for j in range(n))
    backward = tuple(cycle[(i - j) % n] for j in range(n))
    return min(forward, backward)


def _adjacency(c: SimplicialComplex, vertices) -> dict:
    vs = set(vertices)
    adj = {v: [] for v in vertices}
    for a, b in c.faces(1):
        if a in vs and b in vs:
            adj[a].append(b)
            adj[b].append(a)
    for v in adj:
        adj[v].sort()
    return adj


def _first_cycle(adj) -> tuple | None:
    """Deterministic DFS from the least vertex; first back edge closes the cycle."""
    seen = set()
    for start in sorted(adj):
        if start in seen:
            continue
        parent = {start: None}
        stack = [(start, None)]
        while stack:
            v, p = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            parent[v] = p
            for w in reversed(adj[v]):
                if w == p:
                    continue
                if w in seen:
                    # close the cycle along the tree path from v back to w
                    path = [v]
                    u = v
                    while u != w:
                        u = parent[u]
                        if u is None:
                            break
                        path.append(u)
                    if path[-1] == w:
                        return _canonical_cycle(tuple(reversed(path)))
                else:
                    stack.append((w, v))
    return None


def _shortest_cycle(adj) -> tuple | None:
    """Lexicographically least among the shortest cycles (BFS from each vertex)."""
    best = None
    for root in sorted(adj):
        depth = {root: 0}
        parent = {root: None}
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in depth:
                        depth[w] = depth[v] + 1
                        parent[w] = v
                        nxt.append(w)
                    elif parent[v] != w and parent.get(w) != v:
                        pa, pb = [], []
                        a, b = v, w
                        while a is not None:
                            pa.append(a)
                            a = parent[a]
                        while b is not None:
                            pb.append(b)
                            b = parent[b]
                        common = next(x for x in pa if x in set(pb))
                        cyc = (
                            pa[: pa.index(common) + 1]
                            + list(reversed(pb[: pb.index(common)]))
                        )
                        if len(set(cyc)) == len(cyc) and len(cyc) >= 3:
                            cand = _canonical_cycle(tuple(cyc))
                            key = (len(cand), cand)
                            if best is None or key < (len(best), best):
                                best = cand
            frontier = nxt
    return best


def candidate_normals(c: SimplicialComplex, r: Realization) -> list:
    """Distinct primitive normals of hyperplanes spanned by vertex-vector pairs.

    Parallel (and zero) pairs are skipped; each spanned hyperplane appears
    exactly once.  Sorted for deterministic scanning order.
    """
    if r.d != 3:
        raise DimensionNotThree(f"normal enumeration needs d = 3, got {r.d}")
    verts = c.vertices()
    normals = set()
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            n = cross(r.vector(u), r.vector(v))
            if all(x == 0 for x in n):
                continue
            normals.add(primitive_normal(n))
    return sorted(normals)


def find_equator(
    c: SimplicialComplex, r: Realization, shortest: bool = False
) -> EquatorCertificate | None:
    """A coplanar embedded cycle in the 1-skeleton, or None if none exists.

    Scans candidate hyperplanes in sorted normal order and reports the first
    cycle found by deterministic DFS; with ``shortest`` the overall shortest
    cycle (ties broken lexicographically, then by least normal) is returned.
    """
    if r.d != 3:
        raise DimensionNotThree(f"equator search needs d = 3, got {r.d}")
    best = None
    for normal in candidate_normals(c, r):
        on_plane = [v for v in c.vertices() if dot(r.vector(v), normal) == 0]
        if len(on_plane) < 3:
            continue
        adj = _adjacency(c, on_plane)
        cycle = _shortest_cycle(adj) if shortest else _first_cycle(adj)
        if cycle is None:
            continue
        cert = EquatorCertificate(cycle, normal)
        if not shortest:
            return cert
        key = (len(cycle), cycle, normal)
        if best is None or key < (len(best.cycle), best.cycle, best.normal):
            best = cert
    return best


def validate_equator(
    c: SimplicialComplex, r: Realization, cert: EquatorCertificate
) -> bool:
    """Independent re-validation: simplicity, edge membership, exact incidence."""
    cycle = cert.cycle
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if tuple(sorted((a, b))) not in c.face_set:
            return False
    return all(dot(r.vector(v), cert.normal) == 0 for v in cycle)


def verify_dichotomy(
    c: SimplicialComplex,
    r: Realization,
    seed=0,
    trials: int = 200,
    raise_on_violation: bool = True,
) -> dict:
    """Cross-check one instance against the equator/Lefschetz dichotomy.

    Hard implications checked: no equator => the peeling construction yields a
    verified Lefschetz element; random search failing every trial => an
    equator exists.  An instance with both an equator and the Lefschetz
    property is recorded as ``non_sufficiency_witness``.  A violation raises
    :class:`DichotomyViolation` (or is reported with ``implication_ok`` false).
    """
    ok, witness = is_proper(c, r)
    if not ok:
        raise ImproperRealization(f"face {witness} does not span properly")
    equator = find_equator(c, r)
    if equator is not None and not validate_equator(c, r, equator):
        raise DichotomyViolation("equator certificate failed re-validation")
    peel: PeelResult = construct_lefschetz(c, r, seed=seed)
    search: SearchResult | None = None
    lefschetz_holds = peel.holds
    if not lefschetz_holds:
        search = random_search(c, r, trials=trials, seed=seed)
        lefschetz_holds = search.holds

    violations = []
    if equator is None and not peel.holds:
        violations.append(
            "no equator but the peeling construction failed "
            f"({peel.failure.reason if peel.failure else 'unknown'})"
        )
    if search is not None and not search.holds and equator is None:
        violations.append("random search failed every trial yet no equator exists")

    report = {
        "equator": equator,
        "peel": peel,
        "search": search,
        "implication_ok": not violations,
        "violations": violations,
        "non_sufficiency_witness": equator is not None and lefschetz_holds,
        "lefschetz_holds": lefschetz_holds,
    }
    if violations and raise_on_violation:
        raise DichotomyViolation("; ".join(violations))
    return report

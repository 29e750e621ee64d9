"""Exact-rational coordinates for realized simplicial complexes.

A realization assigns each vertex a vector in Q^d.  All predicates here are
equality decisions (independence, coplanarity), so everything stays in exact
arithmetic; there is no floating-point fast path.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    DegenerateFace,
    DimensionMismatch,
    PropernessFailedAfterRetries,
)

#: bound for random integer coordinates/coefficients (numerators in [-B, B])
COEFF_BOUND = 10**6


@dataclass(frozen=True)
class Realization:
    """Map from vertex ids to coordinate vectors of length ``d``."""

    d: int
    coords: dict

    def __post_init__(self):
        for v, vec in self.coords.items():
            if len(vec) != self.d:
                raise DimensionMismatch(
                    f"vertex {v} has a vector of length {len(vec)}, expected {self.d}"
                )
        object.__setattr__(
            self,
            "coords",
            {v: tuple(map(Fraction, vec)) for v, vec in self.coords.items()},
        )

    def vector(self, v: int) -> tuple:
        try:
            return self.coords[v]
        except KeyError:
            raise DimensionMismatch(f"vertex {v} has no coordinates") from None

    def vectors(self, vertices) -> list:
        return [list(self.vector(v)) for v in vertices]


def span_rank(vectors) -> int:
    """Rank of a family of rational vectors (exact)."""
    vecs = [list(map(Fraction, v)) for v in vectors]
    if vecs:
        lengths = {len(v) for v in vecs}
        if len(lengths) > 1:
            raise DimensionMismatch(f"vectors of mixed lengths {sorted(lengths)}")
    return linalg.rank(vecs)


def is_proper(c, r: Realization):
    """Whether every k-face with k < d spans a (k+1)-dimensional subspace.

    Returns ``(True, None)`` or ``(False, witness_face)``.
    """
    top = min(c.dim, r.d - 1)
    for k in range(0, top + 1):
        for f in c.faces(k):
            if span_rank(r.vectors(f)) != len(f):
                return False, f
    return True, None


def dot(u, v) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def on_hyperplane(r: Realization, normal, v: int) -> bool:
    """Exact incidence of a vertex with the linear hyperplane ``normal ⟂``."""
    return dot(r.vector(v), normal) == 0


def cross(u, v) -> tuple:
    (a, b, c), (x, y, z) = (tuple(map(Fraction, u)), tuple(map(Fraction, v)))
    return (b * z - c * y, c * x - a * z, a * y - b * x)


def primitive_normal(vec) -> tuple:
    """Canonical integer form of a nonzero vector: gcd 1, first nonzero positive."""
    vec = [Fraction(x) for x in vec]
    if all(x == 0 for x in vec):
        raise ValueError("zero vector has no primitive form")
    denom_lcm = 1
    for x in vec:
        denom_lcm = denom_lcm * x.denominator // math.gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _orthogonalize(vectors) -> list:
    """Gram-Schmidt without normalization; zero results are dropped."""
    basis = []
    for v in vectors:
        w = list(map(Fraction, v))
        for b in basis:
            coeff = dot(w, b) / dot(b, b)
            w = [x - coeff * y for x, y in zip(w, b)]
        if any(x != 0 for x in w):
            basis.append(w)
    return basis


def project_link(r: Realization, sigma, vertices=None):
    """Orthogonal projection of vertex vectors onto span(sigma) ⟂.

    Returns ``(projected_realization, complement_basis)``.  The projected
    realization keeps the ambient dimension d (its vectors lie inside the
    complement subspace); ``complement_basis`` is an orthogonal rational basis
    of that subspace for callers that want dimension-reduced coordinates via
    :func:`complement_coordinates`.
    """
    sig_vecs = r.vectors(sigma)
    if span_rank(sig_vecs) != len(sig_vecs):
        raise DegenerateFace(f"face {tuple(sigma)} has dependent vertex vectors")
    ortho_sigma = _orthogonalize(sig_vecs)
    basis = list(ortho_sigma)
    complement = []
    for i in range(r.d):
        w = list(map(Fraction, linalg.unit(r.d, i)))
        for b in basis:
            coeff = dot(w, b) / dot(b, b)
            w = [x - coeff * y for x, y in zip(w, b)]
        if any(x != 0 for x in w):
            basis.append(w)
            complement.append(w)
    keys = r.coords.keys() if vertices is None else vertices
    projected = {}
    for v in keys:
        w = list(r.vector(v))
        for b in ortho_sigma:
            coeff = dot(w, b) / dot(b, b)
            w = [x - coeff * y for x, y in zip(w, b)]
        projected[v] = tuple(w)
    return Realization(r.d, projected), [tuple(b) for b in complement]


def complement_coordinates(r: Realization, basis, vertices=None) -> Realization:
    """Re-coordinatize vectors lying in span(basis) w.r.t. that orthogonal basis."""
    keys = r.coords.keys() if vertices is None else vertices
    coords = {
        v: tuple(dot(r.vector(v), b) / dot(b, b) for b in basis) for v in keys
    }
    return Realization(len(basis), coords)


def random_fraction(rng: random.Random, bound: int = COEFF_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound))


def random_nonzero_fraction(rng: random.Random, bound: int = COEFF_BOUND) -> Fraction:
    while True:
        x = rng.randint(-bound, bound)
        if x:
            return Fraction(x)


def seeded_rng(seed, *labels) -> random.Random:
    """Deterministically split a seed into an independent stream per task."""
    key = ":".join([str(seed), *map(str, labels)])
    return random.Random(key)


def random_realization(
    c,
    seed,
    d: int = 3,
    bound: int = COEFF_BOUND,
    coplanar=(),
    max_tries: int = 64,
) -> Realization:
    """Seeded generic integer coordinates, resampled until proper.

    Vertices listed in ``coplanar`` get last coordinate 0 (they land in a
    common linear hyperplane); the caller is responsible for choosing a set
    that properness can tolerate.
    """
    rng = seeded_rng(seed, "realization")
    coplanar = set(coplanar)
    for _ in range(max_tries):
        coords = {}
        for v in c.vertices():
            vec = [random_fraction(rng, bound) for _ in range(d)]
            if v in coplanar:
                vec[-1] = Fraction(0)
            coords[v] = tuple(vec)
        r = Realization(d, coords)
        ok, _ = is_proper(c, r)
        if ok:
            return r
    raise PropernessFailedAfterRetries(
        f"no proper realization found in {max_tries} draws (seed={seed})"
    )

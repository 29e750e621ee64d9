"""Lefschetz decision procedure and the peeling construction.

``check_lefschetz`` decides, for one explicit linear form, whether every
power-multiplication map ``A^k -> A^(d-k)`` is an isomorphism; the verdict is
exact.  ``random_search`` samples seeded generic forms.  ``construct_lefschetz``
builds a Lefschetz element for a realized 2-sphere by peeling vertices one at
a time: each accepted vertex contributes a fresh generically weighted variable
via :func:`generic_combine`, and after every step the accumulated kernel is
verified to equal the span of the classes of the interior vertices of the
remaining region.  When every admissible boundary vertex of the active piece
has a coplanar star the construction stops and reports the coplanar boundary
cycle, which is an equator.

Genericity is never assumed: every open-condition outcome (rank maximality,
kernel equality) is verified exactly, with a bounded number of resamples, and
persistent failure is reported as a finding rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .artinian import (
    LinearForm,
    Presentation,
    dim_A,
    monomial_basis,
    mult_map,
    multiplication_matrix,
    presentation,
)
from .complexes import (
    DISK2,
    SPHERE2,
    SimplicialComplex,
    boundary_complex,
    classify_surface,
    split_into_disks,
)
from .errors import (
    ImproperRealization,
    NotBoundaryVertex,
    NotDisklike,
    NotPure2Dimensional,
    ShapeMismatch,
    WrongInput,
)
from .geometry import (
    COEFF_BOUND,
    Realization,
    complement_coordinates,
    cross,
    is_proper,
    primitive_normal,
    project_link,
    random_nonzero_fraction,
    seeded_rng,
    span_rank,
)

#: how often a claimed-generic choice is resampled before giving up
RETRY_LIMIT = 8


# ---------------------------------------------------------------------------
# Lefschetz certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeCheck:
    k: int
    rank: int
    source_dim: int
    target_dim: int

    @property
    def ok(self) -> bool:
        return self.rank == self.source_dim == self.target_dim

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "rank": self.rank,
            "dim_source": self.source_dim,
            "dim_target": self.target_dim,
            "isomorphism": self.ok,
        }


@dataclass(frozen=True)
class LefschetzCertificate:
    ell: LinearForm
    degree_checks: tuple
    holds: bool

    def to_json(self, labels=None) -> dict:
        return {
            "ell": self.ell.to_json(labels),
            "degree_checks": [ch.to_json() for ch in self.degree_checks],
            "verdict": "holds" if self.holds else "fails_for_this_ell",
        }


def check_lefschetz(c, r: Realization, ell: LinearForm) -> LefschetzCertificate:
    """Exact ranks of ``ell^(d-2k): A^k -> A^(d-k)`` for every ``k <= d/2``."""
    ok, witness = is_proper(c, r)
    if not ok:
        raise ImproperRealization(f"face {witness} does not span properly")
    d = r.d
    pres = [presentation(c, None, r, j, require_proper=False) for j in range(d + 1)]
    checks = []
    for k in range(0, d // 2 + 1):
        checks.append(_power_check(pres, ell, k, d))
    holds = all(ch.ok for ch in checks)
    return LefschetzCertificate(ell, tuple(checks), holds)


def _power_check(pres, ell, k, d) -> DegreeCheck:
    if d - 2 * k == 0:
        return DegreeCheck(k, pres[k].dim, pres[k].dim, pres[k].dim)
    total = None
    for j in range(k, d - k):
        step = multiplication_matrix(pres[j], pres[j + 1], ell)
        total = step if total is None else linalg.mat_mul(step, total)
    induced = linalg.induced_matrix(total, pres[k].quotient, pres[d - k].quotient)
    return DegreeCheck(k, linalg.rank(induced), pres[k].dim, pres[d - k].dim)


@dataclass(frozen=True)
class SearchResult:
    certificate: LefschetzCertificate
    found_trial: int | None
    trials: int

    @property
    def holds(self) -> bool:
        return self.certificate is not None and self.certificate.holds

    def to_json(self, labels=None) -> dict:
        return {
            "trials": self.trials,
            "found_trial": self.found_trial,
            "certificate": self.certificate.to_json(labels),
        }


def random_search(c, r: Realization, trials: int, seed) -> SearchResult:
    """First Holds certificate among seeded generic forms, else the best failure."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ok, witness = is_proper(c, r)
    if not ok:
        raise ImproperRealization(f"face {witness} does not span properly")
    d = r.d
    pres = [presentation(c, None, r, j, require_proper=False) for j in range(d + 1)]
    rng = seeded_rng(seed, "lefschetz-search")
    vertices = c.vertices()
    best = None
    best_total = -1
    for t in range(trials):
        ell = LinearForm.random(rng, vertices)
        checks = [_power_check(pres, ell, k, d) for k in range(0, d // 2 + 1)]
        holds = all(ch.ok for ch in checks)
        cert = LefschetzCertificate(ell, tuple(checks), holds)
        if holds:
            return SearchResult(cert, t, trials)
        total = sum(ch.rank for ch in checks)
        if total > best_total:
            best, best_total = cert, total
    return SearchResult(best, None, trials)


# ---------------------------------------------------------------------------
# Generic combinations of linear maps
# ---------------------------------------------------------------------------


@dataclass
class CombineResult:
    hypothesis_ok: bool
    witness: list | None  # a nonzero vector of B(ker A) ∩ im A when the check fails
    coefficients: tuple | None  # (lam, mu) with combined = lam*A + mu*B
    matrix: list | None
    kernel: list | None  # basis of ker A ∩ ker B (= kernel of the combination)
    retries_used: int

    @property
    def ok(self) -> bool:
        return self.hypothesis_ok and self.matrix is not None


def generic_combine(
    a, b, seed, bound: int = COEFF_BOUND, retries: int = RETRY_LIMIT
) -> CombineResult:
    """Generic combination ``lam*A + mu*B`` whose kernel is ``ker A ∩ ker B``.

    The combination behaves this way whenever ``B(ker A) ∩ im A = 0``; that
    hypothesis is checked exactly first.  Coefficients are resampled until the
    kernel of the combination matches the intersection (verified exactly).
    """
    shape_a = (len(a), len(a[0]) if a else 0)
    shape_b = (len(b), len(b[0]) if b else 0)
    if shape_a != shape_b:
        raise ShapeMismatch(f"shapes {shape_a} and {shape_b} differ")
    ncols = shape_a[1]
    ker_a = linalg.kernel_of_map(a, ncols)
    b_ker_a = [linalg.mat_vec(b, x) for x in ker_a]
    b_ker_a = [v for v in b_ker_a if any(x != 0 for x in v)]
    im_a = [col for col in linalg.transpose(a) if any(x != 0 for x in col)]
    if not linalg.spans_intersect_trivially(b_ker_a, im_a):
        witness = linalg.intersect_spans(b_ker_a, im_a)[0]
        return CombineResult(False, witness, None, None, None, 0)
    target = linalg.kernel_of_map(linalg.vstack(a, b), ncols)
    rng = seeded_rng(seed, "generic-combine")
    for t in range(retries):
        lam = random_nonzero_fraction(rng, bound)
        mu = random_nonzero_fraction(rng, bound)
        combined = linalg.mat_add(a, b, lam, mu)
        if len(linalg.kernel_of_map(combined, ncols)) == len(target):
            return CombineResult(True, None, (lam, mu), combined, target, t)
    return CombineResult(True, None, None, None, target, retries)


# ---------------------------------------------------------------------------
# Induced multiplication operators in quotient coordinates
# ---------------------------------------------------------------------------


class OperatorPair:
    """Operators ``A^k -> A^(k+1)`` of one complex in canonical coordinates."""

    def __init__(self, c, r: Realization, k: int):
        self.complex = c
        self.realization = r
        self.k = k
        self.P_from = presentation(c, None, r, k, require_proper=False)
        self.P_to = presentation(c, None, r, k + 1, require_proper=False)
        self.dom = self.P_from.quotient
        self.cod = self.P_to.quotient
        self._variable_ops = {}

    def variable_op(self, v: int) -> list:
        if v not in self._variable_ops:
            lifted = multiplication_matrix(
                self.P_from, self.P_to, LinearForm.variable(v)
            )
            self._variable_ops[v] = linalg.induced_matrix(lifted, self.dom, self.cod)
        return self._variable_ops[v]

    def form_op(self, ell: LinearForm) -> list:
        lifted = multiplication_matrix(self.P_from, self.P_to, ell)
        return linalg.induced_matrix(lifted, self.dom, self.cod)

    def monomial_coords(self, m) -> list:
        return self.dom.coords(self.P_from.monomial_class(m))


def interior_vertices(region: SimplicialComplex) -> list:
    """Vertices of a region not on its (generalized) boundary."""
    if region.is_void():
        return []
    bd = set(boundary_complex(region).vertices())
    return [v for v in region.vertices() if v not in bd]


# ---------------------------------------------------------------------------
# Kernel transversality for a vertex set
# ---------------------------------------------------------------------------


@dataclass
class TransversalityReport:
    ok: bool
    combined_kernel_dim: int | None
    intersection_dim: int
    module_dim: int
    witness: list | None
    failure: str | None  # None | 'hypothesis' | 'combine-degenerate' | 'kernel-differs' | 'module-differs'


def check_kernel_transversality(
    c, r: Realization, W, k: int = 1, seed=0
) -> TransversalityReport:
    """Whether the kernel of a generic combination of the variables over ``W``
    equals the intersection of their kernels, and whether that intersection is
    the span of the classes of the relative module of the deleted region.

    All three subspaces of ``A^k`` are computed independently and compared
    exactly.  The witness on failure is a kernel vector outside the smaller
    space (in canonical quotient coordinates).
    """
    W = sorted(set(W))
    if not W:
        raise ValueError("W must be nonempty")
    ops = OperatorPair(c, r, k)
    mats = [ops.variable_op(v) for v in W]
    stacked = mats[0]
    for m in mats[1:]:
        stacked = linalg.vstack(stacked, m)
    intersection = linalg.kernel_of_map(stacked, ops.dom.dim)

    delta = c.delete_vertices(W)
    bd = boundary_complex(delta)
    module = [
        ops.monomial_coords(m)
        for m in monomial_basis(delta, bd, k)
        if m in ops.P_from.index
    ]
    module_dim = linalg.span_dim(module)

    combined = mats[0]
    for v, mat in zip(W[1:], mats[1:]):
        res = generic_combine(combined, mat, seed=(str(seed), "transversal", v))
        if not res.hypothesis_ok:
            return TransversalityReport(
                False, None, len(intersection), module_dim, res.witness, "hypothesis"
            )
        if res.matrix is None:
            return TransversalityReport(
                False,
                None,
                len(intersection),
                module_dim,
                None,
                "combine-degenerate",
            )
        combined = res.matrix
    kernel = linalg.kernel_of_map(combined, ops.dom.dim)

    if not linalg.spans_equal(kernel, intersection):
        witness = next(
            (v for v in kernel if not linalg.in_span(intersection, v)), None
        )
        return TransversalityReport(
            False, len(kernel), len(intersection), module_dim, witness, "kernel-differs"
        )
    if not linalg.spans_equal(intersection, module):
        witness = next(
            (v for v in intersection if not linalg.in_span(module, v)), None
        )
        return TransversalityReport(
            False, len(kernel), len(intersection), module_dim, witness, "module-differs"
        )
    return TransversalityReport(
        True, len(kernel), len(intersection), module_dim, None, None
    )


# ---------------------------------------------------------------------------
# One peel step of a disk, checked against the exact sequence
# ---------------------------------------------------------------------------


@dataclass
class PeelStepReport:
    star_rank: int
    sequence_exact: bool
    final_surjective: bool
    link_vanishes: bool  # A^k of the boundary link of w is zero
    kernel_matches: bool  # ker(x_w on A^k(disk, bd)) equals the smaller disk module


def _boundary_neighbors(cycle, w):
    i = cycle.index(w)
    return cycle[i - 1], cycle[(i + 1) % len(cycle)]


def verify_peel_step(disk, r: Realization, w: int, k: int) -> PeelStepReport:
    """Exactness and kernel bookkeeping for removing one boundary vertex.

    Checks, all as exact matrix statements: (a) the three-term sequence

        A^k(st_w D, st_w bd) --x_w--> A^(k+1)(D, D-w) --> A^(k+1)(bd, bd-w) --> 0

    is exact in the middle and surjective at the end; (b) ``A^k`` of the
    projected boundary link of ``w`` vanishes; (c) the kernel of ``x_w`` on
    ``A^k(D, bd)`` is spanned by the classes of the relative module of the
    smaller region ``D - w`` with its own boundary.
    """
    sc = classify_surface(disk)
    if sc.tag != DISK2:
        raise WrongInput(f"expected a 2-disk, got {sc.tag}")
    cycle = sc.boundary_cycle
    if w not in cycle:
        raise NotBoundaryVertex(f"{w} is not on the boundary cycle {cycle}")
    bd = boundary_complex(disk)
    nb = _boundary_neighbors(cycle, w)
    star_rank = span_rank(r.vectors((w, *nb)))

    M1 = presentation(disk.star((w,)), bd.star((w,)), r, k, require_proper=False)
    M2 = presentation(disk, disk.deletion((w,)), r, k + 1, require_proper=False)
    M3 = presentation(bd, bd.deletion((w,)), r, k + 1, require_proper=False)

    L1 = multiplication_matrix(M1, M2, LinearForm.variable(w))
    L2 = [linalg.zeros(len(M2.basis)) for _ in M3.basis]
    for j, m in enumerate(M2.basis):
        i = M3.index.get(m)
        if i is not None:
            L2[i][j] = Fraction(1)

    ind1 = linalg.induced_matrix(L1, M1.quotient, M2.quotient)
    ind2 = linalg.induced_matrix(L2, M2.quotient, M3.quotient)
    image = [col for col in linalg.transpose(ind1) if any(x != 0 for x in col)]
    ker_mid = linalg.kernel_of_map(ind2, M2.quotient.dim)
    sequence_exact = linalg.spans_equal(image, ker_mid)
    final_surjective = linalg.rank(ind2) == M3.dim

    r_proj, _ = project_link(r, (w,))
    link_vanishes = (
        dim_A(bd.link((w,)), None, r_proj, k, require_proper=False) == 0
    )

    PD_k = presentation(disk, bd, r, k, require_proper=False)
    PD_k1 = presentation(disk, bd, r, k + 1, require_proper=False)
    X = multiplication_matrix(PD_k, PD_k1, LinearForm.variable(w))
    indX = linalg.induced_matrix(X, PD_k.quotient, PD_k1.quotient)
    ker_x = linalg.kernel_of_map(indX, PD_k.quotient.dim)
    smaller = disk.deletion((w,))
    smaller_bd = boundary_complex(smaller)
    module = [
        PD_k.quotient.coords(PD_k.monomial_class(m))
        for m in monomial_basis(smaller, smaller_bd, k)
        if m in PD_k.index
    ]
    kernel_matches = linalg.spans_equal(ker_x, module)

    return PeelStepReport(
        star_rank=star_rank,
        sequence_exact=sequence_exact,
        final_surjective=final_surjective,
        link_vanishes=link_vanishes,
        kernel_matches=kernel_matches,
    )


def link_lefschetz_equivalence(disk, r: Realization, w: int, k: int) -> bool:
    """Whether the two sides of the boundary-link reduction agree.

    Side one: multiplication by the dropped coordinate is an isomorphism
    ``A^(k-1) -> A^k`` of the boundary link pushed down one more dimension.
    Side two: ``A^k`` of the projected boundary link vanishes.  Both are
    computed independently; the function returns their agreement.
    """
    if k < 1:
        raise ValueError("needs k >= 1")
    sc = classify_surface(disk)
    if sc.tag != DISK2:
        raise WrongInput(f"expected a 2-disk, got {sc.tag}")
    if w not in sc.boundary_cycle:
        raise NotBoundaryVertex(f"{w} is not on the boundary cycle")
    bd = boundary_complex(disk)
    link0 = bd.link((w,))
    r_proj, comp_basis = project_link(r, (w,))
    vanishes = dim_A(link0, None, r_proj, k, require_proper=False) == 0

    verts = link0.vertices()
    reduced = complement_coordinates(r_proj, comp_basis, verts)
    pi_real = Realization(
        reduced.d - 1, {v: reduced.vector(v)[:-1] for v in verts}
    )
    height = LinearForm({v: reduced.vector(v)[-1] for v in verts})
    P_lo = presentation(link0, None, pi_real, k - 1, require_proper=False)
    P_hi = presentation(link0, None, pi_real, k, require_proper=False)
    is_iso = mult_map(P_lo, P_hi, height).is_bijective
    return is_iso == vanishes


# ---------------------------------------------------------------------------
# The iterative construction
# ---------------------------------------------------------------------------


@dataclass
class PeelStep:
    vertex: int
    star_rank: int | None  # None for the very first vertex (no boundary yet)
    lam: Fraction
    mu: Fraction
    kernel_dim_before: int
    kernel_dim_after: int
    piece_count: int

    def to_json(self, labels=None) -> dict:
        name = (lambda v: labels[v]) if labels is not None else str
        return {
            "vertex": name(self.vertex),
            "star_rank": self.star_rank,
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "kernel_dim_before": self.kernel_dim_before,
            "kernel_dim_after": self.kernel_dim_after,
            "pieces": self.piece_count,
        }


@dataclass
class FailureTrace:
    reason: str  # 'coplanar-boundary' | 'stuck' | 'step-bound-exceeded' | 'final-check-failed'
    stage: int
    removed: list
    boundary_cycle: tuple | None
    normal: tuple | None
    candidates: list  # (vertex, reason) pairs for the failing stage

    def to_json(self, labels=None) -> dict:
        name = (lambda v: labels[v]) if labels is not None else str
        return {
            "reason": self.reason,
            "stage": self.stage,
            "removed": [name(v) for v in self.removed],
            "boundary_cycle": (
                [name(v) for v in self.boundary_cycle]
                if self.boundary_cycle
                else None
            ),
            "normal": list(self.normal) if self.normal else None,
            "candidates": [
                {"vertex": name(v), "reason": why} for v, why in self.candidates
            ],
        }


@dataclass
class PeelResult:
    certificate: LefschetzCertificate | None
    steps: list
    removed: list
    failure: FailureTrace | None

    @property
    def holds(self) -> bool:
        return self.certificate is not None and self.certificate.holds

    def to_json(self, labels=None) -> dict:
        return {
            "holds": self.holds,
            "removed": [
                (labels[v] if labels is not None else str(v)) for v in self.removed
            ],
            "steps": [s.to_json(labels) for s in self.steps],
            "certificate": (
                self.certificate.to_json(labels) if self.certificate else None
            ),
            "failure": self.failure.to_json(labels) if self.failure else None,
        }


def _coplanar_normal(r: Realization, cycle):
    """Primitive normal of the plane spanned by a coplanar vertex cycle."""
    vecs = r.vectors(cycle)
    if linalg.rank(vecs) != 2:
        return None
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if linalg.rank([vecs[i], vecs[j]]) == 2:
                return primitive_normal(cross(vecs[i], vecs[j]))
    return None


def construct_lefschetz(
    c, r: Realization, seed=0, bound: int = COEFF_BOUND
) -> PeelResult:
    """Build an explicit Lefschetz element for a proper 2-sphere by peeling.

    Vertices are removed one at a time, least admissible id first.  A boundary
    vertex of the active piece is admissible when (1) removing it leaves disks
    joined along vertices and (2) its star in the piece boundary spans rank 3.
    Each accepted vertex contributes a generically weighted variable; the
    kernel of the accumulated combination is verified after every step to be
    exactly the span of the interior-vertex classes of the remaining region.

    On success the returned certificate is re-verified from scratch by
    :func:`check_lefschetz`.  When every candidate of the active piece fails
    the rank condition, the piece boundary is coplanar and is reported with
    its hyperplane normal: an equator.
    """
    sc = classify_surface(c)
    if sc.tag != SPHERE2:
        raise WrongInput(f"expected a 2-sphere, got {sc.tag}")
    ok, witness = is_proper(c, r)
    if not ok:
        raise ImproperRealization(f"face {witness} does not span properly")
    if r.d != 3:
        raise WrongInput(f"peeling construction needs d = 3, got {r.d}")

    ops = OperatorPair(c, r, 1)
    rng = seeded_rng(seed, "peel")
    region = c
    stack: list = []
    removed: list = []
    steps: list = []
    ell = LinearForm({})
    combined = None
    kernel_dim = ops.dom.dim
    max_iterations = c.n + len(c.facets) + 4

    for _ in range(max_iterations):
        if removed:
            while stack and not interior_vertices(stack[-1]):
                stack.pop()
            if not stack:
                return _finish(c, r, ell, removed, steps)
            piece = stack[-1]
            cycle = classify_surface(piece).boundary_cycle
            shared = set()
            for other in stack[:-1]:
                shared.update(other.vertices())
            candidates = [w for w in sorted(cycle) if w not in shared]
        else:
            piece = None
            cycle = None
            candidates = list(c.vertices())

        attempted = []
        accepted = False
        for w in candidates:
            star_rank = None
            if piece is not None:
                nb = _boundary_neighbors(cycle, w)
                star_rank = span_rank(r.vectors((w, *nb)))
                if star_rank < 3:
                    attempted.append((w, "coplanar-star"))
                    continue
                p_minus = piece.deletion((w,))
                try:
                    new_pieces = split_into_disks(p_minus)
                except (NotDisklike, NotPure2Dimensional):
                    attempted.append((w, "not-disklike"))
                    continue
            else:
                new_pieces = split_into_disks(c.deletion((w,)))

            X = ops.variable_op(w)
            if combined is None:
                lam, mu = Fraction(1), Fraction(1)
                new_combined = X
                new_kernel = linalg.kernel_of_map(X, ops.dom.dim)
            else:
                res = generic_combine(
                    combined, X, seed=(str(seed), "peel", len(removed), w), bound=bound
                )
                if not res.hypothesis_ok:
                    attempted.append((w, "transversality-hypothesis"))
                    continue
                if res.matrix is None:
                    attempted.append((w, "combine-degenerate"))
                    continue
                lam, mu = res.coefficients
                new_combined = res.matrix
                new_kernel = res.kernel

            new_region = region.deletion((w,))
            target = [ops.monomial_coords((u,)) for u in interior_vertices(new_region)]
            if not linalg.spans_equal(new_kernel, target):
                attempted.append((w, "kernel-mismatch"))
                continue

            steps.append(
                PeelStep(
                    vertex=w,
                    star_rank=star_rank,
                    lam=lam,
                    mu=mu,
                    kernel_dim_before=kernel_dim,
                    kernel_dim_after=len(new_kernel),
                    piece_count=len(stack) - (1 if piece is not None else 0)
                    + len(new_pieces),
                )
            )
            removed.append(w)
            ell = ell.scaled(lam).plus(LinearForm.variable(w), mu)
            combined = new_combined
            kernel_dim = len(new_kernel)
            region = new_region
            if piece is not None:
                stack.pop()
            stack.extend(
                sorted(new_pieces, key=lambda p: min(p.vertices()), reverse=True)
            )
            accepted = True
            break

        if not accepted:
            reason = "stuck"
            normal = None
            if (
                cycle is not None
                and attempted
                and all(why == "coplanar-star" for _, why in attempted)
            ):
                normal = _coplanar_normal(r, cycle)
                if normal is not None:
                    reason = "coplanar-boundary"
            return PeelResult(
                None,
                steps,
                removed,
                FailureTrace(
                    reason=reason,
                    stage=len(removed),
                    removed=list(removed),
                    boundary_cycle=cycle,
                    normal=normal,
                    candidates=attempted,
                ),
            )

    return PeelResult(
        None,
        steps,
        removed,
        FailureTrace(
            reason="step-bound-exceeded",
            stage=len(removed),
            removed=list(removed),
            boundary_cycle=None,
            normal=None,
            candidates=[],
        ),
    )


def _finish(c, r, ell, removed, steps) -> PeelResult:
    certificate = check_lefschetz(c, r, ell)
    if not certificate.holds:
        return PeelResult(
            None,
            steps,
            removed,
            FailureTrace(
                reason="final-check-failed",
                stage=len(removed),
                removed=list(removed),
                boundary_cycle=None,
                normal=None,
                candidates=[],
            ),
        )
    return PeelResult(certificate, steps, removed, None)

"""Graded pieces of Artinian reductions of (relative) face rings.

The face ring of a complex is the polynomial ring on its vertices modulo all
monomials whose support is not a face.  A realization turns the coordinate
rows into a linear system ``theta_j = sum_v coords(v)[j] * x_v``; the Artinian
reduction is the quotient by those forms, computed here one degree at a time.

A degree-k piece is presented by its monomial basis (all degree-k monomials
with support a face of the complex and, for relative modules, not a face of
the subcomplex) together with the relation columns ``theta_j * m`` for every
degree-(k-1) basis monomial m.  Products whose support is not a face are
dropped during assembly, which is exactly reduction modulo the monomial ideal;
no Groebner machinery is needed.  Its dimension is ``len(basis) - rank``.

Everything is exact over the rationals and deterministic: bases are in
graded-lex order with vertices in id order, elimination pivots are fixed, and
presentations are immutable once built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    DegreeMismatch,
    ImproperRealization,
    NotSubcomplex,
    TopDegreeNotOneDimensional,
)
from .geometry import (
    COEFF_BOUND,
    Realization,
    is_proper,
    project_link,
    random_fraction,
)

Monomial = tuple  # vertex ids with multiplicity, sorted ascending; () is degree 0


def mono_mul(m: Monomial, w: Monomial) -> Monomial:
    return tuple(sorted(m + w))


def mono_support(m: Monomial) -> tuple:
    return tuple(sorted(set(m)))


def mono_str(m: Monomial, labels=None) -> str:
    if not m:
        return "1"
    name = (lambda v: labels[v]) if labels is not None else str
    parts = []
    for v in sorted(set(m)):
        e = m.count(v)
        parts.append(f"x[{name(v)}]" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


@dataclass(frozen=True)
class LinearForm:
    """A degree-one element ``sum_v coeffs[v] * x_v``."""

    coeffs: dict

    def __post_init__(self):
        object.__setattr__(
            self,
            "coeffs",
            {v: Fraction(c) for v, c in self.coeffs.items() if c != 0},
        )

    @classmethod
    def variable(cls, v: int) -> "LinearForm":
        return cls({v: Fraction(1)})

    @classmethod
    def random(cls, rng, vertices, bound: int = COEFF_BOUND) -> "LinearForm":
        return cls({v: random_fraction(rng, bound) for v in vertices})

    def is_zero(self) -> bool:
        return not self.coeffs

    def scaled(self, c) -> "LinearForm":
        return LinearForm({v: Fraction(c) * x for v, x in self.coeffs.items()})

    def plus(self, other: "LinearForm", c=Fraction(1)) -> "LinearForm":
        out = dict(self.coeffs)
        for v, x in other.coeffs.items():
            out[v] = out.get(v, Fraction(0)) + Fraction(c) * x
        return LinearForm(out)

    def to_json(self, labels=None) -> dict:
        name = (lambda v: labels[v]) if labels is not None else str
        return {name(v): str(c) for v, c in sorted(self.coeffs.items())}


def monomial_basis(c, sub, k: int) -> list:
    """All degree-k monomials supported on a face of ``c`` that is not a face
    of ``sub`` (``sub=None`` means the absolute module), in graded-lex order."""
    if k < 0:
        raise ValueError(f"degree {k} < 0")
    if sub is not None and not sub.is_subcomplex_of(c):
        raise NotSubcomplex("second complex is not a subcomplex of the first")

    def admissible(supp):
        if supp not in c.face_set:
            return False
        return sub is None or supp not in sub.face_set

    if k == 0:
        return [()] if (not c.is_void() and admissible(())) else []
    out = []
    for m in itertools.combinations_with_replacement(c.vertices(), k):
        if admissible(mono_support(m)):
            out.append(m)
    return out


class Presentation:
    """Immutable presentation of one graded piece of an Artinian reduction."""

    def __init__(self, complex_, sub, realization: Realization, degree: int):
        self.complex = complex_
        self.sub = sub
        self.realization = realization
        self.degree = degree
        self.basis = monomial_basis(complex_, sub, degree)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.relation_columns = self._build_relations()
        self._quotient = None

    def _build_relations(self) -> list:
        if self.degree == 0:
            return []
        cols = []
        nrows = len(self.basis)
        vertices = self.complex.vertices()
        vecs = {v: self.realization.vector(v) for v in vertices}
        for m in monomial_basis(self.complex, self.sub, self.degree - 1):
            for j in range(self.realization.d):
                col = linalg.zeros(nrows)
                for v in vertices:
                    coeff = vecs[v][j]
                    if coeff == 0:
                        continue
                    i = self.index.get(mono_mul(m, (v,)))
                    if i is not None:
                        col[i] += coeff
                cols.append(col)
        return cols

    @property
    def quotient(self) -> linalg.QuotientSpace:
        if self._quotient is None:
            self._quotient = linalg.QuotientSpace(
                len(self.basis), self.relation_columns
            )
        return self._quotient

    @property
    def relation_rank(self) -> int:
        return self.quotient.rank

    @property
    def dim(self) -> int:
        return len(self.basis) - self.relation_rank

    def relations_matrix(self) -> list:
        """Rows indexed by the monomial basis, one column per relation."""
        if not self.relation_columns:
            return [[] for _ in self.basis]
        return linalg.transpose(self.relation_columns)

    def monomial_class(self, m: Monomial) -> list:
        """Ambient unit vector of a basis monomial (a representative of its class)."""
        return linalg.unit(len(self.basis), self.index[m])

    def same_module(self, other: "Presentation") -> bool:
        return (
            self.complex == other.complex
            and self.sub == other.sub
            and self.realization == other.realization
        )

    def to_json(self, labels=None) -> dict:
        return {
            "degree": self.degree,
            "basis": [mono_str(m, labels) for m in self.basis],
            "relation_rank": self.relation_rank,
            "dim": self.dim,
        }

    def __repr__(self):
        rel = "absolute" if self.sub is None else "relative"
        return (
            f"Presentation(degree={self.degree}, {rel}, "
            f"basis={len(self.basis)}, dim={self.dim})"
        )


def presentation(
    c, sub, r: Realization, k: int, require_proper: bool = True
) -> Presentation:
    if require_proper:
        ok, witness = is_proper(c, r)
        if not ok:
            raise ImproperRealization(f"face {witness} does not span properly")
    return Presentation(c, sub, r, k)


def dim_A(c, sub, r: Realization, k: int, require_proper: bool = True) -> int:
    return presentation(c, sub, r, k, require_proper).dim


def hilbert_function(c, r: Realization, require_proper: bool = True) -> tuple:
    """Dimensions ``(dim A^0, ..., dim A^d)`` of the Artinian reduction."""
    if require_proper:
        ok, witness = is_proper(c, r)
        if not ok:
            raise ImproperRealization(f"face {witness} does not span properly")
    return tuple(
        dim_A(c, None, r, k, require_proper=False) for k in range(r.d + 1)
    )


def multiplication_matrix(P_from: Presentation, P_to: Presentation, ell) -> list:
    """Lifted matrix of multiplication by a linear form on monomial bases.

    Rows are indexed by ``P_to.basis``, columns by ``P_from.basis``; products
    landing outside the target module are dropped.
    """
    coeffs = ell.coeffs if isinstance(ell, LinearForm) else ell
    mat = [linalg.zeros(len(P_from.basis)) for _ in P_to.basis]
    for j, m in enumerate(P_from.basis):
        for v, cv in coeffs.items():
            i = P_to.index.get(mono_mul(m, (v,)))
            if i is not None:
                mat[i][j] += Fraction(cv)
    return mat


@dataclass
class MultMap:
    """Rank and kernel of the map a linear form induces between two degrees."""

    rank: int
    kernel: list  # representative vectors on the source monomial basis
    matrix: list  # lifted matrix on monomial bases
    induced: list  # matrix in canonical quotient coordinates
    source_dim: int
    target_dim: int

    @property
    def is_injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective


def mult_map(P_k: Presentation, P_k1: Presentation, ell) -> MultMap:
    """Multiplication ``A^k -> A^(k+1)`` by a linear form, with exact kernel."""
    if not P_k.same_module(P_k1) or P_k1.degree != P_k.degree + 1:
        raise DegreeMismatch(
            "presentations must describe consecutive degrees of one module"
        )
    lifted = multiplication_matrix(P_k, P_k1, ell)
    dom, cod = P_k.quotient, P_k1.quotient
    induced = linalg.induced_matrix(lifted, dom, cod)
    kernel_coords = linalg.kernel_of_map(induced, dom.dim)
    kernel = [dom.lift(kc) for kc in kernel_coords]
    return MultMap(
        rank=linalg.rank(induced),
        kernel=kernel,
        matrix=lifted,
        induced=induced,
        source_dim=dom.dim,
        target_dim=cod.dim,
    )


def power_mult_rank(
    c, r: Realization, ell, k: int, sub=None, require_proper: bool = True
) -> int:
    """Rank of ``A^k -> A^(d-k)`` given by (d-2k)-fold multiplication by ``ell``."""
    d = r.d
    if 2 * k > d:
        raise DegreeMismatch(f"degree {k} exceeds d/2 = {Fraction(d, 2)}")
    pres = [
        presentation(c, sub, r, j, require_proper=require_proper and j == k)
        for j in range(k, d - k + 1)
    ]
    if len(pres) == 1:
        return pres[0].dim
    total = None
    for P_from, P_to in zip(pres, pres[1:]):
        step = multiplication_matrix(P_from, P_to, ell)
        total = step if total is None else linalg.mat_mul(step, total)
    induced = linalg.induced_matrix(total, pres[0].quotient, pres[-1].quotient)
    return linalg.rank(induced)


@dataclass
class RestrictionMap:
    matrix: list  # lifted matrix: rows target basis, columns source basis
    surjective: bool
    rank: int
    target_dim: int


def restriction_map(P_src: Presentation, P_tgt: Presentation) -> RestrictionMap:
    """Quotient map onto a subcomplex: monomials supported outside it go to 0."""
    if P_src.degree != P_tgt.degree:
        raise DegreeMismatch("restriction needs equal degrees")
    if P_src.realization != P_tgt.realization:
        raise DegreeMismatch("restriction needs a shared realization")
    if not P_tgt.complex.is_subcomplex_of(P_src.complex):
        raise NotSubcomplex("target complex is not a subcomplex of the source")
    mat = [linalg.zeros(len(P_src.basis)) for _ in P_tgt.basis]
    for j, m in enumerate(P_src.basis):
        i = P_tgt.index.get(m)
        if i is not None:
            mat[i][j] = Fraction(1)
    induced = linalg.induced_matrix(mat, P_src.quotient, P_tgt.quotient)
    rk = linalg.rank(induced)
    return RestrictionMap(
        matrix=mat, surjective=rk == P_tgt.dim, rank=rk, target_dim=P_tgt.dim
    )


def pairing_matrix(c, r: Realization, k: int, require_proper: bool = True) -> list:
    """Matrix of ``A^k x A^(d-k) -> A^d`` in the monomial bases.

    The top degree must be one-dimensional; the identification with scalars
    uses the canonical functional vanishing on the relations (nondegeneracy
    does not depend on this choice).  The matrix descends to the quotients, so
    its rank equals the rank of the induced pairing.
    """
    d = r.d
    P_top = presentation(c, None, r, d, require_proper)
    if P_top.dim != 1:
        raise TopDegreeNotOneDimensional(
            f"dim A^{d} = {P_top.dim}, expected 1"
        )
    rows_of_cols = P_top.relation_columns
    functional = linalg.kernel_of_map(rows_of_cols, len(P_top.basis))[0]
    P_k = presentation(c, None, r, k, require_proper=False)
    P_dk = presentation(c, None, r, d - k, require_proper=False)
    out = []
    for m in P_k.basis:
        row = []
        for w in P_dk.basis:
            i = P_top.index.get(mono_mul(m, w))
            row.append(functional[i] if i is not None else Fraction(0))
        out.append(row)
    return out


def check_star_link_isomorphisms(c, r: Realization, v: int, k: int) -> bool:
    """Whether the link/star dimension match and the relative multiplication
    ``x_v: A^k(star) -> A^(k+1)(star, star - v)`` is bijective."""
    star = c.star((v,))
    link = c.link((v,))
    r_link, _ = project_link(r, (v,))
    dim_link = dim_A(link, None, r_link, k, require_proper=False)
    P_star = presentation(star, None, r, k, require_proper=False)
    P_rel = presentation(star, star.deletion((v,)), r, k + 1, require_proper=False)
    step = mult_map_to_relative(P_star, P_rel, v)
    return dim_link == P_star.dim and step.is_bijective


def mult_map_to_relative(
    P_abs: Presentation, P_rel: Presentation, v: int
) -> MultMap:
    """Multiplication by ``x_v`` from an absolute degree-k piece into a relative
    degree-(k+1) module on the same complex and realization."""
    if P_rel.degree != P_abs.degree + 1:
        raise DegreeMismatch("relative target must sit one degree up")
    if P_abs.complex != P_rel.complex or P_abs.realization != P_rel.realization:
        raise DegreeMismatch("modules live on different complexes or realizations")
    lifted = multiplication_matrix(P_abs, P_rel, LinearForm.variable(v))
    dom, cod = P_abs.quotient, P_rel.quotient
    induced = linalg.induced_matrix(lifted, dom, cod)
    kernel_coords = linalg.kernel_of_map(induced, dom.dim)
    return MultMap(
        rank=linalg.rank(induced),
        kernel=[dom.lift(kc) for kc in kernel_coords],
        matrix=lifted,
        induced=induced,
        source_dim=dom.dim,
        target_dim=cod.dim,
    )

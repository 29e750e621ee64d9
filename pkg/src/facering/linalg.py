"""Exact linear algebra over the rationals.

Everything here is deterministic: elimination always pivots on the first
nonzero entry in column order, so ranks, kernels and canonical representatives
are reproducible bit for bit.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(m: int) -> list:
    return [ZERO] * m


def unit(m: int, i: int) -> list:
    v = [ZERO] * m
    v[i] = ONE
    return v


def transpose(mat: list) -> list:
    if not mat:
        return []
    return [list(row) for row in zip(*mat)]


def mat_vec(mat: list, v: list) -> list:
    return [sum((a * b for a, b in zip(row, v)), ZERO) for row in mat]


def mat_mul(a: list, b: list) -> list:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def mat_add(a: list, b: list, ca=ONE, cb=ONE) -> list:
    return [[ca * x + cb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(v: list, c) -> list:
    return [c * x for x in v]


def row_reduce(mat: list):
    """Row echelon form (in place on a copy); returns (rows, pivot_columns)."""
    rows = [list(map(frac, r)) for r in mat]
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank(mat: list) -> int:
    if not mat or not mat[0]:
        return 0
    return len(row_reduce(mat)[1])


def nullspace(mat: list) -> list:
    """Right kernel basis, one vector per free column, in column order."""
    if not mat:
        return []
    ncols = len(mat[0])
    rows, pivots = row_reduce(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = zeros(ncols)
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def left_nullspace(mat: list) -> list:
    return nullspace(transpose(mat))


def span_dim(vectors: list) -> int:
    vectors = [v for v in vectors if any(x != 0 for x in v)]
    return rank(vectors)


def in_span(vectors: list, v: list) -> bool:
    return span_dim(vectors) == span_dim(vectors + [v])


def spans_equal(a: list, b: list) -> bool:
    ra, rb = span_dim(a), span_dim(b)
    return ra == rb == span_dim(a + b)


def span_contains(a: list, b: list) -> bool:
    """Whether span(b) <= span(a)."""
    return span_dim(a) == span_dim(a + b)


def spans_intersect_trivially(a: list, b: list) -> bool:
    return span_dim(a + b) == span_dim(a) + span_dim(b)


def intersect_spans(a: list, b: list) -> list:
    """Basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    m = len(a[0])
    # columns of A then columns of -B; kernel vectors give coefficients
    cols = transpose(a) if a else []
    colsb = transpose(b) if b else []
    mat = [ca + [-x for x in cb] for ca, cb in zip(cols, colsb)] if cols else []
    if not mat:
        return []
    out = []
    na = len(a)
    for kvec in nullspace(mat):
        v = zeros(m)
        for i in range(na):
            if kvec[i] != 0:
                v = [x + kvec[i] * y for x, y in zip(v, a[i])]
        if any(x != 0 for x in v):
            out.append(v)
    # reduce to an independent set, deterministically
    basis = []
    for v in out:
        if not in_span(basis, v):
            basis.append(v)
    return basis


class QuotientSpace:
    """Canonical reduction of an ambient Q^m modulo the span of relation columns.

    The pivot rows of the column-echelonized relations determine a canonical
    complement spanned by the unit vectors at the remaining ("free") rows;
    ``reduce`` maps any vector to its unique representative supported there.
    """

    def __init__(self, ambient_dim: int, relation_columns):
        self.ambient_dim = ambient_dim
        self._echelon = []  # list of (pivot_row, column), pivot entry normalized to 1
        for col in relation_columns:
            self._insert(list(map(frac, col)))
        self.rank = len(self._echelon)
        self.dim = ambient_dim - self.rank
        pivot_rows = {p for p, _ in self._echelon}
        self.free_rows = [i for i in range(ambient_dim) if i not in pivot_rows]

    def _insert(self, v):
        v = self._eliminate(v)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return
        piv = v[p]
        v = [x / piv for x in v]
        self._echelon.append((p, v))
        self._echelon.sort(key=lambda pc: pc[0])

    def _eliminate(self, v):
        v = list(v)
        for p, col in self._echelon:
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, col)]
        return v

    def reduce(self, v) -> list:
        """Canonical representative of v modulo the relation span."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"expected length {self.ambient_dim}, got {len(v)}")
        return self._eliminate(list(map(frac, v)))

    def contains(self, v) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def coords(self, v) -> list:
        r = self.reduce(v)
        return [r[i] for i in self.free_rows]

    def lift(self, coords) -> list:
        v = zeros(self.ambient_dim)
        for i, c in zip(self.free_rows, coords):
            v[i] = frac(c)
        return v


def vstack(a: list, b: list) -> list:
    return [list(r) for r in a] + [list(r) for r in b]


def kernel_of_map(mat: list, ncols: int) -> list:
    """Right kernel of a possibly 0-row matrix whose column count is ``ncols``."""
    if not mat:
        return [unit(ncols, i) for i in range(ncols)]
    return nullspace(mat)


def induced_matrix(action: list, dom: QuotientSpace, cod: QuotientSpace) -> list:
    """Matrix of a map on quotients, in canonical quotient coordinates.

    ``action`` is the lifted matrix on ambient spaces (rows: codomain ambient,
    columns: domain ambient); it must carry the domain relations into the
    codomain relation span for the result to be meaningful.
    """
    cols = []
    for i in dom.free_rows:
        image = [action[r][i] for r in range(len(action))]
        cols.append(cod.coords(image))
    return transpose(cols) if cols else [[] for _ in range(cod.dim)]

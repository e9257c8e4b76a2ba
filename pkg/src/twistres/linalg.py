"""Exact sparse linear algebra: echelon forms, solving, kernels, intersections.

Vectors are dicts ``column -> nonzero scalar``; matrices are lists of such
rows.  Pivots are chosen column-major (leftmost column first, first usable
row first), so every result is reproducible bit for bit.
"""

from __future__ import annotations

from .errors import DimensionMismatch


class SparseVector:
    """Sparse vector with an explicit ambient dimension."""

    __slots__ = ("n", "entries")

    def __init__(self, n, entries=None):
        self.n = n
        self.entries = {}
        if entries:
            for j, c in entries.items():
                if c:
                    if not 0 <= j < n:
                        raise DimensionMismatch(f"index {j} outside dimension {n}")
                    self.entries[j] = c

    @classmethod
    def from_dense(cls, values, field):
        ent = {j: field.from_int(v) if isinstance(v, int) else v
               for j, v in enumerate(values) if v}
        return cls(len(values), ent)

    def to_dense(self, field):
        out = [field.zero] * self.n
        for j, c in self.entries.items():
            out[j] = c
        return out

    def get(self, j):
        return self.entries.get(j)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, SparseVector) and self.n == other.n \
            and self.entries == other.entries

    def __repr__(self):
        body = ", ".join(f"{j}: {c}" for j, c in sorted(self.entries.items()))
        return f"SparseVector({self.n}, {{{body}}})"


class SparseMatrix:
    """Row-major sparse matrix."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [dict(r) for r in rows] if rows is not None else [
            {} for _ in range(nrows)]
        if len(self.rows) != nrows:
            raise DimensionMismatch("row count does not match rows given")
        for r in self.rows:
            for j in r:
                if not 0 <= j < ncols:
                    raise DimensionMismatch(f"column {j} outside width {ncols}")

    @classmethod
    def from_dense(cls, rows, field):
        ncols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
            data.append({j: field.from_int(v) if isinstance(v, int) else v
                         for j, v in enumerate(row) if v})
        return cls(len(rows), ncols, data)

    def row_vectors(self):
        return [SparseVector(self.ncols, r) for r in self.rows]

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols})"


def _row_sub_scaled(dst, src, factor):
    """dst -= factor * src, dropping zeros."""
    for j, c in src.items():
        new = dst.get(j, 0) - factor * c
        if new:
            dst[j] = new
        else:
            dst.pop(j, None)


def rref(rows, ncols):
    """Reduced row echelon form of a list of dict-rows.

    Returns ``(echelon_rows, pivots)`` where row i has leading 1 in column
    ``pivots[i]`` and that column is zero elsewhere.  Input rows are not
    mutated.
    """
    work = [dict(r) for r in rows if r]
    echelon = []
    pivots = []
    for col in range(ncols):
        hit = None
        for idx, row in enumerate(work):
            if row.get(col):
                hit = idx
                break
        if hit is None:
            continue
        piv_row = work.pop(hit)
        inv = piv_row[col]
        piv_row = {j: c / inv for j, c in piv_row.items()}
        for row in work:
            f = row.get(col)
            if f:
                _row_sub_scaled(row, piv_row, f)
        for row in echelon:
            f = row.get(col)
            if f:
                _row_sub_scaled(row, piv_row, f)
        echelon.append(piv_row)
        pivots.append(col)
        work = [r for r in work if r]
        if not work:
            break
    return echelon, pivots


def rank(matrix: SparseMatrix) -> int:
    """Exact rank over the scalar field."""
    _, pivots = rref(matrix.rows, matrix.ncols)
    return len(pivots)


def reduce_against(echelon, pivots, vec):
    """Reduce ``vec`` (a dict) against reduced-echelon rows.

    Returns ``(coords, residue)`` with
    ``vec = sum(coords[i] * echelon[i]) + residue`` and ``residue`` free of
    pivot columns.
    """
    residue = dict(vec)
    coords = {}
    for i, col in enumerate(pivots):
        f = residue.get(col)
        if f:
            coords[i] = f
            _row_sub_scaled(residue, echelon[i], f)
    return coords, residue


def member_coords(echelon, pivots, vec):
    """Coordinates of ``vec`` over a reduced-echelon basis, or None."""
    coords, residue = reduce_against(echelon, pivots, vec)
    return None if residue else coords


def solve_linear_system(matrix: SparseMatrix, b: SparseVector):
    """First solution of A x = b under the fixed pivot order, or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    if b.n != matrix.nrows:
        raise DimensionMismatch(
            f"rhs dimension {b.n} does not match {matrix.nrows} rows")
    ncols = matrix.ncols
    aug = []
    for i, row in enumerate(matrix.rows):
        r = dict(row)
        c = b.get(i)
        if c:
            r[ncols] = c
        aug.append(r)
    echelon, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = {}
    for i, col in enumerate(pivots):
        c = echelon[i].get(ncols)
        if c:
            x[col] = c
    solution = SparseVector(ncols, x)
    if __debug__:
        assert matrix_product_vec(matrix, solution) == b
    return solution


def kernel_basis(matrix: SparseMatrix):
    """Basis of the null space of A, one vector per free column."""
    echelon, pivots = rref(matrix.rows, matrix.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.ncols):
        if free in pivot_set:
            continue
        vec = {free: _one_like(matrix, free)}
        for i, col in enumerate(pivots):
            c = echelon[i].get(free)
            if c:
                vec[col] = -c
        vector = SparseVector(matrix.ncols, vec)
        if __debug__:
            assert matrix_product_vec(matrix, vector).is_zero()
        basis.append(vector)
    return basis


def _one_like(matrix, col):
    # Recover a multiplicative unit from any stored coefficient; for the
    # all-zero matrix the integer unit interoperates with every scalar type.
    for row in matrix.rows:
        for c in row.values():
            return c / c
    return 1


def matrix_product_vec(matrix: SparseMatrix, x: SparseVector) -> SparseVector:
    if x.n != matrix.ncols:
        raise DimensionMismatch("vector does not match column count")
    out = {}
    for i, row in enumerate(matrix.rows):
        acc = None
        for j, c in row.items():
            xc = x.get(j)
            if xc:
                acc = c * xc if acc is None else acc + c * xc
        if acc:
            out[i] = acc
    return SparseVector(matrix.nrows, out)


def intersect_pair(a_rows, b_rows, ncols):
    """Row-span intersection of two sparse row lists."""
    a_rows = [r for r in a_rows if r]
    b_rows = [r for r in b_rows if r]
    if not a_rows or not b_rows:
        return []
    # Kernel of the (ncols) x (len(a)+len(b)) matrix whose columns are the
    # a-rows and the negated b-rows; the a-part of each kernel vector maps
    # back to an intersection vector.
    na = len(a_rows)
    cols = {}
    for t, row in enumerate(a_rows):
        for j, c in row.items():
            cols.setdefault(j, {})[t] = c
    for t, row in enumerate(b_rows):
        for j, c in row.items():
            cols.setdefault(j, {})[na + t] = -c
    stacked = SparseMatrix(ncols, na + len(b_rows),
                           [cols.get(j, {}) for j in range(ncols)])
    vectors = []
    for k in kernel_basis(stacked):
        vec = {}
        for t, c in k.entries.items():
            if t < na:
                for j, cc in a_rows[t].items():
                    new = vec.get(j, 0) + c * cc
                    if new:
                        vec[j] = new
                    else:
                        vec.pop(j, None)
        if vec:
            vectors.append(vec)
    echelon, _ = rref(vectors, ncols)
    return echelon


def subspace_intersection(bases):
    """Intersection of row spans, as a reduced-echelon SparseMatrix.

    ``bases`` is a nonempty list of SparseMatrix with equal column counts.
    """
    if not bases:
        raise DimensionMismatch("subspace_intersection needs at least one basis")
    ncols = bases[0].ncols
    for m in bases:
        if m.ncols != ncols:
            raise DimensionMismatch("ambient dimensions differ")
    current, _ = rref(bases[0].rows, ncols)
    for m in bases[1:]:
        current = intersect_pair(current, m.rows, ncols)
        if not current:
            break
    return SparseMatrix(len(current), ncols, current)

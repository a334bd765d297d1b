"""Dense matrix helpers over a :class:`~nilsoliton.scalar.Field`.

Matrices are lists of rows. Elimination runs on sparse dict rows because the
constraint systems built elsewhere (derivations, soliton equations) are mostly
zeros.
"""

from __future__ import annotations

from .scalar import EXACT, Field, field_of


def zeros(rows: int, cols: int, field: Field = EXACT):
    return [[field.zero] * cols for _ in range(rows)]


def identity(n: int, field: Field = EXACT):
    out = zeros(n, n, field)
    for i in range(n):
        out[i][i] = field.one
    return out


def diag(values, field: Field = EXACT):
    n = len(values)
    out = zeros(n, n, field)
    for i, v in enumerate(values):
        out[i][i] = field.convert(v)
    return out


def unit(n: int, i: int, field: Field = EXACT):
    v = [field.zero] * n
    v[i] = field.one
    return v


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def bilinear(g, u, v):
    """u^T g v."""
    return dot(u, matvec(g, v))


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a, s):
    return [[s * x for x in row] for row in a]


def vadd(u, v):
    return [x + y for x, y in zip(u, v)]


def vsub(u, v):
    return [x - y for x, y in zip(u, v)]


def vscale(u, s):
    return [s * x for x in u]


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def columns_to_matrix(cols):
    """Matrix whose columns are the given vectors."""
    return transpose(cols)


def is_zero_matrix(a, field: Field) -> bool:
    return all(field.is_zero(x) for row in a for x in row)


def matrices_equal(a, b, field: Field) -> bool:
    return len(a) == len(b) and all(
        field.is_zero(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def is_symmetric(a, field: Field) -> bool:
    n = len(a)
    return all(field.is_zero(a[i][j] - a[j][i]) for i in range(n) for j in range(i + 1, n))


def _sparse_rref(rows, ncols, field):
    sparse = [
        {j: v for j, v in (row.items() if isinstance(row, dict) else enumerate(row))
         if not field.is_zero(v)}
        for row in rows
    ]
    pivots = []
    r = 0
    for col in range(ncols):
        if r == len(sparse):
            break
        candidates = [i for i in range(r, len(sparse)) if col in sparse[i]]
        if not candidates:
            continue
        if field.exact:
            p = candidates[0]
        else:
            p = max(candidates, key=lambda i: abs(sparse[i][col]))
        sparse[r], sparse[p] = sparse[p], sparse[r]
        prow = sparse[r]
        inv = field.one / prow[col]
        for j in prow:
            prow[j] = prow[j] * inv
        prow[col] = field.one
        for i, row in enumerate(sparse):
            if i == r or col not in row:
                continue
            f = row[col]
            for j, v in prow.items():
                nv = row.get(j, field.zero) - f * v
                if field.is_zero(nv):
                    row.pop(j, None)
                else:
                    row[j] = nv
            row.pop(col, None)
        pivots.append(col)
        r += 1
    return sparse[:r], pivots


def rref(a, field: Field | None = None, ncols: int | None = None):
    """Reduced row-echelon form. Returns (nonzero rows, pivot columns)."""
    if field is None:
        field = field_of(a)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    sparse, pivots = _sparse_rref(a, ncols, field)
    dense = [[row.get(j, field.zero) for j in range(ncols)] for row in sparse]
    return dense, pivots


def rank(a, field: Field | None = None) -> int:
    if not a:
        return 0
    return len(rref(a, field)[1])


def nullspace(a, field: Field | None = None, ncols: int | None = None):
    """Basis of {x : a x = 0}; one vector per free column, that entry set to 1.

    Rows may be dense lists or ``{column: value}`` dicts (then ``ncols`` is required).
    """
    if field is None:
        field = field_of(a)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    sparse, pivots = _sparse_rref(a, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(sparse, pivots):
            if free in row:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(a, b, field: Field | None = None):
    """One solution of a x = b (free variables set to zero), or None if inconsistent."""
    if field is None:
        field = field_of(a, b)
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    sparse, pivots = _sparse_rref(aug, ncols + 1, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(sparse, pivots):
        x[pc] = row.get(ncols, field.zero)
    return x


def inverse(a, field: Field | None = None):
    if field is None:
        field = field_of(a)
    n = len(a)
    aug = [list(row) + unit(n, i, field) for i, row in enumerate(a)]
    sparse, pivots = _sparse_rref(aug, 2 * n, field)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [[row.get(n + j, field.zero) for j in range(n)] for row in sparse[:n]]


def det(a, field: Field | None = None):
    if field is None:
        field = field_of(a)
    m = [list(row) for row in a]
    n = len(m)
    result = field.one
    for col in range(n):
        candidates = [i for i in range(col, n) if not field.is_zero(m[i][col])]
        if not candidates:
            return field.zero
        p = candidates[0] if field.exact else max(candidates, key=lambda i: abs(m[i][col]))
        if p != col:
            m[col], m[p] = m[p], m[col]
            result = -result
        piv = m[col][col]
        result = result * piv
        for i in range(col + 1, n):
            f = m[i][col] / piv
            if not field.is_zero(f):
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return result


def change_of_basis(form, basis_cols):
    """Gram matrix of a bilinear form in the basis given by column vectors."""
    b = columns_to_matrix(basis_cols)
    return matmul(transpose(b), matmul(form, b))

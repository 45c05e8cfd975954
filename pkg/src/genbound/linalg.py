"""Exact matrix arithmetic over prime fields F_p.

Matrices are tuples of row tuples with entries reduced mod p. Everything
here is integer arithmetic; no floating point is involved.
"""

from __future__ import annotations

from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def mat_identity(dim: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))


def normalize_matrix(rows: Sequence[Sequence[int]], p: int) -> Matrix:
    m = tuple(tuple(x % p for x in row) for row in rows)
    dim = len(m)
    if any(len(row) != dim for row in m):
        raise ValueError("matrix is not square")
    return m


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    dim = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Vector, p: int) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def vec_add(u: Vector, v: Vector, p: int) -> Vector:
    return tuple((x + y) % p for x, y in zip(u, v))


def vec_neg(v: Vector, p: int) -> Vector:
    return tuple((-x) % p for x in v)


def mat_inv(a: Matrix, p: int) -> Matrix:
    """Inverse by Gauss-Jordan elimination; raises on singular input."""
    dim = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(dim)] for i, row in enumerate(a)]
    for col in range(dim):
        pivot = next((r for r in range(col, dim) if aug[r][col] % p), None)
        if pivot is None:
            raise ValueError("matrix is singular mod %d" % p)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_pivot = pow(aug[col][col], -1, p)
        aug[col] = [(x * inv_pivot) % p for x in aug[col]]
        for r in range(dim):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [(x - factor * y) % p for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[dim:]) for row in aug)


def mat_pow(a: Matrix, n: int, p: int) -> Matrix:
    if n < 0:
        return mat_pow(mat_inv(a, p), -n, p)
    result = mat_identity(len(a))
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base, p)
        base = mat_mul(base, base, p)
        n >>= 1
    return result


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    dim = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for row in b:
            rows.append((0,) * offset + tuple(row) + (0,) * (dim - offset - len(b)))
        offset += len(b)
    return tuple(rows)


class _RowReducer:
    """Incremental row-echelon basis for a subspace of F_p^dim."""

    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self.pivots: dict[int, Vector] = {}

    def reduce(self, v: Vector) -> Vector:
        p = self.p
        v = list(v)
        for col, row in self.pivots.items():
            if v[col]:
                factor = v[col]
                v = [(x - factor * y) % p for x, y in zip(v, row)]
        return tuple(v)

    def add(self, v: Vector) -> bool:
        """Add v to the span; returns True if it was independent."""
        v = self.reduce(v)
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return False
        inv_lead = pow(v[lead], -1, self.p)
        v = tuple((x * inv_lead) % self.p for x in v)
        for col, row in list(self.pivots.items()):
            if row[lead]:
                factor = row[lead]
                self.pivots[col] = tuple(
                    (x - factor * y) % self.p for x, y in zip(row, v)
                )
        self.pivots[lead] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def spin_dimension(v: Vector, matrices: Sequence[Matrix], p: int) -> int:
    """Dimension of the smallest subspace containing v invariant under matrices."""
    dim = len(v)
    reducer = _RowReducer(dim, p)
    queue = []
    if reducer.add(v):
        queue.append(v)
    while queue:
        w = queue.pop()
        for m in matrices:
            image = mat_vec(m, w, p)
            if reducer.add(image):
                queue.append(image)
        if reducer.rank == dim:
            return dim
    return reducer.rank


def has_no_joint_fixed_vector(matrices: Sequence[Matrix], p: int) -> bool:
    """True iff the only v with Av = v for every matrix A is v = 0.

    Equivalent to the stacked system (A - I)v = 0 having full rank.
    """
    if not matrices:
        return False
    dim = len(matrices[0])
    reducer = _RowReducer(dim, p)
    for a in matrices:
        for i in range(dim):
            row = tuple((a[i][j] - (1 if i == j else 0)) % p for j in range(dim))
            reducer.add(row)
        if reducer.rank == dim:
            return True
    return reducer.rank == dim

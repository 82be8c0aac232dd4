"""Exact linear algebra over any field-like element type.

Matrices are tuples of tuples (rows) of elements supporting +, -, *, /,
unary -, and truthiness (nonzero test).  Used with Scalar for symbolic work
and with QI for the constant-matrix pencil engine.  Subspaces are kept in
reduced row echelon form, so subspace equality is structural.
"""

from __future__ import annotations

from .errors import DimensionMismatch, SingularMatrix
from .scalars import SC_ONE, SC_ZERO, Scalar


def freeze(rows):
    return tuple(tuple(r) for r in rows)


def shape(m):
    return (len(m), len(m[0]) if m else 0)


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_mul(a, b):
    if shape(a)[1] != shape(b)[0]:
        raise DimensionMismatch(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(
        tuple(_dot(row, col) for col in bt)
        for row in a
    )


def _dot(u, v):
    acc = None
    for x, y in zip(u, v):
        if x and y:
            acc = x * y if acc is None else acc + x * y
    if acc is None:
        acc = u[0] - u[0] if u else SC_ZERO
    return acc


def mat_vec(m, v):
    if shape(m)[1] != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(_dot(row, v) for row in m)


def identity(n, one=SC_ONE, zero=SC_ZERO):
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def zero_matrix(rows, cols, zero=SC_ZERO):
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def block_diag(blocks, zero=SC_ZERO):
    n = sum(shape(b)[0] for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        k = shape(b)[0]
        for r in b:
            rows.append(tuple([zero] * off + list(r) + [zero] * (n - off - k)))
        off += k
    return tuple(rows)


def rref(rows):
    """Reduced row echelon form.  Returns (rows as tuples, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return freeze(m[:r]), tuple(pivots)


def rank(rows):
    return len(rref(rows)[0])


def nullspace(rows, ncols=None, one=SC_ONE, zero=SC_ZERO):
    """Basis (tuple of row vectors) of the right null space."""
    if ncols is None:
        ncols = shape(rows)[1]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            x = red[r][fc]
            if x:
                v[pc] = -x
        basis.append(tuple(v))
    return tuple(basis)


def inverse(rows, one=SC_ONE, zero=SC_ZERO):
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("inverse requires a square matrix")
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if len(red) < n or list(pivots[:n]) != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return freeze(r[n:] for r in red)


def det(rows):
    """Determinant by fraction-producing Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return SC_ONE
    m = [list(r) for r in rows]
    sign = 1
    acc = None
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k]:
                piv = i
                break
        if piv is None:
            x = m[0][0]
            return x - x  # structured zero of the element type
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        p = m[k][k]
        acc = p if acc is None else acc * p
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return acc if sign > 0 else -acc


class Subspace:
    """Subspace of the coordinate space, basis in reduced row echelon form."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient, basis, _canonical=False):
        if not _canonical:
            basis, _ = rref(basis)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", freeze(basis))

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def span(ambient, vectors) -> "Subspace":
        vectors = [v for v in vectors if any(v)]
        return Subspace(ambient, vectors)

    @staticmethod
    def zero(ambient) -> "Subspace":
        return Subspace(ambient, (), _canonical=True)

    @staticmethod
    def full(ambient) -> "Subspace":
        return Subspace(ambient, identity(ambient), _canonical=True)

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def contains(self, vector) -> bool:
        if len(vector) != self.ambient:
            raise DimensionMismatch("vector has wrong length")
        v = list(vector)
        for row in self.basis:
            pc = next(k for k, x in enumerate(row) if x)
            if v[pc]:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, row)]
        return not any(v)

    def contains_subspace(self, other) -> bool:
        return all(self.contains(v) for v in other.basis)

    def add(self, other) -> "Subspace":
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other) -> "Subspace":
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient)
        # columns of the system are coefficients (x, y) with x*U = y*W
        negated = tuple(tuple(-x for x in v) for v in other.basis)
        stacked = transpose(tuple(self.basis) + negated)
        sols = nullspace(stacked, ncols=self.dim + other.dim)
        vecs = []
        for s in sols:
            x = s[: self.dim]
            vec = [SC_ZERO] * self.ambient
            for coef, row in zip(x, self.basis):
                if coef:
                    vec = [a + coef * b for a, b in zip(vec, row)]
            vecs.append(tuple(vec))
        return Subspace.span(self.ambient, vecs)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient})"


def scalar_matrix(rows_of_strings):
    """Build a Scalar matrix from nested string/int/Scalar entries."""
    out = []
    for row in rows_of_strings:
        out.append(
            tuple(
                x
                if isinstance(x, Scalar)
                else (Scalar.rational(x) if isinstance(x, int) else Scalar.parse(x))
                for x in row
            )
        )
    return tuple(out)

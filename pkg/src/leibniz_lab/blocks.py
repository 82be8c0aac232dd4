"""The six canonical bilinear-form block families and the form/algebra maps.

Kinds and admissible sizes (size = matrix dimension):
    A: odd sizes 1, 3, 5, ...      (A_1 is the 1x1 zero block)
    B: even sizes, parameter c with c not in {1, -1}
    C: odd sizes
    D: even sizes with size/2 even (4, 8, ...)
    E: even sizes
    F: even sizes with size/2 odd (2, 6, ...)

A nilpotent algebra with one-dimensional derived subalgebra corresponds to
its form matrix N via [x_i, x_j] = N[i][j] x_n with x_n annihilating.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import (
    StructureConstants,
    derived_subalgebra,
    is_nilpotent,
    verify_leibniz,
)
from .errors import InvalidBlock, PreconditionFailed
from .linalg import block_diag, rank, transpose
from .scalars import (
    QI,
    QI_ONE,
    SC_ONE,
    SC_ZERO,
    Scalar,
    b_constraint,
    parse_scalar,
)

_NEG_ONE = QI(-1)


@dataclass(frozen=True)
class CanonicalBlock:
    kind: str
    size: int
    parameter: Scalar | None = None

    def __post_init__(self):
        kind, size = self.kind, self.size
        if kind not in "ABCDEF":
            raise InvalidBlock(f"unknown block kind {kind!r}")
        if size < 1:
            raise InvalidBlock("block size must be positive")
        odd = size % 2 == 1
        if kind in "AC" and not odd:
            raise InvalidBlock(f"{kind}-blocks have odd size, got {size}")
        if kind in "BDEF" and odd:
            raise InvalidBlock(f"{kind}-blocks have even size, got {size}")
        if kind == "D" and (size // 2) % 2 != 0:
            raise InvalidBlock(f"D-blocks need size/2 even, got {size}")
        if kind == "F" and (size // 2) % 2 != 1:
            raise InvalidBlock(f"F-blocks need size/2 odd, got {size}")
        if kind == "B":
            if self.parameter is None:
                raise InvalidBlock("B-blocks carry a parameter")
            if self.parameter.is_constant() and self.parameter.as_qi() in (
                QI_ONE,
                _NEG_ONE,
            ):
                raise InvalidBlock("B-block parameter may not be 1 or -1")
        elif self.parameter is not None:
            raise InvalidBlock(f"{kind}-blocks carry no parameter")

    @property
    def name(self) -> str:
        if self.kind == "B":
            return f"B{self.size}({self.parameter})"
        return f"{self.kind}{self.size}"

    def structural_name(self) -> str:
        return f"{self.kind}{self.size}"

    def constraints(self):
        if self.kind == "B" and not self.parameter.is_constant():
            (name,) = self.parameter.parameters()
            return (b_constraint(name),)
        return ()


_BLOCK_NAME_RE = re.compile(r"([A-F])(\d+)(?:\((.*)\))?\Z")


def parse_block_name(text: str) -> CanonicalBlock:
    m = _BLOCK_NAME_RE.match(text.strip())
    if not m:
        raise InvalidBlock(f"cannot parse block name {text!r}")
    kind, size, param = m.group(1), int(m.group(2)), m.group(3)
    return CanonicalBlock(
        kind, size, parse_scalar(param) if param is not None else None
    )


def canonical_block_matrix(b: CanonicalBlock):
    """The exact canonical matrix of the block, as a Scalar matrix."""
    n = b.size
    M = [[SC_ZERO] * n for _ in range(n)]
    if b.kind == "A":
        k = (n - 1) // 2
        for r in range(k):
            M[r][k + 1 + r] = SC_ONE
            M[k + 1 + r][r + 1] = SC_ONE
    elif b.kind == "B":
        k = n // 2
        c = b.parameter
        for r in range(k):
            for s in range(k):
                if r + s == k - 1:
                    M[r][k + s] = SC_ONE
                    M[k + r][s] = c
                elif r + s == k and r >= 1:
                    M[r][k + s] = c
                    M[k + r][s] = SC_ONE
    elif b.kind == "C":
        k = (n - 1) // 2
        for r in range(n):
            M[r][n - 1 - r] = SC_ONE
        for r in range(1, n):
            M[r][n - r] = SC_ONE if r <= k else -SC_ONE
    elif b.kind == "D":
        k = n // 2
        for r in range(k):
            for s in range(k):
                if r + s == k - 1:
                    M[r][k + s] = SC_ONE
                    M[k + r][s] = SC_ONE
                elif r + s == k and r >= 1:
                    M[r][k + s] = SC_ONE
                    M[k + r][s] = -SC_ONE
    elif b.kind == "E":
        k = n // 2
        for r in range(n):
            M[r][n - 1 - r] = SC_ONE if r < k else -SC_ONE
        for r in range(1, n):
            M[r][n - r] = SC_ONE
    elif b.kind == "F":
        k = n // 2
        for r in range(k):
            for s in range(k):
                if r + s == k - 1:
                    M[r][k + s] = SC_ONE
                    M[k + r][s] = -SC_ONE
                elif r + s == k and r >= 1:
                    M[r][k + s] = SC_ONE
                    M[k + r][s] = SC_ONE
    return tuple(tuple(row) for row in M)


def direct_sum_matrix(blocks):
    return block_diag([canonical_block_matrix(b) for b in blocks])


def is_skew_matrix(M) -> bool:
    n = len(M)
    return all(not (M[i][j] + M[j][i]) for i in range(n) for j in range(i, n))


def algebra_from_blocks(blocks, label=None) -> StructureConstants:
    """dim = sum(sizes) + 1 algebra with [x_i, x_j] = N[i][j] x_n."""
    N = direct_sum_matrix(blocks)
    return algebra_from_form(N, label=label, constraints=_block_constraints(blocks))


def _block_constraints(blocks):
    out = []
    for b in blocks:
        for con in b.constraints():
            if con not in out:
                out.append(con)
    return tuple(out)


def algebra_from_form(N, label=None, constraints=()) -> StructureConstants:
    m = len(N)
    n = m + 1
    t = [[[SC_ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(m):
        for j in range(m):
            t[i][j][n - 1] = N[i][j]
    return StructureConstants(
        n,
        tuple(tuple(tuple(v) for v in row) for row in t),
        tuple(constraints),
        label,
    )


def form_from_algebra(A: StructureConstants):
    """Extract the bilinear form of a nilpotent algebra with dim A^2 = 1.

    Returns (form matrix over the coordinate complement, spanning vector of
    A^2).  The complement is the coordinate complement of the echelon pivot.
    """
    if not verify_leibniz(A):
        raise PreconditionFailed("not a Leibniz algebra")
    derived = derived_subalgebra(A)
    if derived.dim != 1:
        raise PreconditionFailed(f"dim A^2 = {derived.dim}, need 1")
    if not is_nilpotent(A):
        raise PreconditionFailed("algebra is not nilpotent")
    xn = derived.basis[0]
    pivot = next(k for k, c in enumerate(xn) if c)
    comp = [k for k in range(A.dim) if k != pivot]
    form = []
    for u in comp:
        row = []
        for v in comp:
            w = A.tensor[u][v]
            lam = w[pivot]  # the pivot coefficient of xn is 1 in echelon form
            for k, c in enumerate(w):
                if c != lam * xn[k]:
                    raise PreconditionFailed("products do not lie in A^2")
            row.append(lam)
        form.append(tuple(row))
    return tuple(form), xn


def has_zero_summand(M) -> bool:
    """True iff some nonzero v has Mv = 0 and M^T v = 0 (split detector)."""
    m = len(M)
    if m == 0:
        return False
    stacked = tuple(M) + tuple(transpose(M))
    return rank(stacked) < m


def b_param_normalize(c: Scalar) -> Scalar:
    """Canonical representative of {c, 1/c} under the (re, im) lex order."""
    if not c.is_constant():
        return c
    v = c.as_qi()
    if not v:
        return c
    w = v.inverse()
    return Scalar.const(min(v, w, key=lambda q: q.sort_key()))


_KIND_RANK = {k: r for r, k in enumerate("ABCDEF")}


def block_sort_key(b: CanonicalBlock):
    pkey = ""
    if b.parameter is not None:
        pkey = str(b.parameter)
    return (-b.size, _KIND_RANK[b.kind], pkey)


def normalize_blocks(blocks):
    """Canonical multiset: B parameters normalized, deterministic order."""
    out = []
    for b in blocks:
        if b.kind == "B":
            out.append(CanonicalBlock("B", b.size, b_param_normalize(b.parameter)))
        else:
            out.append(b)
    return tuple(sorted(out, key=block_sort_key))


def blocks_name(blocks) -> str:
    return " ".join(b.name for b in blocks)

"""Congruence engine: Kronecker invariants of the pencil t*M + u*M^T.

Two square matrices over an algebraically closed field of characteristic 0
are congruent exactly when their pencils t*M + u*M^T are strictly
equivalent, so the pencil's Kronecker data (minimal indices, finite and
infinite elementary divisors) fingerprints the congruence class.  Everything
here is computed exactly: Smith normal form over the univariate polynomial
ring for divisors, rank sequences of expansion matrices for minimal indices,
and a resolvent shortcut for regular pencils.  sympy supplies exact
factorization over Q(i), optionally with formal parameters.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .blocks import CanonicalBlock, canonical_block_matrix, normalize_blocks
from .errors import DictionaryMiss, ParameterNotSupported
from .linalg import inverse as mat_inverse
from .linalg import mat_mul, rank as mat_rank, transpose
from .scalars import QI, QI_ONE, QI_ZERO, Scalar

def _sympy_t():
    import sympy

    return sympy.Symbol("t")


# ---------------------------------------------------------------------------
# Univariate polynomials over a field-like element type
# ---------------------------------------------------------------------------
class UPoly:
    """Dense univariate polynomial; coeffs[k] is the t^k coefficient."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "c", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("UPoly is immutable")

    @property
    def degree(self):
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, x in enumerate(b):
            out[k] = out[k] + x
        return UPoly(out)

    def __neg__(self):
        return UPoly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.c or not other.c:
            return UPoly(())
        out = [None] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(other.c):
                if not y:
                    continue
                p = x * y
                out[i + j] = p if out[i + j] is None else out[i + j] + p
        zero = self.c[0] - self.c[0]
        return UPoly([zero if v is None else v for v in out])

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if len(self.c) < len(other.c):
            return UPoly(()), self
        rem = list(self.c)
        lead = other.c[-1]
        dq = len(self.c) - len(other.c)
        quo = [None] * (dq + 1)
        zero = lead - lead
        for k in range(dq, -1, -1):
            top = rem[k + len(other.c) - 1]
            if not top:
                quo[k] = zero
                continue
            q = top / lead
            quo[k] = q
            for j, y in enumerate(other.c):
                if y:
                    rem[k + j] = rem[k + j] - q * y
        return UPoly(quo), UPoly(rem[: len(other.c) - 1])

    def monic(self):
        if not self.c:
            return self
        lead = self.c[-1]
        inv = QI_ONE / lead if isinstance(lead, QI) else lead.inverse()
        return UPoly([x * inv for x in self.c])

    def trailing_zero_count(self):
        for k, x in enumerate(self.c):
            if x:
                return k
        return len(self.c)

    def scale(self, unit):
        return UPoly([x * unit for x in self.c])

    def __repr__(self):
        return f"UPoly({self.c})"


def _coeff_magnitude(p: UPoly):
    out = 0
    for q in p.c:
        if isinstance(q, QI):
            out = max(
                out,
                abs(q.re.numerator),
                q.re.denominator,
                abs(q.im.numerator),
                q.im.denominator,
            )
    return out


def _unit_rescale(polys):
    """Rescale a row/column by a rational unit to integer content 1.

    Unit scalings do not change the Smith form (pivots are re-normalized
    monic at the end).  Applies only to QI coefficients; other coefficient
    fields are returned unchanged.
    """
    from math import gcd

    num_g = 0
    den_l = 1
    for p in polys:
        for q in p.c:
            if not isinstance(q, QI):
                return polys
            for f in (q.re, q.im):
                if f:
                    num_g = gcd(num_g, abs(f.numerator))
                    den_l = den_l // gcd(den_l, f.denominator) * f.denominator
    if num_g == 0:
        return polys
    scale = Fraction(den_l, num_g)
    if scale == 1:
        return polys
    unit = QI(scale)
    return [p.scale(unit) for p in polys]


def smith_invariant_factors(mat):
    """Nonzero invariant factors (monic, divisibility chain) of a UPoly matrix."""
    m = [list(row) for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    factors = []
    top = 0
    while top < min(nrows, ncols):
        piv = None
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j]:
                    key = (m[i][j].degree, _coeff_magnitude(m[i][j]))
                    if best is None or key < best:
                        best = key
                        piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        m[top], m[i0] = m[i0], m[top]
        for row in m:
            row[top], row[j0] = row[j0], row[top]
        while True:
            changed = False
            for i in range(top + 1, nrows):
                if m[i][top]:
                    q, r = m[i][top].divmod(m[top][top])
                    m[i] = _unit_rescale([x - q * y for x, y in zip(m[i], m[top])])
                    if r:
                        m[top], m[i] = m[i], m[top]
                        changed = True
            if changed:
                continue
            for j in range(top + 1, ncols):
                if m[top][j]:
                    q, r = m[top][j].divmod(m[top][top])
                    col = _unit_rescale(
                        [row[j] - q * row[top] for row in m]
                    )
                    for i, row in enumerate(m):
                        row[j] = col[i]
                    if r:
                        for row in m:
                            row[top], row[j] = row[j], row[top]
                        changed = True
            if changed:
                continue
            # pivot row/col clean; enforce divisibility on the rest
            fixup = None
            for i in range(top + 1, nrows):
                for j in range(top + 1, ncols):
                    if m[i][j]:
                        _, r = m[i][j].divmod(m[top][top])
                        if r:
                            fixup = i
                            break
                if fixup is not None:
                    break
            if fixup is None:
                break
            m[top] = _unit_rescale([x + y for x, y in zip(m[top], m[fixup])])
        factors.append(m[top][top].monic())
        top += 1
    return factors


# ---------------------------------------------------------------------------
# Exact factorization over Q(i), via sympy
# ---------------------------------------------------------------------------
def _qi_to_sympy(q: QI):
    import sympy

    out = sympy.Rational(q.re.numerator, q.re.denominator)
    if q.im:
        out += sympy.Rational(q.im.numerator, q.im.denominator) * sympy.I
    return out


def _sympy_to_qi(expr) -> QI:
    import sympy

    re_, im_ = sympy.simplify(expr).as_real_imag()
    re_, im_ = sympy.Rational(re_), sympy.Rational(im_)
    return QI(Fraction(int(re_.p), int(re_.q)), Fraction(int(im_.p), int(im_.q)))


@lru_cache(maxsize=None)
def _factor_qi_coeffs(coeffs):
    """Factor a monic UPoly over Q(i): tuple of (coeff tuple, exponent)."""
    import sympy

    _T = _sympy_t()
    expr = sum(_qi_to_sympy(c) * _T**k for k, c in enumerate(coeffs))
    _, factors = sympy.factor_list(expr, _T, gaussian=True)
    out = []
    for f, e in factors:
        p = sympy.Poly(f, _T)
        cs = [_sympy_to_qi(x) for x in reversed(p.all_coeffs())]
        lead = cs[-1]
        if lead != QI_ONE:
            inv = lead.inverse()
            cs = [x * inv for x in cs]
        out.append((tuple(cs), int(e)))
    out.sort(key=lambda fe: (len(fe[0]), [c.sort_key() for c in fe[0]], fe[1]))
    return tuple(out)


def _factor_qi_upoly(p: UPoly):
    if p.degree < 1:
        return ()
    return _factor_qi_coeffs(p.monic().c)


def _scalar_to_sympy(s: Scalar, symmap):
    import sympy

    def conv(poly):
        acc = sympy.Integer(0)
        for mono, qi in poly.terms.items():
            term = _qi_to_sympy(qi)
            for v, e in mono:
                term *= symmap[v] ** e
            acc += term
        return acc

    return conv(s.num) / conv(s.den)


def _sympy_poly_to_scalar_coeffs(f, params, symmap):
    """sympy polynomial in t and params -> UPoly coefficients as Scalars."""
    import sympy

    p = sympy.Poly(f, _sympy_t(), *[symmap[v] for v in params])
    coeffs = {}
    for mono, coef in p.terms():
        te = mono[0]
        s = Scalar.const(_sympy_to_qi(coef))
        for name, e in zip(params, mono[1:]):
            for _ in range(e):
                s = s * Scalar.param(name)
        coeffs[te] = coeffs.get(te, Scalar.const(QI_ZERO)) + s
    deg = max(coeffs) if coeffs else -1
    return [coeffs.get(k, Scalar.const(QI_ZERO)) for k in range(deg + 1)]


def _factor_scalar_upoly(p: UPoly):
    """Factor a UPoly with Scalar coefficients over Q(i)(params)[t]."""
    if p.degree < 1:
        return ()
    params = sorted(set().union(*(c.parameters() for c in p.c)))
    if not params:
        qp = UPoly([c.as_qi() for c in p.c])
        return tuple(
            (tuple(Scalar.const(c) for c in cs), e) for cs, e in _factor_qi_upoly(qp)
        )
    import sympy

    _T = _sympy_t()
    symmap = {v: sympy.Symbol(v) for v in params}
    expr = sum(_scalar_to_sympy(c, symmap) * _T**k for k, c in enumerate(p.c))
    num, _ = sympy.fraction(sympy.together(expr))
    _, factors = sympy.factor_list(
        sympy.expand(num), _T, *[symmap[v] for v in params], gaussian=True
    )
    out = []
    for f, e in factors:
        if sympy.degree(f, _T) < 1:
            continue
        cs = _sympy_poly_to_scalar_coeffs(f, params, symmap)
        lead = cs[-1]
        inv = lead.inverse()
        cs = [x * inv for x in cs]
        out.append((tuple(cs), int(e)))
    out.sort(key=lambda fe: (len(fe[0]), [str(c) for c in fe[0]], fe[1]))
    return tuple(out)


# ---------------------------------------------------------------------------
# Integer fast paths (Bareiss fraction-free elimination)
# ---------------------------------------------------------------------------
def _try_int_matrix(Q):
    """Plain-integer rows when every entry is a rational integer, else None."""
    out = []
    for row in Q:
        ints = []
        for x in row:
            if x.im or x.re.denominator != 1:
                return None
            ints.append(x.re.numerator)
        out.append(ints)
    return out


def _bareiss_rank_int(m):
    m = [row[:] for row in m]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            if mic or pv != prev:
                row_i = m[i]
                row_r = m[r]
                for j in range(c + 1, ncols):
                    row_i[j] = (pv * row_i[j] - mic * row_r[j]) // prev
                row_i[c] = 0
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


def _bareiss_det_int(m):
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    prev = 1
    sign = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pv = m[c][c]
        for i in range(c + 1, n):
            mic = m[i][c]
            row_i = m[i]
            row_c = m[c]
            for j in range(c + 1, n):
                row_i[j] = (pv * row_i[j] - mic * row_c[j]) // prev
            row_i[c] = 0
        prev = pv
    return sign * prev


def _int_rows_to_qi(m):
    return tuple(tuple(QI(x) for x in row) for row in m)


def _mat_mul_int(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _charpoly_int(N, n):
    """Faddeev-LeVerrier over the integers (coefficients are exact)."""
    cs = []
    Mk = N
    for k in range(1, n + 1):
        tr = sum(Mk[i][i] for i in range(n))
        assert tr % k == 0
        ck = tr // k
        cs.append(ck)
        if k < n:
            shifted = [
                [Mk[i][j] - ck if i == j else Mk[i][j] for j in range(n)]
                for i in range(n)
            ]
            Mk = _mat_mul_int(N, shifted)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k, ck in enumerate(cs):
        coeffs[n - 1 - k] = -ck
    return coeffs


def _jordan_sizes_int(N, nu, mult, n):
    K = [[N[i][j] - nu if i == j else N[i][j] for j in range(n)] for i in range(n)]
    nullities = [0]
    power = None
    total = 0
    while total < mult:
        power = K if power is None else _mat_mul_int(power, K)
        nullities.append(n - _bareiss_rank_int(power))
        total = nullities[-1]
        if len(nullities) > n + 1:
            raise AssertionError("Jordan chain failed to terminate")
    ge = [nullities[j] - nullities[j - 1] for j in range(1, len(nullities))]
    out = []
    for j, count_ge in enumerate(ge, start=1):
        count_exact = count_ge - (ge[j] if j < len(ge) else 0)
        out.extend([j] * count_exact)
    return out


def _inverse_frac(m, n):
    """Inverse of an integer matrix as Fraction rows."""
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(m)
    ]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# Pencil invariants
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class PencilInvariants:
    size: int
    rank: int  # rank of M itself
    left_indices: tuple
    right_indices: tuple
    finite_divisors: tuple  # ((coefficient strings, low to high), exponent)
    infinite_divisors: tuple  # exponents

    def regular_size(self):
        return sum((len(cs) - 1) * e for cs, e in self.finite_divisors) + sum(
            self.infinite_divisors
        )

    def check_consistency(self):
        reg = self.regular_size()
        rows = sum(self.right_indices) + sum(e + 1 for e in self.left_indices) + reg
        cols = sum(e + 1 for e in self.right_indices) + sum(self.left_indices) + reg
        if rows != self.size or cols != self.size:
            raise AssertionError(
                f"Kronecker blocks do not tile the pencil: rows {rows}, "
                f"cols {cols}, size {self.size}"
            )
        return True


def _divisor_key(coeffs):
    return tuple(str(c) for c in coeffs)


def _to_qi_matrix(M):
    out = []
    for row in M:
        qrow = []
        for x in row:
            if isinstance(x, QI):
                qrow.append(x)
            elif x.is_constant():
                qrow.append(x.as_qi())
            else:
                raise ParameterNotSupported(
                    "matrix has free parameters; pass generic=True"
                )
        out.append(tuple(qrow))
    return tuple(out)


def _pencil_rank(M, Mt, n, from_int):
    """Generic rank of t*M + M^T via n+1 sample points."""
    best = 0
    for k in range(n + 1):
        lam = from_int(k)
        sample = tuple(
            tuple(lam * M[i][j] + Mt[i][j] for j in range(n)) for i in range(n)
        )
        best = max(best, mat_rank(sample))
        if best == n:
            break
    return best


def _expansion_nullity(M, Mt, d, n, zero):
    rows = []
    for j in range(d + 2):
        for r in range(n):
            row = []
            for bc in range(d + 1):
                if bc == j:
                    row.extend(Mt[r])
                elif bc == j - 1:
                    row.extend(M[r])
                else:
                    row.extend([zero] * n)
            rows.append(tuple(row))
    return n * (d + 1) - mat_rank(rows)


def _minimal_indices(M, Mt, count, n, zero):
    """Right minimal indices of t*M + M^T (pass swapped for left ones)."""
    if count == 0:
        return ()
    indices = []
    s_prev_prev = 0
    s_prev = 0
    d = 0
    while len(indices) < count:
        if d > n:
            raise AssertionError("minimal index search exceeded the pencil size")
        s_d = _expansion_nullity(M, Mt, d, n, zero)
        new = (s_d - s_prev) - (s_prev - s_prev_prev)
        indices.extend([d] * new)
        s_prev_prev, s_prev = s_prev, s_d
        d += 1
    return tuple(indices)


_PENCIL_CACHE = {}


def pencil_invariants(M, generic=False) -> PencilInvariants:
    """Kronecker invariants of t*M + u*M^T for a square Scalar matrix."""
    n = len(M)
    if any(len(r) != n for r in M):
        from .errors import DimensionMismatch

        raise DimensionMismatch("pencil requires a square matrix")
    if n == 0:
        return PencilInvariants(0, 0, (), (), (), ())
    if generic:
        return _invariants_generic(M, n)
    Q = _to_qi_matrix(M)
    cached = _PENCIL_CACHE.get(Q)
    if cached is None:
        cached = _invariants_qi(Q, n)
        if len(_PENCIL_CACHE) > 4096:
            _PENCIL_CACHE.clear()
        _PENCIL_CACHE[Q] = cached
    return cached


def _invariants_qi(M, n) -> PencilInvariants:
    Mt = transpose(M)
    ints = _try_int_matrix(M)
    if ints is not None:
        tints = [list(col) for col in zip(*ints)]
        rank_m = _bareiss_rank_int(ints)
        prank = _pencil_rank_int(ints, tints, n)
        if prank == n:
            inv = _regular_invariants_int(ints, n, rank_m)
        else:
            inv = _singular_invariants_int(ints, tints, n, rank_m, prank)
        if inv is not None:
            return inv
    rank_m = mat_rank(M)
    prank = _pencil_rank(M, Mt, n, lambda k: QI(k))
    if prank == n:
        inv = _regular_invariants_resolvent(M, Mt, n, rank_m)
        if inv is not None:
            return inv
    return _invariants_smith(M, Mt, n, rank_m, prank, QI_ZERO, _factor_qi_upoly_str)


def _bareiss_pivots_int(m):
    """(rank, pivot row indices, pivot column indices) of an integer matrix."""
    m = [row[:] for row in m]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    order = list(range(nrows))
    prev = 1
    r = 0
    piv_cols = []
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            order[r], order[piv] = order[piv], order[r]
        pv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            if mic or pv != prev:
                row_i = m[i]
                row_r = m[r]
                for j in range(c + 1, ncols):
                    row_i[j] = (pv * row_i[j] - mic * row_r[j]) // prev
                row_i[c] = 0
        prev = pv
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    return r, order[:r], piv_cols


def _interp_minor_poly(Mi, Mti, rows, cols, r):
    """Integer coefficients of det of the (rows, cols) minor of t*M + M^T."""
    values = []
    points = list(range(r + 1))
    for p in points:
        sub = [[p * Mi[i][j] + Mti[i][j] for j in cols] for i in rows]
        values.append(_bareiss_det_int(sub))
    # Lagrange interpolation; the result has integer coefficients
    coeffs = [Fraction(0)] * (r + 1)
    for p, v in zip(points, values):
        if not v:
            continue
        basis = [Fraction(1)]
        denom = 1
        for q in points:
            if q == p:
                continue
            denom *= p - q
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                new[k] -= q * b
                new[k + 1] += b
            basis = new
        scale = Fraction(v, denom)
        for k, b in enumerate(basis):
            coeffs[k] += b * scale
    out = []
    for cfr in coeffs:
        assert cfr.denominator == 1
        out.append(cfr.numerator)
    while out and not out[-1]:
        out.pop()
    return out


def _toeplitz_nullity_int(base0, base1, qden, j, n):
    """Nullity of the jet matrix with diag blocks P(a), superdiag blocks M.

    base0 = q*P(a) and base1 = M as integer matrices for a = p/q; block-row r
    is scaled by q^(r+1) to stay integral (row scalings keep the rank).
    """
    rows = []
    zeros = [0] * n
    for r in range(j):
        qr = qden**r
        qr1 = qr * qden
        for i in range(n):
            row = []
            for bc in range(j):
                if bc == r:
                    row.extend(qr * x for x in base0[i])
                elif bc == r + 1:
                    row.extend(qr1 * x for x in base1[i])
                else:
                    row.extend(zeros)
            rows.append(row)
    return j * n - _bareiss_rank_int(rows)


def _exponents_at_root_int(base0, base1, qden, s, n):
    """Multiset of divisor exponents at one root from jet-rank increments."""
    exps_ge = []
    prev = 0
    j = 1
    while True:
        nul = _toeplitz_nullity_int(base0, base1, qden, j, n)
        cj = (nul - prev) - s  # divisors with exponent >= j
        if cj <= 0:
            break
        exps_ge.append(cj)
        prev = nul
        j += 1
        if j > n + 1:
            raise AssertionError("jet-rank chain failed to terminate")
    out = []
    for jj, ge in enumerate(exps_ge, start=1):
        exact = ge - (exps_ge[jj] if jj < len(exps_ge) else 0)
        out.extend([jj] * exact)
    return out


def _rational_root_candidates(coeffs):
    """Gaussian-rational roots of an integer polynomial, via exact factoring."""
    qcs = tuple(QI(c) for c in coeffs)
    roots = []
    for cs, _ in _factor_qi_coeffs(qcs):
        if len(cs) == 2:
            roots.append(-cs[0])
    seen = []
    for r in roots:
        if r not in seen:
            seen.append(r)
    return seen


def _int_poly_content(p):
    from math import gcd

    g = 0
    for c in p:
        g = gcd(g, abs(c))
    return g or 1


def _int_poly_primitive(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    if not p:
        return p
    g = _int_poly_content(p)
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def _int_poly_gcd(a, b):
    """gcd of integer polynomials (primitive PRS), primitive positive lead."""
    a, b = _int_poly_primitive(a), _int_poly_primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder of a by b
        r = list(a)
        lead = b[-1]
        while len(r) >= len(b):
            while r and not r[-1]:
                r.pop()
            if len(r) < len(b):
                break
            top = r[-1]
            off = len(r) - len(b)
            r = [lead * c for c in r]
            for j, y in enumerate(b):
                r[off + j] -= top * y
            r.pop()
        a, b = b, _int_poly_primitive(r)
    return _int_poly_primitive(a)


def _singular_invariants_int(Mi, Mti, n, rank_m, prank):
    s = n - prank
    try:
        right = _minimal_indices_int(Mi, Mti, s, n)
        left = _minimal_indices_int(Mti, Mi, s, n)
        finite = []
        if prank:
            # the product of all finite divisors divides every maximal minor,
            # so the gcd of two of them is a small, congruence-stable multiple
            minors = []
            for k in range(2 * (n + 1)):
                kk, rev = divmod(k, 2)
                cand = [
                    [kk * Mi[i][j] + Mti[i][j] for j in range(n)] for i in range(n)
                ]
                if rev:
                    cand = cand[::-1]
                r, rows, cols = _bareiss_pivots_int(cand)
                if r == prank:
                    picked = sorted((n - 1 - i for i in rows)) if rev else sorted(rows)
                    key = (tuple(picked), tuple(cols))
                    if key not in [m[0] for m in minors]:
                        minors.append(
                            (key, _interp_minor_poly(Mi, Mti, *key, prank))
                        )
                if len(minors) == 2:
                    break
            if not minors:
                return None
            coeffs = minors[0][1]
            for _, other in minors[1:]:
                coeffs = _int_poly_gcd(coeffs, other)
            coeffs = _int_poly_primitive(coeffs)
            if not coeffs:
                return None
            for root in _rational_root_candidates(tuple(coeffs)):
                p_num, q_den = _qi_as_rational(root)
                if p_num is None:
                    base0 = tuple(
                        tuple(
                            root * QI(Mi[i][j]) + QI(Mti[i][j]) for j in range(n)
                        )
                        for i in range(n)
                    )
                    exps = _exponents_at_root_qi(base0, _int_rows_to_qi(Mi), s, n)
                else:
                    base0 = [
                        [p_num * Mi[i][j] + q_den * Mti[i][j] for j in range(n)]
                        for i in range(n)
                    ]
                    exps = _exponents_at_root_int(base0, Mi, q_den, s, n)
                if exps:
                    key = _divisor_key((Scalar.const(-root), Scalar.const(QI_ONE)))
                    finite.extend((key, e) for e in exps)
        # infinite divisors: reversed pencil at 0 (value M, derivative M^T)
        infinite = _exponents_at_root_int(Mi, Mti, 1, s, n)
        return _assemble(n, rank_m, left, right, finite, infinite)
    except AssertionError:
        return None


def _qi_as_rational(root: QI):
    if root.im:
        return None, None
    return root.re.numerator, root.re.denominator


def _exponents_at_root_qi(base0, base1, s, n):
    exps_ge = []
    prev = 0
    j = 1
    while True:
        rows = []
        zeros = (QI_ZERO,) * n
        for r in range(j):
            for i in range(n):
                row = []
                for bc in range(j):
                    if bc == r:
                        row.extend(base0[i])
                    elif bc == r + 1:
                        row.extend(base1[i])
                    else:
                        row.extend(zeros)
                rows.append(tuple(row))
        nul = j * n - mat_rank(rows)
        cj = (nul - prev) - s
        if cj <= 0:
            break
        exps_ge.append(cj)
        prev = nul
        j += 1
        if j > n + 1:
            raise AssertionError("jet-rank chain failed to terminate")
    out = []
    for jj, ge in enumerate(exps_ge, start=1):
        exact = ge - (exps_ge[jj] if jj < len(exps_ge) else 0)
        out.extend([jj] * exact)
    return out


def _pencil_rank_int(Mi, Mti, n):
    best = 0
    for k in range(n + 1):
        sample = [
            [k * Mi[i][j] + Mti[i][j] for j in range(n)] for i in range(n)
        ]
        best = max(best, _bareiss_rank_int(sample))
        if best == n:
            break
    return best


def _expansion_nullity_int(Mi, Mti, d, n):
    rows = []
    zeros = [0] * n
    for j in range(d + 2):
        for r in range(n):
            row = []
            for bc in range(d + 1):
                if bc == j:
                    row.extend(Mti[r])
                elif bc == j - 1:
                    row.extend(Mi[r])
                else:
                    row.extend(zeros)
            rows.append(row)
    return n * (d + 1) - _bareiss_rank_int(rows)


def _minimal_indices_int(Mi, Mti, count, n):
    if count == 0:
        return ()
    indices = []
    s_prev_prev = 0
    s_prev = 0
    d = 0
    while len(indices) < count:
        if d > n:
            raise AssertionError("minimal index search exceeded the pencil size")
        s_d = _expansion_nullity_int(Mi, Mti, d, n)
        new = (s_d - s_prev) - (s_prev - s_prev_prev)
        indices.extend([d] * new)
        s_prev_prev, s_prev = s_prev, s_d
        d += 1
    return tuple(indices)


def _regular_invariants_int(Mi, n, rank_m):
    """Integer variant of the resolvent path, via N = det(R) R^{-1} M."""
    Mti = [list(col) for col in zip(*Mi)]
    R = None
    sigma = None
    d = 0
    for k in range(n + 1):
        cand = [[k * Mi[i][j] + Mti[i][j] for j in range(n)] for i in range(n)]
        det = _bareiss_det_int(cand)
        if det:
            R, sigma, d = cand, k, det
            break
    if R is None:
        return None
    Rinv = _inverse_frac(R, n)
    N = []
    for i in range(n):
        row = []
        for j in range(n):
            v = d * sum(Rinv[i][k] * Mi[k][j] for k in range(n))
            assert v.denominator == 1
            row.append(v.numerator)
        N.append(row)
    coeffs = _charpoly_int(N, n)
    factors = _factor_qi_coeffs(tuple(QI(c) for c in coeffs))
    if any(len(cs) != 2 for cs, _ in factors):
        return None
    finite = []
    infinite = []
    dq = QI(d)
    for cs, mult in factors:
        nu = -cs[0]
        if not nu.im and nu.re.denominator == 1:
            sizes = _jordan_sizes_int(N, nu.re.numerator, mult, n)
        else:
            sizes = _jordan_sizes(_int_rows_to_qi(N), nu, mult, n)
        if not nu:
            infinite.extend(sizes)
        else:
            a = QI(sigma) - dq / nu
            key = _divisor_key((Scalar.const(-a), Scalar.const(QI_ONE)))
            finite.extend((key, sz) for sz in sizes)
    return _assemble(n, rank_m, (), (), finite, infinite)


def _assemble(n, rank_m, left, right, finite, infinite) -> PencilInvariants:
    inv = PencilInvariants(
        n,
        rank_m,
        tuple(sorted(left)),
        tuple(sorted(right)),
        tuple(sorted(Counter(finite).elements())),
        tuple(sorted(infinite)),
    )
    inv.check_consistency()
    return inv


def _factor_qi_upoly_str(p: UPoly):
    return tuple(
        (_divisor_key(tuple(Scalar.const(c) for c in cs)), e)
        for cs, e in _factor_qi_upoly(p)
    )


def _factor_scalar_upoly_str(p: UPoly):
    return tuple((_divisor_key(cs), e) for cs, e in _factor_scalar_upoly(p))


def _invariants_generic(M, n) -> PencilInvariants:
    Mt = transpose(M)
    rank_m = mat_rank(M)
    prank = _pencil_rank(M, Mt, n, Scalar.rational)
    from .scalars import SC_ZERO

    return _invariants_smith(
        M, Mt, n, rank_m, prank, SC_ZERO, _factor_scalar_upoly_str
    )


def _smith_divisors(M, Mt, n, factorizer):
    pencil = [[UPoly((Mt[i][j], M[i][j])) for j in range(n)] for i in range(n)]
    finite = []
    for f in smith_invariant_factors(pencil):
        finite.extend(factorizer(f))
    reversed_pencil = [
        [UPoly((M[i][j], Mt[i][j])) for j in range(n)] for i in range(n)
    ]
    infinite = []
    for f in smith_invariant_factors(reversed_pencil):
        e = f.trailing_zero_count()
        if e:
            infinite.append(e)
    return finite, infinite


def _invariants_smith(M, Mt, n, rank_m, prank, zero, factorizer) -> PencilInvariants:
    nidx = n - prank
    right = _minimal_indices(M, Mt, nidx, n, zero)
    left = _minimal_indices(Mt, M, nidx, n, zero)
    finite, infinite = _smith_divisors(M, Mt, n, factorizer)
    return _assemble(n, rank_m, left, right, finite, infinite)


def _regular_invariants_resolvent(M, Mt, n, rank_m):
    """Divisors of a regular pencil from the Jordan data of R^{-1} M.

    With R = s*M + M^T invertible, the pencil t*M + M^T is equivalent to
    (t-s) G + I for G = R^{-1} M: Jordan blocks of G at mu != 0 give finite
    divisors (t - a)^k with a = s - 1/mu, and blocks at 0 give the infinite
    divisor exponents.  Returns None when the characteristic polynomial does
    not split over Q(i); the Smith path then decides.
    """
    from .linalg import det as mat_det

    R = None
    sigma = None
    for k in range(n + 1):
        s = QI(k)
        cand = tuple(
            tuple(s * M[i][j] + Mt[i][j] for j in range(n)) for i in range(n)
        )
        if mat_det(cand):
            R, sigma = cand, s
            break
    if R is None:
        return None
    G = mat_mul(mat_inverse(R, one=QI_ONE, zero=QI_ZERO), M)
    charpoly = _charpoly_qi(G, n)
    factors = _factor_qi_upoly(UPoly(charpoly))
    if any(len(cs) != 2 for cs, _ in factors):
        return None
    finite = []
    infinite = []
    for cs, mult in factors:
        mu = -cs[0]  # root of the monic linear factor
        sizes = _jordan_sizes(G, mu, mult, n)
        if not mu:
            infinite.extend(sizes)
        else:
            a = sigma - QI_ONE / mu
            root_divisor = _divisor_key((Scalar.const(-a), Scalar.const(QI_ONE)))
            finite.extend(((root_divisor, sz) for sz in sizes))
    inv = PencilInvariants(
        n,
        rank_m,
        (),
        (),
        tuple(sorted(Counter(finite).elements())),
        tuple(sorted(infinite)),
    )
    inv.check_consistency()
    return inv


def _charpoly_qi(G, n):
    """Faddeev-LeVerrier: det(tI - G) = t^n - c1 t^(n-1) - ... - cn."""
    coeffs = [QI_ZERO] * (n + 1)
    coeffs[n] = QI_ONE
    Mk = G
    cs = []
    for k in range(1, n + 1):
        ck = sum((Mk[i][i] for i in range(n)), QI_ZERO) / QI(k)
        cs.append(ck)
        if k < n:
            shifted = tuple(
                tuple(Mk[i][j] - ck if i == j else Mk[i][j] for j in range(n))
                for i in range(n)
            )
            Mk = mat_mul(G, shifted)
    for k, ck in enumerate(cs):
        coeffs[n - 1 - k] = -ck
    return coeffs


def _jordan_sizes(G, mu, mult, n):
    """Jordan block sizes of G at eigenvalue mu (sum of sizes = mult)."""
    K = tuple(
        tuple(G[i][j] - mu if i == j else G[i][j] for j in range(n)) for i in range(n)
    )
    nullities = [0]
    power = None
    total = 0
    while total < mult:
        power = K if power is None else mat_mul(power, K)
        nullities.append(n - mat_rank(power))
        total = nullities[-1]
        if len(nullities) > n + 1:
            raise AssertionError("Jordan chain failed to terminate")
    sizes = []
    for j in range(1, len(nullities)):
        at_least_j = nullities[j] - nullities[j - 1]
        sizes.append(at_least_j)
    out = []
    for j, count_ge in enumerate(sizes, start=1):
        count_exact = count_ge - (sizes[j] if j < len(sizes) else 0)
        out.extend([j] * count_exact)
    return out


# ---------------------------------------------------------------------------
# Congruence test and canonical decomposition
# ---------------------------------------------------------------------------
def is_congruent(M, N) -> bool:
    if len(M) != len(N):
        return False
    return pencil_invariants(M) == pencil_invariants(N)


def congruence_transform(M, S):
    return mat_mul(mat_mul(transpose(S), M), S)


_BLOCK_INV_CACHE = {}


def block_invariants(b: CanonicalBlock) -> PencilInvariants:
    key = (b.kind, b.size, b.parameter.as_qi() if b.parameter is not None else None)
    inv = _BLOCK_INV_CACHE.get(key)
    if inv is None:
        inv = pencil_invariants(canonical_block_matrix(b))
        _BLOCK_INV_CACHE[key] = inv
    return inv


def _candidate_regular_blocks(divisor, exp, max_size):
    """Blocks whose finite divisors could include (divisor, exp)."""
    out = []
    coeffs, deg = divisor, len(divisor) - 1
    if deg == 1:
        root = -Scalar.parse(coeffs[0]).as_qi()
        cands = {-root}
        if root:
            cands.add(-root.inverse())
        for c in cands:
            if c == QI_ONE or c == QI(-1):
                continue
            if 2 * exp <= max_size:
                out.append(CanonicalBlock("B", 2 * exp, Scalar.const(c)))
    for size in range(1, max_size + 1):
        if size % 2 == 1:
            out.append(CanonicalBlock("C", size))
        else:
            k = size // 2
            out.append(CanonicalBlock("E", size))
            if k % 2 == 0:
                out.append(CanonicalBlock("D", size))
            else:
                out.append(CanonicalBlock("F", size))
    return out


_DECOMP_CACHE = {}


def canonical_decomposition(M):
    """The unique multiset of canonical blocks whose sum is congruent to M."""
    inv = pencil_invariants(M)
    return decomposition_from_invariants(inv)


def decomposition_from_invariants(inv: PencilInvariants):
    cached = _DECOMP_CACHE.get(inv)
    if cached is not None:
        if isinstance(cached, Exception):
            raise cached
        return cached
    try:
        blocks = _decompose(inv)
    except DictionaryMiss as exc:
        _DECOMP_CACHE[inv] = exc
        raise
    _DECOMP_CACHE[inv] = blocks
    return blocks


def _decompose(inv: PencilInvariants):
    if inv.left_indices != inv.right_indices:
        raise DictionaryMiss(
            "left and right minimal indices differ; not a congruence pencil"
        )
    blocks = [CanonicalBlock("A", 2 * k + 1) for k in inv.right_indices]
    rank_left = inv.rank - sum(block_invariants(b).rank for b in blocks)
    size_left = inv.size - sum(b.size for b in blocks)
    found = _search_regular(
        Counter(inv.finite_divisors),
        Counter(inv.infinite_divisors),
        rank_left,
        size_left,
    )
    if found is None:
        raise DictionaryMiss(
            f"no canonical block multiset matches the invariants of size {inv.size}"
        )
    blocks.extend(found)
    result = normalize_blocks(blocks)
    _verify_decomposition(result, inv)
    return result


def _search_regular(divs: Counter, infs: Counter, rank_left, size_left):
    divs = +divs
    infs = +infs
    if not divs and not infs:
        return [] if rank_left == 0 and size_left == 0 else None
    if not divs:
        return None  # leftover infinite divisors can only ride with finite ones
    div, exp = max(divs)
    for cand in _candidate_regular_blocks(div, exp, size_left):
        binv = block_invariants(cand)
        need_fin = Counter(binv.finite_divisors)
        need_inf = Counter(binv.infinite_divisors)
        if (div, exp) not in need_fin:
            continue
        if binv.rank > rank_left or cand.size > size_left:
            continue
        if any(need_fin[k] > divs[k] for k in need_fin):
            continue
        if any(need_inf[k] > infs[k] for k in need_inf):
            continue
        rest = _search_regular(
            divs - need_fin,
            infs - need_inf,
            rank_left - binv.rank,
            size_left - cand.size,
        )
        if rest is not None:
            return [cand] + rest
    return None


def _verify_decomposition(blocks, inv: PencilInvariants):
    fin = Counter()
    inf = []
    idx = []
    rank_sum = 0
    size_sum = 0
    for b in blocks:
        binv = block_invariants(b)
        fin.update(Counter(binv.finite_divisors))
        inf.extend(binv.infinite_divisors)
        idx.extend(binv.right_indices)
        rank_sum += binv.rank
        size_sum += b.size
    ok = (
        fin == Counter(inv.finite_divisors)
        and tuple(sorted(inf)) == inv.infinite_divisors
        and tuple(sorted(idx)) == inv.right_indices
        and rank_sum == inv.rank
        and size_sum == inv.size
    )
    if not ok:
        raise DictionaryMiss("block multiset does not reconstruct the invariants")

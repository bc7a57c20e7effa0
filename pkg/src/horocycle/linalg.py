"""Exact linear algebra over the rationals.

Everything here works on matrices given as lists of lists of Fractions (or
ints), returns fresh objects, and never rounds.  The incremental eliminator
keeps integer rows (cross-multiplication plus a gcd pass) so that large rank
computations avoid per-operation rational normalisation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(n: int, m: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def transpose(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    if not mat:
        return []
    return [list(col) for col in zip(*mat)]


def mat_mul(a, b) -> list[list[Fraction]]:
    if not a or not b:
        return []
    n, m = len(a), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i, row in enumerate(a):
        acc = out[i]
        for k, x in enumerate(row):
            if not x:
                continue
            brow = b[k]
            for j, y in enumerate(brow):
                if y:
                    acc[j] += x * y
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    s = frac(s)
    return [[x * s for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def is_zero_matrix(a) -> bool:
    return all(x == 0 for row in a for x in row)


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def rref(mat) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    m = [[frac(x) for x in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat) -> int:
    if not mat or not mat[0]:
        return 0
    return len(rref(mat)[1])


def nullspace(mat) -> list[list[Fraction]]:
    """Basis of the right null space {v : M v = 0}, one vector per row."""
    if not mat:
        return []
    cols = len(mat[0])
    r, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def left_nullspace(mat) -> list[list[Fraction]]:
    """Basis of {y : y M = 0}."""
    return nullspace(transpose(mat))


def column_space_projection(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    """Quotient map onto coker of the span of `vectors` (given as rows).

    Returns a full-row-rank matrix Y whose kernel is exactly the span, so
    v ↦ Y v gives coordinates on the quotient space.
    """
    if not vectors:
        raise ValueError("need the ambient dimension; pass at least a zero vector")
    span_as_columns = transpose(vectors)
    return left_nullspace(span_as_columns)


def solve_right_inverse(y: list[list[Fraction]]) -> list[list[Fraction]]:
    """For full-row-rank Y, an R with Y R = identity."""
    rows = len(y)
    r, pivots = rref(y)
    if len(pivots) != rows:
        raise ValueError("matrix does not have full row rank")
    # Y restricted to pivot columns is invertible; invert via rref of [Yp | I].
    yp = [[y[i][c] for c in pivots] for i in range(rows)]
    aug = [yp[i] + identity(rows)[i] for i in range(rows)]
    red, piv = rref(aug)
    inv = [row[rows:] for row in red]
    full = zeros(len(y[0]), rows)
    for k, c in enumerate(pivots):
        for j in range(rows):
            full[c][j] = inv[k][j]
    return full


def char_poly(mat) -> list[Fraction]:
    """Characteristic polynomial det(xI - M), coefficients from x^n down to x^0.

    Faddeev-LeVerrier; exact over Fraction.
    """
    n = len(mat)
    m = [[frac(x) for x in row] for row in mat]
    coeffs = [Fraction(1)]
    a = [row[:] for row in m]
    for k in range(1, n + 1):
        c = -sum(a[i][i] for i in range(n)) / k
        coeffs.append(c)
        if k < n:
            for i in range(n):
                a[i][i] += c
            a = mat_mul(m, a)
    return coeffs


def sparse_to_int(vec: dict) -> dict:
    """Clear denominators and common factors of a sparse vector; int-valued dict."""
    if not vec:
        return {}
    den = 1
    for v in vec.values():
        v = frac(v)
        den = den * v.denominator // gcd(den, v.denominator)
    out = {k: int(frac(v) * den) for k, v in vec.items() if v != 0}
    g = 0
    for v in out.values():
        g = gcd(g, abs(v))
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def _reduce_once(v: dict, key, row: dict) -> dict:
    c = v.get(key)
    if not c:
        return v
    p = row[key]
    new = {k: x * p for k, x in v.items()}
    for k, x in row.items():
        new[k] = new.get(k, 0) - c * x
    v = {k: x for k, x in new.items() if x}
    if v:
        g = 0
        for x in v.values():
            g = gcd(g, abs(x))
        if g > 1:
            v = {k: x // g for k, x in v.items()}
    return v


class IncrementalRank:
    """Incremental rank of a growing family of sparse vectors.

    Vectors are dicts key -> coefficient.  Rows are kept fraction-free
    (cross multiplication plus a gcd pass) and mutually reduced, so a single
    pass over the pivots fully reduces a new vector.

    When `order` is given, pivots are chosen minimal under it; each stored row
    then has its support entirely at-or-after its pivot in that order, so
    counting pivots inside a downward-closed coordinate set gives the
    dimension of the span's intersection with that coordinate subspace.
    """

    def __init__(self, order=None):
        self.pivots: dict[object, dict] = {}
        self._order = order if order is not None else repr

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vec: dict) -> bool:
        """Reduce vec against current pivots; returns True if rank grew."""
        v = sparse_to_int(vec)
        for key in list(v):
            if key in self.pivots:
                v = _reduce_once(v, key, self.pivots[key])
        # entries introduced by reductions may themselves sit on pivot keys
        while any(k in self.pivots for k in v):
            key = next(k for k in sorted(v, key=self._order) if k in self.pivots)
            v = _reduce_once(v, key, self.pivots[key])
        if not v:
            return False
        key = min(v, key=self._order)
        for pkey in list(self.pivots):
            self.pivots[pkey] = _reduce_once(self.pivots[pkey], key, v)
        self.pivots[key] = v
        return True

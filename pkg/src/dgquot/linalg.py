"""Exact rational dense linear algebra: small matrices over Fraction.

Matrices are tuples of tuples of Fraction.  Ranks are computed by
fraction-free (Bareiss) elimination over the integers after clearing
denominators, so there are no tolerance parameters anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionError, SingularMatrixError

Matrix = tuple
Vector = tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_matrix(rows) -> Matrix:
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix rows")
    return out


def as_vector(entries) -> Vector:
    return tuple(Fraction(x) for x in entries)


def mat_shape(a: Matrix):
    return (len(a), len(a[0]) if a else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple((_ZERO,) * cols for _ in range(rows))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if mat_shape(a) != mat_shape(b):
        raise DimensionError("matrix shape mismatch in add")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    if mat_shape(a) != mat_shape(b):
        raise DimensionError("matrix shape mismatch in sub")
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = mat_shape(a)
    rb, cb = mat_shape(b)
    if ca != rb:
        raise DimensionError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), _ZERO) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Vector) -> Vector:
    if not a:
        return ()
    if len(a[0]) != len(v):
        raise DimensionError("matrix/vector size mismatch")
    return tuple(sum((x * y for x, y in zip(row, v)), _ZERO) for row in a)


def mat_pow(a: Matrix, e: int) -> Matrix:
    n, m = mat_shape(a)
    if n != m:
        raise DimensionError("power of a non-square matrix")
    out = identity(n)
    for _ in range(e):
        out = mat_mul(out, a)
    return out


def mat_trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), _ZERO)


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def _clear_row(row) -> list:
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def rank(a) -> int:
    """Exact rank via fraction-free Bareiss elimination."""
    rows = [_clear_row([Fraction(x) for x in row]) for row in a]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    prev = 1
    col = 0
    while rk < len(rows) and col < ncols:
        piv = None
        for i in range(rk, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][col]
        for i in range(rk + 1, len(rows)):
            ri = rows[i]
            f = ri[col]
            for j in range(col, ncols):
                num = p * ri[j] - f * rows[rk][j]
                q, r = divmod(num, prev)
                assert not r, "Bareiss division must be exact"
                ri[j] = q
        prev = p
        rk += 1
        col += 1
    return rk


def inverse(a: Matrix) -> Matrix:
    n, m = mat_shape(a)
    if n != m:
        raise DimensionError("inverse of a non-square matrix")
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def rref(a) -> list:
    """Reduced row echelon form; returns list of pivot-row lists."""
    rows = [[Fraction(x) for x in row] for row in a if any(row)]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return [row for row in rows if any(row)]


def nullspace(a: Matrix) -> list:
    """Basis of the right kernel, as a list of vectors."""
    nrows, ncols = mat_shape(a)
    if ncols == 0:
        return []
    rows = rref(a)
    pivots = []
    for row in rows:
        pivots.append(next(j for j, x in enumerate(row) if x))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        vec = [_ZERO] * ncols
        vec[j] = _ONE
        for row, pc in zip(rows, pivots):
            vec[pc] = -row[j]
        basis.append(tuple(vec))
    return basis


class EchelonBasis:
    """Incremental row space with exact pivoting, for Krylov closures."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list = []
        self.pivots: list = []

    def reduce(self, vec) -> list:
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                for j in range(self.width):
                    v[j] -= f * row[j]
        return v

    def add(self, vec) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        v = self.reduce(vec)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        f = v[piv]
        v = [x / f for x in v]
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def charpoly(a: Matrix) -> list:
    """Characteristic polynomial coefficients [1, c1, ..., cn] via
    Faddeev-LeVerrier, so det(tI - A) = t^n + c1 t^(n-1) + ... + cn."""
    n, m = mat_shape(a)
    if n != m:
        raise DimensionError("charpoly of a non-square matrix")
    coeffs = [Fraction(1)]
    nmat = identity(n)
    for k in range(1, n + 1):
        man = mat_mul(a, nmat)
        ck = -mat_trace(man) / k
        coeffs.append(ck)
        nmat = mat_add(man, mat_scale(identity(n), ck))
    return coeffs


def _divisors(n: int) -> list:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(coeffs: Sequence[Fraction]) -> list:
    """All rational roots (with multiplicity) of a polynomial given by
    descending coefficients; deflates as it goes."""
    work = [Fraction(x) for x in coeffs]
    while len(work) > 1 and not work[0]:
        work.pop(0)
    roots = []

    def value(cs, r):
        acc = Fraction(0)
        for c in cs:
            acc = acc * r + c
        return acc

    def deflate(cs, r):
        out = [cs[0]]
        for c in cs[1:-1]:
            out.append(out[-1] * r + c)
        return out

    while len(work) > 1:
        if not work[-1]:
            roots.append(Fraction(0))
            work.pop()
            continue
        den = 1
        for c in work:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in work]
        found = None
        for p in _divisors(ints[-1]):
            for q in _divisors(ints[0]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if not value(work, cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        work = deflate(work, found)
    return roots

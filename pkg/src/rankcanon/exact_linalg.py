"""Exact scalars and dense matrices over the Gaussian rationals.

Everything downstream (block matrices, density operators, rank
inequalities) is computed in this field so that rank equalities can be
asserted with zero tolerance.  Heavy kernels (rank, determinant,
characteristic polynomial, span tests) clear denominators row by row and
run fraction-free on Gaussian integers stored as ``(re, im)`` int pairs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Callable, Iterable, Sequence


class ShapeMismatchError(ValueError):
    """Operands have incompatible shapes."""


class MixingConstantError(ArithmeticError):
    """No probe value gave a nonzero evaluation."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational with an imaginary part")
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, complex):
            raise TypeError("floating complex values are not exact; pass parts as rationals")
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def _raw(re: Fraction, im: Fraction) -> "GaussianRational":
        z = object.__new__(GaussianRational)
        z.re = re
        z.im = im
        return z

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        c, d = other.re, other.im
        n = c * c + d * d
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b = self.re, self.im
        return GaussianRational._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (GaussianRational(1) / self) ** (-n)
        result, base = GaussianRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    # predicates -----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_scalar(self)


def _rat_token(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical token: ``3``, ``-1/2``, ``2+1/3i``, ``0-1i``."""
    if not z.im:
        return _rat_token(z.re)
    sign = "+" if z.im > 0 else "-"
    return f"{_rat_token(z.re)}{sign}{_rat_token(abs(z.im))}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Gaussian-integer helpers used by the fraction-free kernels.

def _gi_vector(entries: Iterable[GaussianRational]) -> tuple[list[list[int]], int]:
    """Clear denominators: return int pairs and the positive scale applied."""
    entries = list(entries)
    den = 1
    for z in entries:
        den = lcm(den, z.re.denominator, z.im.denominator)
    out = [[z.re.numerator * (den // z.re.denominator),
            z.im.numerator * (den // z.im.denominator)] for z in entries]
    return out, den


def _gi_exact_div(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    # (a+bi)/(c+di), known to be exact in Z[i]
    n = c * c + d * d
    x, rx = divmod(a * c + b * d, n)
    y, ry = divmod(b * c - a * d, n)
    if rx or ry:
        raise ArithmeticError("inexact Gaussian-integer division in fraction-free elimination")
    return x, y


def _bareiss(rows: list[list[list[int]]], ncols: int):
    """In-place fraction-free elimination on Gaussian-integer rows.

    Pivot is the first nonzero entry in the current column at or below the
    current row.  Returns ``(rank, pivot_columns, swap_parity, last_pivot)``.
    """
    m = len(rows)
    pr, pi = 1, 0
    r = 0
    pivots = []
    parity = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            e = rows[i][c]
            if e[0] or e[1]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            parity ^= 1
        prow = rows[r]
        a, b = prow[c]
        for i in range(r + 1, m):
            row = rows[i]
            x, y = row[c]
            if x or y:
                for j in range(c + 1, ncols):
                    u, v = row[j]
                    s, t = prow[j]
                    # p*row[j] - row[c]*prow[j]
                    nr = a * u - b * v - (x * s - y * t)
                    ni = a * v + b * u - (x * t + y * s)
                    if pr != 1 or pi:
                        nr, ni = _gi_exact_div(nr, ni, pr, pi)
                    row[j] = [nr, ni]
            else:
                # x = 0: entry becomes p*row[j] / prev
                for j in range(c + 1, ncols):
                    u, v = row[j]
                    nr, ni = a * u - b * v, a * v + b * u
                    if pr != 1 or pi:
                        nr, ni = _gi_exact_div(nr, ni, pr, pi)
                    row[j] = [nr, ni]
            row[c] = [0, 0]
        pr, pi = a, b
        pivots.append(c)
        r += 1
    return r, pivots, parity, (pr, pi)


class ExactMatrix:
    """Immutable dense ``rows x cols`` matrix of Gaussian rationals.

    Entries are kept in a flat row-major tuple.  Zero-sized shapes are
    allowed and behave as rank-0 operands.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(GaussianRational.coerce(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ShapeMismatchError("negative dimension")
        if len(entries) != rows * cols:
            raise ShapeMismatchError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def _wrap(cls, rows: int, cols: int, entries: tuple) -> "ExactMatrix":
        m = object.__new__(cls)
        m.rows, m.cols, m.entries = rows, cols, entries
        return m

    # constructors ---------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeMismatchError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls._wrap(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._wrap(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int) -> "ExactMatrix":
        """Matrix unit with a single 1 at ``(i, j)``."""
        e = [ZERO] * (rows * cols)
        e[i * cols + j] = ONE
        return cls._wrap(rows, cols, tuple(e))

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        e = [ZERO] * (n * n)
        for i, v in enumerate(values):
            e[i * n + i] = GaussianRational.coerce(v)
        return cls._wrap(n, n, tuple(e))

    @classmethod
    def block_diag(cls, *mats: "ExactMatrix") -> "ExactMatrix":
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        e = [ZERO] * (rows * cols)
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                base = (r0 + i) * cols + c0
                e[base:base + m.cols] = m.entries[i * m.cols:(i + 1) * m.cols]
            r0 += m.rows
            c0 += m.cols
        return cls._wrap(rows, cols, tuple(e))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "ExactMatrix":
        """``P`` with ``P[i, perm[i]] = 1`` so that ``(P @ A)[i] = A[perm[i]]``."""
        n = len(perm)
        e = [ZERO] * (n * n)
        for i, j in enumerate(perm):
            e[i * n + j] = ONE
        return cls._wrap(n, n, tuple(e))

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        c = self.cols
        e = self.entries
        return ExactMatrix._wrap(len(rows), len(cols),
                                 tuple(e[i * c + j] for i in rows for j in cols))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(z) for z in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    # algebra --------------------------------------------------------------
    def _same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ShapeMismatchError(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._wrap(self.rows, self.cols,
                                 tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._wrap(self.rows, self.cols,
                                 tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return ExactMatrix._wrap(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "ExactMatrix":
        c = GaussianRational.coerce(c)
        if not c:
            return ExactMatrix.zeros(self.rows, self.cols)
        if c == ONE:
            return self
        return ExactMatrix._wrap(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        bcols = [b[j::p] for j in range(p)] if p else []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            nz = [(k, x) for k, x in enumerate(arow) if x]
            for j in range(p):
                col = bcols[j]
                acc = ZERO
                for k, x in nz:
                    y = col[k]
                    if y:
                        acc = acc + x * y
                out.append(acc)
        return ExactMatrix._wrap(n, p, tuple(out))

    def transpose(self) -> "ExactMatrix":
        r, c = self.rows, self.cols
        e = self.entries
        return ExactMatrix._wrap(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)))

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.rows, self.cols, tuple(z.conjugate() for z in self.entries))

    def dagger(self) -> "ExactMatrix":
        """Conjugate transpose."""
        return self.transpose().conjugate()

    @property
    def H(self) -> "ExactMatrix":
        return self.dagger()

    def is_hermitian(self) -> bool:
        if not self.is_square():
            return False
        n, e = self.rows, self.entries
        return all(e[i * n + j] == e[j * n + i].conjugate() for i in range(n) for j in range(i, n))

    def trace(self) -> GaussianRational:
        if not self.is_square():
            raise ShapeMismatchError("trace of a non-square matrix")
        n = self.rows
        acc = ZERO
        for i in range(n):
            acc = acc + self.entries[i * n + i]
        return acc

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product with row-major block order."""
        r1, c1, r2, c2 = self.rows, self.cols, other.rows, other.cols
        a, b = self.entries, other.entries
        out = [ZERO] * (r1 * r2 * c1 * c2)
        width = c1 * c2
        for i in range(r1):
            for j in range(c1):
                x = a[i * c1 + j]
                if not x:
                    continue
                for k in range(r2):
                    base = (i * r2 + k) * width + j * c2
                    for l in range(c2):
                        y = b[k * c2 + l]
                        if y:
                            out[base + l] = x * y
        return ExactMatrix._wrap(r1 * r2, c1 * c2, tuple(out))

    def hstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        mats = (self,) + others
        if len({m.rows for m in mats}) != 1:
            raise ShapeMismatchError("hstack needs equal row counts")
        rows = [sum((m.row(i) for m in mats), ()) for i in range(self.rows)]
        return ExactMatrix._wrap(self.rows, sum(m.cols for m in mats),
                                 tuple(e for r in rows for e in r))

    def vstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        mats = (self,) + others
        if len({m.cols for m in mats}) != 1:
            raise ShapeMismatchError("vstack needs equal column counts")
        return ExactMatrix._wrap(sum(m.rows for m in mats), self.cols,
                                 sum((m.entries for m in mats), ()))

    def vec(self) -> tuple:
        """Row-major vectorization."""
        return self.entries

    def rank(self) -> int:
        return rank(self)


def as_matrix(data) -> ExactMatrix:
    """Build an :class:`ExactMatrix` from nested sequences (or pass one through)."""
    if isinstance(data, ExactMatrix):
        return data
    return ExactMatrix.from_rows(data)


# ---------------------------------------------------------------------------
# Kernel operations.

def _gi_rows(A: ExactMatrix) -> list[list[list[int]]]:
    return [_gi_vector(A.row(i))[0] for i in range(A.rows)]


def rank(A: ExactMatrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    if A.rows == 0 or A.cols == 0:
        return 0
    # eliminate along the shorter side
    if A.cols < A.rows:
        A = A.transpose()
    r, _, _, _ = _bareiss(_gi_rows(A), A.cols)
    return r


def det(A: ExactMatrix) -> GaussianRational:
    """Exact determinant."""
    if not A.is_square():
        raise ShapeMismatchError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return ONE
    rows = []
    scale = 1
    for i in range(n):
        v, d = _gi_vector(A.row(i))
        rows.append(v)
        scale *= d
    r, _, parity, (pr, pi) = _bareiss(rows, n)
    if r < n:
        return ZERO
    sign = -1 if parity else 1
    return GaussianRational(Fraction(sign * pr, scale), Fraction(sign * pi, scale))


def is_invertible(A: ExactMatrix) -> bool:
    return A.is_square() and rank(A) == A.rows


def inverse(A: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    if not A.is_square():
        raise ShapeMismatchError("inverse of a non-square matrix")
    n = A.rows
    aug = [list(A.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv_p = ONE / aug[c][c]
        aug[c] = [x * inv_p for x in aug[c]]
        for i in range(n):
            f = aug[i][c]
            if i != c and f:
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return ExactMatrix(n, n, [x for row in aug for x in row[n:]])


class SpanBasis:
    """Incrementally grown echelon basis of a subspace of ``Q(i)^dim``.

    Stored rows are Gaussian-integer vectors; each new row is reduced
    against the earlier ones in insertion order, so pivots are distinct.
    """

    __slots__ = ("dim", "_rows")

    def __init__(self, dim: int, vectors: Iterable = ()):
        self.dim = dim
        self._rows: list[tuple[int, list[list[int]]]] = []
        for v in vectors:
            self.add(v)

    def copy(self) -> "SpanBasis":
        other = SpanBasis(self.dim)
        other._rows = list(self._rows)
        return other

    def __len__(self):
        return len(self._rows)

    def _reduce(self, vec) -> list[list[int]]:
        if isinstance(vec, ExactMatrix):
            vec = vec.entries
        if len(vec) != self.dim:
            raise ShapeMismatchError(f"vector of length {len(vec)} in a space of dimension {self.dim}")
        v, _ = _gi_vector(vec)
        for p, b in self._rows:
            x, y = v[p]
            if not (x or y):
                continue
            a, c = b[p]
            # v <- b[p]*v - v[p]*b
            v = [[a * u - c * w - (x * s - y * t), a * w + c * u - (x * t + y * s)]
                 for (u, w), (s, t) in zip(v, b)]
        return v

    def contains(self, vec) -> bool:
        return not any(x or y for x, y in self._reduce(vec))

    __contains__ = contains

    def add(self, vec) -> bool:
        """Insert ``vec``; return True iff it was independent of the basis."""
        v = self._reduce(vec)
        p = next((k for k, (x, y) in enumerate(v) if x or y), None)
        if p is None:
            return False
        g = 0
        for x, y in v:
            g = gcd(g, x, y)
        if g > 1:
            v = [[x // g, y // g] for x, y in v]
        self._rows.append((p, v))
        return True


def _vectors(vectors: Sequence) -> tuple[list[tuple], tuple[int, int] | None]:
    vecs = []
    shape = None
    for v in vectors:
        if isinstance(v, ExactMatrix):
            if shape is None:
                shape = v.shape
            elif v.shape != shape:
                raise ShapeMismatchError(f"shape {v.shape} vs {shape}")
            vecs.append(v.entries)
        else:
            vecs.append(tuple(GaussianRational.coerce(x) for x in v))
    if len({len(v) for v in vecs}) > 1:
        raise ShapeMismatchError("vectors of different lengths")
    return vecs, shape


def independent_subset(vectors: Sequence) -> list[int]:
    """Greedy left-to-right maximal independent subset, as sorted indices."""
    vecs, _ = _vectors(vectors)
    if not vecs:
        raise ValueError("independent_subset needs at least one vector")
    basis = SpanBasis(len(vecs[0]))
    return [i for i, v in enumerate(vecs) if basis.add(v)]


def solve(A: ExactMatrix, b: Sequence) -> list[GaussianRational] | None:
    """One solution ``x`` of ``A x = b`` (free variables set to 0), or None."""
    n, m = A.rows, A.cols
    b = [GaussianRational.coerce(x) for x in b]
    if len(b) != n:
        raise ShapeMismatchError("right-hand side length does not match")
    aug = [list(A.row(i)) + [b[i]] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv_p = ONE / aug[r][c]
        aug[r] = [x * inv_p for x in aug[r]]
        for i in range(n):
            f = aug[i][c]
            if i != r and f:
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    if any(aug[i][m] for i in range(r, n)):
        return None
    x = [ZERO] * m
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][m]
    return x


def span_coefficients(target, basis: Sequence) -> list[GaussianRational] | None:
    """Coefficients ``c`` with ``target = sum c_i basis_i``, or None if none exist."""
    vecs, shape = _vectors(list(basis) + [target])
    if isinstance(target, ExactMatrix) and shape is not None and target.shape != shape:
        raise ShapeMismatchError("target shape does not match basis")
    *bv, t = vecs
    dim = len(t)
    if not bv:
        return [] if not any(t) else None
    A = ExactMatrix(dim, len(bv), [bv[j][i] for i in range(dim) for j in range(len(bv))])
    return solve(A, t)


def find_mixing_constant(det_eval: Callable[[GaussianRational], GaussianRational],
                         degree_bound: int) -> GaussianRational:
    """First ``k`` in ``1, 2, ..., degree_bound + 2`` with ``det_eval(k) != 0``.

    A nonzero polynomial of degree ``d`` has at most ``d`` roots, so for a
    valid input the scan cannot run out of probes.
    """
    for k in range(1, degree_bound + 3):
        kk = GaussianRational(k)
        if det_eval(kk):
            return kk
    raise MixingConstantError(
        f"det_eval vanished at all probes 1..{degree_bound + 2}; "
        "the polynomial is identically zero or exceeds the degree bound")


def faddeev_leverrier_charpoly(A: ExactMatrix, hermitian: bool = False) -> list[GaussianRational]:
    """Coefficients of ``det(xI - A)``, highest degree first (leading 1).

    Runs the Faddeev-LeVerrier recursion on the Gaussian-integer matrix
    ``D*A`` and rescales, so every division is exact.  With
    ``hermitian=True`` the input is required to be Hermitian and the
    (necessarily real) coefficients are checked to be real.
    """
    if not A.is_square():
        raise ShapeMismatchError("characteristic polynomial of a non-square matrix")
    if hermitian and not A.is_hermitian():
        raise ValueError("matrix is not Hermitian")
    n = A.rows
    den = 1
    for z in A.entries:
        den = lcm(den, z.re.denominator, z.im.denominator)
    re = [[0] * n for _ in range(n)]
    im = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            z = A.entries[i * n + j]
            re[i][j] = z.re.numerator * (den // z.re.denominator)
            im[i][j] = z.im.numerator * (den // z.im.denominator)
    # sparse row views of the integer matrix B = den*A
    brow = [[(k, re[i][k], im[i][k]) for k in range(n) if re[i][k] or im[i][k]] for i in range(n)]
    coeffs = [(1, 0)]
    # M_1 = I ; c_k = -tr(B M_k)/k ; M_{k+1} = B M_k + c_k I
    mr = [[int(i == j) for j in range(n)] for i in range(n)]
    mi = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # P = B @ M
        pr = [[0] * n for _ in range(n)]
        pi = [[0] * n for _ in range(n)]
        for i in range(n):
            rr, ri = pr[i], pi[i]
            for kk, x, y in brow[i]:
                sr, si = mr[kk], mi[kk]
                if y:
                    for j in range(n):
                        u, v = sr[j], si[j]
                        rr[j] += x * u - y * v
                        ri[j] += x * v + y * u
                else:
                    for j in range(n):
                        rr[j] += x * sr[j]
                        ri[j] += x * si[j]
        tr_r = sum(pr[i][i] for i in range(n))
        tr_i = sum(pi[i][i] for i in range(n))
        cr, rem_r = divmod(-tr_r, k)
        ci, rem_i = divmod(-tr_i, k)
        if rem_r or rem_i:
            raise ArithmeticError("non-integral Faddeev-LeVerrier coefficient")
        coeffs.append((cr, ci))
        for i in range(n):
            pr[i][i] += cr
            pi[i][i] += ci
        mr, mi = pr, pi
    out = []
    for k, (cr, ci) in enumerate(coeffs):
        s = den ** k
        out.append(GaussianRational(Fraction(cr, s), Fraction(ci, s)))
    if hermitian and any(c.im for c in out):
        raise ArithmeticError("Hermitian input produced a non-real characteristic coefficient")
    return out


def is_psd_hermitian(A: ExactMatrix) -> bool:
    """PSD test for a Hermitian matrix from the signs of its characteristic coefficients.

    With ``det(xI - A) = x^n - e1 x^(n-1) + e2 x^(n-2) - ...`` all eigenvalues
    are nonnegative iff every elementary symmetric value ``e_k`` is >= 0.
    """
    coeffs = faddeev_leverrier_charpoly(A, hermitian=True)
    for k, c in enumerate(coeffs):
        e_k = c.re if k % 2 == 0 else -c.re
        if e_k < 0:
            return False
    return True

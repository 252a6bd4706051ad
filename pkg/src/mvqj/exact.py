"""Exact Gaussian-rational scalars and small dense matrices over them.

Everything downstream (polynomials, weights, operators) is built on
:class:`GaussRat` and :class:`Mat`, so every finite identity in the package
is decided exactly.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import SingularMatrix, SizeMismatch


class GaussRat:
    """A number ``re + im*i`` with ``re`` and ``im`` rational.

    >>> GaussRat(1, 2) * GaussRat(0, 1)
    GaussRat('-2', '1')
    >>> GaussRat.parse("1/2+3/4i").conj()
    GaussRat('1/2', '-3/4')
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def parse(cls, text: str) -> "GaussRat":
        """Parse ``"p/q"``, ``"p/q+r/si"``, ``"r/si"`` or ``"i"``."""
        s = text.replace(" ", "").replace("j", "i")
        if not s:
            raise ValueError("empty scalar")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            real, imag = body[:cut], body[cut:]
        else:
            real, imag = "", body
        if imag in ("", "+"):
            imag = "1"
        elif imag == "-":
            imag = "-1"
        return cls(Fraction(real) if real else 0, Fraction(imag))

    # -- structure ---------------------------------------------------------
    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        """``|z|^2``, exact."""
        return self.re * self.re + self.im * self.im

    def abs_bound(self) -> Fraction:
        """Rational upper bound ``|re| + |im| >= |z|``."""
        return abs(self.re) + abs(self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def real_value(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __lt__(self, other):
        return self.real_value() < _real(other)

    def __le__(self, other):
        return self.real_value() <= _real(other)

    def __gt__(self, other):
        return self.real_value() > _real(other)

    def __ge__(self, other):
        return self.real_value() >= _real(other)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        return float(self.real_value())

    def __repr__(self):
        return f"GaussRat({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.im == 0:
            return GaussRat(self.re * o.re, self.im * o.re)
        if self.im == 0:
            return GaussRat(self.re * o.re, self.re * o.im)
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.im == 0:
            if o.re == 0:
                raise ZeroDivisionError("division by zero")
            return GaussRat(self.re / o.re, self.im / o.re)
        d = o.abs2()
        return GaussRat((self.re * o.re + self.im * o.im) / d,
                        (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / self ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def _real(x) -> Fraction:
    if isinstance(x, GaussRat):
        return x.real_value()
    return Fraction(x)


def _coerce(x):
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Rational)):
        return GaussRat(x)
    if isinstance(x, str):
        return GaussRat.parse(x)
    return None


def gr(x) -> GaussRat:
    """Coerce an int, Fraction, ``"p/q"`` string or GaussRat to GaussRat."""
    o = _coerce(x)
    if o is None:
        raise TypeError(f"cannot interpret {x!r} as an exact scalar")
    return o


ZERO = GaussRat(0)
ONE = GaussRat(1)
I_UNIT = GaussRat(0, 1)


class Mat:
    """Immutable dense matrix with :class:`GaussRat` entries.

    ``*`` multiplies by scalars, ``@`` is the matrix product.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(gr(e) for e in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise SizeMismatch("ragged matrix rows")

    @classmethod
    def _raw(cls, rows):
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0]) if rows else 0
        return m

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n))
                              for i in range(n)))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Mat":
        m = n if m is None else m
        return cls._raw(tuple((ZERO,) * m for _ in range(n)))

    @classmethod
    def diag(cls, entries: Sequence) -> "Mat":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)]
                    for i in range(n)])

    @classmethod
    def scalar(cls, c, n: int) -> "Mat":
        return cls.identity(n) * c

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if isinstance(other, Mat):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"Mat[{body}]"

    def is_zero(self) -> bool:
        return not any(e for r in self.rows for e in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def _check_same(self, other):
        if self.shape != other.shape:
            raise SizeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_same(other)
        return Mat._raw(tuple(tuple(a + b for a, b in zip(r, s))
                              for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._check_same(other)
        return Mat._raw(tuple(tuple(a - b for a, b in zip(r, s))
                              for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, c):
        if not isinstance(c, (GaussRat, int, Fraction)):
            return NotImplemented
        c = gr(c)
        return Mat._raw(tuple(tuple(a * c for a in r) for r in self.rows))

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = gr(c)
        return Mat._raw(tuple(tuple(a / c for a in r) for r in self.rows))

    def __matmul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.ncols != other.nrows:
            raise SizeMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Mat._raw(tuple(out))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result, base = Mat.identity(self.nrows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def T(self) -> "Mat":
        return Mat._raw(tuple(zip(*self.rows)))

    @property
    def H(self) -> "Mat":
        """Conjugate transpose."""
        return Mat._raw(tuple(tuple(e.conj() for e in col)
                              for col in zip(*self.rows)))

    def conj(self) -> "Mat":
        return Mat._raw(tuple(tuple(e.conj() for e in r) for r in self.rows))

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.H

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.nrows)
                   for j in range(self.ncols) if i != j)

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.nrows)
                   for j in range(min(i, self.ncols)))

    def max_abs_bound(self):
        """Rational upper bound on the largest entry modulus."""
        return max((e.abs_bound() for r in self.rows for e in r),
                   default=Fraction(0))

    def det(self) -> GaussRat:
        if not self.is_square():
            raise SizeMismatch("determinant of non-square matrix")
        n = self.nrows
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        a = [list(r) for r in self.rows]
        det = ONE
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return ZERO
            if p != k:
                a[k], a[p] = a[p], a[k]
                det = -det
            det = det * a[k][k]
            for i in range(k + 1, n):
                if a[i][k]:
                    f = a[i][k] / a[k][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return det

    def inv(self) -> "Mat":
        n = self.nrows
        if not self.is_square():
            raise SizeMismatch("inverse of non-square matrix")
        if n == 2:
            (a, b), (c, d) = self.rows
            det = a * d - b * c
            if not det:
                raise SingularMatrix("matrix is singular")
            return Mat._raw(((d / det, -b / det), (-c / det, a / det)))
        return solve(self, Mat.identity(n))

    def leading_minors(self) -> list:
        return [Mat._raw(tuple(r[:k] for r in self.rows[:k])).det()
                for k in range(1, self.nrows + 1)]

    def is_positive_definite(self) -> bool:
        """Sylvester's criterion; exact for Hermitian matrices."""
        if not self.is_hermitian():
            return False
        return all(m > 0 for m in self.leading_minors())

    def commutator(self, other: "Mat") -> "Mat":
        return self @ other - other @ self


def solve(a: Mat, b: Mat) -> Mat:
    """Solve ``a @ x = b`` exactly by Gaussian elimination with full pivoting."""
    n = a.nrows
    if not a.is_square() or b.nrows != n:
        raise SizeMismatch(f"solve {a.shape} with rhs {b.shape}")
    m = b.ncols
    aug = [list(a.rows[i]) + list(b.rows[i]) for i in range(n)]
    colperm = list(range(n))
    for k in range(n):
        piv = next(((i, j) for j in range(k, n) for i in range(k, n)
                    if aug[i][j]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        pi, pj = piv
        aug[k], aug[pi] = aug[pi], aug[k]
        if pj != k:
            for row in aug:
                row[k], row[pj] = row[pj], row[k]
            colperm[k], colperm[pj] = colperm[pj], colperm[k]
        pivot = aug[k][k]
        aug[k] = [x / pivot for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    x = [None] * n
    for k in range(n):
        x[colperm[k]] = tuple(aug[k][n:n + m])
    return Mat._raw(tuple(x))


def nullspace(a: Mat) -> list[Mat]:
    """Exact basis of ``{x : a @ x = 0}`` as column vectors."""
    rows = [list(r) for r in a.rows]
    ncols = a.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][f]
        basis.append(Mat([[e] for e in vec]))
    return basis

"""Matrix-valued polynomials in ``z`` and in ``z^{-1}``.

Coefficients are stored in ascending order of the power and trailing zero
coefficients are always stripped, so ``degree`` is never stale.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DivisionByZero, InconsistentSamples, SizeMismatch
from .exact import ONE, GaussRat, Mat, gr, solve


def _strip(coeffs: list[Mat]) -> tuple[Mat, ...]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


class MatPoly:
    """``P(z) = sum_k C_k z^k`` with ``N x N`` exact coefficients ``C_k``."""

    __slots__ = ("size", "coeffs")

    def __init__(self, coeffs: Iterable, size: int | None = None):
        cs = [c if isinstance(c, Mat) else Mat(c) for c in coeffs]
        if size is None:
            if not cs:
                raise ValueError("size required for the zero polynomial")
            size = cs[0].nrows
        for c in cs:
            if c.shape != (size, size):
                raise SizeMismatch(f"coefficient of shape {c.shape}, expected {size}")
        self.size = size
        self.coeffs = _strip(cs)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, size: int) -> "MatPoly":
        return cls([], size)

    @classmethod
    def constant(cls, m: Mat) -> "MatPoly":
        return cls([m], m.nrows)

    @classmethod
    def identity(cls, size: int) -> "MatPoly":
        return cls([Mat.identity(size)], size)

    @classmethod
    def monomial(cls, k: int, m: Mat) -> "MatPoly":
        return cls([Mat.zeros(m.nrows)] * k + [m], m.nrows)

    @classmethod
    def scalar(cls, coeffs: Sequence) -> "MatPoly":
        """Scalar polynomial as a ``1 x 1`` matrix polynomial."""
        return cls([Mat([[c]]) for c in coeffs], 1)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence["MatPoly"]]) -> "MatPoly":
        """Assemble an ``N x N`` polynomial from ``1 x 1`` entry polynomials."""
        n = len(entries)
        deg = max((e.degree for row in entries for e in row), default=-1)
        coeffs = []
        for k in range(deg + 1):
            coeffs.append(Mat([[e.scalar_coeff(k) for e in row] for row in entries]))
        return cls(coeffs, n)

    # -- structure ---------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Mat:
        if not self.coeffs:
            return Mat.zeros(self.size)
        return self.coeffs[-1]

    def coeff(self, k: int) -> Mat:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Mat.zeros(self.size)

    def scalar_coeff(self, k: int) -> GaussRat:
        return self.coeff(k)[0, 0]

    def scalar_coeffs(self) -> list[GaussRat]:
        return [c[0, 0] for c in self.coeffs]

    def entry(self, i: int, j: int) -> "MatPoly":
        return MatPoly([Mat([[c[i, j]]]) for c in self.coeffs], 1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == Mat.identity(self.size)

    def __eq__(self, other):
        if isinstance(other, MatPoly):
            return self.size == other.size and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.size, self.coeffs))

    def __repr__(self):
        return f"MatPoly(size={self.size}, coeffs={list(self.coeffs)!r})"

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "MatPoly"):
        if self.size != other.size:
            raise SizeMismatch(f"size {self.size} vs {other.size}")

    def __add__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return MatPoly([self.coeff(k) + other.coeff(k) for k in range(n)], self.size)

    def __sub__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return MatPoly([self.coeff(k) - other.coeff(k) for k in range(n)], self.size)

    def __neg__(self):
        return MatPoly([-c for c in self.coeffs], self.size)

    def __mul__(self, other):
        """Polynomial product, or scaling by an exact scalar."""
        if isinstance(other, MatPoly):
            self._check(other)
            if self.is_zero() or other.is_zero():
                return MatPoly.zero(self.size)
            out = [Mat.zeros(self.size)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a @ b
            return MatPoly(out, self.size)
        if isinstance(other, Mat):
            return self.right_multiply(other)
        c = gr(other)
        return MatPoly([m * c for m in self.coeffs], self.size)

    def __rmul__(self, other):
        if isinstance(other, Mat):
            return left_multiply(other, self)
        c = gr(other)
        return MatPoly([m * c for m in self.coeffs], self.size)

    def right_multiply(self, m: Mat) -> "MatPoly":
        if m.shape != (self.size, self.size):
            raise SizeMismatch(f"right factor {m.shape} for size {self.size}")
        return MatPoly([c @ m for c in self.coeffs], self.size)

    def times_z(self, k: int = 1) -> "MatPoly":
        return MatPoly([Mat.zeros(self.size)] * k + list(self.coeffs), self.size)

    def dilate(self, c) -> "MatPoly":
        """``z -> P(c z)``."""
        c = gr(c)
        out, p = [], ONE
        for m in self.coeffs:
            out.append(m * p)
            p = p * c
        return MatPoly(out, self.size)

    def adjoint(self) -> "MatPoly":
        """``P^*(z) = sum_k C_k^* z^k`` (real argument)."""
        return MatPoly([c.H for c in self.coeffs], self.size)

    def __call__(self, z) -> Mat:
        return evaluate(self, z)


class LaurentMatPoly:
    """``F(z) = sum_{k=0}^{d} C_k z^{-k}``, a matrix polynomial in ``z^{-1}``."""

    __slots__ = ("size", "coeffs")

    def __init__(self, coeffs: Iterable, size: int | None = None):
        cs = [c if isinstance(c, Mat) else Mat(c) for c in coeffs]
        if size is None:
            if not cs:
                raise ValueError("size required for the zero polynomial")
            size = cs[0].nrows
        for c in cs:
            if c.shape != (size, size):
                raise SizeMismatch(f"coefficient of shape {c.shape}, expected {size}")
        self.size = size
        self.coeffs = _strip(cs)

    @property
    def degree(self) -> int:
        """Degree in ``z^{-1}``, ``-1`` for zero."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Mat:
        """Coefficient of ``z^{-k}``."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Mat.zeros(self.size)

    def __add__(self, other):
        if not isinstance(other, LaurentMatPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return LaurentMatPoly([self.coeff(k) + other.coeff(k) for k in range(n)], self.size)

    def __mul__(self, c):
        if isinstance(c, Mat):
            return LaurentMatPoly([m @ c for m in self.coeffs], self.size)
        c = gr(c)
        return LaurentMatPoly([m * c for m in self.coeffs], self.size)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LaurentMatPoly):
            return self.size == other.size and self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        return f"LaurentMatPoly(size={self.size}, coeffs={list(self.coeffs)!r})"

    def __call__(self, z) -> Mat:
        return evaluate(self, z)


def evaluate(p: MatPoly | LaurentMatPoly, z) -> Mat:
    """Exact Horner evaluation at ``z``."""
    z = gr(z)
    if isinstance(p, LaurentMatPoly):
        if not z:
            raise DivisionByZero("Laurent polynomial evaluated at z = 0")
        z = ONE / z
    acc = Mat.zeros(p.size)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def left_multiply(m: Mat, p: MatPoly) -> MatPoly:
    """Coefficientwise ``M C_k``."""
    if m.shape != (p.size, p.size):
        raise SizeMismatch(f"left factor {m.shape} for size {p.size}")
    return MatPoly([m @ c for c in p.coeffs], p.size)


def interpolate_from_lattice(samples: Sequence[tuple[int, Mat]], degree_bound: int,
                             q) -> MatPoly:
    """Unique matrix polynomial of degree ``<= degree_bound`` through lattice samples.

    ``samples`` are ``(x, P(q^x))`` pairs. The first ``degree_bound + 1``
    samples determine the fit; any further samples must be reproduced exactly,
    otherwise :class:`InconsistentSamples` is raised.
    """
    q = gr(q)
    if len(samples) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} samples, got {len(samples)}")
    xs = [x for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("lattice indices must be distinct")
    size = samples[0][1].nrows
    fit = samples[:degree_bound + 1]
    nodes = [q ** x for x, _ in fit]
    vander = Mat([[z ** k for k in range(degree_bound + 1)] for z in nodes])
    # one exact solve with all N*N entries stacked as right-hand sides
    rhs = Mat([[v[i, j] for i in range(size) for j in range(size)] for _, v in fit])
    sol = solve(vander, rhs)
    coeffs = [Mat([[sol[k, i * size + j] for j in range(size)] for i in range(size)])
              for k in range(degree_bound + 1)]
    poly = MatPoly(coeffs, size)
    for x, v in samples[degree_bound + 1:]:
        if poly(q ** x) != v:
            raise InconsistentSamples(
                f"sample at x={x} is not reproduced by a degree-{degree_bound} fit")
    return poly


def polynomial_from_lattice_function(f, degree_bound: int, q, extra: int = 2) -> MatPoly:
    """Interpolate ``x -> f(x)`` at ``x = 0..degree_bound+extra`` with consistency checks."""
    samples = [(x, f(x)) for x in range(degree_bound + 1 + extra)]
    return interpolate_from_lattice(samples, degree_bound, q)


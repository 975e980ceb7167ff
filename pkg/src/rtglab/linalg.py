"""Exact linear algebra over the Gaussian rationals Q(i).

Scalars are ``Fraction`` (real) or :class:`QQi` (complex).  All routines only
need ``+ - * /`` and comparison with zero, so both kinds mix freely.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Scalar = "Fraction | QQi | int"


class QQi:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x) -> "QQi":
        if isinstance(x, QQi):
            return x
        if isinstance(x, complex):
            return QQi(Fraction(x.real), Fraction(x.imag))
        return QQi(x, 0)

    def __add__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __mul__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi.coerce(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("QQi division by zero")
        return QQi((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return QQi.coerce(other) / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QQi, complex)):
            o = QQi.coerce(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"{self.re}+{self.im}i"


def simplify(x):
    """Collapse a QQi with zero imaginary part back to a Fraction."""
    if isinstance(x, QQi) and x.im == 0:
        return x.re
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_zero(x) -> bool:
    return x == 0


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        pr = m[r]
        nz = [j for j in range(c, ncols) if pr[j] != 0]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    mi = m[i]
                    for j in nz:
                        mi[j] = mi[j] - f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence], ncols: int | None = None) -> int:
    if not vectors:
        return 0
    if ncols is None:
        ncols = len(vectors[0])
    return len(rref(vectors, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {x : A x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def row_basis(vectors: Sequence[Sequence], ncols: int) -> list[list]:
    """Canonical (reduced) basis of the span of ``vectors``."""
    if not vectors:
        return []
    return rref(vectors, ncols)[0]


def in_span(basis: Sequence[Sequence], v: Sequence, ncols: int | None = None) -> bool:
    if ncols is None:
        ncols = len(v)
    if all(x == 0 for x in v):
        return True
    return rank(list(basis) + [list(v)], ncols) == rank(list(basis), ncols)


def reduced_in_span(rref_rows: Sequence[Sequence], v: Sequence) -> bool:
    """Membership test against rows already in reduced row echelon form."""
    r = list(v)
    for row in rref_rows:
        pc = next(j for j, x in enumerate(row) if x != 0)
        c = r[pc]
        if c != 0:
            r = [a - c * b for a, b in zip(r, row)]
    return all(x == 0 for x in r)


def span_contains(big: Sequence[Sequence], small: Sequence[Sequence], ncols: int) -> bool:
    return rank(list(big) + list(small), ncols) == rank(list(big), ncols)


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> bool:
    ra, rb = rank(list(a), ncols), rank(list(b), ncols)
    return ra == rb and rank(list(a) + list(b), ncols) == ra


def float_rank(vectors: Sequence[Sequence], tol: float = 1e-9) -> int:
    """Floating-point rank, for cross-checking the exact path only."""
    import numpy as np

    if not vectors:
        return 0
    arr = np.array([[complex(QQi.coerce(x).re, QQi.coerce(x).im) for x in row] for row in vectors])
    return int(np.linalg.matrix_rank(arr, tol=tol))


def to_pair(x) -> list[int]:
    """Serialize a scalar as [re_num, re_den, im_num, im_den]."""
    q = QQi.coerce(x)
    return [q.re.numerator, q.re.denominator, q.im.numerator, q.im.denominator]


def from_pair(p: Sequence[int]):
    if len(p) != 4:
        raise ValueError(f"expected [re_num, re_den, im_num, im_den], got {p!r}")
    return simplify(QQi(Fraction(p[0], p[1]), Fraction(p[2], p[3])))


def fmt(x) -> str:
    return str(simplify(x))

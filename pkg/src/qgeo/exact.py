"""Exact Gaussian-rational arithmetic and tolerance-free linear algebra.

Float tensors whose entries are small dyadic rationals (integers, halves,
quarters, ...) convert losslessly to :class:`QC` scalars, so ranks,
determinants and echelon bases computed here carry no numerical fuzz.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exceptions import ExactModeOnInexactInput

# Largest denominator accepted when reading a float as an exact rational.
# Floats are always dyadic, so this bound is what separates "entered as an
# exact small rational" from "arbitrary double".
MAX_DENOMINATOR = 1 << 20


class QC:
    """Complex scalar with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @classmethod
    def from_complex(cls, z, max_den: int = MAX_DENOMINATOR) -> "QC":
        z = complex(z)
        re = Fraction(z.real)
        im = Fraction(z.imag)
        if re.denominator > max_den or im.denominator > max_den:
            raise ExactModeOnInexactInput(
                f"entry {z!r} is not a small dyadic rational"
            )
        return cls(re, im)

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QC":
        return QC(-self.re, -self.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "QC") -> "QC":
        n2 = other.re * other.re + other.im * other.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QC(
            (self.re * other.re + self.im * other.im) / n2,
            (self.im * other.re - self.re * other.im) / n2,
        )

    def conj(self) -> "QC":
        return QC(self.re, -self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, QC) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"QC({self.re}, {self.im})"

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)


QC_ZERO = QC(0)
QC_ONE = QC(1)


def is_dyadic_exact(values, max_den: int = MAX_DENOMINATOR) -> bool:
    """True when every entry reads back as a small dyadic rational."""
    arr = np.asarray(values, dtype=complex).reshape(-1)
    for z in arr:
        if Fraction(z.real).denominator > max_den:
            return False
        if Fraction(z.imag).denominator > max_den:
            return False
    return True


def qc_matrix(m) -> list[list[QC]]:
    """Convert a complex matrix to exact form; raises on inexact entries."""
    a = np.asarray(m, dtype=complex)
    return [[QC.from_complex(z) for z in row] for row in a]


def qc_to_complex_matrix(rows: list[list[QC]]) -> np.ndarray:
    return np.array([[z.to_complex() for z in row] for row in rows], dtype=complex)


def exact_echelon(rows: list[list[QC]]) -> list[list[QC]]:
    """Row echelon form; returns the non-zero rows (a row-space basis)."""
    m = [row[:] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    piv = 0
    for col in range(n_cols):
        if piv >= n_rows:
            break
        sel = next((r for r in range(piv, n_rows) if m[r][col]), None)
        if sel is None:
            continue
        m[piv], m[sel] = m[sel], m[piv]
        inv = m[piv][col]
        for r in range(piv + 1, n_rows):
            if m[r][col]:
                factor = m[r][col] / inv
                for c in range(col, n_cols):
                    m[r][c] = m[r][c] - factor * m[piv][c]
        piv += 1
    return m[:piv]


def exact_rank(rows: list[list[QC]]) -> int:
    return len(exact_echelon(rows))


def exact_matrix_rank(m) -> int:
    """Rank of a complex matrix with dyadic-rational entries, exactly."""
    return exact_rank(qc_matrix(m))


def exact_det(rows: list[list[QC]]) -> QC:
    """Determinant by fraction elimination with pivot swaps."""
    m = [row[:] for row in rows]
    n = len(m)
    det = QC_ONE
    for col in range(n):
        sel = next((r for r in range(col, n) if m[r][col]), None)
        if sel is None:
            return QC_ZERO
        if sel != col:
            m[col], m[sel] = m[sel], m[col]
            det = -det
        pivot = m[col][col]
        det = det * pivot
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] / pivot
                for c in range(col, n):
                    m[r][c] = m[r][c] - factor * m[col][c]
    return det


def exact_matmul(a: list[list[QC]], b: list[list[QC]]) -> list[list[QC]]:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[QC_ZERO for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if not aik:
                continue
            for j in range(cols):
                if b[k][j]:
                    out[i][j] = out[i][j] + aik * b[k][j]
    return out


def exact_inverse(rows: list[list[QC]]) -> list[list[QC]] | None:
    """Inverse via Gauss-Jordan, or None if the matrix is singular."""
    n = len(rows)
    m = [row[:] + [QC_ONE if i == j else QC_ZERO for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        sel = next((r for r in range(col, n) if m[r][col]), None)
        if sel is None:
            return None
        m[col], m[sel] = m[sel], m[col]
        pivot = m[col][col]
        m[col] = [x / pivot for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


# -- polynomials over QC, used by the diagonal-pencil rank test --------------
#
# A polynomial is a coefficient list [c0, c1, ...] (ascending powers).

def poly_trim(p: list[QC]) -> list[QC]:
    while p and not p[-1]:
        p.pop()
    return p


def poly_mul(p: list[QC], q: list[QC]) -> list[QC]:
    out = [QC_ZERO] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return poly_trim(out)


def poly_divmod(p: list[QC], q: list[QC]) -> tuple[list[QC], list[QC]]:
    p = p[:]
    q = poly_trim(q[:])
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [QC_ZERO] * max(0, len(p) - len(q) + 1)
    while len(poly_trim(p)) >= len(q):
        p = poly_trim(p)
        shift = len(p) - len(q)
        factor = p[-1] / q[-1]
        quot[shift] = factor
        for i, c in enumerate(q):
            p[shift + i] = p[shift + i] - factor * c
    return poly_trim(quot), poly_trim(p)


def poly_gcd(p: list[QC], q: list[QC]) -> list[QC]:
    p, q = poly_trim(p[:]), poly_trim(q[:])
    while q:
        _, r = poly_divmod(p, q)
        p, q = q, r
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def poly_derivative(p: list[QC]) -> list[QC]:
    return poly_trim([QC(k) * c for k, c in enumerate(p)][1:])


def charpoly(a: list[list[QC]]) -> list[QC]:
    """Characteristic polynomial det(xI - A) by Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [QC_ZERO] * (n + 1)
    coeffs[n] = QC_ONE
    m = [[QC_ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        if k == 1:
            m = [[QC_ONE if i == j else QC_ZERO for j in range(n)] for i in range(n)]
        else:
            m = exact_matmul(a, m)
            for i in range(n):
                m[i][i] = m[i][i] + coeffs[n - k + 1]
        am = exact_matmul(a, m)
        trace = QC_ZERO
        for i in range(n):
            trace = trace + am[i][i]
        coeffs[n - k] = -(trace / QC(k))
    return coeffs


def is_diagonalizable(a: list[list[QC]]) -> bool:
    """Exact test: g(A) == 0 for g the squarefree part of the char poly."""
    p = charpoly(a)
    g = poly_gcd(p, poly_derivative(p))
    sf, _ = poly_divmod(p, g)
    n = len(a)
    acc = [[QC_ZERO] * n for _ in range(n)]
    power = [[QC_ONE if i == j else QC_ZERO for j in range(n)] for i in range(n)]
    for k, c in enumerate(sf):
        if k > 0:
            power = exact_matmul(power, a)
        if c:
            for i in range(n):
                for j in range(n):
                    acc[i][j] = acc[i][j] + c * power[i][j]
    return all(not acc[i][j] for i in range(n) for j in range(n))


def commutes(a: list[list[QC]], b: list[list[QC]]) -> bool:
    ab = exact_matmul(a, b)
    ba = exact_matmul(b, a)
    n = len(a)
    return all(ab[i][j] == ba[i][j] for i in range(n) for j in range(n))

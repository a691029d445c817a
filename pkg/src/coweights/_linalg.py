"""Small exact-rational helpers: literal parsing and dense Gaussian elimination."""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational literals to Fraction; refuse floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def parse_vector(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_rational(part) for part in text.split(","))


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a square nonsingular system exactly.

    Raises ``ZeroDivisionError`` if the matrix is singular.
    """
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / p
                row_r, row_c = aug[r], aug[col]
                for k in range(col, n + 1):
                    row_r[k] -= f * row_c[k]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def inverse(matrix: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(matrix)
    cols = [solve(matrix, [int(i == j) for i in range(n)]) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def matvec(matrix: Sequence[Sequence], vec: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, vec)), Fraction(0)) for row in matrix]


def dot(u: Iterable, v: Iterable) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for k in range(col, n):
                    m[r][k] -= f * m[col][k]
    return det

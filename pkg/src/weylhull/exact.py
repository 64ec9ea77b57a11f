"""Exact rational linear algebra.

Thin adapters around sympy so the rest of the package can stay in
``fractions.Fraction`` and plain tuples.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def as_fraction(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, Fractions and sympy rationals."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as an exact rational")


def as_vector(xs: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in xs)


def _sym(rows: Sequence[Sequence]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(as_fraction(v).numerator, as_fraction(v).denominator)
                          for v in row] for row in rows])


def _back(m: sympy.Matrix) -> Matrix:
    return tuple(tuple(as_fraction(m[i, j]) for j in range(m.cols)) for i in range(m.rows))


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return _sym(rows).rank()


def det(rows: Sequence[Sequence]) -> Fraction:
    if not rows:
        return Fraction(1)
    return as_fraction(_sym(rows).det(method="bareiss"))


def inverse(rows: Sequence[Sequence]) -> Matrix:
    return _back(_sym(rows).inv())


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : rows @ x = 0}, in sympy's reduced-echelon order."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols or 0)]
    return [tuple(as_fraction(v) for v in vec) for vec in _sym(rows).nullspace()]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """One solution of ``rows @ x = rhs`` with free parameters set to zero, or None."""
    a, b = _sym(rows), _sym([[v] for v in rhs])
    try:
        sol, params = a.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return tuple(as_fraction(sol[i, 0]) for i in range(sol.rows))


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), start=0)


def matvec(m: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(dot(row, x) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def primitive_integer_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    fr = [as_fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    return tuple(x // g for x in ints) if g else tuple(ints)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

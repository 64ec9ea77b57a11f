"""Exact feasibility of small linear systems by Fourier–Motzkin elimination.

A constraint is ``(coeffs, const, rel)`` meaning ``coeffs @ x + const rel 0`` with
``rel`` one of ``">"``, ``">="`` or ``"="``.  Strict inequalities are carried
through elimination, so systems such as ``x > 0, A x < 0`` are decided exactly and
a rational witness is recovered by back-substitution.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

from .exact import as_fraction


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    const: Fraction
    strict: bool

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coeffs, x)), self.const)

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.value(x)
        return v > 0 if self.strict else v >= 0


def constraint(coeffs: Iterable, rel: str, const=0) -> list[Constraint]:
    """Build the inequality form of ``coeffs @ x + const rel 0``.

    Relations ``<``, ``<=`` are flipped; ``=`` becomes a pair of ``>=``.
    """
    c = tuple(as_fraction(a) for a in coeffs)
    k = as_fraction(const)
    neg = tuple(-a for a in c)
    if rel == ">":
        return [Constraint(c, k, True)]
    if rel == ">=":
        return [Constraint(c, k, False)]
    if rel == "<":
        return [Constraint(neg, -k, True)]
    if rel == "<=":
        return [Constraint(neg, -k, False)]
    if rel == "=":
        return [Constraint(c, k, False), Constraint(neg, -k, False)]
    raise ValueError(f"unknown relation {rel!r}")


def _normalize(c: Constraint) -> Constraint:
    # scale so the first nonzero coefficient (or the constant) has |value| 1
    lead = next((a for a in c.coeffs if a != 0), c.const)
    if lead == 0:
        return c
    s = abs(lead)
    return Constraint(tuple(a / s for a in c.coeffs), c.const / s, c.strict)


def _dedupe(cs: Iterable[Constraint]) -> list[Constraint]:
    # keep the tightest version of each (coeffs) row: smallest const, strict wins ties
    best: dict[tuple, Constraint] = {}
    for c in map(_normalize, cs):
        prev = best.get(c.coeffs)
        if prev is None or c.const < prev.const or (c.const == prev.const and c.strict):
            best[c.coeffs] = c
    return list(best.values())


def _eliminate(cs: list[Constraint], var: int) -> list[Constraint]:
    pos = [c for c in cs if c.coeffs[var] > 0]
    neg = [c for c in cs if c.coeffs[var] < 0]
    out = [c for c in cs if c.coeffs[var] == 0]
    for p in pos:
        for q in neg:
            a, b = p.coeffs[var], -q.coeffs[var]
            coeffs = tuple(b * x + a * y for x, y in zip(p.coeffs, q.coeffs))
            out.append(Constraint(coeffs, b * p.const + a * q.const, p.strict or q.strict))
    return _dedupe(out)


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    # smallest denominator rational in the open interval (lo, hi); lo < hi
    q = 1
    while True:
        p = floor(lo * q) + 1
        if Fraction(p, q) < hi:
            return Fraction(p, q)
        q += 1


def _pick(lo, lo_strict, hi, hi_strict) -> Fraction:
    """A simple value in the interval: 0 if allowed, else an integer near 0, else
    the smallest-denominator rational."""
    def ok(v):
        if lo is not None and (v < lo or (lo_strict and v == lo)):
            return False
        if hi is not None and (v > hi or (hi_strict and v == hi)):
            return False
        return True

    if ok(Fraction(0)):
        return Fraction(0)
    if lo is not None and hi is not None and lo == hi:
        return lo
    cand = None
    if lo is not None and lo >= 0:
        cand = Fraction(floor(lo) + 1 if lo_strict else ceil(lo))
    elif hi is not None and hi <= 0:
        cand = Fraction(ceil(hi) - 1 if hi_strict else floor(hi))
    if cand is not None and ok(cand):
        return cand
    return _simplest_between(lo, hi)


def solve(constraints: Sequence[Constraint], nvars: int) -> tuple[Fraction, ...] | None:
    """Return a rational point satisfying every constraint, or None if infeasible."""
    stages = [_dedupe(constraints)]
    for var in reversed(range(nvars)):
        stages.append(_eliminate(stages[-1], var))
    for c in stages[-1]:
        if not c.holds([Fraction(0)] * nvars):
            return None

    x = [Fraction(0)] * nvars
    # stage k (counted from the end) involves variables 0..k-1 only
    for var in range(nvars):
        lo = hi = None
        lo_s = hi_s = False
        for c in stages[nvars - var - 1]:
            a = c.coeffs[var]
            rest = c.const + sum(c.coeffs[j] * x[j] for j in range(var))
            if a > 0:
                b = -rest / a
                if lo is None or b > lo or (b == lo and c.strict):
                    lo, lo_s = b, c.strict
            elif a < 0:
                b = -rest / a
                if hi is None or b < hi or (b == hi and c.strict):
                    hi, hi_s = b, c.strict
        x[var] = _pick(lo, lo_s, hi, hi_s)
    point = tuple(x)
    assert all(c.holds(point) for c in constraints), "back-substitution failed"
    return point


def feasible(constraints: Sequence[Constraint], nvars: int) -> bool:
    return solve(constraints, nvars) is not None

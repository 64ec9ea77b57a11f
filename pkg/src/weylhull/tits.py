"""Fundamental chamber, reduction into it, cell types and Weyl differences."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coxeter import WeylElement, WeylGroup, act, support
from .datum import Point, RootDatum
from .errors import DimensionMismatch, NotDominant, NotRegularDominant

DEFAULT_BUDGET = 10**4


@dataclass(frozen=True)
class InCone:
    w: WeylElement
    dominant: Point
    cell: frozenset[int]


@dataclass(frozen=True)
class Inconclusive:
    budget: int
    last_point: Point


def reduce_to_chamber(group: WeylGroup, x: Sequence, budget: int = DEFAULT_BUDGET,
                      pivot: str = "smallest", generators: Sequence[int] | None = None
                      ) -> InCone | Inconclusive:
    """Reflect x into the closed fundamental chamber.

    Repeatedly applies ``s_i`` for the smallest (or largest) ``i`` with a negative
    simple-root value.  On success ``act(w, dominant) == x``.  With ``generators``
    the reduction uses only that standard subgroup and lands in its chamber.
    """
    datum = group.datum
    if len(x) != datum.d:
        raise DimensionMismatch(len(x), datum.d)
    gens = list(range(datum.n)) if generators is None else sorted(generators)
    if pivot == "largest":
        gens.reverse()
    cur = [Fraction(v) for v in x]
    w = group.identity
    for _ in range(budget + 1):
        vals = datum.root_values(cur)
        i = next((k for k in gens if vals[k] < 0), None)
        if i is None:
            dom = tuple(cur)
            cell = frozenset(k for k in gens if vals[k] == 0)
            return InCone(w, dom, cell)
        cur[i] -= vals[i]
        w = group.right(w, i)
    return Inconclusive(budget, tuple(cur))


def cell_type(datum: RootDatum, dominant: Sequence) -> frozenset[int]:
    vals = datum.root_values(dominant)
    if any(v < 0 for v in vals):
        raise NotDominant(f"negative simple-root values {vals}")
    return frozenset(i for i, v in enumerate(vals) if v == 0)


def is_regular_dominant(datum: RootDatum, h: Sequence) -> bool:
    return all(v > 0 for v in datum.root_values(h))


def weyl_difference(group: WeylGroup, h: Sequence, w: WeylElement) -> tuple[Fraction, ...]:
    """Coroot coefficients of ``h - w(h)``; positive exactly on the support of w."""
    datum = group.datum
    if len(h) != datum.d:
        raise DimensionMismatch(len(h), datum.d)
    if not is_regular_dominant(datum, h):
        raise NotRegularDominant(f"{tuple(map(str, h))} is not in the open chamber")
    diff = [Fraction(a) - b for a, b in zip(h, act(w, h))]
    n = datum.n
    # the difference lies in the span of the coroots, which are the first n basis vectors
    assert all(v == 0 for v in diff[n:]), diff
    coeffs = tuple(diff[:n])
    supp = support(w)
    assert all((c > 0) == (i in supp) and c >= 0 for i, c in enumerate(coeffs)), (coeffs, w)
    return coeffs

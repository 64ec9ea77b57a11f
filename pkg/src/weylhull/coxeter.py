"""The Weyl group of a root datum as a computational object.

Elements carry a reduced word and two integer matrices: ``act_q`` acts on the root
lattice (columns are the images of the simple roots) and ``act_b`` acts on the
Cartan space in B coordinates.  Convention: ``act_b @ x`` is ``w(x)``, so the
element with word ``(i, j)`` maps x to ``s_i(s_j(x))``.

Element identity is decided by ``act_b``; the representation is faithful for free
and cofree data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .datum import Point, RootDatum
from .errors import BudgetExceeded, DimensionMismatch, InfiniteSubgroup
from .gcm import Gcm, GcmTag, classify

IntMatrix = tuple[tuple[int, ...], ...]
DEFAULT_CAP = 10**6


def coxeter_matrix(gcm: Gcm) -> tuple[tuple[float | int, ...], ...]:
    """Coxeter orders from the products a_ij * a_ji; ``math.inf`` when unbounded."""
    table = {0: 2, 1: 3, 2: 4, 3: 6}
    n = gcm.n
    return tuple(tuple(1 if i == j else table.get(gcm[i, j] * gcm[j, i], math.inf)
                       for j in range(n)) for i in range(n))


@dataclass(frozen=True, eq=False)
class WeylElement:
    word: tuple[int, ...]
    act_q: IntMatrix
    act_b: IntMatrix

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.act_b == other.act_b

    def __hash__(self):
        return hash(self.act_b)

    def __repr__(self):
        return "WeylElement(" + ("".join(f"s{i}" for i in self.word) or "1") + ")"


@dataclass(frozen=True)
class StandardCoset:
    rep: WeylElement
    j_set: frozenset[int]


def act(w: WeylElement, x: Sequence) -> Point:
    if len(x) != len(w.act_b):
        raise DimensionMismatch(len(x), len(w.act_b))
    return tuple(sum((Fraction(a) * v for a, v in zip(row, x)), Fraction(0)) for row in w.act_b)


def support(w: WeylElement) -> frozenset[int]:
    return frozenset(w.word)


def _right(m: IntMatrix, i: int, r: Sequence[int]) -> IntMatrix:
    # m @ (I - e_i r)
    return tuple(tuple(a - row[i] * rk for a, rk in zip(row, r)) for row in m)


def _left(i: int, r: Sequence[int], m: IntMatrix) -> IntMatrix:
    # (I - e_i r) @ m
    new = tuple(m[i][col] - sum(r[k] * m[k][col] for k in range(len(m)) if r[k])
                for col in range(len(m[0])))
    return m[:i] + (new,) + m[i + 1:]


def is_finite_standard_subgroup(gcm: Gcm, subset: Iterable[int]) -> bool:
    sub = sorted(set(subset))
    if not sub:
        return True
    return all(t.tag is GcmTag.FINITE for t in classify(gcm.restrict(sub)))


def finite_index_core(gcm: Gcm) -> frozenset[int]:
    """Union of the components whose Weyl group is infinite."""
    return frozenset(i for t in classify(gcm) if t.tag is not GcmTag.FINITE
                     for i in t.component)


class WeylGroup:
    """Exact Weyl group machinery for one root datum."""

    def __init__(self, datum: RootDatum, cap: int = DEFAULT_CAP):
        self.datum = datum
        self.gcm = datum.gcm
        self.n = datum.n
        self.d = datum.d
        self.cap = cap
        self._qrows = self.gcm.entries          # s_i on Q: I - e_i A[i,:]
        self._brows = datum.roots               # s_i on B: I - e_i R[i,:]
        self.identity = WeylElement((), exact.identity(self.n), exact.identity(self.d))

    # --- basic arithmetic -------------------------------------------------
    def is_right_descent(self, w: WeylElement, i: int) -> bool:
        return all(row[i] <= 0 for row in w.act_q)

    def is_left_descent(self, w: WeylElement, i: int) -> bool:
        return self.datum.root_value(i, act(w, self.datum.rho)) < 0

    def _normal_word(self, act_b: IntMatrix) -> tuple[int, ...]:
        # lexicographically least reduced word: strip the smallest left descent,
        # read off from the chamber of w(rho)
        x = list(act(WeylElement((), (), act_b), self.datum.rho))
        rho = list(self.datum.rho)
        word = []
        while x != rho:
            vals = self.datum.root_values(x)
            i = next(k for k, v in enumerate(vals) if v < 0)
            x[i] -= vals[i]
            word.append(i)
        return tuple(word)

    def right(self, w: WeylElement, i: int) -> WeylElement:
        """w * s_i"""
        q = _right(w.act_q, i, self._qrows[i])
        b = _right(w.act_b, i, self._brows[i])
        if not self.is_right_descent(w, i):
            word = w.word + (i,)
        elif w.word and w.word[-1] == i:
            word = w.word[:-1]
        else:
            word = self._normal_word(b)
        return WeylElement(word, q, b)

    def left(self, i: int, w: WeylElement) -> WeylElement:
        """s_i * w"""
        q = _left(i, self._qrows[i], w.act_q)
        b = _left(i, self._brows[i], w.act_b)
        if not self.is_left_descent(w, i):
            word = (i,) + w.word
        elif w.word and w.word[0] == i:
            word = w.word[1:]
        else:
            word = self._normal_word(b)
        return WeylElement(word, q, b)

    def element(self, word: Iterable[int]) -> WeylElement:
        w = self.identity
        for i in word:
            w = self.right(w, i)
        return w

    def generator(self, i: int) -> WeylElement:
        return self.right(self.identity, i)

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        for i in v.word:
            u = self.right(u, i)
        return u

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.element(reversed(w.word))

    def canonical(self, w: WeylElement) -> WeylElement:
        """Same element with its lexicographically least reduced word."""
        return WeylElement(self._normal_word(w.act_b), w.act_q, w.act_b)

    # --- queries ----------------------------------------------------------
    def descents_and_length(self, w: WeylElement) -> tuple[int, frozenset[int], frozenset[int]]:
        right = frozenset(i for i in range(self.n) if self.is_right_descent(w, i))
        left = frozenset(i for i in range(self.n) if self.is_left_descent(w, i))
        # a reduced word has one more letter than the word with its last letter dropped
        u = self.identity
        for i in w.word:
            assert not self.is_right_descent(u, i), "stored word is not reduced"
            u = self.right(u, i)
        return w.length, right, left

    def enumerate_by_length(self, max_length: int, generators: Iterable[int] | None = None,
                            cap: int | None = None) -> list[WeylElement]:
        """All elements of length <= max_length (of the standard subgroup on
        ``generators`` if given), sorted by (length, lexicographic word)."""
        gens = sorted(set(range(self.n) if generators is None else generators))
        cap = self.cap if cap is None else cap
        out = [self.identity]
        seen = {self.identity.act_b}
        level = [self.identity]
        for _ in range(max_length):
            nxt = []
            for w in level:
                for i in gens:
                    if self.is_right_descent(w, i):
                        continue
                    b = _right(w.act_b, i, self._brows[i])
                    if b in seen:
                        continue
                    seen.add(b)
                    nxt.append(WeylElement(w.word + (i,), _right(w.act_q, i, self._qrows[i]), b))
                    if len(seen) > cap:
                        raise BudgetExceeded(cap)
            if not nxt:
                break
            out.extend(nxt)
            level = nxt
        return out

    def min_coset_rep(self, w: WeylElement, subset: Iterable[int]) -> StandardCoset:
        js = frozenset(subset)
        while True:
            j = next((j for j in sorted(js) if self.is_right_descent(w, j)), None)
            if j is None:
                return StandardCoset(w, js)
            w = self.right(w, j)

    def is_finite_standard_subgroup(self, subset: Iterable[int]) -> bool:
        return is_finite_standard_subgroup(self.gcm, subset)

    def longest_word(self, subset: Iterable[int] | None = None) -> WeylElement:
        js = sorted(set(range(self.n) if subset is None else subset))
        if not self.is_finite_standard_subgroup(js):
            raise InfiniteSubgroup(js)
        w = self.identity
        while True:
            j = next((j for j in js if not self.is_right_descent(w, j)), None)
            if j is None:
                return w
            w = self.right(w, j)

    def finite_index_core(self) -> frozenset[int]:
        return finite_index_core(self.gcm)

    def in_standard_subgroup(self, w: WeylElement, subset: Iterable[int]) -> bool:
        return support(w) <= frozenset(subset)


def monotonicity_violations(group: WeylGroup, h: Sequence, max_length: int) -> list[tuple]:
    """Check <omega, s_i w(h)> <= <omega, w(h)> - c whenever l(s_i w) > l(w).

    ``omega`` is the sum of the fundamental weights and ``c`` the least simple-root
    value at h.  Returns the offending (w, i) pairs.
    """
    datum = group.datum
    c = min(datum.root_values(h))
    n = group.n
    bad = []
    for w in group.enumerate_by_length(max_length):
        wh = act(w, h)
        top = sum(wh[:n])
        for i in range(n):
            if group.is_left_descent(w, i):
                continue
            swh = act(group.left(i, w), h)
            if sum(swh[:n]) > top - c:
                bad.append((w, i))
    return bad

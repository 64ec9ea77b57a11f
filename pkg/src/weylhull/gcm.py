"""Generalized Cartan matrices: validation, components, type and symmetrizers."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exact
from .errors import (AsymmetricZero, DiagonalNotTwo, NotSquare, NotSymmetrizable,
                     PositiveOffDiagonal)


class GcmTag(str, Enum):
    FINITE = "Finite"
    AFFINE = "Affine"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class Gcm:
    entries: tuple[tuple[int, ...], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def restrict(self, subset) -> "Gcm":
        """Principal submatrix on ``subset`` (sorted), re-indexed from 0."""
        idx = sorted(subset)
        return validate_gcm([[self.entries[i][j] for j in idx] for i in idx])


@dataclass(frozen=True)
class GcmType:
    component: tuple[int, ...]
    tag: GcmTag
    witness: tuple[int, ...]


@dataclass(frozen=True)
class Symmetrizer:
    d: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]


def components(entries: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Connected components of the off-diagonal support, ordered by smallest index."""
    n = len(entries)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if entries[i][j] or entries[j][i]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(g) for _, g in sorted(groups.items()))


def validate_gcm(matrix: Sequence[Sequence[int]]) -> Gcm:
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotSquare((n, [len(r) for r in rows]))
    for r in rows:
        for v in r:
            if isinstance(v, bool) or int(v) != v:
                raise TypeError(f"entry {v!r} is not an integer")
    a = tuple(tuple(int(v) for v in r) for r in rows)
    for i in range(n):
        if a[i][i] != 2:
            raise DiagonalNotTwo(i)
    for i in range(n):
        for j in range(n):
            if i != j and a[i][j] > 0:
                raise PositiveOffDiagonal(i, j)
    for i in range(n):
        for j in range(n):
            if i != j and a[i][j] == 0 and a[j][i] != 0:
                raise AsymmetricZero(i, j)
    return Gcm(a, components(a))


def _principal_minor(a, idx) -> Fraction:
    return exact.det([[a[i][j] for j in idx] for i in idx])


def _component_tag(a: tuple[tuple[int, ...], ...]) -> GcmTag:
    n = len(a)
    proper_positive = all(_principal_minor(a, idx) > 0
                          for size in range(1, n)
                          for idx in combinations(range(n), size))
    if not proper_positive:
        return GcmTag.INDEFINITE
    full = exact.det(a)
    if full > 0:
        return GcmTag.FINITE
    if full == 0:
        return GcmTag.AFFINE
    return GcmTag.INDEFINITE


def _matvec_int(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _indefinite_witness(a) -> tuple[int, ...]:
    # Power iteration with M = 3I - A (nonnegative, primitive on an indecomposable
    # block).  Its Perron vector v has A v = (2 - rho) v < 0, and the condition is
    # open, so an exact integer iterate eventually satisfies it.
    n = len(a)
    m = [[(3 if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]
    v = [1] * n
    for _ in range(5000):
        if all(x < 0 for x in _matvec_int(a, v)):
            return exact.primitive_integer_vector(v)
        v = list(exact.primitive_integer_vector(_matvec_int(m, v)))
    raise RuntimeError("power iteration failed to produce an indefinite witness")


def _witness(a, tag: GcmTag) -> tuple[int, ...]:
    n = len(a)
    if tag is GcmTag.FINITE:
        lam = exact.solve(a, [1] * n)
    elif tag is GcmTag.AFFINE:
        (lam,) = exact.nullspace(a)
        if lam[0] < 0:
            lam = tuple(-x for x in lam)
    else:
        return _indefinite_witness(a)
    return exact.primitive_integer_vector(lam)


def classify(gcm: Gcm) -> list[GcmType]:
    """Tag every indecomposable component and attach an exact witness vector.

    The tag comes from principal minors; the witness ``lam > 0`` satisfies
    ``A lam > 0``, ``= 0`` or ``< 0`` on the component according to the tag.
    """
    out = []
    for comp in gcm.components:
        block = tuple(tuple(gcm.entries[i][j] for j in comp) for i in comp)
        tag = _component_tag(block)
        lam = _witness(block, tag)
        image = _matvec_int(block, lam)
        ok = {GcmTag.FINITE: all(x > 0 for x in image),
              GcmTag.AFFINE: all(x == 0 for x in image),
              GcmTag.INDEFINITE: all(x < 0 for x in image)}[tag]
        assert ok and all(x > 0 for x in lam), (block, tag, lam)
        out.append(GcmType(comp, tag, lam))
    return out


def is_finite_type(gcm: Gcm) -> bool:
    return all(t.tag is GcmTag.FINITE for t in classify(gcm))


def symmetrizer(gcm: Gcm) -> Symmetrizer:
    """Smallest positive integer D per component with A = D B, B symmetric."""
    a = gcm.entries
    n = gcm.n
    d: list[Fraction | None] = [None] * n
    tree_parent: list[int | None] = [None] * n
    for comp in gcm.components:
        root = comp[0]
        d[root] = Fraction(1)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and a[i][j] != 0 and d[j] is None:
                    # b_ij = a_ij / d_i must equal a_ji / d_j
                    d[j] = d[i] * Fraction(a[j][i], a[i][j])
                    tree_parent[j] = i
                    queue.append(j)
        ints = exact.primitive_integer_vector([d[i] for i in comp])
        for i, v in zip(comp, ints):
            d[i] = Fraction(v)

    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] and Fraction(a[i][j]) / d[i] != Fraction(a[j][i]) / d[j]:
                raise NotSymmetrizable(_tree_cycle(tree_parent, i, j))
    b = tuple(tuple(Fraction(a[i][j]) / d[i] for j in range(n)) for i in range(n))
    return Symmetrizer(tuple(d), b)


def _tree_cycle(parent, i, j) -> list[int]:
    def path(k):
        out = [k]
        while parent[k] is not None:
            k = parent[k]
            out.append(k)
        return out

    pi, pj = path(i), path(j)
    common = next(k for k in pi if k in set(pj))
    left = pi[:pi.index(common) + 1]
    right = pj[:pj.index(common)]
    return left + right[::-1]


def block_diagonal(*blocks: Sequence[Sequence[int]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out

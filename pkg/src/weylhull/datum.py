"""Kac–Moody root data and the dual basis of the Cartan space.

Points of the Cartan space are stored in the basis ``B = (h_1..h_n, ext_1..ext_{d-n})``
where ``h_i`` are the simple coroots and ``ext`` completes them to a basis.  In
those coordinates the dual functionals are coordinate projections: the
fundamental weight ``omega_i`` reads coordinate ``i`` and ``phi_k`` reads
coordinate ``n + k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import exact
from .errors import (DimensionMismatch, NotCofree, NotFree, PairingMismatch,
                     RankTooSmall, ShapeMismatch)
from .gcm import Gcm, validate_gcm

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class DualBasis:
    """Dual functionals, both as rows in B coordinates and as rows on the lattice
    coordinates of the coweight lattice."""
    omega: tuple[Point, ...]
    phi: tuple[Point, ...]
    omega_lattice: tuple[Point, ...]
    phi_lattice: tuple[Point, ...]


@dataclass(frozen=True, eq=False)
class RootDatum:
    gcm: Gcm
    d: int
    c: tuple[tuple[int, ...], ...]
    h: tuple[tuple[int, ...], ...]
    extension: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def n(self) -> int:
        return self.gcm.n

    def __eq__(self, other):
        return (isinstance(other, RootDatum) and self.gcm == other.gcm and self.d == other.d
                and self.c == other.c and self.h == other.h)

    def __hash__(self):
        return hash((self.gcm, self.d, self.c, self.h))

    @cached_property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        """Rows are the basis vectors of B in lattice coordinates."""
        return self.h + self.extension

    @cached_property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        """``roots[i][k] = <alpha_i, b_k>``: simple roots as rows in B coordinates."""
        return tuple(tuple(exact.dot(ci, bk) for bk in self.basis) for ci in self.c)

    @cached_property
    def rho(self) -> Point:
        """A fixed regular dominant point: ``<alpha_i, rho> = 1`` for all i."""
        sol = exact.solve(self.roots, [1] * self.n)
        assert sol is not None
        return sol

    def root_value(self, i: int, x: Sequence) -> Fraction:
        return exact.dot(self.roots[i], x)

    def root_values(self, x: Sequence) -> tuple:
        return tuple(exact.dot(r, x) for r in self.roots)

    def coroot(self, i: int) -> Point:
        return tuple(Fraction(int(k == i)) for k in range(self.d))

    def point(self, coords: Sequence) -> Point:
        x = exact.as_vector(coords)
        if len(x) != self.d:
            raise DimensionMismatch(len(x), self.d)
        return x

    def to_lattice(self, x: Sequence) -> Point:
        return tuple(sum((x[k] * self.basis[k][m] for k in range(self.d)), Fraction(0))
                     for m in range(self.d))

    def from_lattice(self, v: Sequence) -> Point:
        sol = exact.solve(exact.transpose(self.basis), list(v))
        assert sol is not None
        return sol

    @cached_property
    def dual(self) -> DualBasis:
        return dual_basis(self)

    def to_json(self) -> dict:
        return {"cartan": [list(r) for r in self.gcm.entries], "d": self.d,
                "c": [list(r) for r in self.c], "h": [list(r) for r in self.h]}


def _complete_basis(rows: list[tuple[int, ...]], d: int) -> tuple[tuple[int, ...], ...]:
    # greedily append standard basis vectors that raise the rank
    out = list(rows)
    extra = []
    for k in range(d):
        if len(out) == d:
            break
        e = tuple(int(m == k) for m in range(d))
        if exact.rank(out + [e]) > len(out):
            out.append(e)
            extra.append(e)
    return tuple(extra)


def make_kac_datum(gcm: Gcm) -> RootDatum:
    """Free and cofree datum of the minimal rank ``d = 2n - rank(A)``.

    Coroots are the first n standard basis vectors.  Then ``c_j`` starts with
    column j of A and continues with completion columns that make the ``c_j``
    independent; the all-ones column is tried first, then standard basis columns.
    """
    a = gcm.entries
    n = gcm.n
    r = exact.rank(a)
    d = 2 * n - r
    at = [list(a[i][j] for i in range(n)) for j in range(n)]   # row j = column j of A
    columns: list[list[int]] = []
    candidates = [[1] * n] + [[int(m == k) for m in range(n)] for k in range(n)]
    for cand in candidates:
        if len(columns) == n - r:
            break
        trial = [row + [col[j] for col in columns + [cand]] for j, row in enumerate(at)]
        if exact.rank(trial) == r + len(columns) + 1:
            columns.append(cand)
    c = tuple(tuple(at[j] + [col[j] for col in columns]) for j in range(n))
    h = tuple(tuple(int(m == i) for m in range(d)) for i in range(n))
    ext = tuple(tuple(int(m == k) for m in range(d)) for k in range(n, d))
    datum = RootDatum(gcm, d, c, h, ext)
    _check(datum)
    return datum


def _check(datum: RootDatum) -> None:
    n, d, a = datum.n, datum.d, datum.gcm.entries
    if len(datum.c) != n or len(datum.h) != n or any(len(v) != d for v in datum.c + datum.h):
        raise ShapeMismatch(f"c and h must be {n} vectors of length {d}")
    for i in range(n):
        for j in range(n):
            got = exact.dot(datum.c[j], datum.h[i])
            if got != a[i][j]:
                raise PairingMismatch(i, j, got, a[i][j])
    if exact.rank(datum.c) < n:
        raise NotFree()
    if exact.rank(datum.h) < n:
        raise NotCofree()
    need = 2 * n - exact.rank(a)
    if d < need:
        raise RankTooSmall(d, need)


def validate_datum(cartan, d: int, c, h) -> RootDatum:
    """Accept integer data iff the pairing reproduces the GCM and it is free and cofree."""
    gcm = cartan if isinstance(cartan, Gcm) else validate_gcm(cartan)
    try:
        c_t = tuple(tuple(int(v) for v in row) for row in c)
        h_t = tuple(tuple(int(v) for v in row) for row in h)
    except (TypeError, ValueError) as exc:
        raise ShapeMismatch(f"c and h must be integer vectors: {exc}") from exc
    datum = RootDatum(gcm, int(d), c_t, h_t)
    _check(datum)
    ext = _complete_basis(list(h_t), int(d))
    return RootDatum(gcm, int(d), c_t, h_t, ext)


def datum_from_json(obj: dict) -> RootDatum:
    if "d" not in obj:
        return make_kac_datum(validate_gcm(obj["cartan"]))
    return validate_datum(obj["cartan"], obj["d"], obj["c"], obj["h"])


def dual_basis(datum: RootDatum) -> DualBasis:
    n, d = datum.n, datum.d
    # rows f_k with f_k . b_l = delta_kl, i.e. F = (M^T)^{-1}
    f = exact.inverse(exact.transpose(datum.basis))
    unit = tuple(tuple(Fraction(int(m == k)) for m in range(d)) for k in range(d))
    return DualBasis(unit[:n], unit[n:], f[:n], f[n:])

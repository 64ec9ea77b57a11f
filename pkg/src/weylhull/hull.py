"""Geometry of the convex hull of a regular Weyl orbit.

For a regular dominant point h the hull ``conv(W h)`` is cut out by the equalities
``phi_k(x) = phi_k(h)`` and the inequalities ``omega_i(w^-1 x) <= omega_i(h)``.
After reducing x into the fundamental chamber only the inequalities with
``w = 1`` matter, which makes membership a finite exact check.  Faces are the
cosets ``w W_J``; slices are level sets of one fundamental weight.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .coxeter import StandardCoset, WeylElement, WeylGroup, act, support
from .datum import Point, RootDatum
from .errors import (DimensionMismatch, InteriorPoint, NotAFace, NotInSlice, NotInterior,
                     NotRegularDominant, OutsideHull, Truncated)
from .tits import DEFAULT_BUDGET, Inconclusive, is_regular_dominant, reduce_to_chamber

SEARCH_CAP = 10**6


@dataclass(frozen=True, eq=False)
class HullContext:
    group: WeylGroup
    h: Point
    budget: int = DEFAULT_BUDGET

    @property
    def datum(self) -> RootDatum:
        return self.group.datum

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def d(self) -> int:
        return self.group.d

    @property
    def targets(self) -> Point:
        """``omega_i(h)`` for each i."""
        return self.h[:self.n]

    @property
    def levels(self) -> Point:
        """``phi_k(h)`` for each extension index k."""
        return self.h[self.n:]

    def orbit_point(self, w: WeylElement) -> Point:
        return act(w, self.h)


def hull_context(datum_or_group, h: Sequence, budget: int = DEFAULT_BUDGET) -> HullContext:
    group = datum_or_group if isinstance(datum_or_group, WeylGroup) else WeylGroup(datum_or_group)
    x = group.datum.point(h)
    if not is_regular_dominant(group.datum, x):
        raise NotRegularDominant(f"h = {tuple(map(str, x))} is not regular dominant")
    return HullContext(group, x, budget)


# --- membership ---------------------------------------------------------------

@dataclass(frozen=True)
class In:
    tight: frozenset[int]
    w: WeylElement
    dominant: Point


@dataclass(frozen=True)
class Out:
    """The point violates ``kind`` constraint ``index``.

    For ``omega`` constraints the violated inequality is
    ``omega_index(w^-1 x) <= target``; ``value`` is the left-hand side.
    """
    kind: str
    index: int
    value: Fraction
    bound: Fraction
    w: WeylElement


def hull_membership(ctx: HullContext, x: Sequence, budget: int | None = None
                    ) -> In | Out | Inconclusive:
    datum = ctx.datum
    n = ctx.n
    x = datum.point(x)
    for k, (v, lvl) in enumerate(zip(x[n:], ctx.levels)):
        if v != lvl:
            return Out("phi", k, v, lvl, ctx.group.identity)
    budget = ctx.budget if budget is None else budget
    cur = list(x)
    w = ctx.group.identity
    # omega coordinates only grow while reflecting towards the chamber, so an
    # exceeded bound is final even before dominance is reached
    for _ in range(budget + 1):
        for i in range(n):
            if cur[i] > ctx.h[i]:
                return Out("omega", i, cur[i], ctx.h[i], w)
        vals = datum.root_values(cur)
        i = next((k for k in range(n) if vals[k] < 0), None)
        if i is None:
            tight = frozenset(k for k in range(n) if cur[k] == ctx.h[k])
            return In(tight, w, tuple(cur))
        cur[i] -= vals[i]
        w = ctx.group.right(w, i)
    return Inconclusive(budget, tuple(cur))


def float_slack(ctx: HullContext, points: np.ndarray, max_steps: int = 10_000) -> np.ndarray:
    """Membership slack of float points (rows, B coordinates).

    The slack is ``min_i (omega_i(h) - omega_i(x_dom))``, lowered by any mismatch in
    the phi levels.  Non-negative means inside.
    """
    x = np.array(points, dtype=float, copy=True)
    if x.ndim == 1:
        x = x[None, :]
    if x.shape[1] != ctx.d:
        raise DimensionMismatch(x.shape[1], ctx.d)
    roots = np.array(ctx.datum.roots, dtype=float)
    n = ctx.n
    h = np.array([float(v) for v in ctx.h])
    rows = np.arange(len(x))
    for _ in range(max_steps):
        vals = x @ roots.T
        tol = 1e-15 * (1.0 + np.abs(x).max(axis=1, keepdims=True))
        neg = vals < -tol
        todo = neg.any(axis=1)
        if not todo.any():
            break
        first = np.argmax(neg, axis=1)
        r, c = rows[todo], first[todo]
        x[r, c] -= vals[r, c]
    else:
        raise RuntimeError("float chamber reduction did not settle")
    slack = (h[:n] - x[:, :n]).min(axis=1)
    if ctx.d > n:
        slack = np.minimum(slack, -np.abs(x[:, n:] - h[n:]).max(axis=1))
    return slack


# --- faces ------------------------------------------------------------------

@dataclass(frozen=True)
class FaceHandle:
    coset: StandardCoset

    @property
    def dimension(self) -> int:
        return len(self.coset.j_set)


@dataclass(frozen=True)
class FaceVertices:
    points: tuple[Point, ...]
    elements: tuple[WeylElement, ...]
    truncated: bool


def _minimal_face(ctx: HullContext, x: Sequence) -> StandardCoset:
    verdict = hull_membership(ctx, x)
    if not isinstance(verdict, In):
        raise OutsideHull(f"point is not in the hull: {verdict}")
    j = frozenset(i for i in range(ctx.n) if verdict.dominant[i] < ctx.h[i])
    return ctx.group.min_coset_rep(verdict.w, j)


def locate_face(ctx: HullContext, x: Sequence) -> FaceHandle:
    coset = _minimal_face(ctx, x)
    if len(coset.j_set) == ctx.n:
        raise InteriorPoint("point lies in the interior of the hull")
    return FaceHandle(coset)


def _saturated(group: WeylGroup, subset, max_length: int) -> bool:
    if not group.is_finite_standard_subgroup(subset):
        return False
    return group.longest_word(subset).length <= max_length


def face_vertices(ctx: HullContext, face: FaceHandle, max_length: int) -> FaceVertices:
    g = ctx.group
    rep, j = face.coset.rep, face.coset.j_set
    elems = tuple(g.multiply(rep, v) for v in g.enumerate_by_length(max_length, generators=j))
    pts = tuple(ctx.orbit_point(w) for w in elems)
    return FaceVertices(pts, elems, not _saturated(g, j, max_length))


def vertex_neighbors(ctx: HullContext, w: WeylElement) -> list[Point]:
    return [ctx.orbit_point(ctx.group.right(w, i)) for i in range(ctx.n)]


def enumerate_faces(ctx: HullContext, max_length: int) -> tuple[list[FaceHandle], bool]:
    """All coset faces ``w W_J`` with ``l(w) <= max_length``; flag set when truncated."""
    g = ctx.group
    elems = g.enumerate_by_length(max_length)
    faces = []
    for size in range(ctx.n + 1):
        for j in combinations(range(ctx.n), size):
            js = frozenset(j)
            for w in elems:
                if not any(g.is_right_descent(w, k) for k in js):
                    faces.append(FaceHandle(StandardCoset(w, js)))
    return faces, not _saturated(g, range(ctx.n), max_length)


# --- slices -------------------------------------------------------------------

@dataclass(frozen=True)
class SliceInterval:
    """Range of levels t for which the slice is non-empty; ``lower`` None means unbounded."""
    lower: Fraction | None
    upper: Fraction
    j: int | None

    def contains(self, t) -> bool:
        return t <= self.upper and (self.lower is None or t >= self.lower)

    def is_interior(self, t) -> bool:
        return t < self.upper and (self.lower is None or t > self.lower)


def slice_interval(ctx: HullContext, i: int) -> SliceInterval:
    g = ctx.group
    core = g.finite_index_core()
    upper = ctx.h[i]
    if i in core:
        return SliceInterval(None, upper, None)
    finite_part = [k for k in range(ctx.n) if k not in core]
    top = g.longest_word(finite_part)
    conj = g.multiply(g.multiply(top, g.generator(i)), top)
    j = next(k for k in finite_part if g.generator(k) == conj)
    return SliceInterval(-ctx.h[j], upper, j)


@dataclass(frozen=True)
class SliceVertex:
    """``kind`` is "orbit" (the orbit point w(h)) or "edge" (the point at parameter s
    on the edge from w(h) to w s_k(h))."""
    kind: str
    w: WeylElement
    point: Point
    k: int | None = None
    s: Fraction | None = None


@dataclass(frozen=True)
class SliceReport:
    i: int
    t: Fraction
    interval: SliceInterval
    vertices: tuple[SliceVertex, ...]
    essential: tuple[SliceVertex, ...]
    truncated: bool

    @property
    def m(self) -> int:
        return len(self.essential)


def _edge_point(a: Point, b: Point, s: Fraction) -> Point:
    return tuple(x + s * (y - x) for x, y in zip(a, b))


def slice_vertices(ctx: HullContext, i: int, t, max_length: int
                   ) -> tuple[list[SliceVertex], bool]:
    t = Fraction(t)
    g = ctx.group
    out: list[SliceVertex] = []
    seen = set()
    for w in g.enumerate_by_length(max_length):
        p = ctx.orbit_point(w)
        if p[i] == t and p not in seen:
            seen.add(p)
            out.append(SliceVertex("orbit", w, p))
        for k in range(ctx.n):
            if g.is_right_descent(w, k):
                continue          # each edge once, from its shorter end
            q = ctx.orbit_point(g.right(w, k))
            if (p[i] - t) * (q[i] - t) < 0:
                s = (p[i] - t) / (p[i] - q[i])
                x = _edge_point(p, q, s)
                if x not in seen:
                    seen.add(x)
                    out.append(SliceVertex("edge", w, x, k, s))
    return out, not _saturated(g, range(ctx.n), max_length)


def _in_open_subchamber(datum: RootDatum, x, i) -> bool:
    return all(v > 0 for k, v in enumerate(datum.root_values(x)) if k != i)


def _in_closed_subchamber(datum: RootDatum, x, i) -> bool:
    return all(v >= 0 for k, v in enumerate(datum.root_values(x)) if k != i)


def _essential_search(ctx: HullContext, i: int, t: Fraction, cap: int = SEARCH_CAP
                      ) -> list[SliceVertex]:
    # Pruned search over minimal edge paths from h that stay in the closed
    # subchamber.  Level values never increase along such paths, so every
    # vertex of the slice inside the subchamber is reached.
    g, datum = ctx.group, ctx.datum
    out: list[SliceVertex] = []
    seen_pts = set()
    seen = {g.identity.act_b}
    queue = deque([g.identity])
    while queue:
        w = queue.popleft()
        p = ctx.orbit_point(w)
        if p[i] == t:
            if p not in seen_pts:
                seen_pts.add(p)
                out.append(SliceVertex("orbit", w, p))
            continue
        for k in range(ctx.n):
            u = g.right(w, k)
            q = ctx.orbit_point(u)
            if q[i] < t:
                s = (p[i] - t) / (p[i] - q[i])
                x = _edge_point(p, q, s)
                assert _in_open_subchamber(datum, x, i), "crossing left the subchamber"
                if x not in seen_pts:
                    seen_pts.add(x)
                    out.append(SliceVertex("edge", w, x, k, s))
            elif u.act_b not in seen and _in_closed_subchamber(datum, q, i):
                seen.add(u.act_b)
                if len(seen) > cap:
                    raise Truncated(f"essential search visited more than {cap} vertices")
                queue.append(u)
    return out


def essential_vertices(ctx: HullContext, i: int, t) -> list[SliceVertex]:
    t = Fraction(t)
    if not slice_interval(ctx, i).is_interior(t):
        raise NotInterior(t)
    return _essential_search(ctx, i, t)


def slice_report(ctx: HullContext, i: int, t, max_length: int) -> SliceReport:
    t = Fraction(t)
    interval = slice_interval(ctx, i)
    if not interval.contains(t):
        raise NotInSlice(f"level {t} is outside the slice interval")
    verts, truncated = slice_vertices(ctx, i, t, max_length)
    return SliceReport(i, t, interval, tuple(verts), tuple(_essential_search(ctx, i, t)), truncated)


# --- essential cover ----------------------------------------------------------

@dataclass(frozen=True)
class Cover:
    """``x = sum(c * v(y) for v, c in terms)`` with every v in the subgroup fixing
    the level functional."""
    y: Point
    terms: tuple[tuple[WeylElement, Fraction], ...]


def _ray_exit(ctx: HullContext, x: Point, k: int, max_iter: int = 10_000) -> Fraction:
    """Largest tau with ``x + tau * coroot_k`` in the hull (x inside, tau bounded)."""
    g = ctx.group
    tau = ctx.h[k] - x[k]
    direction = ctx.datum.coroot(k)
    for _ in range(max_iter):
        p = tuple(a + tau * b for a, b in zip(x, direction))
        verdict = hull_membership(ctx, p)
        if isinstance(verdict, In):
            return tau
        if isinstance(verdict, Inconclusive):
            raise Truncated("membership inconclusive while locating a face boundary")
        assert verdict.kind == "omega"
        inv = g.inverse(verdict.w)
        base = act(inv, x)[verdict.index]
        slope = act(inv, direction)[verdict.index]
        new = (ctx.h[verdict.index] - base) / slope
        assert slope > 0 and 0 <= new < tau
        tau = new
    raise Truncated("face boundary search did not converge")


def essential_cover(ctx: HullContext, i: int, t, x: Sequence, max_depth: int | None = None
                    ) -> Cover:
    """Write a slice point as a convex combination of subgroup translates of one
    point of the essential part."""
    g = ctx.group
    t = Fraction(t)
    x = ctx.datum.point(x)
    if x[i] != t or not isinstance(hull_membership(ctx, x), In):
        raise NotInSlice("point is not in the slice")
    others = [k for k in range(ctx.n) if k != i]
    max_depth = ctx.n + 1 if max_depth is None else max_depth

    def descend(p: Point, depth: int) -> tuple[Point, dict]:
        red = reduce_to_chamber(g, p, ctx.budget, generators=others)
        if isinstance(red, Inconclusive):
            raise Truncated("subchamber reduction exhausted its budget")
        u, q = red.w, red.dominant
        coset = _minimal_face(ctx, q)
        rep, j = coset.rep, coset.j_set
        rep_inv = g.inverse(rep)
        sym = [k for k in others
               if support(g.multiply(g.multiply(rep_inv, g.generator(k)), rep)) <= j]
        if not sym:
            return q, {u: (u, Fraction(1))}
        if depth == 0:
            raise Truncated("essential cover exceeded its depth cap")
        vals = ctx.datum.root_values(q)
        k = next((k for k in sym if vals[k] > 0), sym[0])
        tau = _ray_exit(ctx, q, k)
        a = vals[k]
        lam = (a + tau) / (a + 2 * tau)
        top = tuple(v + tau * (m == k) for m, v in enumerate(q))
        y, terms = descend(top, depth - 1)
        sk = g.generator(k)
        merged: dict = {}
        for v, c in terms.values():
            for elem, coef in ((g.multiply(u, v), lam * c),
                               (g.multiply(g.multiply(u, sk), v), (1 - lam) * c)):
                old = merged.get(elem)
                merged[elem] = (elem, coef + (old[1] if old else 0))
        return y, merged

    y, terms = descend(x, max_depth)
    out = tuple((w, c) for w, c in sorted(terms.values(), key=lambda e: (e[0].length, e[0].word))
                if c != 0)
    total = [Fraction(0)] * ctx.d
    for w, c in out:
        for m, v in enumerate(act(w, y)):
            total[m] += c * v
    assert tuple(total) == x and sum(c for _, c in out) == 1
    return Cover(y, out)


# --- slice face symmetry ------------------------------------------------------

@dataclass(frozen=True)
class FaceSymmetry:
    w: WeylElement
    j_set: frozenset[int]
    representatives: tuple[Point, ...]


def slice_face_symmetry(ctx: HullContext, i: int, t, vertices: Iterable[Sequence]) -> FaceSymmetry:
    """Decompose a slice face's vertex set as ``w W_J`` orbits of essential vertices."""
    g, datum = ctx.group, ctx.datum
    pts = [datum.point(v) for v in vertices]
    if not pts:
        raise NotAFace("empty vertex set")
    t = Fraction(t)
    if any(p[i] != t for p in pts):
        raise NotAFace("vertices are not on the slice level")
    others = [k for k in range(ctx.n) if k != i]
    red = reduce_to_chamber(g, pts[0], ctx.budget, generators=others)
    if isinstance(red, Inconclusive):
        raise Truncated("subchamber reduction exhausted its budget")
    w = red.w
    inv = g.inverse(w)
    moved = {act(inv, p) for p in pts}
    if len(moved) != len(pts):
        raise NotAFace("repeated vertices")

    def reflect(k, p):
        v = datum.root_value(k, p)
        return tuple(c - v * (m == k) for m, c in enumerate(p))

    j = frozenset(k for k in others if {reflect(k, p) for p in moved} == moved)
    reps = sorted((p for p in moved if _in_open_subchamber(datum, p, i)))
    rep_set = set(reps)
    for p in moved:
        r = reduce_to_chamber(g, p, ctx.budget, generators=sorted(j))
        if isinstance(r, Inconclusive) or r.dominant not in rep_set:
            raise NotAFace("vertex set is not a union of parabolic orbits of essential vertices")
    return FaceSymmetry(w, j, tuple(reps))

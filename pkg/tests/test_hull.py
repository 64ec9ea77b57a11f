from collections import deque
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylhull import exact
from weylhull.catalog import CATALOG
from weylhull.coxeter import WeylGroup, act, support
from weylhull.datum import make_kac_datum
from weylhull.errors import (InteriorPoint, NotAFace, NotInSlice, NotInterior,
                             NotRegularDominant, OutsideHull)
from weylhull.gcm import validate_gcm
from weylhull.hull import (In, Out, _essential_search, enumerate_faces, essential_cover,
                           essential_vertices, face_vertices, float_slack, hull_context,
                           hull_membership, locate_face, slice_face_symmetry, slice_interval,
                           slice_report, slice_vertices, vertex_neighbors)
from weylhull.tits import Inconclusive

from oracles import brute_orbit, hull_faces_2d, reflection_matrices

F = Fraction


def with_root_values(name, vals):
    datum = make_kac_datum(validate_gcm(CATALOG[name]))
    return exact.solve(datum.roots, vals)


B2H = with_root_values("B2", [1, 2])
G2H = with_root_values("G2", [2, 1])


def ctx_for(name, h=None):
    datum = make_kac_datum(validate_gcm(CATALOG[name]))
    return hull_context(datum, h if h is not None else datum.rho)


@pytest.fixture(scope="module")
def a2():
    return ctx_for("A2", (1, 1))


def oracle_polygon(ctx):
    d = ctx.datum
    mats = reflection_matrices(d.c, d.h, d.basis)
    pts = brute_orbit(mats, ctx.h, 20)
    return pts, hull_faces_2d(pts)


def inside_polygon(x, verts, edges):
    # x is inside iff it lies weakly on the inner side of every edge line
    cx = sum(v[0] for v in verts) / len(verts)
    cy = sum(v[1] for v in verts) / len(verts)
    for a, b in edges:
        def side(p):
            return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        if side(x) * side((cx, cy)) < 0:
            return False
    return True


def test_hull_context_requires_regular(a2):
    with pytest.raises(NotRegularDominant):
        hull_context(a2.datum, (F(1, 2), 1))
    assert a2.targets == (1, 1)


def test_membership_examples(a2):
    v = hull_membership(a2, a2.h)
    assert isinstance(v, In) and v.tight == {0, 1}
    v = hull_membership(a2, (0, 0))
    assert isinstance(v, In) and v.tight == frozenset()
    v = hull_membership(a2, (2, 2))
    assert isinstance(v, Out) and (v.kind, v.index, v.bound) == ("omega", 0, 1)


points = st.tuples(st.fractions(-3, 3, max_denominator=12), st.fractions(-3, 3, max_denominator=12))


@pytest.mark.parametrize("name, h", [("A2", (1, 1)), ("B2", B2H), ("G2", G2H)])
@settings(max_examples=150, deadline=None)
@given(x=points)
def test_membership_matches_polygon(name, h, x):
    ctx = ctx_for(name, h)
    pts, (verts, edges) = oracle_polygon(ctx)
    scaled = tuple(v * max(abs(c) for p in verts for c in p) for v in x)
    want = inside_polygon(scaled, verts, edges)
    got = hull_membership(ctx, scaled)
    assert isinstance(got, In) == want
    if isinstance(got, Out):
        inv = ctx.group.inverse(got.w)
        assert act(inv, scaled)[got.index] == got.value > got.bound


@pytest.mark.parametrize("name, h, order", [("A1", (1,), 2), ("A2", (1, 1), 6),
                                            ("B2", B2H, 8)])
def test_face_counts_match_brute_force(name, h, order):
    ctx = ctx_for(name, h)
    faces, truncated = enumerate_faces(ctx, 10)
    assert not truncated
    d = ctx.datum
    mats = reflection_matrices(d.c, d.h, d.basis)
    orbit = brute_orbit(mats, ctx.h, 10)
    assert len(orbit) == order
    if ctx.n == 1:
        assert len(faces) == 3
        return
    verts, edges = hull_faces_2d(orbit)
    assert len(faces) == len(verts) + len(edges) + 1
    by_dim = {k: set() for k in range(3)}
    for f in faces:
        assert f.dimension == len(f.coset.j_set)
        fv = face_vertices(ctx, f, 10)
        assert not fv.truncated
        by_dim[f.dimension].add(frozenset(fv.points))
    assert by_dim[0] == {frozenset([v]) for v in verts}
    assert by_dim[1] == {frozenset(p for p in orbit if p in e) for e in edges}
    assert by_dim[2] == {frozenset(orbit)}


def test_a2_thirteen_faces(a2):
    faces, truncated = enumerate_faces(a2, 3)
    assert (len(faces), truncated) == (13, False)
    dims = sorted(f.dimension for f in faces)
    assert dims == [0] * 6 + [1] * 6 + [2]


def test_locate_face_examples(a2):
    g = a2.group
    assert locate_face(a2, a2.h).coset == locate_face(a2, a2.h).coset
    f = locate_face(a2, a2.h)
    assert (f.coset.rep, f.coset.j_set) == (g.identity, frozenset())
    mid = tuple((a + b) / 2 for a, b in zip(a2.h, a2.orbit_point(g.generator(0))))
    f = locate_face(a2, mid)
    assert (f.coset.rep, f.coset.j_set) == (g.identity, frozenset({0}))
    f = locate_face(a2, a2.orbit_point(g.generator(1)))
    assert (f.coset.rep, f.coset.j_set) == (g.generator(1), frozenset())
    with pytest.raises(InteriorPoint):
        locate_face(a2, (0, 0))
    with pytest.raises(OutsideHull):
        locate_face(a2, (5, 5))


@pytest.mark.parametrize("name, h", [("A2", (1, 1)), ("B2", B2H)])
def test_locate_face_is_minimal(name, h):
    # boundary points on every edge and vertex: the located face is the smallest
    # brute-force face containing the point
    ctx = ctx_for(name, h)
    pts, (verts, edges) = oracle_polygon(ctx)
    for a, b in edges:
        for s in (F(0), F(1, 3), F(1, 2), F(4, 5), F(1)):
            x = tuple(p + s * (q - p) for p, q in zip(a, b))
            f = locate_face(ctx, x)
            got = frozenset(face_vertices(ctx, f, 10).points)
            want = frozenset([x]) if x in verts else frozenset([a, b])
            assert got == want


def test_vertex_neighbors_and_distance(a2):
    g = a2.group
    nb = vertex_neighbors(a2, g.identity)
    assert set(nb) == {a2.orbit_point(g.generator(0)), a2.orbit_point(g.generator(1))}
    _, (verts, edges) = oracle_polygon(a2)
    adj = {v: set() for v in verts}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    for w in g.enumerate_by_length(3):
        assert set(vertex_neighbors(a2, w)) == adj[a2.orbit_point(w)]
    target = a2.orbit_point(g.element([0, 1, 0]))
    dist = {a2.h: 0}
    queue = deque([a2.h])
    while queue:
        p = queue.popleft()
        for q in adj[p]:
            if q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    assert dist[target] == 3


def test_face_vertices_examples(a2):
    g = a2.group
    faces, _ = enumerate_faces(a2, 3)
    top = next(f for f in faces if f.dimension == 0 and f.coset.rep == g.identity)
    assert face_vertices(a2, top, 3).points == (a2.h,)
    edge = next(f for f in faces if f.coset.j_set == {0} and f.coset.rep == g.identity)
    assert set(face_vertices(a2, edge, 3).points) == {a2.h, a2.orbit_point(g.generator(0))}
    aff = ctx_for("A1~")
    faces, truncated = enumerate_faces(aff, 4)
    assert truncated
    whole = next(f for f in faces if f.dimension == 2)
    assert face_vertices(aff, whole, 4).truncated


@pytest.mark.parametrize("name", ["A1~", "H23", "A3"])
def test_facet_bound(name):
    ctx = ctx_for(name)
    for w in ctx.group.enumerate_by_length(8):
        p = ctx.orbit_point(w)
        supp = support(w)
        for i in range(ctx.n):
            assert p[i] <= ctx.h[i]
            assert (p[i] == ctx.h[i]) == (i not in supp)


@pytest.mark.parametrize("name", ["A2", "B2", "A1~", "H23"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_interior_segment(name, data):
    ctx = ctx_for(name)
    orbit = [ctx.orbit_point(w) for w in ctx.group.enumerate_by_length(5)]
    picks = data.draw(st.lists(st.integers(0, len(orbit) - 1), min_size=2, max_size=4))
    weights = data.draw(st.lists(st.integers(1, 9), min_size=len(picks), max_size=len(picks)))
    total = sum(weights)
    hp = tuple(sum(F(wt, total) * orbit[k][m] for k, wt in zip(picks, weights))
               for m in range(ctx.d))
    diff = [a - b for a, b in zip(ctx.h, hp)]
    if not all(v > 0 for v in diff[:ctx.n]):
        return
    mid = tuple((a + b) / 2 for a, b in zip(ctx.h, hp))
    v = hull_membership(ctx, mid)
    assert isinstance(v, In) and v.tight == frozenset()


def test_slice_interval_examples(a2):
    iv = slice_interval(a2, 0)
    assert (iv.lower, iv.upper, iv.j) == (-1, 1, 1)
    a1 = ctx_for("A1", (1,))
    iv = slice_interval(a1, 0)
    assert (iv.lower, iv.upper, iv.j) == (-1, 1, 0)
    hyp = ctx_for("H23")
    iv = slice_interval(hyp, 0)
    assert iv.lower is None and iv.upper == hyp.h[0]
    depth = [min(hyp.orbit_point(w)[0] for w in hyp.group.enumerate_by_length(k))
             for k in (4, 8, 12)]
    assert depth[0] > depth[1] > depth[2]


def test_slice_interval_matches_orbit_extremes():
    for name, h in (("A2", (1, 1)), ("B2", B2H), ("G2", G2H), ("A3", (3, 4, 3))):
        ctx = ctx_for(name, h)
        orbit = [ctx.orbit_point(w) for w in ctx.group.enumerate_by_length(20)]
        for i in range(ctx.n):
            iv = slice_interval(ctx, i)
            assert iv.upper == max(p[i] for p in orbit)
            assert iv.lower == min(p[i] for p in orbit)


def test_slice_examples(a2):
    g = a2.group
    facet, _ = slice_vertices(a2, 0, 1, 3)
    assert {v.point for v in facet} == {a2.h, a2.orbit_point(g.generator(1))}
    mid, _ = slice_vertices(a2, 0, 0, 3)
    assert {v.point for v in mid} == {(0, 1), (0, -1)}
    assert all(v.kind == "orbit" for v in mid)
    generic, _ = slice_vertices(a2, 0, F(1, 3), 3)
    assert generic and all(v.kind == "edge" and 0 < v.s < 1 for v in generic)
    for v in generic:
        p = a2.orbit_point(v.w)
        q = a2.orbit_point(g.right(v.w, v.k))
        assert v.point == tuple(a + v.s * (b - a) for a, b in zip(p, q))
        assert (p[0] - F(1, 3)) * (q[0] - F(1, 3)) < 0


def test_essential_examples(a2):
    ess = essential_vertices(a2, 0, 0)
    assert [v.point for v in ess] == [(0, 1)]
    with pytest.raises(NotInterior):
        essential_vertices(a2, 0, 1)
    rep = slice_report(a2, 0, 0, 3)
    assert (rep.m, len(rep.vertices), rep.truncated) == (1, 2, False)
    with pytest.raises(NotInSlice):
        slice_report(a2, 0, 2, 3)


def brute_essential(ctx, i, t, depth):
    verts, _ = slice_vertices(ctx, i, t, depth)
    return {v.point for v in verts
            if all(ctx.datum.root_value(k, v.point) > 0 for k in range(ctx.n) if k != i)}


@pytest.mark.parametrize("name, h", [("A2", (1, 1)), ("B2", B2H), ("G2", G2H),
                                     ("A3", (3, 4, 3))])
def test_essential_matches_full_slice_filter(name, h):
    ctx = ctx_for(name, h)
    for i in range(ctx.n):
        iv = slice_interval(ctx, i)
        for s in (F(1, 7), F(1, 3), F(1, 2), F(5, 6)):
            t = iv.lower + s * (iv.upper - iv.lower)
            got = essential_vertices(ctx, i, t)
            assert {v.point for v in got} == brute_essential(ctx, i, t, 20)
            for v in got:
                assert v.point[i] == t
                assert all(ctx.datum.root_value(k, v.point) > 0 for k in range(ctx.n) if k != i)


def test_type_a_end_nodes_have_one_essential_vertex():
    ctx = ctx_for("A3", (3, 4, 3))
    for i in (0, 2):
        iv = slice_interval(ctx, i)
        for k in range(1, 12):
            t = iv.lower + F(k, 12) * (iv.upper - iv.lower)
            assert len(essential_vertices(ctx, i, t)) == 1


def test_top_band_single_crossing():
    for name, h in (("A2", (1, 1)), ("B2", B2H), ("G2", G2H), ("A3", (3, 4, 3))):
        ctx = ctx_for(name, h)
        g = ctx.group
        for i in range(ctx.n):
            lo = ctx.orbit_point(g.generator(i))[i]
            for s in (F(0), F(1, 2)):
                t = lo + s * (ctx.h[i] - lo)
                ess = essential_vertices(ctx, i, t)
                assert len(ess) == 1


def test_infinite_slices_terminate():
    aff = ctx_for("A1~", (1, 1, 1))
    assert hull_membership(aff, (0, 0, 1)).tight == frozenset()
    assert slice_interval(aff, 0).lower is None
    for t in (F(1, 2), 0, -1, F(-7, 3), -10, -100):
        assert len(essential_vertices(aff, 0, t)) == 1
    hyp = ctx_for("H23", (-1, -1))
    for t in (F(-3, 2), -5, -50):
        assert len(essential_vertices(hyp, 0, t)) == 1


def test_essential_cover_examples(a2):
    g = a2.group
    c = essential_cover(a2, 0, 0, (0, 1))
    assert c.y == (0, 1) and c.terms == ((g.identity, 1),)
    c = essential_cover(a2, 0, 0, (0, -1))
    assert c.y == (0, 1)
    assert c.terms == ((g.generator(1), 1),)
    c = essential_cover(a2, 0, 0, (0, 0))
    assert c.y == (0, 1)
    assert dict(c.terms) == {g.identity: F(1, 2), g.generator(1): F(1, 2)}
    with pytest.raises(NotInSlice):
        essential_cover(a2, 0, 0, (1, 0))


@pytest.mark.parametrize("name, h, i, t", [("A3", (3, 4, 3), 1, F(1, 2)),
                                           ("A3", (3, 4, 3), 0, F(-1, 2)),
                                           ("B2", B2H, 1, F(1, 2)),
                                           ("G2", G2H, 0, F(2))])
def test_essential_cover_reconstructs(name, h, i, t):
    ctx = ctx_for(name, h)
    verts, _ = slice_vertices(ctx, i, t, 20)
    pts = [v.point for v in verts]
    rng = np.random.default_rng(3)
    for _ in range(15):
        k = rng.integers(1, min(4, len(pts)) + 1)
        idx = rng.choice(len(pts), size=k, replace=False)
        wts = [F(int(v)) for v in rng.integers(1, 10, size=k)]
        tot = sum(wts)
        x = tuple(sum(w / tot * pts[j][m] for w, j in zip(wts, idx)) for m in range(ctx.d))
        cover = essential_cover(ctx, i, t, x)
        assert cover.y[i] == t and isinstance(hull_membership(ctx, cover.y), In)
        assert all(ctx.datum.root_value(k, cover.y) > 0 for k in range(ctx.n) if k != i)
        rebuilt = [F(0)] * ctx.d
        for w, c in cover.terms:
            assert support(w) <= set(range(ctx.n)) - {i}
            assert c > 0
            for m, v in enumerate(act(w, cover.y)):
                rebuilt[m] += c * v
        assert tuple(rebuilt) == x


def test_face_symmetry_examples(a2):
    g = a2.group
    fs = slice_face_symmetry(a2, 0, 0, [(0, 1)])
    assert fs.j_set == frozenset()
    fs = slice_face_symmetry(a2, 0, 0, [(0, 1), (0, -1)])
    assert fs.j_set == {1} and fs.representatives == ((0, 1),)
    fs = slice_face_symmetry(a2, 0, 1, [a2.h, a2.orbit_point(g.generator(1))])
    assert fs.j_set == {1}
    with pytest.raises(NotAFace):
        slice_face_symmetry(a2, 0, 0, [(0, 1), (1, -1)])


def test_octagon_slice():
    ctx = ctx_for("A3", (3, 4, 3))
    rep = slice_report(ctx, 1, F(1, 2), 10)
    assert (len(rep.vertices), rep.m) == (8, 2)


def test_float_slack_agrees_with_exact(a2):
    rng = np.random.default_rng(0)
    pts = rng.uniform(-2.5, 2.5, size=(400, 2))
    slack = float_slack(a2, pts)
    for p, s in zip(pts, slack):
        exact_in = isinstance(hull_membership(a2, tuple(F(v) for v in p)), In)
        if abs(s) > 1e-12:
            assert (s > 0) == exact_in


@pytest.mark.parametrize("name", ["A1~", "H23"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_membership_soundness_infinite(name, data):
    ctx = ctx_for(name)
    orbit = [ctx.orbit_point(w) for w in ctx.group.enumerate_by_length(6)]
    picks = data.draw(st.lists(st.integers(0, len(orbit) - 1), min_size=1, max_size=5))
    weights = data.draw(st.lists(st.integers(1, 20), min_size=len(picks), max_size=len(picks)))
    tot = sum(weights)
    x = tuple(sum(F(w, tot) * orbit[k][m] for k, w in zip(picks, weights)) for m in range(ctx.d))
    assert isinstance(hull_membership(ctx, x), In)
    i = data.draw(st.integers(0, ctx.n - 1))
    bump = data.draw(st.fractions(F(1, 50), 3))
    y = list(x)
    red = hull_membership(ctx, x)
    y = list(red.dominant)
    y[i] = ctx.h[i] + bump
    w = ctx.group.element(data.draw(st.lists(st.integers(0, ctx.n - 1), max_size=6)))
    assert not isinstance(hull_membership(ctx, act(w, y)), In)

"""Numerical checks of Kostant convexity and its linear analogue in SL(n, R).

Diagonal vectors ``lam`` (trace zero) are identified with Cartan points of type
A_{n-1} through partial sums: ``omega_m(lam) = lam_1 + ... + lam_m``.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np
from scipy.optimize import minimize

from .datum import make_kac_datum
from .errors import NotRegular, TargetOutsideHull, ToleranceNotMet
from .gcm import validate_gcm
from .hull import (HullContext, In, _essential_search, essential_cover, float_slack,
                   hull_context, hull_membership)
from .iwasawa import (embedded_rotation, haar_orthogonal, kostant_project, kostant_project_batch,
                      linear_project, linear_project_batch, rotation)

CHUNK = 1000
SLACK_TOL = -1e-9


def type_rank(name: str) -> int:
    """Matrix size for a type-A label such as ``"A2"``."""
    name = name.strip().upper()
    if not name.startswith("A") or not name[1:].isdigit() or int(name[1:]) < 1:
        raise ValueError(f"only type A_l models are available, got {name!r}")
    return int(name[1:]) + 1


def cartan_matrix_a(rank: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(rank)]
            for i in range(rank)]


def diag_to_cartan(lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    return np.cumsum(lam, axis=-1)[..., :-1]


def cartan_to_diag(x) -> list:
    """Inverse of the partial-sum map; works for Fractions and floats alike."""
    x = list(x)
    return [x[0]] + [x[m] - x[m - 1] for m in range(1, len(x))] + [-x[-1]]


def _check_regular(h) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.ndim != 1 or len(h) < 2:
        raise NotRegular("h must be a vector of length at least 2")
    if abs(h.sum()) > 1e-12 * (1 + np.abs(h).max()):
        raise NotRegular("h must have trace zero")
    if not np.all(np.diff(h) < 0):
        raise NotRegular("h must have distinct, decreasing entries")
    return h


def sl_context(h) -> HullContext:
    """Exact hull context of type A_{n-1} for the float diagonal h."""
    h = _check_regular(h)
    n = len(h)
    datum = make_kac_datum(validate_gcm(cartan_matrix_a(n - 1)))
    partial = [Fraction(0)]
    for v in h[:-1]:
        partial.append(partial[-1] + Fraction(float(v)))
    return hull_context(datum, partial[1:])


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("WEYLHULL_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class VerificationReport:
    kind: str
    n: int
    h: list[float]
    samples: int
    seed: int
    worst_slack: float
    coverage_targets: int
    covered_by_sampling: int
    covered_by_construction: int
    coverage_gaps: list[list[float]]
    max_nearest: float
    construction_worst_error: float = 0.0
    projections: np.ndarray = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.worst_slack >= SLACK_TOL and not self.coverage_gaps

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "n": self.n, "h": self.h, "samples": self.samples,
            "seed": self.seed, "worstSlack": self.worst_slack,
            "coverageTargets": self.coverage_targets,
            "coveredBySampling": self.covered_by_sampling,
            "coveredByConstruction": self.covered_by_construction,
            "coverageGaps": self.coverage_gaps, "maxNearest": self.max_nearest,
            "constructionWorstError": self.construction_worst_error, "ok": self.ok,
        }


def _sample(n, h, samples, seed, project_batch):
    seqs = np.random.SeedSequence(seed).spawn(max(1, math.ceil(samples / CHUNK)))
    sizes = [min(CHUNK, samples - i * CHUNK) for i in range(len(seqs))]

    def run(idx):
        if sizes[idx] <= 0:
            return np.empty((0, n))
        ks = haar_orthogonal(n, np.random.default_rng(seqs[idx]), sizes[idx])
        return project_batch(h, ks)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        parts = list(pool.map(run, range(len(seqs))))
    return np.concatenate(parts, axis=0)


def coverage_grid(h, steps: int | None = None) -> np.ndarray:
    """Interior targets (diagonal vectors) on a regular grid of the permutohedron."""
    h = np.asarray(h, dtype=float)
    n = len(h)
    if n == 2:
        steps = 200 if steps is None else steps
        t = np.linspace(h[1], h[0], steps + 1)[1:-1]
        return np.stack([t, -t], axis=1)
    steps = 24 if steps is None else steps
    ctx = sl_context(h)
    # the m-th partial sum ranges between the sums of the m smallest and m largest entries
    asc = np.cumsum(np.sort(h))[:-1]
    desc = np.cumsum(np.sort(h)[::-1])[:-1]
    axes = [np.linspace(lo, hi, steps + 1) for lo, hi in zip(asc, desc)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n - 1)
    inside = float_slack(ctx, mesh) > 1e-6
    pts = mesh[inside]
    lam = np.concatenate([pts[:, :1], np.diff(pts, axis=1), -pts[:, -1:]], axis=1)
    return lam


def _coverage(h, proj, tol, construct):
    grid = coverage_grid(h)
    if len(grid) == 0:
        return 0, 0, 0, [], 0.0, 0.0
    if len(h) == 2:
        d = np.abs(grid[:, None, 0] - proj[None, :, 0]).min(axis=1)
    else:
        d = np.full(len(grid), np.inf)
        for start in range(0, len(proj), 2000):
            block = proj[start:start + 2000]
            dd = np.linalg.norm(grid[:, None, :] - block[None, :, :], axis=2).min(axis=1)
            d = np.minimum(d, dd)
    far = np.flatnonzero(d > tol)
    gaps, built, worst = [], 0, 0.0
    for idx in far:
        err = construct(grid[idx])
        if err is not None and err <= tol:
            built += 1
            worst = max(worst, err)
        else:
            gaps.append([float(v) for v in grid[idx]])
    return len(grid), len(grid) - len(far), built, gaps, float(d.max()), worst


def _default_tol(n):
    return 0.01 if n == 2 else 0.05


def verify_nonlinear(n: int, h, samples: int, seed: int, coverage_tol: float | None = None
                     ) -> VerificationReport:
    """Sample Haar rotations k and check that the A-part of exp(h) k stays in the hull.

    Grid targets farther than ``coverage_tol`` from every sample are then reached
    by :func:`attain`; those that fail are reported as coverage gaps.
    """
    h = _check_regular(h)
    if len(h) != n:
        raise NotRegular(f"h has length {len(h)}, expected {n}")
    ctx = sl_context(h)
    proj = _sample(n, h, samples, seed, kostant_project_batch)
    slack = float_slack(ctx, diag_to_cartan(proj)) if samples else np.array([np.inf])
    tol = _default_tol(n) if coverage_tol is None else coverage_tol

    def construct(target):
        if n > 3:
            return None
        try:
            return attain(n, h, target).error
        except (ToleranceNotMet, TargetOutsideHull):
            return None

    cov = _coverage(h, proj, tol, construct)
    return VerificationReport("kostant", n, [float(v) for v in h], samples, seed,
                              float(slack.min()), *cov, projections=proj)


def verify_linear(n: int, h, samples: int, seed: int, coverage_tol: float | None = None,
                  pinch_targets: int = 0) -> VerificationReport:
    """Linear analogue: diagonal of ``k diag(h) k^T`` stays in the permutohedron.

    Coverage gaps are closed by explicit pinching constructions.  With
    ``pinch_targets`` additional random majorized targets are pinched and the
    worst error is folded into ``construction_worst_error``.
    """
    h = _check_regular(h)
    if len(h) != n:
        raise NotRegular(f"h has length {len(h)}, expected {n}")
    ctx = sl_context(h)
    proj = _sample(n, h, samples, seed, linear_project_batch)
    slack = float_slack(ctx, diag_to_cartan(proj)) if samples else np.array([np.inf])
    tol = _default_tol(n) if coverage_tol is None else coverage_tol

    def construct(target):
        k = pinch(h, target)
        return float(np.abs(linear_project(h, k) - target).max())

    cov = list(_coverage(h, proj, tol, construct))
    if pinch_targets:
        rng = np.random.default_rng(np.random.SeedSequence(seed).spawn(1)[0].generate_state(1)[0])
        for z in random_hull_targets(h, pinch_targets, rng):
            cov[5] = max(cov[5], construct(z))
    return VerificationReport("linear", n, [float(v) for v in h], samples, seed,
                              float(slack.min()), *cov, projections=proj)


def random_hull_targets(h, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random convex combinations of all permutations of h (Dirichlet weights)."""
    h = np.asarray(h, dtype=float)
    perms = np.array([h[list(p)] for p in permutations(range(len(h)))])
    w = rng.dirichlet(np.ones(len(perms)), size=count)
    return w @ perms


# --- attainment ---------------------------------------------------------------

@dataclass
class AttainResult:
    k: np.ndarray
    achieved: np.ndarray
    error: float
    fallback: bool
    route: str


def _cos2_angle(top: float, bottom: float, want: float) -> float:
    """Angle whose rotation moves log-value ``top`` to ``want`` (bottom <= want <= top)."""
    num = math.exp(2 * want) - math.exp(2 * bottom)
    den = math.exp(2 * top) - math.exp(2 * bottom)
    c2 = min(1.0, max(0.0, num / den))
    return math.acos(math.sqrt(c2))


def _permutation_to(values, h) -> np.ndarray:
    """Rotation P with P diag(h) P^T = diag(values) (values a permutation of h)."""
    n = len(h)
    p = np.zeros((n, n))
    used = set()
    for j, v in enumerate(values):
        m = min((m for m in range(n) if m not in used), key=lambda m: abs(h[m] - v))
        used.add(m)
        p[j, m] = 1.0
    if np.linalg.det(p) < 0:
        p[0] *= -1
    return p


def _euler(angles) -> np.ndarray:
    a, b, c = angles
    rz = lambda t: np.array([[math.cos(t), -math.sin(t), 0], [math.sin(t), math.cos(t), 0], [0, 0, 1]])
    ry = np.array([[math.cos(b), 0, math.sin(b)], [0, 1, 0], [-math.sin(b), 0, math.cos(b)]])
    return rz(a) @ ry @ rz(c)


def attain(n: int, h, target, tol: float = 1e-6) -> AttainResult:
    """Construct k with ``kostant_project(h, k)`` equal to ``target``."""
    h = _check_regular(h)
    target = np.asarray(target, dtype=float)
    if len(h) != n or len(target) != n:
        raise ValueError("h and target must have length n")
    ctx = sl_context(h)
    slack = float_slack(ctx, diag_to_cartan(target))[0]
    if slack < -1e-12 or abs(target.sum()) > 1e-9:
        raise TargetOutsideHull(f"target {target.tolist()} is outside the hull")

    if n == 2:
        gamma = _cos2_angle(h[0], h[1], float(np.clip(target[0], h[1], h[0])))
        k = rotation(gamma)
        route = "closed-form"
    elif n == 3:
        k = _attain_rank2(ctx, h, target)
        route = "slice-recursion"
    else:
        raise ValueError("attainment is implemented for n in {2, 3}")

    got = kostant_project(h, k)
    err = float(np.abs(got - target).max())
    fallback = False
    if err > tol and n == 3:
        fallback = True
        route += "+optimizer"
        obj = lambda ang: float(np.sum((kostant_project(h, _euler(ang)) - target) ** 2))
        best = minimize(obj, np.zeros(3), method="Nelder-Mead",
                        options={"xatol": 1e-12, "fatol": 1e-20, "maxiter": 20000})
        k2 = _euler(best.x)
        got2 = kostant_project(h, k2)
        err2 = float(np.abs(got2 - target).max())
        if err2 < err:
            k, got, err = k2, got2, err2
    if err > tol:
        raise ToleranceNotMet(err, k)
    return AttainResult(k, got, err, fallback, route)


def _attain_rank2(ctx: HullContext, h: np.ndarray, target: np.ndarray) -> np.ndarray:
    # Slice at the first fundamental weight, find the essential vertex that covers
    # the target, reach that vertex with a rotation along its edge (k1), then move
    # inside the slice with a rotation in the complementary block (k2).
    x = ctx.datum.point([Fraction(float(target[0])), Fraction(float(target[0])) + Fraction(float(target[1]))])
    if not isinstance(hull_membership(ctx, x), In):
        raise TargetOutsideHull("target is outside the hull")
    t = x[0]
    cover = essential_cover(ctx, 0, t, x)
    verts = _essential_search(ctx, 0, t)
    vertex = next(v for v in verts if v.point == cover.y)
    y = [float(v) for v in cartan_to_diag(vertex.point)]

    if vertex.kind == "orbit":
        top = [float(v) for v in cartan_to_diag(ctx.orbit_point(vertex.w))]
        k1 = np.eye(3)
    else:
        a = [float(v) for v in cartan_to_diag(ctx.orbit_point(vertex.w))]
        b = [float(v) for v in cartan_to_diag(ctx.orbit_point(ctx.group.right(vertex.w, vertex.k)))]
        p, q = [m for m in range(3) if abs(a[m] - b[m]) > 1e-15]
        top = a if a[p] > a[q] else b
        gamma = _cos2_angle(top[p], top[q], y[p])
        k1 = embedded_rotation(3, p, q, gamma)
    perm = _permutation_to(top, h)

    # W^(0) swaps the last two diagonal entries; y[1] > y[2] in the subchamber
    gamma2 = _cos2_angle(y[1], y[2], float(np.clip(target[1], y[2], y[1])))
    k2 = embedded_rotation(3, 1, 2, gamma2)
    return perm.T @ k1 @ k2


# --- pinching (linear analogue) -------------------------------------------------

def pinch(h, target, tol: float = 1e-13) -> np.ndarray:
    """Orthogonal k with ``diag(k diag(h) k^T) = target`` for target majorized by h.

    Uses at most n-1 plane rotations, each fixing one more diagonal entry.
    """
    h = np.asarray(h, dtype=float)
    z = np.asarray(target, dtype=float)
    n = len(h)
    order = np.argsort(-h, kind="stable")
    hs = h[order]
    zorder = np.argsort(-z, kind="stable")
    zs = z[zorder]
    if np.any(np.cumsum(zs)[:-1] > np.cumsum(hs)[:-1] + 1e-9) or abs(zs.sum() - hs.sum()) > 1e-9:
        raise TargetOutsideHull("target is not majorized by h")
    m = np.diag(hs)
    k = np.eye(n)
    scale = tol * (1 + np.abs(hs).max())
    for _ in range(2 * n):
        d = np.diag(m)
        above = [i for i in range(n) if d[i] > zs[i] + scale]
        if not above:
            break
        j = max(above)
        l = next((i for i in range(j + 1, n) if d[i] < zs[i] - scale), None)
        if l is None:
            break
        delta = min(d[j] - zs[j], zs[l] - d[l])
        want = d[j] - delta
        a, c, b = m[j, j], m[l, l], m[j, l]
        half = (a - c) / 2
        radius = math.hypot(half, b)
        phi = math.atan2(b, half)
        theta = (math.acos(max(-1.0, min(1.0, (want - (a + c) / 2) / radius))) - phi) / 2
        g = np.eye(n)
        cs, sn = math.cos(theta), math.sin(theta)
        g[j, j], g[j, l], g[l, j], g[l, l] = cs, -sn, sn, cs
        m = g @ m @ g.T
        k = g @ k
    # undo the sorting of h (columns) and of the target (rows)
    k = k[:, np.argsort(order, kind="stable")]
    p = np.zeros((n, n))
    p[zorder, np.arange(n)] = 1.0
    k = p @ k
    if np.linalg.det(k) < 0:
        k[0] *= -1
    return k

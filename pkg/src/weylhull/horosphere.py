"""Regular dominant points whose orbit hull misses the origin.

When such a point h exists, the hull of the orbit of h contains no point fixed
by the Weyl group, which rules out ``G = K U_+ K`` for the corresponding group.
Two situations produce one:

* the lattice rank exceeds n, so the common kernel of the simple roots is
  nonzero and can be used to shift a chamber point;
* d = n with an indefinite component, where ``A^T lam > 0`` has a solution with
  a negative entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact, fourier_motzkin as fm
from .datum import Point, RootDatum
from .errors import NotApplicable
from .gcm import GcmTag, classify
from .hull import Out, hull_context, hull_membership


@dataclass(frozen=True)
class HorosphereWitness:
    case: str                   # "kernel" (d > n) or "indefinite" (d = n)
    h: Point
    coefficients: Point | None  # coroot coefficients of h in the indefinite case
    verdict: Out
    negative_omegas: tuple[int, ...]

    def describe(self) -> str:
        v = self.verdict
        if v.kind == "phi":
            return f"phi_{v.index}(0) = 0 differs from phi_{v.index}(h) = {v.bound}"
        return f"omega_{v.index}(0) = 0 exceeds omega_{v.index}(h) = {v.bound}"


def _kernel_shift(datum: RootDatum) -> Point:
    base = datum.rho
    kernel = exact.nullspace(datum.roots, datum.d)
    for v in kernel:
        if any(v[datum.n:]):
            return tuple(a + b for a, b in zip(base, v))
    # the shift only moves omega coordinates: push one of them below zero
    v = kernel[0]
    j = next(k for k in range(datum.n) if v[k] != 0)
    scale = (abs(base[j]) + 1) / abs(v[j])
    sign = -1 if v[j] > 0 else 1
    return tuple(a + sign * scale * b for a, b in zip(base, v))


def _indefinite_coefficients(datum: RootDatum) -> Point:
    a = datum.gcm.entries
    n = datum.n
    cons = [c for j in range(n) for c in fm.constraint([a[i][j] for i in range(n)], ">")]
    lam = fm.solve(cons, n)
    assert lam is not None, "A^T lam > 0 has no solution for an indefinite matrix"
    return lam


def horosphere_witness(datum: RootDatum) -> HorosphereWitness:
    n, d = datum.n, datum.d
    if d > n:
        case, coeffs = "kernel", None
        h = _kernel_shift(datum)
    elif any(t.tag is GcmTag.INDEFINITE for t in classify(datum.gcm)):
        case = "indefinite"
        coeffs = _indefinite_coefficients(datum)
        h = coeffs          # coroots are the first n coordinates
    else:
        raise NotApplicable("lattice rank equals n and no component is indefinite")
    ctx = hull_context(datum, h)
    verdict = hull_membership(ctx, (Fraction(0),) * d)
    assert isinstance(verdict, Out), "origin unexpectedly inside the hull"
    negative = tuple(k for k in range(n) if h[k] < 0)
    return HorosphereWitness(case, h, coeffs, verdict, negative)

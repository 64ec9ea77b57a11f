"""Iwasawa factorization g = k a u in special linear groups.

``k`` is orthogonal (or unitary), ``a`` positive diagonal and ``u`` unit upper
triangular.  The projection to the diagonal part is read off from a
Gram–Schmidt pass over the columns of g.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularInput

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class IwasawaTriple:
    k: np.ndarray
    log_a: np.ndarray
    u: np.ndarray
    residual: float

    @property
    def a(self) -> np.ndarray:
        return np.diag(np.exp(self.log_a))


def _residual(g, k, log_a, u) -> float:
    # reconstruction error, floored at the rounding unit of the input scale
    err = float(np.max(np.abs(k @ np.diag(np.exp(log_a)) @ u - g)))
    return max(err, len(g) * EPS * float(np.max(np.abs(g))))


def rotation(gamma: float) -> np.ndarray:
    c, s = math.cos(gamma), math.sin(gamma)
    return np.array([[c, -s], [s, c]])


def sl2_iwasawa(r: float, gamma: float) -> IwasawaTriple:
    """Closed-form factors of ``diag(e^r, e^-r) @ rotation(gamma)``."""
    c, s = math.cos(gamma), math.sin(gamma)
    er, emr = math.exp(r), math.exp(-r)
    rho = math.sqrt(er * er * c * c + emr * emr * s * s)
    k = np.array([[er * c, -emr * s], [emr * s, er * c]]) / rho
    shear = (emr * emr - er * er) * c * s / (rho * rho)
    u = np.array([[1.0, shear], [0.0, 1.0]])
    log_a = np.array([math.log(rho), -math.log(rho)])
    g = np.diag([er, emr]) @ rotation(gamma)
    return IwasawaTriple(k, log_a, u, _residual(g, k, log_a, u))


def qr_iwasawa(g) -> IwasawaTriple:
    """Modified Gram–Schmidt with one reorthogonalization pass; positive diagonal."""
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise SingularInput(f"expected a square matrix, got shape {g.shape}")
    n = g.shape[0]
    dtype = np.result_type(g.dtype, float)
    q = np.zeros((n, n), dtype=dtype)
    r = np.zeros((n, n), dtype=dtype)
    scale = float(np.max(np.abs(g))) if g.size else 0.0
    for j in range(n):
        v = g[:, j].astype(dtype, copy=True)
        for _ in range(2):
            for i in range(j):
                c = np.vdot(q[:, i], v)
                r[i, j] += c
                v = v - c * q[:, i]
        norm = float(np.linalg.norm(v))
        if not norm > 64 * n * EPS * scale:
            raise SingularInput(f"column {j} is numerically dependent on earlier columns")
        r[j, j] = norm
        q[:, j] = v / norm
    diag = np.real(np.diag(r))
    u = r / diag[:, None]
    log_a = np.log(diag)
    return IwasawaTriple(q, log_a, u, _residual(g, q, log_a, u))


def iwasawa_log_batch(g: np.ndarray) -> np.ndarray:
    """``log_a`` for a stack of real matrices of shape (N, n, n); same algorithm as
    :func:`qr_iwasawa`, vectorized over the stack."""
    g = np.asarray(g, dtype=float)
    n = g.shape[-1]
    q = np.zeros_like(g)
    out = np.empty(g.shape[:-1])
    for j in range(n):
        v = g[..., :, j].copy()
        for _ in range(2):
            for i in range(j):
                c = np.einsum("...k,...k->...", q[..., :, i], v)
                v -= c[..., None] * q[..., :, i]
        norm = np.linalg.norm(v, axis=-1)
        if np.any(norm <= 0):
            raise SingularInput("singular matrix in batch")
        q[..., :, j] = v / norm[..., None]
        out[..., j] = np.log(norm)
    return out


def kostant_project(h, k) -> np.ndarray:
    """Diagonal logarithm of the A-part of ``exp(diag h) @ k``."""
    h = np.asarray(h, dtype=float)
    return qr_iwasawa(np.diag(np.exp(h)) @ np.asarray(k)).log_a


def kostant_project_batch(h, ks: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    return iwasawa_log_batch(np.exp(h)[None, :, None] * np.asarray(ks, dtype=float))


def linear_project(h, k) -> np.ndarray:
    """Diagonal of ``k diag(h) k^-1`` for orthogonal or unitary k."""
    k = np.asarray(k)
    m = k @ np.diag(np.asarray(h, dtype=float)) @ k.conj().T
    return np.real(np.diag(m)).copy()


def linear_project_batch(h, ks: np.ndarray) -> np.ndarray:
    ks = np.asarray(ks)
    return np.einsum("...jm,m->...j", np.abs(ks) ** 2, np.asarray(h, dtype=float))


def haar_orthogonal(n: int, rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` Haar-distributed rotations in SO(n)."""
    z = rng.standard_normal((size, n, n))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diagonal(r, axis1=-2, axis2=-1))[:, None, :]
    flip = np.linalg.det(q) < 0
    q[flip, :, 0] *= -1
    return q


def embedded_rotation(n: int, p: int, q: int, gamma: float) -> np.ndarray:
    """Rotation by gamma in the (p, q) coordinate plane of R^n."""
    m = np.eye(n)
    c, s = math.cos(gamma), math.sin(gamma)
    m[p, p] = c
    m[q, q] = c
    m[p, q] = -s
    m[q, p] = s
    return m

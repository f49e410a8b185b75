"""Rigorous lower bounds for the critical intensity with unit-ball grains.

Three bounds of increasing strength:

* Penrose: 1 / (2^d v_d), the intensity at which the dominating
  Galton-Watson process is critical.
* phi(B_3): the root in t of the crossing functional
  phi_t(B_3) = t d v_d * integral over r in (2, 4) of
  r^(d-1) (1 - exp(-t * lens(d, 2, r))) dr = 1.
* Hall: 1 over the spectral radius of the distance-type branching operator
  T(f)(x) = integral over y in (0, 2) of f(y) g(y, x) dy, where g(y, x) is
  the surface measure of the radius-y sphere around x e_1 outside B_2.

The prefactor d v_d in phi (surface measure of the unit sphere) and the
constant (d - 1) v_{d-1} in g (spherical-zone measure) are fixed by the d = 2
closed forms and by regression against the published tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specialfn import (
    _unit_ball_volume,
    ball_volume,
    find_root_increasing,
    lens_volume,
    quadrature_on,
    sin_power_integral,
)

DEFAULT_QUAD_ORDER = 200
DEFAULT_NODES = 200
POWER_ITERATION_CAP = 10**5


def penrose_bound(d: int) -> float:
    """t_c >= 1 / volume(B_2): the branching-domination bound."""
    return 1.0 / (2.0**d * ball_volume(d))


def _phi_quad(d: int, t: float, order: int) -> float:
    quad = quadrature_on(2.0, 4.0, order)
    r = quad.nodes
    integrand = r ** (d - 1) * (1.0 - np.exp(-t * lens_volume(d, 2.0, r)))
    return t * d * ball_volume(d) * float(np.sum(quad.weights * integrand))


def phi_b3(d: int, t: float, order: int = DEFAULT_QUAD_ORDER, rtol: float = 1e-10) -> float:
    """Expected number of grains crossing the boundary of B_3 connected to the
    center, evaluated with a doubling convergence check."""
    if t < 0:
        raise ValueError(f"intensity must be >= 0, got {t}")
    if t == 0:
        return 0.0
    prev = _phi_quad(d, t, order)
    for _ in range(5):
        order *= 2
        cur = _phi_quad(d, t, order)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    raise RuntimeError(f"phi quadrature did not converge at order {order}")


def phi_b3_bound(d: int, tol: float = 1e-9) -> float:
    """Root in t of phi_t(B_3) = 1, bracketed by the Penrose bound and ten
    times it (phi is strictly increasing in t)."""
    lo = penrose_bound(d)
    hi = 10.0 * lo
    return find_root_increasing(lambda t: phi_b3(d, t) - 1.0, lo, hi, tol)


def hall_kernel(d: int, y, x):
    """Surface measure of {z : |z| > 2, |z - x e_1| = y} for x, y in (0, 2).

    Vanishes for y <= 2 - x (the sphere is swallowed by B_2); otherwise the
    spherical-zone formula (d-1) v_{d-1} y^(d-1) * J_{d-2}(arccos(a)) with
    a = (4 - x^2 - y^2) / (2 x y), clamped against rounding.
    Accepts scalars or arrays.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if np.any(xa <= 0) or np.any(xa >= 2) or np.any(ya <= 0) or np.any(ya >= 2):
        raise ValueError("kernel arguments must lie strictly inside (0, 2)")
    arg = np.clip((4.0 - xa**2 - ya**2) / (2.0 * xa * ya), -1.0, 1.0)
    val = (d - 1) * _unit_ball_volume(d - 1) * ya ** (d - 1) * sin_power_integral(
        d - 2, np.arccos(arg)
    )
    # the recurrence can round to a tiny negative just past the support edge
    out = np.where(ya <= 2.0 - xa, 0.0, np.maximum(val, 0.0))
    return out if (np.ndim(y) or np.ndim(x)) else float(out)


@dataclass(frozen=True)
class OperatorDiscretization:
    """Nystrom discretization of the branching operator on (0, 2).

    matrix[i, j] = weights[j] * g(nodes[j], nodes[i]), so matrix @ f evaluates
    T(f) at the nodes.
    """

    d: int
    nodes: np.ndarray
    weights: np.ndarray
    matrix: np.ndarray


def hall_operator(d: int, n_nodes: int = DEFAULT_NODES) -> OperatorDiscretization:
    """Gauss-Legendre Nystrom matrix of the branching operator."""
    if n_nodes < 16:
        raise ValueError(f"need at least 16 nodes, got {n_nodes}")
    quad = quadrature_on(0.0, 2.0, n_nodes)
    y, x = np.meshgrid(quad.nodes, quad.nodes)  # row i: x_i, column j: y_j
    matrix = quad.weights[None, :] * hall_kernel(d, y, x)
    return OperatorDiscretization(d=d, nodes=quad.nodes, weights=quad.weights, matrix=matrix)


def spectral_radius(disc, tol: float = 1e-13) -> float:
    """Dominant eigenvalue of a nonnegative matrix by power iteration.

    Perron-Frobenius makes the dominant eigenvalue real and reachable from
    the all-ones start vector; a randomized restart guards against an
    unlucky orthogonal start.
    """
    matrix = disc.matrix if isinstance(disc, OperatorDiscretization) else np.asarray(disc, float)
    if np.any(matrix < 0):
        raise ValueError("power iteration requires a nonnegative matrix")
    n = matrix.shape[0]
    v = np.ones(n)
    lam_prev = math.inf
    for it in range(POWER_ITERATION_CAP):
        w = matrix @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            if it == 0:  # all-ones killed; restart from a random direction
                v = np.abs(np.random.default_rng(0).standard_normal(n))
                continue
            return 0.0
        lam = float(w @ v) / float(v @ v)
        v = w / norm
        if abs(lam - lam_prev) <= tol * max(abs(lam), 1e-300):
            return lam
        lam_prev = lam
    raise RuntimeError(f"power iteration did not converge in {POWER_ITERATION_CAP} steps")


def hall_bound(d: int, n_nodes: int = DEFAULT_NODES) -> float:
    """t_c >= 1 / (largest eigenvalue of the branching operator)."""
    return 1.0 / spectral_radius(hall_operator(d, n_nodes))


def hall_bound_with_error(d: int, n_nodes: int = DEFAULT_NODES) -> tuple[float, float]:
    """Bound at n_nodes plus a Richardson-style error estimate from 2*n_nodes."""
    coarse = hall_bound(d, n_nodes)
    fine = hall_bound(d, 2 * n_nodes)
    return coarse, abs(fine - coarse)


def hall_mean_cluster_size(d: int, t: float, n_nodes: int = DEFAULT_NODES) -> float:
    """Neumann series 1 + sum over n >= 1 of t^n T^n(1)(1) on the discretized
    operator, read off at the node nearest 1.

    Returns math.inf when t times the spectral radius reaches 1 (the series
    diverges); divergence is a value, not an error.
    """
    if t < 0:
        raise ValueError(f"intensity must be >= 0, got {t}")
    if t == 0:
        return 1.0
    disc = hall_operator(d, n_nodes)
    if t * spectral_radius(disc) >= 1.0:
        return math.inf
    i1 = int(np.argmin(np.abs(disc.nodes - 1.0)))
    term = np.ones(len(disc.nodes))
    total = 1.0
    for _ in range(POWER_ITERATION_CAP):
        term = t * (disc.matrix @ term)
        contrib = float(term[i1])
        total += contrib
        if contrib <= 1e-14 * total:
            return total
    raise RuntimeError("mean-size series failed to converge")

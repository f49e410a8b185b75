"""Basic numerics: ball/cap/lens volumes, sin-power integrals, quadrature, bisection.

Everything here is deterministic and pure; tolerances are chosen so that the
bound computations built on top can deliver 6 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_DIM = 64


def _unit_ball_volume(d: int) -> float:
    # Half-integer Gamma recursion: v_0 = 1, v_1 = 2, v_d = v_{d-2} * 2*pi/d.
    # Exact up to floating point for every d we support.
    if d == 0:
        return 1.0
    if d == 1:
        return 2.0
    return _unit_ball_volume(d - 2) * 2.0 * math.pi / d


def ball_volume(d: int) -> float:
    """Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(d/2 + 1).

    Callers obtain the volume of a radius-R ball as ``ball_volume(d) * R**d``.
    """
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"dimension must be in [1, {MAX_DIM}], got {d}")
    return _unit_ball_volume(d)


def sin_power_integral(m: int, theta):
    """Integral of sin(phi)**m for phi from 0 to theta, theta in [0, pi].

    Uses the stable downward-in-degree recurrence
    J_m = (-cos(theta) sin(theta)^(m-1) + (m-1) J_{m-2}) / m
    with J_0 = theta and J_1 = 1 - cos(theta).  Accepts scalars or arrays.
    """
    if m < 0:
        raise ValueError(f"power must be nonnegative, got {m}")
    th = np.asarray(theta, dtype=float)
    if np.any(th < -1e-15) or np.any(th > math.pi + 1e-15):
        raise ValueError("theta must lie in [0, pi]")
    th = np.clip(th, 0.0, math.pi)
    c, s = np.cos(th), np.sin(th)
    if m % 2 == 0:
        j, k = th + 0.0, 0
    else:
        j, k = 1.0 - c, 1
    while k < m:
        k += 2
        j = (-c * s ** (k - 1) + (k - 1) * j) / k
    return j if np.ndim(theta) else float(j)


def cap_volume(d: int, R: float, h):
    """Volume of a spherical cap of height h of a d-ball of radius R."""
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"dimension must be in [1, {MAX_DIM}], got {d}")
    if R <= 0:
        raise ValueError(f"radius must be positive, got {R}")
    harr = np.asarray(h, dtype=float)
    if np.any(harr < 0) or np.any(harr > R):
        raise ValueError("cap height must lie in [0, R]")
    theta = np.arccos(np.clip(1.0 - harr / R, -1.0, 1.0))
    out = _unit_ball_volume(d - 1) * R**d * sin_power_integral(d, theta)
    return out if np.ndim(h) else float(out)


def lens_volume(d: int, R: float, r):
    """Volume of the intersection of two d-balls of radius R at center distance r.

    Equals twice the cap of height R - r/2; zero once the balls are tangent
    or disjoint (r >= 2R).
    """
    rarr = np.asarray(r, dtype=float)
    if np.any(rarr < 0):
        raise ValueError("center distance must be nonnegative")
    h = np.clip(R - rarr / 2.0, 0.0, R)
    out = 2.0 * cap_volume(d, R, h)
    out = np.where(rarr >= 2.0 * R, 0.0, out)
    return out if np.ndim(r) else float(out)


@dataclass(frozen=True)
class Quadrature:
    """Gauss-Legendre rule mapped to an interval (a, b)."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))


@lru_cache(maxsize=64)
def _leggauss(order: int):
    # leggauss costs O(order^2); root finders re-request the same order many
    # times, so the reference rule on (-1, 1) is cached.
    return np.polynomial.legendre.leggauss(order)


def quadrature_on(a: float, b: float, order: int) -> Quadrature:
    """Gauss-Legendre nodes and weights on (a, b); exact for degree <= 2*order - 1."""
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    x, w = _leggauss(order)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return Quadrature(nodes=mid + half * x, weights=half * w, order=order)


def find_root_increasing(f, lo: float, hi: float, tol: float) -> float:
    """Bisection root of a nondecreasing f with f(lo) < 0 < f(hi).

    Stops once the bracket width drops below tol; robust against noisy
    monotonicity since only signs are used.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    flo, fhi = f(lo), f(hi)
    if flo >= 0 or fhi <= 0:
        raise ValueError(
            f"bracket failure: f({lo})={flo}, f({hi})={fhi} (need f(lo) < 0 < f(hi))"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)

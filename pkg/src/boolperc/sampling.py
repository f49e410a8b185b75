"""Deterministic, stream-splittable randomness and uniform-in-ball samplers.

Each Monte-Carlo trial gets its own :class:`RngStream` derived from a master
seed and a stream index, so results replay bit-identically regardless of how
trials are scheduled across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1

#: Rejection sampling wins below this dimension, the Gaussian construction at
#: and above it (acceptance probability of the cube proposal decays like
#: ball_volume(d) / 2**d).
CROSSOVER_DIM = 7

MAX_POISSON_MEAN = 1e9


@dataclass
class RngStream:
    """One independent random stream (PCG64, period 2^128)."""

    master_seed: int
    stream_index: int
    generator: np.random.Generator

    def uniform(self, size=None):
        return self.generator.uniform(size=size)


def make_stream(master_seed: int, stream_index: int) -> RngStream:
    """Derive stream `stream_index` from `master_seed`.

    The pair is fed through numpy's SeedSequence entropy hash, so equal pairs
    give identical streams and distinct pairs give statistically independent
    ones.
    """
    seq = np.random.SeedSequence([master_seed & _MASK64, stream_index & _MASK64])
    return RngStream(
        master_seed=master_seed,
        stream_index=stream_index,
        generator=np.random.Generator(np.random.PCG64(seq)),
    )


def poisson(stream: RngStream, mean: float) -> int:
    """A Poisson(mean) variate."""
    if not np.isfinite(mean) or mean < 0:
        raise ValueError(f"Poisson mean must be finite and nonnegative, got {mean}")
    if mean > MAX_POISSON_MEAN:
        raise ValueError(f"Poisson mean too large: {mean} > {MAX_POISSON_MEAN}")
    return int(stream.generator.poisson(mean))


def uniform_in_ball_rejection(stream: RngStream, d: int, size=None):
    """Uniform point(s) in the closed unit d-ball by rejection from [-1, 1]^d."""
    if not 1 <= d <= 64:
        raise ValueError(f"dimension must be in [1, 64], got {d}")
    n = 1 if size is None else int(size)
    gen = stream.generator
    # Oversample by the reciprocal acceptance rate so one or two rounds suffice.
    from .specialfn import ball_volume

    rate = ball_volume(d) / 2.0**d
    # Cap each proposal batch so low-acceptance dimensions (rate ~ 1e-3 at
    # d = 11) stream in bounded memory instead of one huge allocation.
    max_rows = max(10**7 // d, 10**5)
    blocks, have = [], 0
    while have < n:
        want = n - have
        m = min(int(want / rate * 1.1) + 16, max_rows)
        c = gen.uniform(-1.0, 1.0, size=(m, d))
        keep = c[np.einsum("ij,ij->i", c, c) <= 1.0][:want]
        blocks.append(keep)
        have += len(keep)
    out = blocks[0] if len(blocks) == 1 else np.concatenate(blocks)
    return out[0] if size is None else out


def uniform_in_ball_normalized(stream: RngStream, d: int, size=None):
    """Uniform point(s) in the closed unit d-ball via G / sqrt(|G|^2 + 2E).

    G is a d-vector of independent standard normals, E an independent standard
    exponential obtained by inversion -log(1 - U).
    """
    if not 1 <= d <= 64:
        raise ValueError(f"dimension must be in [1, 64], got {d}")
    n = 1 if size is None else int(size)
    gen = stream.generator
    g = gen.standard_normal(size=(n, d))
    e = -np.log1p(-gen.uniform(size=n))
    out = g / np.sqrt(np.einsum("ij,ij->i", g, g) + 2.0 * e)[:, None]
    return out[0] if size is None else out


def uniform_in_shifted_ball(stream, d, center, radius, size=None, method=None):
    """Uniform point(s) in the ball of given center and radius.

    `method` is "rejection", "normalized" or None for the dimension-based
    default (rejection below CROSSOVER_DIM).
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if method is None:
        method = "rejection" if d < CROSSOVER_DIM else "normalized"
    if method == "rejection":
        u = uniform_in_ball_rejection(stream, d, size=size)
    elif method == "normalized":
        u = uniform_in_ball_normalized(stream, d, size=size)
    else:
        raise ValueError(f"unknown ball-picking method: {method!r}")
    return np.asarray(center, dtype=float) + radius * u

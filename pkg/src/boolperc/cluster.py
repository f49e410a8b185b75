"""Exact simulation of the origin cluster of the Boolean model with unit balls.

The exploration is breadth-first: each processed grain spawns a fresh Poisson
number of candidate children uniform in the radius-2 ball around it, and a
candidate survives iff it is not covered by the radius-2 ball of any grain
processed earlier.  Stopping as soon as a child's grain touches the outside of
the observation ball gives an exact sample of the reach event; a size
threshold bounds memory and is counted as a reach (conservative).

A brute-force union-find oracle over a full Poisson configuration provides an
independent estimate of the same event for cross-validation.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import sampling
from .specialfn import ball_volume

DEFAULT_SIZE_THRESHOLD = 10**6

FINITE = "finite"
BOUNDARY = "boundary"
THRESHOLD = "threshold"


@dataclass(frozen=True)
class ExploreConfig:
    """Parameters of one exploration trial.

    d: dimension; t: intensity per unit volume; r: observation radius (> 1);
    size_threshold: stop (and count as a reach) once the cluster holds this
    many grains.  None means unbounded.
    """

    d: int
    t: float
    r: float
    size_threshold: int | None = DEFAULT_SIZE_THRESHOLD

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if self.t < 0 or not math.isfinite(self.t):
            raise ValueError(f"intensity must be finite and >= 0, got {self.t}")
        if not self.r > 1:
            raise ValueError(f"observation radius must exceed 1, got {self.r}")
        if self.size_threshold is not None and self.size_threshold < 1:
            raise ValueError(f"size threshold must be >= 1, got {self.size_threshold}")


@dataclass(frozen=True)
class Outcome:
    """Result of one exploration: finite cluster, boundary reach, or threshold."""

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in (FINITE, BOUNDARY, THRESHOLD):
            raise ValueError(f"unknown outcome kind: {self.kind!r}")
        if self.size < 1:
            raise ValueError(f"cluster size must be >= 1, got {self.size}")

    @property
    def is_success(self) -> bool:
        """True for the outcomes counted as reaching the boundary."""
        return self.kind != FINITE


@lru_cache(maxsize=None)
def _offsets(d: int, k: int):
    return tuple(itertools.product(range(-k, k + 1), repeat=d))


class SpatialGrid:
    """Hash grid with cell side one grain diameter (2 by default).

    Cells are kept in a dict keyed by integer coordinates; only occupied cells
    use memory, which matters because near-critical clusters cover a tiny
    fraction of the observation ball.
    """

    def __init__(self, dim: int, cell_side: float = 2.0):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        self.dim = dim
        self.cell_side = float(cell_side)
        self._cells: dict[tuple, np.ndarray] = {}
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def cell_of(self, p) -> tuple:
        s = self.cell_side
        return tuple(int(math.floor(c / s)) for c in p)

    def insert(self, p) -> None:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,):
            raise ValueError(f"point of shape {p.shape} in a {self.dim}-d grid")
        key = self.cell_of(p)
        old = self._cells.get(key)
        self._cells[key] = p[None] if old is None else np.concatenate([old, p[None]])
        self._count += 1

    def points_near(self, key: tuple, cell_radius: int):
        """All stored points whose cell is within `cell_radius` cells of `key`.

        Enumerates cell offsets when that is cheaper than scanning the
        occupied cells, otherwise filters occupied cells by Chebyshev
        distance; the result is identical either way.
        """
        cells = self._cells
        if (2 * cell_radius + 1) ** self.dim <= 2 * len(cells) + 16:
            blocks = []
            for off in _offsets(self.dim, cell_radius):
                b = cells.get(tuple(k + o for k, o in zip(key, off)))
                if b is not None:
                    blocks.append(b)
        else:
            blocks = [
                b
                for ck, b in cells.items()
                if max(abs(a - c) for a, c in zip(ck, key)) <= cell_radius
            ]
        if not blocks:
            return None
        return blocks[0] if len(blocks) == 1 else np.concatenate(blocks)

    def neighbors_within(self, p, dist: float) -> np.ndarray:
        """Stored points strictly closer than `dist` to p (requires dist <= cell side)."""
        if dist > self.cell_side:
            raise ValueError(
                f"query distance {dist} exceeds the one-cell guarantee "
                f"({self.cell_side})"
            )
        p = np.asarray(p, dtype=float)
        near = self.points_near(self.cell_of(p), 1)
        if near is None:
            return np.empty((0, self.dim))
        d2 = np.einsum("ij,ij->i", near - p, near - p)
        return near[d2 < dist * dist]


def explore_cluster(config: ExploreConfig, stream: sampling.RngStream) -> Outcome:
    """Grow the origin cluster until it dies out, reaches the boundary, or
    exceeds the size threshold.

    Children of a grain at x are a Poisson(t * 2^d * v_d) number of centers
    uniform in B_2(x), masked only by grains already processed (the queue does
    not mask).  A child u with |u| > r - 1 has a grain meeting the complement
    of B_r and stops the run immediately.
    """
    d, t, r = config.d, config.t, config.r
    threshold = math.inf if config.size_threshold is None else config.size_threshold
    mean_children = t * 2.0**d * ball_volume(d)
    boundary2 = (r - 1.0) ** 2
    grid = SpatialGrid(d)
    queue: deque = deque()
    queue.append(np.zeros(d))
    n_done = 0
    while queue:
        x = queue.popleft()
        n_children = sampling.poisson(stream, mean_children)
        if n_children:
            u = sampling.uniform_in_shifted_ball(stream, d, x, 2.0, size=n_children)
            near = grid.points_near(grid.cell_of(x), 2)
            if near is not None:
                d2 = ((u[:, None, :] - near[None, :, :]) ** 2).sum(axis=2)
                u = u[(d2 >= 4.0).all(axis=1)]
            if u.size and float(np.einsum("ij,ij->i", u, u).max()) > boundary2:
                return Outcome(BOUNDARY, n_done + 1)
            queue.extend(u)
        grid.insert(x)
        n_done += 1
        if n_done + len(queue) > threshold:
            return Outcome(THRESHOLD, n_done)
    return Outcome(FINITE, n_done)


MAX_ORACLE_POINTS = 10**7


def naive_reach_oracle(config: ExploreConfig, stream: sampling.RngStream) -> bool:
    """Brute-force estimate of the reach event via a full configuration.

    Samples every center whose grain meets B_r (uniform in B_{r+1}), links
    pairs at distance <= 2 plus a virtual origin node, and reports whether the
    origin component holds a center beyond r - 1.  Slower than the
    exploration but independent of it; pair finding and the component merge
    run in compiled code (kd-tree plus sparse connected components).
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components
    from scipy.spatial import cKDTree

    d, t, r = config.d, config.t, config.r
    expected = t * ball_volume(d) * (r + 1.0) ** d
    if expected > MAX_ORACLE_POINTS:
        raise ValueError(
            f"expected point count {expected:.3g} exceeds {MAX_ORACLE_POINTS:.0g}"
        )
    n = sampling.poisson(stream, expected)
    if n == 0:
        return False
    pts = sampling.uniform_in_shifted_ball(stream, d, np.zeros(d), r + 1.0, size=n)
    norms2 = np.einsum("ij,ij->i", pts, pts)
    far = norms2 > (r - 1.0) ** 2
    if not far.any():
        return False

    # grain pairs overlap at center distance <= 2 (ties link); node n is the
    # virtual origin grain, touching every center within distance 2 of 0
    pairs = cKDTree(pts).query_pairs(2.0, output_type="ndarray")
    origin_links = np.nonzero(norms2 <= 4.0)[0]
    rows = np.concatenate([pairs[:, 0], np.full(len(origin_links), n)])
    cols = np.concatenate([pairs[:, 1], origin_links])
    graph = coo_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(n + 1, n + 1)
    )
    _, labels = connected_components(graph, directed=False)
    return bool(np.any(far & (labels[:n] == labels[n])))

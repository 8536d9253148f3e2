"""Disk geometry: node sets, fill distance, separation radius.

Collocation centers are regular lattice points strictly inside the disk.
The two mesh-quality numbers attached to a node set are

    h_fill = sup_{x in closed disk} min_j |x - x_j|   (fill distance)
    q_sep  = (1/2) min_{i != j} |x_i - x_j|           (separation radius)

h_fill is estimated by a dense polar candidate scan (an underestimate that
tightens quadratically with the scan resolution); q_sep is exact.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree


@dataclass(frozen=True)
class DiskDomain:
    """Closed disk of given radius centered at the origin."""

    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError("radius must be positive")

    @property
    def area(self):
        return math.pi * self.radius ** 2

    @property
    def boundary_length(self):
        return 2.0 * math.pi * self.radius

    def contains(self, points, strict=True):
        """Membership mask; ``strict`` tests the open disk."""
        pts = np.asarray(points, dtype=np.float64)
        r2 = np.sum(pts * pts, axis=-1)
        bound = self.radius ** 2
        return r2 < bound if strict else r2 <= bound


def _lattice_points(radius, spacing):
    if not spacing > 0.0:
        raise ValueError("spacing must be positive")
    k_max = int(math.floor(radius / spacing))
    coords = spacing * np.arange(-k_max, k_max + 1, dtype=np.float64)
    xx, yy = np.meshgrid(coords, coords, indexing="ij")
    pts = np.column_stack([xx.ravel(), yy.ravel()])
    pts = pts[np.sum(pts * pts, axis=1) < radius ** 2]
    order = np.lexsort((pts[:, 0], pts[:, 1]))
    return np.ascontiguousarray(pts[order])


@dataclass
class NodeSet:
    """Collocation centers with their mesh-quality metrics.

    ``spacing`` is the generating lattice spacing (it doubles as the level
    label h in refinement studies); ``h_fill`` and ``q_sep`` are measured
    from the points themselves.
    """

    points: np.ndarray
    spacing: float
    h_fill: float
    q_sep: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must have shape (n, 2)")
        self.points = pts

    @property
    def count(self):
        return self.points.shape[0]

    @property
    def mesh_ratio(self):
        """Quasi-uniformity measure h_fill / q_sep."""
        return self.h_fill / self.q_sep

    def save(self, path):
        header = "spacing=%.17g h_fill=%.17g q_sep=%.17g" % (
            self.spacing, self.h_fill, self.q_sep)
        np.savetxt(path, self.points, fmt="%.17g", delimiter=",", header=header)

    @classmethod
    def load(cls, path):
        meta = {}
        with open(path) as fh:
            first = fh.readline()
        if not first.startswith("#"):
            raise ValueError("node file lacks its metric header line")
        for token in first[1:].split():
            key, _, val = token.partition("=")
            if val:
                meta[key] = float(val)
        pts = np.loadtxt(path, delimiter=",", ndmin=2)
        return cls(points=pts, spacing=meta["spacing"],
                   h_fill=meta["h_fill"], q_sep=meta["q_sep"])


def separation_radius(points):
    """Exact q_sep by a chunked all-pairs scan; needs at least 2 points."""
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    if n < 2:
        raise ValueError("separation_radius needs at least 2 points")
    best = np.inf
    chunk = max(1, int(4_000_000 // n))
    for start in range(0, n, chunk):
        blk = pts[start:start + chunk]
        d2 = ((blk[:, 0, None] - pts[None, :, 0]) ** 2
              + (blk[:, 1, None] - pts[None, :, 1]) ** 2)
        m = blk.shape[0]
        d2[np.arange(m), start + np.arange(m)] = np.inf
        best = min(best, float(d2.min()))
    return 0.5 * math.sqrt(best)


def _fill_scan(tree, radius, res, block_rows=2048):
    radii = np.linspace(0.0, radius, res)
    angles = 2.0 * math.pi * np.arange(res) / res
    cos_a, sin_a = np.cos(angles), np.sin(angles)
    worst = 0.0
    rows = max(1, min(block_rows, int(2_000_000 // res)))
    for start in range(0, res, rows):
        ca = cos_a[start:start + rows, None]
        sa = sin_a[start:start + rows, None]
        cand = np.column_stack([(ca * radii).ravel(), (sa * radii).ravel()])
        dist, _ = tree.query(cand, k=1)
        worst = max(worst, float(dist.max()))
    return worst


def fill_distance(points, domain, resolution=None):
    """Fill distance of ``points`` in the closed disk.

    The candidate grid is polar with ``resolution`` radii (the rim r = R
    included, where the largest gaps live) times ``resolution`` angles.
    ``resolution=None`` picks it adaptively: a coarse pass estimates h, then
    the grid is refined until its step is a small fraction of h.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if pts.shape[0] == 0:
        raise ValueError("fill_distance needs at least one point")
    if resolution is not None and int(resolution) < 64:
        raise ValueError("resolution must be at least 64")
    tree = cKDTree(pts)
    radius = domain.radius
    if resolution is None:
        coarse = _fill_scan(tree, radius, 512)
        resolution = max(512, int(math.ceil(16.0 * radius / max(coarse, 1e-12))))
        resolution = min(resolution, 4096)
        if resolution == 512:
            return coarse
    return _fill_scan(tree, radius, int(resolution))


def regular_disk_nodes(domain, spacing, resolution=None):
    """Lattice nodes strictly inside the disk, with measured metrics.

    Points sit at integer multiples of ``spacing`` (origin included), sorted
    by (y, x).  For such lattices q_sep = spacing / 2 exactly.
    """
    pts = _lattice_points(domain.radius, spacing)
    if pts.shape[0] == 0:
        raise ValueError(
            "spacing %g leaves no lattice point inside radius %g"
            % (spacing, domain.radius))
    # a single surviving node (very coarse spacing) has no pair distance
    q_sep = separation_radius(pts) if pts.shape[0] >= 2 else math.inf
    return NodeSet(
        points=pts,
        spacing=float(spacing),
        h_fill=fill_distance(pts, domain, resolution=resolution),
        q_sep=q_sep,
    )


def interior_eval_nodes(domain, spacing=0.0204):
    """Plain lattice point set in the open disk, for RMS error sampling."""
    return _lattice_points(domain.radius, spacing)


def boundary_eval_nodes(domain, count=1000):
    """Equispaced boundary points, for RMS boundary error sampling."""
    if count < 1:
        raise ValueError("count must be >= 1")
    angles = 2.0 * math.pi * np.arange(count) / count
    return domain.radius * np.column_stack([np.cos(angles), np.sin(angles)])

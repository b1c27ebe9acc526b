"""Exact d-dimensional primitives: lines, cylinders, balls, boxes.

Lines are stored in canonical point-direction form: a unit direction with a
fixed sign convention (first nonzero coordinate positive, so antipodal
vectors name the same direction) and an anchor orthogonal to the direction.
Under that convention two inputs describing the same geometric line produce
identical fields, which makes lines usable as dictionary keys after rounding
and keeps every downstream predicate deterministic.

All predicates are closed (<=): boundary tangency counts as a hit. Dimension
is a runtime value; anything from d=2 up to d=16 is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIM = 16

_NORM_TOL = 1e-12
_ORTHO_TOL = 1e-10
# 2x2 line-distance system is singular for parallel directions; fall back
# to a point-line distance beyond this.
PARALLEL_COS = 1.0 - 1e-12


def _as_vec(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a flat coordinate vector, got shape {v.shape}")
    if not (2 <= v.size <= MAX_DIM):
        raise ValueError(f"dimension {v.size} outside supported range [2, {MAX_DIM}]")
    if not np.all(np.isfinite(v)):
        raise ValueError("coordinates must be finite")
    return v


def canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip v so its first nonzero coordinate is positive."""
    for x in v:
        if x != 0.0:
            return -v if x < 0.0 else v
    return v


@dataclass(frozen=True, eq=False)
class Direction:
    """Unit vector modulo sign: an element of the space of line directions."""

    coords: np.ndarray

    def __post_init__(self):
        v = _as_vec(self.coords)
        if abs(float(v @ v) - 1.0) > 3.0 * _NORM_TOL:
            raise ValueError("direction is not unit length")
        for x in v:
            if x != 0.0:
                if x < 0.0:
                    raise ValueError("direction sign is not canonical")
                break
        object.__setattr__(self, "coords", v)

    @property
    def d(self) -> int:
        return self.coords.size


def direction(raw) -> Direction:
    """Normalize an arbitrary nonzero vector into a canonical Direction."""
    v = _as_vec(raw)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ValueError("zero direction vector")
    return Direction(canonical_sign(v / n))


@dataclass(frozen=True, eq=False)
class Line:
    """Bi-infinite line: canonical direction plus the anchor orthogonal to it."""

    dir: Direction
    anchor: np.ndarray

    def __post_init__(self):
        a = _as_vec(self.anchor)
        if a.size != self.dir.d:
            raise ValueError("anchor and direction dimensions differ")
        if abs(float(a @ self.dir.coords)) > _ORTHO_TOL * max(1.0, float(np.linalg.norm(a))):
            raise ValueError("anchor is not orthogonal to the direction")
        object.__setattr__(self, "anchor", a)

    @property
    def d(self) -> int:
        return self.dir.d

    def point_at(self, t: float) -> np.ndarray:
        return self.anchor + t * self.dir.coords


@dataclass(frozen=True, eq=False)
class Cylinder:
    axis: Line
    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError("cylinder radius must be positive")

    @property
    def d(self) -> int:
        return self.axis.d


@dataclass(frozen=True, eq=False)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_vec(self.center))
        if self.radius < 0.0:
            raise ValueError("ball radius must be nonnegative")

    @property
    def d(self) -> int:
        return self.center.size


@dataclass(frozen=True, eq=False)
class AxisBox:
    """Axis-aligned cube: center + [-side/2, side/2]^d."""

    center: np.ndarray
    side: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_vec(self.center))
        if not (self.side > 0.0):
            raise ValueError("box side must be positive")

    @property
    def d(self) -> int:
        return self.center.size

    @property
    def lo(self) -> np.ndarray:
        return self.center - 0.5 * self.side

    @property
    def hi(self) -> np.ndarray:
        return self.center + 0.5 * self.side


def complement_projection(dir: Direction, x) -> np.ndarray:
    """Project x onto the orthogonal complement of dir.

    Equals the matrix with entries delta_ij - l_i l_j applied to x.
    """
    v = np.asarray(x, dtype=float)
    l = dir.coords
    return v - (v @ l) * l


def canonicalize(point, dir_raw) -> Line:
    """Build the canonical Line through `point` with direction `dir_raw`.

    Raises ValueError for a zero direction. The anchor is the projection of
    the point onto dir^perp; projecting twice scrubs the O(|t| * eps) residue
    left when the point sits far along the line.
    """
    d = direction(dir_raw)
    a = complement_projection(d, point)
    a = complement_projection(d, a)
    return Line(d, a)


def line_through(p, q) -> Line:
    """Canonical line through two distinct points."""
    p = _as_vec(p)
    return canonicalize(p, _as_vec(q) - p)


def dist_point_line(x, L: Line) -> float:
    """Euclidean distance from point x to line L."""
    r = complement_projection(L.dir, np.asarray(x, dtype=float)) - L.anchor
    return float(np.linalg.norm(r))


def dist_line_line(L1: Line, L2: Line) -> float:
    """Minimal distance between two bi-infinite lines.

    Solves the 2x2 normal equations in the two line parameters; numerically
    parallel directions (|cos| > 1 - 1e-12) fall back to the distance from
    one anchor to the other line.
    """
    d1 = L1.dir.coords
    d2 = L2.dir.coords
    c = float(d1 @ d2)
    w = L2.anchor - L1.anchor
    if abs(c) > PARALLEL_COS:
        return float(np.linalg.norm(w - (w @ d1) * d1))
    p = float(w @ d1)
    q = float(w @ d2)
    denom = 1.0 - c * c
    t = (p - q * c) / denom
    s = t * c - q
    diff = w - t * d1 + s * d2
    return float(np.linalg.norm(diff))


def _line_box_interval(L: Line, box: AxisBox):
    """Parameter interval of L inside box, or None. Closed comparisons."""
    a = L.anchor
    dv = L.dir.coords
    lo = box.lo
    hi = box.hi
    tmin = -np.inf
    tmax = np.inf
    for i in range(a.size):
        di = dv[i]
        if di == 0.0:
            if a[i] < lo[i] or a[i] > hi[i]:
                return None
            continue
        t1 = (lo[i] - a[i]) / di
        t2 = (hi[i] - a[i]) / di
        if t1 > t2:
            t1, t2 = t2, t1
        if t1 > tmin:
            tmin = t1
        if t2 < tmax:
            tmax = t2
        if tmin > tmax:
            return None
    return tmin, tmax


def hits(L: Line, body) -> bool:
    """Does line L meet the body (Ball, Cylinder, or AxisBox)? Closed."""
    if isinstance(body, Ball):
        return dist_point_line(body.center, L) <= body.radius
    if isinstance(body, Cylinder):
        return dist_line_line(L, body.axis) <= body.radius
    if isinstance(body, AxisBox):
        return _line_box_interval(L, body) is not None
    raise TypeError(f"unsupported body type {type(body).__name__}")


def cylinders_intersect(c1: Cylinder, c2: Cylinder) -> bool:
    return dist_line_line(c1.axis, c2.axis) <= c1.radius + c2.radius


def orthobasis_complement(dir: Direction) -> list[np.ndarray]:
    """Deterministic orthonormal basis of dir^perp.

    Gram-Schmidt over the standard basis vectors, skipping the one most
    parallel to dir, in index order. Output Gram matrix is the identity to
    machine precision and every vector is orthogonal to dir.
    """
    l = dir.coords
    d = l.size
    skip = int(np.argmax(np.abs(l)))
    basis: list[np.ndarray] = []
    for i in range(d):
        if i == skip:
            continue
        v = np.zeros(d)
        v[i] = 1.0
        v -= (v @ l) * l
        for b in basis:
            v -= (v @ b) * b
        # second pass for numerical orthogonality
        v -= (v @ l) * l
        for b in basis:
            v -= (v @ b) * b
        v /= np.linalg.norm(v)
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# vectorized kernels shared by the sampling / graph modules
# ---------------------------------------------------------------------------


def dists_lines_to_line(dirs: np.ndarray, anchors: np.ndarray, L: Line) -> np.ndarray:
    """Distances from many lines (rows of dirs/anchors) to a single line."""
    d2 = L.dir.coords
    c = dirs @ d2
    w = L.anchor[None, :] - anchors
    p = np.einsum("ij,ij->i", w, dirs)
    q = w @ d2
    denom = 1.0 - c * c
    par = np.abs(c) > PARALLEL_COS
    denom_safe = np.where(par, 1.0, denom)
    t = (p - q * c) / denom_safe
    s = t * c - q
    diff = w - t[:, None] * dirs + s[:, None] * d2[None, :]
    dist = np.linalg.norm(diff, axis=1)
    if np.any(par):
        wp = w[par] - (p[par][:, None] * dirs[par])
        dist[par] = np.linalg.norm(wp, axis=1)
    return dist


def dists_lines_to_point(dirs: np.ndarray, anchors: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Distances from many lines to a single point."""
    w = x[None, :] - anchors
    t = np.einsum("ij,ij->i", w, dirs)
    diff = w - t[:, None] * dirs
    return np.linalg.norm(diff, axis=1)


def cross_line_dists(
    dirs_a: np.ndarray,
    anchors_a: np.ndarray,
    dirs_b: np.ndarray,
    anchors_b: np.ndarray,
) -> np.ndarray:
    """Pairwise line distances, rows of block A against rows of block B.

    Returns an (n_a, n_b) matrix. Memory is the caller's problem; chunk at the
    call site for large blocks.
    """
    c = dirs_a @ dirs_b.T
    w = anchors_b[None, :, :] - anchors_a[:, None, :]
    p = np.einsum("abj,aj->ab", w, dirs_a)
    q = np.einsum("abj,bj->ab", w, dirs_b)
    denom = 1.0 - c * c
    par = np.abs(c) > PARALLEL_COS
    denom[par] = 1.0
    t = (p - q * c) / denom
    s = t * c - q
    diff = w - t[..., None] * dirs_a[:, None, :] + s[..., None] * dirs_b[None, :, :]
    dist = np.linalg.norm(diff, axis=2)
    if np.any(par):
        ia, ib = np.nonzero(par)
        wp = w[ia, ib] - p[ia, ib][:, None] * dirs_a[ia]
        dist[ia, ib] = np.linalg.norm(wp, axis=1)
    return dist

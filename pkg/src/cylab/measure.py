"""Invariant measure of line families hitting convex bodies.

The measure on lines factorizes as (uniform directions on the sphere modulo
sign) x ((d-1)-dimensional Lebesgue measure on the offset in the orthogonal
complement of the direction).  With that normalization the family of lines
hitting a ball of radius r has total mass ``kappa(d-1) * r**(d-1)``: the
offset ranges over the projected disc, whose (d-1)-volume does not depend on
the direction, so the directional average is trivial.

Exact quantities (single ball, two balls, truncated cylinder-pair measures)
are computed by deterministic quadrature; everything else carries a Monte
Carlo standard error in a :class:`MeasureEstimate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from ._rand import as_generator
from .geometry import (
    MAX_DIM,
    Ball,
    Cylinder,
    Line,
    Direction,
    dists_lines_to_line,
)

__all__ = [
    "MeasureEstimate",
    "kappa",
    "reg_inc_beta",
    "cap_volume",
    "direction_cosine_density",
    "adaptive_simpson",
    "ball_hit_measure",
    "ball_pair_hit_measure",
    "ball_pair_measure_general",
    "two_ball_bound_constants",
    "ball_cylinder_bounds",
    "cylinder_pair_projected_area",
    "cylinder_pair_truncated_measure",
    "hit_measure_mc",
    "pair_hit_measure_mc",
]

Body = Union[Ball, Cylinder]


@dataclass(frozen=True)
class MeasureEstimate:
    """A measure value together with how it was obtained.

    ``stderr`` is zero for deterministic methods.  ``samples`` is the Monte
    Carlo sample count (zero for quadrature / exact results).
    """

    value: float
    stderr: float
    method: str
    samples: int = 0

    def __post_init__(self):
        if self.stderr < 0:
            raise ValueError("stderr must be nonnegative")
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")


# ---------------------------------------------------------------------------
# special functions


def kappa(n: int) -> float:
    """Volume of the unit ball in R^n (kappa_0 = 1)."""
    n = int(n)
    if not 0 <= n <= 2 * MAX_DIM:
        raise ValueError(f"n must be in [0, {2 * MAX_DIM}], got {n}")
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_fn(a: float, b: float) -> float:
    return math.exp(_log_beta(a, b))


def _beta_cf(a: float, b: float, x: float) -> float:
    # Continued fraction for the incomplete beta, evaluated with the modified
    # Lentz method.  Converges for x < (a+1)/(a+b+2); the caller switches to
    # the symmetric form otherwise.
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 301):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-14:
            return h
    raise RuntimeError("incomplete beta continued fraction failed to converge")


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = math.exp(
        a * math.log(x) + b * math.log1p(-x) - _log_beta(a, b)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def cap_volume(d: int, h: float) -> float:
    """Volume of a spherical cap of height h of the unit ball in R^d.

    h ranges over [0, 2]; h = 1 gives the half ball, h = 2 the full ball.
    """
    d = int(d)
    if not 1 <= d <= 2 * MAX_DIM:
        raise ValueError(f"d must be in [1, {2 * MAX_DIM}], got {d}")
    if not 0.0 <= h <= 2.0:
        raise ValueError(f"cap height must be in [0, 2], got {h}")
    if h > 1.0:
        return kappa(d) - cap_volume(d, 2.0 - h)
    x = h * (2.0 - h)  # squared radius of the cap's base sphere
    return 0.5 * kappa(d) * reg_inc_beta(x, (d + 1) / 2.0, 0.5)


def direction_cosine_density(d: int, t: float) -> float:
    """Density of one coordinate of a uniform direction on S^{d-1}.

    If l is uniform on the sphere in R^d, the first coordinate l_1 has
    density (1 - t^2)^{(d-3)/2} / B(1/2, (d-1)/2) on [-1, 1].
    """
    d = int(d)
    if d < 2:
        raise ValueError("d must be at least 2")
    if abs(t) > 1.0:
        return 0.0
    s = 1.0 - t * t
    if s <= 0.0:
        return 0.0 if d >= 4 else (math.inf if d == 2 else
                                   1.0 / beta_fn(0.5, (d - 1) / 2.0))
    return s ** ((d - 3) / 2.0) / beta_fn(0.5, (d - 1) / 2.0)


# ---------------------------------------------------------------------------
# quadrature


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    max_depth: int = 40,
) -> float:
    """Adaptive Simpson quadrature of f on [a, b].

    Deterministic: the evaluation points depend only on (f, a, b, rel_tol,
    max_depth), so repeated calls agree to the last bit.
    """
    if not b >= a:
        raise ValueError("integration bounds must satisfy a <= b")
    if b == a:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    eps = rel_tol * abs(whole) + 1e-300
    return _simpson_rec(f, a, b, fa, fm, fb, whole, eps, max_depth)


def _simpson_rec(f, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    err = left + right - whole
    if depth <= 0 or abs(err) <= 15.0 * eps:
        return left + right + err / 15.0
    return _simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) + \
        _simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)


def _adaptive_simpson_vec(
    fvec: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    max_depth: int = 40,
    n_init: int = 16,
) -> float:
    """Adaptive Simpson on a vectorized integrand (array in, array out).

    Panels are refined in batched sweeps; used where the scalar recursion
    would be too slow (sphere integrals with many evaluation points).
    """
    if b == a:
        return 0.0
    edges = np.linspace(a, b, n_init + 1)
    A = edges[:-1].copy()
    B = edges[1:].copy()
    M = 0.5 * (A + B)
    FA = fvec(A)
    FB = fvec(B)
    FM = fvec(M)
    W = (B - A) / 6.0 * (FA + 4.0 * FM + FB)
    scale = abs(float(np.sum(W))) + 1e-300
    E = rel_tol * scale * (B - A) / (b - a)
    D = np.full(A.shape, max_depth, dtype=np.int64)
    total = 0.0
    while A.size:
        M = 0.5 * (A + B)
        LM = 0.5 * (A + M)
        RM = 0.5 * (M + B)
        FLM = fvec(LM)
        FRM = fvec(RM)
        left = (M - A) / 6.0 * (FA + 4.0 * FLM + FM)
        right = (B - M) / 6.0 * (FM + 4.0 * FRM + FB)
        err = left + right - W
        done = (np.abs(err) <= 15.0 * E) | (D <= 0)
        total += float(np.sum(left[done] + right[done] + err[done] / 15.0))
        keep = ~done
        A = np.concatenate([A[keep], M[keep]])
        B = np.concatenate([M[keep], B[keep]])
        newFA = np.concatenate([FA[keep], FM[keep]])
        newFB = np.concatenate([FM[keep], FB[keep]])
        newFM = np.concatenate([FLM[keep], FRM[keep]])
        W = np.concatenate([left[keep], right[keep]])
        E = np.concatenate([0.5 * E[keep], 0.5 * E[keep]])
        D = np.concatenate([D[keep] - 1, D[keep] - 1])
        FA, FB, FM = newFA, newFB, newFM
    return total


# ---------------------------------------------------------------------------
# ball families


def ball_hit_measure(d: int, r: float) -> float:
    """Total measure of lines hitting a ball of radius r in R^d."""
    d = int(d)
    if not 2 <= d <= MAX_DIM:
        raise ValueError(f"d must be in [2, {MAX_DIM}], got {d}")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return kappa(d - 1) * r ** (d - 1)


def _lens_volume(n: int, a: float, b: float, c: float) -> float:
    """Volume of the intersection of two n-balls, radii a and b, centers c apart."""
    if c >= a + b:
        return 0.0
    if c <= abs(a - b):
        rm = min(a, b)
        return kappa(n) * rm ** n
    # plane of the intersection sphere sits at distance xa from the first center
    xa = (c * c + a * a - b * b) / (2.0 * c)
    ha = a - xa
    hb = b - (c - xa)
    return a ** n * cap_volume(n, ha / a) + b ** n * cap_volume(n, hb / b)


def ball_pair_hit_measure(d: int, r: float, rel_tol: float = 1e-9) -> MeasureEstimate:
    """Measure of lines hitting both unit balls at center distance r >= 4.

    A line with direction l hits both balls iff its offset lies in the lens
    of the two projected unit discs, whose centers project r*sqrt(1-l1^2)
    apart (l1 the cosine between l and the line of centers).  Averaging the
    lens volume over the direction marginal and substituting
    1 - l1^2 = (4/r^2) xi^2 gives a smooth one-dimensional integral:

        m(r) = kappa(d-1)/B(1/2,(d-1)/2) * (2/r)^(d-1)
               * int_0^1 2 I_{1-xi^2}(d/2, 1/2) xi^(d-2)
                         (1 - 4 xi^2 / r^2)^(-1/2) dxi.
    """
    d = int(d)
    if not 3 <= d <= MAX_DIM:
        raise ValueError(f"d must be in [3, {MAX_DIM}], got {d}")
    if r < 4.0:
        raise ValueError(f"center distance must be >= 4, got {r}")
    four_over_r2 = 4.0 / (r * r)

    def f(xi: float) -> float:
        j = reg_inc_beta(1.0 - xi * xi, d / 2.0, 0.5)
        return 2.0 * j * xi ** (d - 2) / math.sqrt(1.0 - four_over_r2 * xi * xi)

    integral = adaptive_simpson(f, 0.0, 1.0, rel_tol=rel_tol)
    value = kappa(d - 1) / beta_fn(0.5, (d - 1) / 2.0) * (2.0 / r) ** (d - 1) * integral
    return MeasureEstimate(value=value, stderr=0.0, method="quadrature")


def ball_pair_measure_general(
    d: int, a: float, b: float, s: float, rel_tol: float = 1e-9
) -> float:
    """Measure of lines hitting both of two balls (radii a, b, centers s apart).

    Direct quadrature of the projected-lens volume against the direction
    cosine marginal; valid for any s >= 0, any positive radii.
    """
    d = int(d)
    if not 3 <= d <= MAX_DIM:
        raise ValueError(f"d must be in [3, {MAX_DIM}], got {d}")
    if a <= 0 or b <= 0:
        raise ValueError("radii must be positive")
    if s < 0:
        raise ValueError("center distance must be nonnegative")
    if s == 0.0:
        return kappa(d - 1) * min(a, b) ** (d - 1)
    if s > a + b:
        l0 = math.sqrt(1.0 - ((a + b) / s) ** 2)
    else:
        l0 = 0.0

    def f(t: float) -> float:
        lens = _lens_volume(d - 1, a, b, s * math.sqrt(max(0.0, 1.0 - t * t)))
        return lens * direction_cosine_density(d, t)

    return 2.0 * adaptive_simpson(f, l0, 1.0, rel_tol=rel_tol)


def two_ball_bound_constants(d: int) -> tuple[float, float]:
    """Constants (C3, C4) in the two-ball sandwich for r >= 4:

        C3 r^-(d-1)  <=  m(r)  <=  C3 r^-(d-1) + C4 r^-(d+1).

    Derived by bounding the incomplete beta in the one-dimensional form of
    m(r) below and above by its leading power, then integrating in closed
    form; every factor reduces to beta functions.
    """
    d = int(d)
    if not 3 <= d <= MAX_DIM:
        raise ValueError(f"d must be in [3, {MAX_DIM}], got {d}")
    dden = beta_fn((d - 1) / 2.0, 0.5)
    c1 = 2.0 ** d / ((d - 1) * dden)
    c2 = 2.0 ** (d + 2) / ((d + 1) * dden)
    ratio = kappa(d - 1) / beta_fn(d / 2.0, 0.5)
    c3 = c1 * ratio * beta_fn(d / 2.0, d / 2.0)
    c4 = c2 * ratio * beta_fn(d / 2.0, d / 2.0 + 1.0)
    return c3, c4


# ---------------------------------------------------------------------------
# ball-cylinder bounds


def _tail_integral(p: int, r: float, t0: float) -> float:
    """int_t0^inf (r^2 + t^2)^(-p/2) dt, via t = r tan(phi)."""
    phi0 = math.atan2(t0, r)

    def f(phi: float) -> float:
        return math.cos(phi) ** (p - 2)

    return r ** (1 - p) * adaptive_simpson(f, phi0, math.pi / 2.0, rel_tol=1e-10)


def ball_cylinder_bounds(d: int, r: float) -> tuple[float, float]:
    """Rigorous bounds on the measure of lines hitting both a unit ball and
    an infinite unit-radius cylinder whose axis passes at distance r >= 1
    from the ball center.

    Upper bound: the cylinder is covered by balls of radius 2 spaced at unit
    steps along its axis (each unit segment of the tube fits inside one), so
    the measure is at most the sum of ball/ball terms at distances
    sqrt(r^2 + i^2), plus an analytic majorant for the truncated tail.

    Lower bound: balls of radius 1/8 centered on the axis at integer offsets
    i in {2, ..., floor(r)} sit inside the tube, and for r >= 10 the line
    families joining the unit ball to distinct such balls are disjoint
    (slope separation), so the hitting measures add.  For smaller r a single
    unit ball centered on the axis (also inside the tube) is used instead.
    """
    d = int(d)
    if not 3 <= d <= MAX_DIM:
        raise ValueError(f"d must be in [3, {MAX_DIM}], got {d}")
    if r < 1.0:
        raise ValueError(f"axis distance must be >= 1, got {r}")

    quad_tol = 1e-7
    # upper: sum over the radius-2 covering chain
    t_cut = max(16, int(math.ceil(4.0 * r)))
    upper = ball_pair_measure_general(d, 1.0, 2.0, r, rel_tol=quad_tol)
    for i in range(1, t_cut + 1):
        upper += 2.0 * ball_pair_measure_general(
            d, 1.0, 2.0, math.hypot(r, i), rel_tol=quad_tol
        )
    # tail: m(1,2,s) <= 2^(d-1) m(1,1,s/2) <= 4^(d-1) C3 s^-(d-1) + 4^d C4 s^-(d+1)
    # (valid since s >= t_cut >= 16 implies s/2 >= 4); sum bounded by integrals
    c3, c4 = two_ball_bound_constants(d)
    upper += 2.0 * (
        4.0 ** (d - 1) * c3 * _tail_integral(d - 1, r, float(t_cut))
        + 4.0 ** d * c4 * _tail_integral(d + 1, r, float(t_cut))
    )

    lower = ball_pair_measure_general(d, 1.0, 1.0, r, rel_tol=quad_tol)
    if r >= 10.0:
        fam = 0.0
        for i in range(2, int(math.floor(r)) + 1):
            fam += ball_pair_measure_general(
                d, 1.0, 0.125, math.hypot(r, i), rel_tol=quad_tol
            )
        lower = max(lower, fam)
    return lower, upper


# ---------------------------------------------------------------------------
# cylinder pairs in R^3


def _projected_axes(line1: Line, line2: Line, direction: Direction):
    if line1.d != 3 or line2.d != 3 or direction.d != 3:
        raise ValueError("cylinder pair shadows are defined in dimension 3")
    l = direction.coords
    v1 = line1.dir.coords - (line1.dir.coords @ l) * l
    v2 = line2.dir.coords - (line2.dir.coords @ l) * l
    return v1, v2


def cylinder_pair_projected_area(line1: Line, line2: Line, direction: Direction) -> float:
    """Area of the overlap of the shadows of two unit-radius cylinders.

    Projecting along ``direction`` onto its orthogonal plane, each cylinder
    casts a strip of width 2 around its projected axis; two strips crossing
    at angle theta overlap in a rhombus of area 4/sin(theta).  Returns
    ``math.inf`` when the projected axes are parallel (the strips overlap in
    an infinite strip).  Depends only on the three directions, so it is
    invariant under translating either cylinder.
    """
    v1, v2 = _projected_axes(line1, line2, direction)
    n1 = float(np.linalg.norm(v1))
    n2 = float(np.linalg.norm(v2))
    if n1 < 1e-12 or n2 < 1e-12:
        raise ValueError(
            "cylinder axis is parallel to the projection direction; the"
            " shadow is a disc and the strip formula does not apply"
        )
    cross = np.cross(v1 / n1, v2 / n2)
    sin_theta = float(np.linalg.norm(cross))
    if sin_theta < 1e-12:
        return math.inf
    return 4.0 / sin_theta


def cylinder_pair_truncated_measure(line1: Line, line2: Line, eps: float) -> float:
    """Direction-averaged shadow overlap, truncated to well-crossing shadows.

    Integrates the rhombus area 4/sin(theta(L)) over projection directions L
    uniform on the sphere, restricted to directions where the projected axes
    cross at sin(theta) >= eps.  The untruncated integral diverges
    (logarithmically in 1/eps): directions where the shadows are nearly
    parallel contribute unboundedly.

    The quadrature uses an exact reduction.  With k1, k2 the axis directions
    and l the projection direction, both projected axes are orthogonal to l,
    so their cross product is along l and equals det(k1, k2, l); hence

        sin(theta)(l) = sin(gamma) |sin(beta)| / (|v1| |v2|),

    where gamma is the angle between the axes, beta the latitude of l above
    the plane span(k1, k2), and |vi| = sqrt(1 - (ki . l)^2) the projected
    axis lengths.  For fixed longitude alpha the latitude integral becomes,
    after substituting s = sin(beta) and then w = log(s), an integral of a
    smooth bounded function over [log s*, 0], with the truncation boundary
    s*(alpha) found by bisection.  No discontinuity is ever sampled.

    Requires eps <= sin(gamma)/2, which makes the boundary equation monotone
    (the admissible set of latitudes is then a single interval).  Parallel
    axes make every pair of shadows parallel, so the truncated integral is
    zero.  Depends only on the two directions, hence translation invariant.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    if line1.d != 3 or line2.d != 3:
        raise ValueError("defined in dimension 3")
    k1 = line1.dir.coords
    k2 = line2.dir.coords
    cross12 = np.cross(k1, k2)
    sin_g = float(np.linalg.norm(cross12))
    if sin_g < 1e-12:
        return 0.0
    if eps > 0.5 * sin_g:
        raise ValueError(
            "truncation level too coarse for the axis angle: need"
            f" eps <= sin(gamma)/2 = {0.5 * sin_g:.3e}"
        )
    c12 = float(k1 @ k2)
    s12 = math.sqrt(max(0.0, 1.0 - c12 * c12))

    def inner(alpha: float) -> float:
        # u(alpha) walks the great circle through k1 and k2
        u1 = math.cos(alpha)
        u2 = c12 * math.cos(alpha) + s12 * math.sin(alpha)

        def proj_prod(s: float) -> float:
            # |v1||v2| at latitude beta with sin(beta) = s
            q = 1.0 - s * s
            return math.sqrt(
                max(0.0, (1.0 - q * u1 * u1) * (1.0 - q * u2 * u2))
            )

        # boundary: sin_g * s = eps * proj_prod(s), increasing lhs - rhs
        lo, hi = 0.0, 1.0
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if sin_g * mid - eps * proj_prod(mid) > 0.0:
                hi = mid
            else:
                lo = mid
        s_star = max(hi, 1e-300)

        def flat(w: float) -> float:
            return proj_prod(math.exp(w))

        integral = adaptive_simpson(flat, math.log(s_star), 0.0, rel_tol=1e-10)
        return 4.0 / sin_g * integral

    # integrate one full period from 16 composite panels with an irrational
    # phase shift: inner(alpha) can be periodic with period as short as pi/2
    # (symmetric axes), and a single Simpson panel spanning whole periods
    # samples only equal values and stalls the refinement
    shift = 0.6180339887498949
    edges = np.linspace(shift, shift + 2.0 * math.pi, 17)
    total = 0.0
    for aj, bj in zip(edges[:-1], edges[1:]):
        total += adaptive_simpson(inner, float(aj), float(bj), rel_tol=1e-9)
    return total / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# Monte Carlo hit measures


def _canonical_sign_rows(dirs: np.ndarray) -> np.ndarray:
    """Flip rows so the first nonzero coordinate of each is positive."""
    m, d = dirs.shape
    flip = np.zeros(m, dtype=bool)
    undecided = np.ones(m, dtype=bool)
    for j in range(d):
        col = dirs[:, j]
        flip |= undecided & (col < 0.0)
        undecided &= col == 0.0
        if not undecided.any():
            break
    out = dirs.copy()
    out[flip] *= -1.0
    return out


def _sample_window_lines(window: Ball, m: int, rng: np.random.Generator):
    """Draw m lines from the invariant measure restricted to lines hitting
    ``window``, normalized to a probability: direction uniform on the sphere
    (canonical sign), offset uniform on the projected disc of the window."""
    d = window.d
    g = rng.standard_normal((m, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    dirs = _canonical_sign_rows(g)
    h = rng.standard_normal((m, d))
    h -= (np.einsum("ij,ij->i", h, dirs))[:, None] * dirs
    h /= np.linalg.norm(h, axis=1, keepdims=True)
    radii = window.radius * rng.random(m) ** (1.0 / (d - 1))
    center = np.asarray(window.center, dtype=float)
    proj_c = center[None, :] - (dirs @ center)[:, None] * dirs
    anchors = proj_c + radii[:, None] * h
    return dirs, anchors


def _hits_all(dirs: np.ndarray, anchors: np.ndarray, bodies: Sequence[Body]) -> np.ndarray:
    mask = np.ones(dirs.shape[0], dtype=bool)
    for body in bodies:
        if isinstance(body, Ball):
            c = np.asarray(body.center, dtype=float)
            pc = c[None, :] - (dirs @ c)[:, None] * dirs
            dist = np.linalg.norm(pc - anchors, axis=1)
            mask &= dist <= body.radius
        elif isinstance(body, Cylinder):
            dist = dists_lines_to_line(dirs, anchors, body.axis)
            mask &= dist <= body.radius
        else:
            raise TypeError(f"unsupported body type {type(body).__name__}")
        if not mask.any():
            break
    return mask


def _window_mc(
    bodies: Sequence[Body],
    window: Ball,
    n: int,
    rng,
    check_containment: bool,
) -> MeasureEstimate:
    if not bodies:
        raise ValueError("bodies must be a non-empty sequence")
    if not isinstance(window, Ball):
        raise TypeError("window must be a Ball")
    d = window.d
    for body in bodies:
        if body.d != d:
            raise ValueError("all bodies must share the window's dimension")
        if check_containment and isinstance(body, Ball):
            gap = float(np.linalg.norm(
                np.asarray(body.center, float) - np.asarray(window.center, float)
            )) + body.radius - window.radius
            if gap > 1e-9:
                raise ValueError("ball body is not contained in the window")
    n = int(n)
    if n <= 0:
        raise ValueError("sample count must be positive")
    gen = as_generator(rng)
    mu_window = ball_hit_measure(d, window.radius)
    hits_count = 0
    remaining = n
    chunk = max(1, min(remaining, (1 << 22) // max(d, 1)))
    while remaining > 0:
        m = min(chunk, remaining)
        dirs, anchors = _sample_window_lines(window, m, gen)
        hits_count += int(np.count_nonzero(_hits_all(dirs, anchors, bodies)))
        remaining -= m
    frac = hits_count / n
    value = mu_window * frac
    stderr = mu_window * math.sqrt(max(frac * (1.0 - frac), 0.0) / n)
    return MeasureEstimate(value=value, stderr=stderr, method="monte_carlo", samples=n)


def hit_measure_mc(bodies: Sequence[Body], window: Ball, n: int, rng) -> MeasureEstimate:
    """Monte Carlo estimate of the measure of lines hitting every body.

    Lines are sampled uniformly from the family hitting ``window`` (total
    mass kappa(d-1) * rho^(d-1)); the hit fraction times that mass estimates
    the joint measure.  Ball bodies must be contained in the window so no
    hitting line is missed; for cylinder bodies the estimate is restricted
    to lines meeting the window, which truncates the (infinite) family.
    ``bodies == [window]`` recovers the window mass exactly with zero error.
    """
    return _window_mc(bodies, window, n, rng, check_containment=True)


def pair_hit_measure_mc(ball: Ball, other: Body, n: int, rng) -> MeasureEstimate:
    """Estimate the measure of lines hitting ``ball`` and ``other``.

    Conditional form: lines are drawn exactly from the measure restricted to
    those hitting ``ball`` (mass kappa(d-1) r^(d-1)) and the fraction also
    hitting ``other`` is scaled by that mass.  Unlike a common window, this
    needs no containment and loses no tails: the sampled lines are infinite
    and the hit predicate for the second body is exact, so the estimator is
    unbiased for any separation.
    """
    if not isinstance(ball, Ball):
        raise TypeError("first body must be a Ball")
    return _window_mc([other], ball, n, rng, check_containment=False)

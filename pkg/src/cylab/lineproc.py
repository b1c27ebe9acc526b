"""Poisson line process in a ball window, sampled reproducibly.

A sample at intensity u in a window of radius rho contains
Poisson(u * kappa(d-1) * rho^(d-1)) lines; each line has a direction uniform
on the sphere modulo sign and an offset uniform on the window's projected
disc in the direction's orthogonal complement.  All randomness flows through
counter-based streams keyed by (seed, replica), so samples are deterministic
byte for byte and independent across replicas regardless of call order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from ._rand import as_generator, philox_stream
from .geometry import MAX_DIM, Ball, Direction, Line, canonicalize
from .measure import (
    _sample_window_lines,
    ball_hit_measure,
    ball_pair_hit_measure,
    ball_pair_measure_general,
    kappa,
)

__all__ = [
    "Window",
    "LineSample",
    "sample_line_process",
    "sample_hitting_lines",
    "sample_pair_hitting_process",
    "vacancy_probability",
    "vacancy_covariance_exact",
]


@dataclass(frozen=True)
class Window:
    """Ball-shaped observation window."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        if c.ndim != 1:
            raise ValueError("window center must be a flat coordinate vector")
        if not 2 <= c.size <= MAX_DIM:
            raise ValueError(f"dimension must be in [2, {MAX_DIM}], got {c.size}")
        if not self.radius > 0:
            raise ValueError("window radius must be positive")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "center", c)

    @property
    def d(self) -> int:
        return self.center.size

    @property
    def ball(self) -> Ball:
        return Ball(self.center, self.radius)


@dataclass(frozen=True)
class LineSample:
    """A realized line process: direction/anchor arrays plus provenance.

    ``dirs[i]`` is the canonical unit direction of line i and ``anchors[i]``
    its anchor in the direction's orthogonal complement.  The generating
    (u, window, seed, replica) are carried along so downstream artifacts can
    be traced back to their stream.
    """

    dirs: np.ndarray
    anchors: np.ndarray
    u: float
    window: Window
    seed: int
    replica: int

    def __post_init__(self):
        dirs = np.asarray(self.dirs, dtype=float)
        anchors = np.asarray(self.anchors, dtype=float)
        if dirs.shape != anchors.shape or dirs.ndim != 2:
            raise ValueError("dirs and anchors must be matching (n, d) arrays")
        if dirs.shape[1] != self.window.d:
            raise ValueError("line arrays do not match the window dimension")
        dirs = dirs.copy()
        anchors = anchors.copy()
        dirs.setflags(write=False)
        anchors.setflags(write=False)
        object.__setattr__(self, "dirs", dirs)
        object.__setattr__(self, "anchors", anchors)

    @property
    def n(self) -> int:
        return self.dirs.shape[0]

    def __len__(self) -> int:
        return self.n

    def line(self, i: int) -> Line:
        return canonicalize(self.anchors[i], self.dirs[i])

    @property
    def lines(self) -> tuple[Line, ...]:
        return tuple(self.line(i) for i in range(self.n))

    def __iter__(self) -> Iterator[Line]:
        return iter(self.lines)


def sample_line_process(u: float, window: Window, seed: int, replica: int = 0) -> LineSample:
    """Draw one realization of the intensity-u Poisson line process.

    The number of lines is Poisson with mean u * kappa(d-1) * rho^(d-1) (the
    invariant mass of lines hitting the window); conditional on the count the
    lines are i.i.d. uniform on that family.  Deterministic in
    (u, window, seed, replica).
    """
    if u < 0:
        raise ValueError("intensity must be nonnegative")
    if not isinstance(window, Window):
        raise TypeError("window must be a Window")
    gen = philox_stream(seed, replica)
    mass = u * ball_hit_measure(window.d, window.radius)
    n = int(gen.poisson(mass)) if mass > 0 else 0
    dirs, anchors = _sample_window_lines(window.ball, n, gen)
    return LineSample(
        dirs=dirs, anchors=anchors, u=u, window=window, seed=seed, replica=replica
    )


def sample_hitting_lines(ball: Ball, n: int, rng) -> tuple[np.ndarray, np.ndarray]:
    """n i.i.d. lines from the invariant measure restricted to hitting ``ball``,
    normalized to a probability.  Returns (dirs, anchors) arrays."""
    if not isinstance(ball, Ball):
        raise TypeError("expected a Ball")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _sample_window_lines(ball, int(n), as_generator(rng))


@lru_cache(maxsize=4096)
def _pair_mass_cached(d: int, a: float, b: float, s: float) -> float:
    return ball_pair_measure_general(d, a, b, s, rel_tol=1e-9)


def _hits_ball(dirs: np.ndarray, anchors: np.ndarray, ball: Ball) -> np.ndarray:
    c = np.asarray(ball.center, dtype=float)
    pc = c[None, :] - (dirs @ c)[:, None] * dirs
    return np.linalg.norm(pc - anchors, axis=1) <= ball.radius


def _rejection_fill(gen, source: Ball, other: Ball, want_hit: bool, count: int):
    """Draw ``count`` lines from the measure restricted to hitting ``source``,
    conditioned on hitting (or missing) ``other``, by rejection."""
    dirs_out = []
    anch_out = []
    got = 0
    batch = max(4 * count, 64)
    while got < count:
        dirs, anchors = _sample_window_lines(source, batch, gen)
        keep = _hits_ball(dirs, anchors, other)
        if not want_hit:
            keep = ~keep
        k = int(np.count_nonzero(keep))
        if k:
            take = min(k, count - got)
            idx = np.nonzero(keep)[0][:take]
            dirs_out.append(dirs[idx])
            anch_out.append(anchors[idx])
            got += take
    d = source.center.size
    if not dirs_out:
        return np.empty((0, d)), np.empty((0, d))
    return np.concatenate(dirs_out), np.concatenate(anch_out)


def sample_pair_hitting_process(
    u: float, ball_x: Ball, ball_y: Ball, seed: int, replica: int = 0
):
    """Exact simulation of the line process restricted to lines hitting
    ``ball_x`` or ``ball_y``.

    The restricted process splits into three independent Poisson components:
    lines hitting only the first ball, only the second, and both, with
    masses u*(kx - m), u*(ky - m), u*m where m is the joint hitting measure.
    Each component is sampled by rejection from the single-ball family, so
    no window truncation is involved; events that depend only on lines
    meeting the two balls can be simulated without a large window.

    Returns (dirs, anchors, label) with label 0 = only first, 1 = only
    second, 2 = both.
    """
    if u < 0:
        raise ValueError("intensity must be nonnegative")
    d = ball_x.center.size
    if ball_y.center.size != d:
        raise ValueError("balls must share a dimension")
    s = float(np.linalg.norm(ball_y.center - ball_x.center))
    m = _pair_mass_cached(d, ball_x.radius, ball_y.radius, s)
    mass_x = ball_hit_measure(d, ball_x.radius)
    mass_y = ball_hit_measure(d, ball_y.radius)
    gen = philox_stream(seed, replica)
    n_x = int(gen.poisson(u * max(mass_x - m, 0.0)))
    n_y = int(gen.poisson(u * max(mass_y - m, 0.0)))
    n_xy = int(gen.poisson(u * m))
    dx, ax = _rejection_fill(gen, ball_x, ball_y, want_hit=False, count=n_x)
    dy, ay = _rejection_fill(gen, ball_y, ball_x, want_hit=False, count=n_y)
    db, ab = _rejection_fill(gen, ball_x, ball_y, want_hit=True, count=n_xy)
    dirs = np.concatenate([dx, dy, db])
    anchors = np.concatenate([ax, ay, ab])
    label = np.concatenate([
        np.zeros(n_x, dtype=np.int8),
        np.ones(n_y, dtype=np.int8),
        np.full(n_xy, 2, dtype=np.int8),
    ])
    return dirs, anchors, label


def vacancy_probability(u: float, d: int) -> float:
    """Probability that a fixed point is covered by no cylinder.

    A point is vacant iff no process line passes within distance 1 of it,
    i.e. no line hits the unit ball around it; that family has mass
    kappa(d-1), so the void probability is exp(-u * kappa(d-1)).
    """
    if u < 0:
        raise ValueError("intensity must be nonnegative")
    d = int(d)
    if not 2 <= d <= MAX_DIM:
        raise ValueError(f"d must be in [2, {MAX_DIM}], got {d}")
    return math.exp(-u * kappa(d - 1))


def vacancy_covariance_exact(u: float, d: int, r: float) -> float:
    """Covariance of the vacancy indicators of two points at distance r >= 4.

    Both points are vacant iff no line hits either unit ball; the union
    family has mass 2*kappa(d-1) - m(r), so

        cov = exp(-2 u kappa(d-1)) * (exp(u * m(r)) - 1),

    with m(r) the two-ball joint hitting measure.  Positive, and decaying at
    the same polynomial rate as m(r).
    """
    if u < 0:
        raise ValueError("intensity must be nonnegative")
    m = ball_pair_hit_measure(d, r).value
    return math.exp(-2.0 * u * kappa(d - 1)) * math.expm1(u * m)

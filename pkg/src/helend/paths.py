"""Integration paths in the punctured plane that avoid the disk |z| < rmin.

Routes are axis-parallel polylines; any straight piece that would dip into
the excluded disk is spliced with a circular arc at a radius that stays
inside the domain and never exceeds the endpoints' radii.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Segment:
    """Straight piece from ``start`` to ``end``, parametrized on [0, 1]."""

    start: complex
    end: complex

    def point(self, s):
        return self.start + (self.end - self.start) * s

    def velocity(self, s):
        return self.end - self.start


@dataclass(frozen=True)
class Arc:
    """Circular arc |z| = radius from angle theta0 to theta1 (directed sweep)."""

    radius: float
    theta0: float
    theta1: float

    def point(self, s):
        return self.radius * np.exp(1j * (self.theta0 + (self.theta1 - self.theta0) * s))

    def velocity(self, s):
        return 1j * (self.theta1 - self.theta0) * self.point(s)


def segment_min_radius(a: complex, b: complex) -> float:
    """Distance from the origin to the segment [a, b]."""
    v = b - a
    vv = abs(v) ** 2
    if vv == 0.0:
        return abs(a)
    t = -(a.real * v.real + a.imag * v.imag) / vv
    t = min(1.0, max(0.0, t))
    return abs(a + t * v)


def _wrap_angle(x: float) -> float:
    """Representative of x in (-pi, pi]."""
    y = math.fmod(x + math.pi, 2.0 * math.pi)
    if y <= 0.0:
        y += 2.0 * math.pi
    return y - math.pi


def split_on_disk(a: complex, b: complex, rmin: float) -> list:
    """[a, b] as path pieces, detouring on an arc when it crosses |z| < rmin.

    The detour radius is rmin + 0.5 capped by both endpoint radii, so it never
    leaves the domain and the circle always intersects the segment.
    """
    if a == b:
        return []
    if segment_min_radius(a, b) >= rmin:
        return [Segment(a, b)]
    radius = min(rmin + 0.5, abs(a), abs(b))
    v = b - a
    # |a + s v|^2 = radius^2
    A = abs(v) ** 2
    B = 2.0 * (a.real * v.real + a.imag * v.imag)
    C = abs(a) ** 2 - radius ** 2
    disc = B * B - 4.0 * A * C
    if disc <= 0.0:  # tangency: nothing to splice
        return [Segment(a, b)]
    root = math.sqrt(disc)
    s1 = max(0.0, (-B - root) / (2.0 * A))
    s2 = min(1.0, (-B + root) / (2.0 * A))
    if s2 <= s1:
        return [Segment(a, b)]
    z1 = a + s1 * v
    z2 = a + s2 * v
    th1 = cmath.phase(z1)
    sweep = _wrap_angle(cmath.phase(z2) - th1)
    if abs(abs(sweep) - math.pi) < 1e-9:
        sweep = math.pi  # segment through the center: go counterclockwise
    pieces = []
    if s1 > 0.0:
        pieces.append(Segment(a, z1))
    pieces.append(Arc(radius, th1, th1 + sweep))
    if s2 < 1.0:
        pieces.append(Segment(z2, b))
    return pieces


def plan_route(p: complex, q: complex, rmin: float) -> list:
    """Axis-parallel route from p to q staying in |z| >= rmin.

    Of the two corner choices, the one whose straight legs keep the larger
    clearance from the origin is taken (deterministic tie: horizontal first);
    legs crossing the disk are spliced with arcs.
    """
    for name, w in (("start", p), ("end", q)):
        if abs(w) < rmin * (1.0 - 1e-12):
            raise DomainError(f"path {name} point {w:g} lies inside |z| < {rmin:g}")
    if p == q:
        return []
    corner_h = complex(q.real, p.imag)  # horizontal leg first
    corner_v = complex(p.real, q.imag)  # vertical leg first

    def clearance(corner):
        return min(segment_min_radius(p, corner), segment_min_radius(corner, q))

    corner = corner_h if clearance(corner_h) >= clearance(corner_v) else corner_v
    pieces = []
    pieces.extend(split_on_disk(p, corner, rmin))
    pieces.extend(split_on_disk(corner, q, rmin))
    return pieces


def through_waypoints(points, rmin: float) -> list:
    """Straight legs through explicit waypoints, each spliced on the disk."""
    pts = list(points)
    for w in pts:
        if abs(w) < rmin * (1.0 - 1e-12):
            raise DomainError(f"waypoint {w:g} lies inside |z| < {rmin:g}")
    pieces = []
    for a, b in zip(pts, pts[1:]):
        pieces.extend(split_on_disk(a, b, rmin))
    return pieces

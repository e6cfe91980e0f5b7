"""Convex, down-closed rate regions in the (R0, R1) quadrant.

A region is stored by its upper-right boundary only: a polyline that starts
on the R1 axis, has strictly increasing R0 and non-increasing R1, and is
concave. Everything below and to the left of the polyline belongs to the
region.
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .exceptions import DomainError, EmptyInputError
from .models import RatePair

DEDUP_TOL = 1e-12
HULL_TOL = 1e-13
CONTAINMENT_TOL = 1e-9


@dataclass(frozen=True)
class RateRegion:
    """Down-closed convex region given by its boundary vertices.

    Attributes:
        boundary: Vertices, r0 strictly increasing from 0, r1 non-increasing
    """
    boundary: tuple[RatePair, ...]

    def __post_init__(self):
        if not self.boundary:
            raise EmptyInputError("region boundary must have at least one vertex")
        object.__setattr__(self, "boundary", tuple(self.boundary))
        if self.boundary[0].r0 != 0.0:
            raise DomainError("boundary[0].r0", self.boundary[0].r0, "{0}")
        for left, right in zip(self.boundary, self.boundary[1:]):
            if right.r0 <= left.r0 or right.r1 > left.r1:
                raise DomainError("boundary", (left.as_tuple(), right.as_tuple()),
                                  "r0 increasing, r1 non-increasing")

    @property
    def vertices(self) -> np.ndarray:
        """Boundary as an (k, 2) array."""
        return np.array([pt.as_tuple() for pt in self.boundary], dtype=float)

    @property
    def r0_max(self) -> float:
        return self.boundary[-1].r0

    @property
    def r1_max(self) -> float:
        return self.boundary[0].r1

    def height(self, r0):
        return height(self, r0)

    def contains(self, pt, tol: float = CONTAINMENT_TOL) -> bool:
        return contains(self, pt, tol)

    def rows(self) -> list[tuple[float, float]]:
        """(R0, R1) per boundary vertex, for CSV export."""
        return [pt.as_tuple() for pt in self.boundary]


def _as_points(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = points.astype(float, copy=False)
    else:
        arr = np.array(
            [pt.as_tuple() if isinstance(pt, RatePair) else tuple(pt) for pt in points],
            dtype=float,
        )
    if arr.size == 0:
        raise EmptyInputError("point cloud is empty")
    arr = arr.reshape(-1, 2)
    if np.any(arr < -DEDUP_TOL) or np.any(~np.isfinite(arr)):
        raise DomainError("points", "negative or non-finite rate", "[0, inf)^2")
    return np.clip(arr, 0.0, None)


def pareto_frontier(points) -> np.ndarray:
    """Non-dominated points, sorted by increasing r0 (so r1 strictly decreasing).

    Accepts RatePair iterables or an (n, 2) array; returns an (k, 2) array.
    """
    arr = _as_points(points)
    # r0 descending, ties by r1 descending
    order = np.lexsort((-arr[:, 1], -arr[:, 0]))
    arr = arr[order]
    running = np.maximum.accumulate(arr[:, 1])
    previous = np.concatenate(([-np.inf], running[:-1]))
    keep = arr[:, 1] > previous + DEDUP_TOL
    return arr[keep][::-1]


def _upper_hull(pts: np.ndarray) -> list[tuple[float, float]]:
    hull: list[tuple[float, float]] = []
    for x, y in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            cross = (ax - ox) * (y - oy) - (ay - oy) * (x - ox)
            if cross >= -HULL_TOL:
                hull.pop()
            else:
                break
        hull.append((float(x), float(y)))
    return hull


def from_point_cloud(points: Iterable[RatePair] | np.ndarray) -> RateRegion:
    """Boundary of the down-closed convex hull of a point cloud.

    Invariant under permutation and duplication of the input.

    Raises:
        EmptyInputError: If no points are given.
    """
    front = pareto_frontier(points)
    # anchor on the R1 axis
    if front[0, 0] > 0.0:
        front = np.vstack([[0.0, front[0, 1]], front])
    deduped = [front[0]]
    for pt in front[1:]:
        if pt[0] - deduped[-1][0] > DEDUP_TOL:
            deduped.append(pt)
    hull = _upper_hull(np.array(deduped))
    return RateRegion(tuple(RatePair(r0, r1) for r0, r1 in hull))


def height(region: RateRegion, r0):
    """Boundary R1 at the given R0 (0 beyond the last vertex). Vectorized."""
    v = region.vertices
    out = np.interp(r0, v[:, 0], v[:, 1], left=v[0, 1], right=0.0)
    return float(out) if np.ndim(out) == 0 else out


def contains(region: RateRegion, pt, tol: float = CONTAINMENT_TOL) -> bool:
    """True iff pt lies in the region expanded by tol in the sup norm."""
    if tol < 0:
        raise DomainError("tol", tol, "[0, inf)")
    r0, r1 = pt.as_tuple() if isinstance(pt, RatePair) else pt
    r0 = max(r0 - tol, 0.0)
    r1 = max(r1 - tol, 0.0)
    if r0 > region.r0_max:
        return False
    return r1 <= height(region, r0)


def max_vertical_gap(a: RateRegion, b: RateRegion) -> tuple[float, float]:
    """Largest height(b) - height(a) over R0, with the R0 where it occurs.

    Both boundaries are piecewise linear, so the maximum is attained on the
    merged vertex set or just right of a region's last vertex, where the
    height drops to 0.
    """
    ends = np.array([a.r0_max, b.r0_max])
    xs = np.unique(np.concatenate([
        a.vertices[:, 0],
        b.vertices[:, 0],
        np.nextafter(ends, np.inf),
    ]))
    diff = height(b, xs) - height(a, xs)
    idx = int(np.argmax(diff))
    return float(diff[idx]), float(xs[idx])


def _clip_polygon(poly: list[tuple[float, float]], a: float, b: float, c: float):
    def inside(p):
        return a * p[0] + b * p[1] <= c

    def crossing(p, q):
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        t = fp / (fp - fq)
        return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))

    out = []
    for i, cur in enumerate(poly):
        prev = poly[i - 1]
        if inside(cur):
            if not inside(prev):
                out.append(crossing(prev, cur))
            out.append(cur)
        elif inside(prev):
            out.append(crossing(prev, cur))
    return out


def intersect_halfplane(region: RateRegion, a: float, b: float, c: float) -> RateRegion:
    """Clip the region by a*r0 + b*r1 <= c (a, b >= 0, c >= 0)."""
    if a < 0 or b < 0:
        raise DomainError("(a, b)", (a, b), "nonnegative coefficients")
    if c < 0:
        raise DomainError("c", c, "[0, inf)")
    poly = [(0.0, 0.0)] + region.rows()
    if region.boundary[-1].r1 > 0.0:
        poly.append((region.r0_max, 0.0))
    clipped = _clip_polygon(poly, a, b, c)
    return from_point_cloud(np.array(clipped, dtype=float).clip(min=0.0))


def triangle(total: float) -> RateRegion:
    """{r0 + r1 <= total}."""
    if total < 0:
        raise DomainError("total", total, "[0, inf)")
    if total == 0:
        return RateRegion((RatePair(0.0, 0.0),))
    return RateRegion((RatePair(0.0, total), RatePair(total, 0.0)))

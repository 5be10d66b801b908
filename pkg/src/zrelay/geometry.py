"""Two-dimensional rate-region geometry.

A rate region here is always a closed, bounded, convex subset of the
nonnegative quadrant of the (R1, R2) plane that contains the origin.  It is
carried in two mutually consistent representations: a counterclockwise vertex
chain and a list of half-planes ``a*R1 + b*R2 <= c`` (the quadrant constraints
R1 >= 0, R2 >= 0 are implied and never listed).

The module also provides the generic machinery the closed-form regions are
checked against: a small floating-point Fourier-Motzkin eliminator for
projecting auxiliary-rate constraint systems onto the (R1, R2) plane, convex
unions over parameter sweeps, and numeric concavity checks for sampled
boundary curves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

#: slack (in bits) used for half-plane membership tests
HALF_PLANE_TOL = 1e-9
#: tolerance for declaring a constraint row redundant during projection
REDUNDANCY_TOL = 1e-9


@dataclass(frozen=True)
class Pentagon:
    """Canonical three-constraint region {R1 <= r1_max, R2 <= r2_max, R1+R2 <= sum_max}.

    Any field may be +inf to express a missing constraint; the region
    degenerates to a rectangle when ``sum_max >= r1_max + r2_max``.
    """

    r1_max: float
    r2_max: float
    sum_max: float

    def __post_init__(self) -> None:
        for name in ("r1_max", "r2_max", "sum_max"):
            value = getattr(self, name)
            if math.isnan(value) or value < 0.0:
                raise ValueError(f"{name} must be >= 0, got {value!r}")

    @property
    def is_rectangle(self) -> bool:
        return self.sum_max >= self.r1_max + self.r2_max


@dataclass(frozen=True, eq=False)
class RateRegion:
    """Convex rate region stored as half-planes plus an ordered vertex chain.

    ``halfplanes`` rows are (a, b, c) meaning a*R1 + b*R2 <= c, normalized so
    max(|a|, |b|) = 1; ``vertices`` is an (n, 2) array in counterclockwise
    order starting at the origin.
    """

    halfplanes: tuple[tuple[float, float, float], ...]
    vertices: np.ndarray

    @classmethod
    def from_vertices(cls, points: Iterable[Sequence[float]]) -> "RateRegion":
        pts = np.asarray(list(points), dtype=float)
        if pts.size == 0:
            return cls.empty()
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must be an iterable of (r1, r2) pairs")
        if np.min(pts) < -HALF_PLANE_TOL:
            raise ValueError("rate-region vertices must lie in the nonnegative quadrant")
        pts = np.clip(pts, 0.0, None)
        hull = _convex_hull(pts)
        return cls(_edges_to_halfplanes(hull), hull)

    @classmethod
    def from_halfplanes(cls, rows: Iterable[Sequence[float]]) -> "RateRegion":
        rows = [(float(a), float(b), float(c)) for a, b, c in rows]
        poly, bound = _clip_rows_bounded(rows)
        if poly.shape[0] == 0:
            return cls.empty()
        if np.max(poly) >= bound - 1.0:
            raise ValueError("half-planes do not bound a region within the quadrant")
        return cls.from_vertices(poly)

    @classmethod
    def empty(cls) -> "RateRegion":
        return cls(((1.0, 0.0, -1.0),), np.empty((0, 2)))

    @property
    def is_empty(self) -> bool:
        return self.vertices.shape[0] == 0

    @property
    def max_r1(self) -> float:
        return float(np.max(self.vertices[:, 0]))

    @property
    def max_r2(self) -> float:
        return float(np.max(self.vertices[:, 1]))

    @property
    def max_sum(self) -> float:
        return float(np.max(self.vertices.sum(axis=1)))

    def support(self, direction: Sequence[float]) -> float:
        """Maximum of d . (R1, R2) over the region."""
        d = np.asarray(direction, dtype=float)
        return float(np.max(self.vertices @ d))

    def area(self) -> float:
        return _shoelace(self.vertices)

    def contains(self, point: Sequence[float], tol: float = HALF_PLANE_TOL) -> bool:
        x, y = float(point[0]), float(point[1])
        if x < -tol or y < -tol:
            return False
        return all(a * x + b * y <= c + tol for a, b, c in self.halfplanes)

    def contains_region(self, other: "RateRegion", tol: float = HALF_PLANE_TOL) -> bool:
        return all(self.contains(v, tol) for v in other.vertices)

    def to_dict(self) -> dict:
        return {
            "halfplanes": [list(row) for row in self.halfplanes],
            "vertices": self.vertices.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "RateRegion":
        return cls(
            tuple(tuple(float(v) for v in row) for row in payload["halfplanes"]),
            np.asarray(payload["vertices"], dtype=float).reshape(-1, 2),
        )


def pentagon_to_region(pentagon: Pentagon) -> RateRegion:
    """Vertex/half-plane form of a pentagon, infinite constraints dropped."""
    if not (
        (math.isfinite(pentagon.r1_max) or math.isfinite(pentagon.sum_max))
        and (math.isfinite(pentagon.r2_max) or math.isfinite(pentagon.sum_max))
    ):
        raise ValueError(f"pentagon is unbounded: {pentagon}")
    rows = []
    if math.isfinite(pentagon.r1_max):
        rows.append((1.0, 0.0, pentagon.r1_max))
    if math.isfinite(pentagon.r2_max):
        rows.append((0.0, 1.0, pentagon.r2_max))
    if math.isfinite(pentagon.sum_max):
        rows.append((1.0, 1.0, pentagon.sum_max))
    return RateRegion.from_halfplanes(rows)


def pentagon_vertices(pentagon: Pentagon) -> np.ndarray:
    """Vertices of a pentagon without building the full region (sweep fast path)."""
    a, b, c = pentagon.r1_max, pentagon.r2_max, pentagon.sum_max
    pts = [(0.0, 0.0), (min(a, c), 0.0), (0.0, min(b, c))]
    if a + b <= c:
        pts.append((a, b))
    else:
        if c - a >= 0.0:
            pts.append((a, c - a))
        if c - b >= 0.0:
            pts.append((c - b, b))
    return np.asarray(pts)


def union_over_sweep(regions: Sequence[RateRegion]) -> RateRegion:
    """Convex hull of a union of regions from a parameter sweep."""
    if not regions:
        raise ValueError("union of an empty list of regions")
    stacked = np.vstack([r.vertices for r in regions if not r.is_empty])
    if stacked.size == 0:
        return RateRegion.empty()
    return RateRegion.from_vertices(stacked)


@dataclass(frozen=True)
class UnionHullReport:
    """Convex union of a sweep plus the area the hull added over the raw union."""

    hull: RateRegion
    hull_area: float
    union_area: float
    hull_needed: bool

    @property
    def excess_fraction(self) -> float:
        if self.hull_area == 0.0:
            return 0.0
        return (self.hull_area - self.union_area) / self.hull_area


def union_hull_report(regions: Sequence[RateRegion], tol: float = 1e-9) -> UnionHullReport:
    """Hull of the union, reporting whether the hull was actually needed.

    The raw (possibly non-convex) union area is computed with shapely; the
    hull is flagged as needed when it adds more than ``tol`` of the total
    area beyond the raw union.
    """
    from shapely.geometry import Polygon
    from shapely.ops import unary_union

    hull = union_over_sweep(regions)
    polys = [Polygon(r.vertices) for r in regions if not r.is_empty and r.vertices.shape[0] >= 3]
    union_area = unary_union(polys).area if polys else 0.0
    hull_area = hull.area()
    needed = hull_area - union_area > tol * max(hull_area, 1e-300)
    return UnionHullReport(hull, hull_area, union_area, needed)


def hausdorff_distance(first: RateRegion, second: RateRegion) -> float:
    """Exact Hausdorff distance between two convex regions.

    For convex polygons the supremum of the distance-to-the-other-set is
    attained at a vertex, so the vertex-to-polygon maximum is exact.
    """
    if first.is_empty or second.is_empty:
        raise ValueError("Hausdorff distance of an empty region")
    d1 = max(_point_to_polygon(v, second.vertices) for v in first.vertices)
    d2 = max(_point_to_polygon(v, first.vertices) for v in second.vertices)
    return max(d1, d2)


@dataclass(frozen=True)
class ConcavityReport:
    monotone_ok: bool
    concave_ok: bool
    max_violation: float


def check_boundary_concavity(
    r1: Sequence[float], r2: Sequence[float], tol: float = 1e-9
) -> ConcavityReport:
    """Check that a sampled boundary curve is nonincreasing and concave.

    ``r1`` must be strictly increasing.  Monotonicity means the first
    differences of ``r2`` stay <= tol; concavity means the slopes of
    consecutive chords are nonincreasing up to tol.  The report carries the
    largest violation found (0 when both checks pass exactly).
    """
    x = np.asarray(r1, dtype=float)
    y = np.asarray(r2, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("r1 and r2 must be 1-D samples of equal length")
    if x.size < 3:
        raise ValueError("need at least 3 boundary samples")
    dx = np.diff(x)
    if np.any(dx <= 0.0):
        raise ValueError("r1 samples must be strictly increasing (no duplicates)")
    dy = np.diff(y)
    monotone_violation = float(max(0.0, np.max(dy)))
    slopes = dy / dx
    concave_violation = float(max(0.0, np.max(np.diff(slopes)))) if slopes.size > 1 else 0.0
    return ConcavityReport(
        monotone_ok=monotone_violation <= tol,
        concave_ok=concave_violation <= tol,
        max_violation=max(monotone_violation, concave_violation),
    )


@dataclass
class LinearSystem:
    """Small system of linear inequalities sum_i a_i x_i <= c over named variables."""

    variables: list[str]
    rows: list[tuple[np.ndarray, float]] = field(default_factory=list)

    def add(self, coeffs: Mapping[str, float], bound: float) -> None:
        row = np.zeros(len(self.variables))
        for name, value in coeffs.items():
            if name not in self.variables:
                raise ValueError(f"unknown variable {name!r}")
            row[self.variables.index(name)] = float(value)
        self.rows.append((row, float(bound)))

    def add_equality(self, coeffs: Mapping[str, float], value: float) -> None:
        self.add(coeffs, value)
        self.add({k: -v for k, v in coeffs.items()}, -value)

    def add_nonnegative(self, *names: str) -> None:
        for name in names:
            self.add({name: -1.0}, 0.0)


def fourier_motzkin_project(system: LinearSystem, keep: Sequence[str]) -> RateRegion:
    """Project a linear system onto two kept variables by pairwise elimination.

    Eliminates every other variable in turn, drops redundant rows by vertex
    re-enumeration, and returns the projection intersected with the
    nonnegative quadrant.  Raises on an unbounded projection; an infeasible
    system yields the empty region.
    """
    if len(keep) != 2:
        raise ValueError("projection target must be exactly two variables")
    for name in keep:
        if name not in system.variables:
            raise ValueError(f"unknown variable {name!r}")
    rows = [(row.copy(), rhs) for row, rhs in system.rows]
    pending = {i for i, name in enumerate(system.variables) if name not in keep}
    while pending:
        index = min(pending, key=lambda j: _elimination_cost(rows, j))
        pending.remove(index)
        rows = _eliminate_variable(rows, index)
        if rows is None:
            return RateRegion.empty()
    i1 = system.variables.index(keep[0])
    i2 = system.variables.index(keep[1])
    planar = []
    for row, rhs in rows:
        a, b = row[i1], row[i2]
        scale = max(abs(a), abs(b))
        if scale <= REDUNDANCY_TOL:
            if rhs < -REDUNDANCY_TOL:
                return RateRegion.empty()
            continue
        planar.append((a / scale, b / scale, rhs / scale))
    if not _rows_bound_quadrant(planar):
        raise ValueError("projection is unbounded on the nonnegative quadrant")
    planar = _prune_redundant_rows(planar)
    region = RateRegion.from_halfplanes(planar)
    if region.is_empty:
        return region
    return region


# -- internal helpers ---------------------------------------------------------


def _elimination_cost(rows: list[tuple[np.ndarray, float]], index: int) -> int:
    """Pairwise-combination count for eliminating one variable (greedy order)."""
    pos = neg = 0
    for row, _ in rows:
        scale = float(np.max(np.abs(row)))
        if scale <= 0.0:
            continue
        coeff = row[index]
        if coeff > 1e-12 * scale:
            pos += 1
        elif coeff < -1e-12 * scale:
            neg += 1
    return pos * neg


def _eliminate_variable(
    rows: list[tuple[np.ndarray, float]], index: int
) -> list[tuple[np.ndarray, float]] | None:
    """One Fourier-Motzkin step; returns None when infeasibility is detected."""
    zero, pos, neg = [], [], []
    for row, rhs in rows:
        scale = float(np.max(np.abs(row)))
        if scale <= 0.0:
            if rhs < -REDUNDANCY_TOL:
                return None
            continue
        coeff = row[index]
        if abs(coeff) <= 1e-12 * scale:
            zero.append((row, rhs))
        elif coeff > 0.0:
            pos.append((row / coeff, rhs / coeff))
        else:
            neg.append((row / -coeff, rhs / -coeff))
    out = list(zero)
    for prow, prhs in pos:
        for nrow, nrhs in neg:
            row = prow + nrow
            row[index] = 0.0
            out.append((row, prhs + nrhs))
    return _dedup_rows(out)


def _dedup_rows(rows: list[tuple[np.ndarray, float]]) -> list[tuple[np.ndarray, float]]:
    """Normalize rows; keep only the tightest bound per direction."""
    best: dict[tuple, tuple[np.ndarray, float]] = {}
    for row, rhs in rows:
        scale = float(np.max(np.abs(row)))
        if scale <= 0.0:
            if rhs < -REDUNDANCY_TOL:
                return None
            continue
        key = tuple(np.round(row / scale, 12))
        candidate = (row / scale, rhs / scale)
        kept = best.get(key)
        if kept is None or candidate[1] < kept[1]:
            best[key] = candidate
    return list(best.values())


def _rows_bound_quadrant(rows: list[tuple[float, float, float]]) -> bool:
    """True when the rows bound both axes directions within the quadrant."""
    bound_x = any(a > REDUNDANCY_TOL and b > -REDUNDANCY_TOL for a, b, _ in rows)
    bound_y = any(b > REDUNDANCY_TOL and a > -REDUNDANCY_TOL for a, b, _ in rows)
    # a row with both coefficients positive bounds both directions at once
    return bound_x and bound_y


def _prune_redundant_rows(
    rows: list[tuple[float, float, float]]
) -> list[tuple[float, float, float]]:
    """Keep a row only if removing it changes the clipped polygon.

    Rows that are slack at every polygon vertex are dropped outright; the
    removal test then runs only on the remaining (tight) rows.
    """
    baseline = _clip_rows(list(rows))
    if baseline.shape[0] == 0:
        return list(rows)
    scale = max(1.0, float(np.max(np.abs(baseline))))
    current = []
    for a, b, c in rows:
        reach = float(np.max(baseline[:, 0] * a + baseline[:, 1] * b))
        if reach >= c - REDUNDANCY_TOL * scale:
            current.append((a, b, c))
    i = 0
    while i < len(current):
        trial = current[:i] + current[i + 1 :]
        if not _rows_bound_quadrant(trial):
            i += 1
            continue
        poly = _clip_rows(trial)
        if _polygons_match(poly, baseline):
            current = trial
        else:
            i += 1
    return current


def _polygons_match(first: np.ndarray, second: np.ndarray, tol: float = REDUNDANCY_TOL) -> bool:
    if first.shape[0] == 0 or second.shape[0] == 0:
        return first.shape[0] == second.shape[0]
    d1 = max(_point_to_polygon(v, second) for v in first)
    d2 = max(_point_to_polygon(v, first) for v in second)
    return max(d1, d2) <= tol


def _clip_rows(rows: Sequence[tuple[float, float, float]]) -> np.ndarray:
    return _clip_rows_bounded(rows)[0]


def _clip_rows_bounded(
    rows: Sequence[tuple[float, float, float]]
) -> tuple[np.ndarray, float]:
    """Intersect half-planes with the nonnegative quadrant via polygon clipping."""
    bound = 4.0
    for a, b, c in rows:
        scale = max(abs(a), abs(b))
        if scale > 0.0 and math.isfinite(c):
            bound = max(bound, 4.0 * abs(c) / scale + 4.0)
    poly = np.array([(0.0, 0.0), (bound, 0.0), (bound, bound), (0.0, bound)])
    for a, b, c in rows:
        if not math.isfinite(c):
            continue
        poly = _clip_polygon(poly, a, b, c)
        if poly.shape[0] == 0:
            return poly, bound
    return _dedup_vertices(poly), bound


def _clip_polygon(poly: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon against a*x + b*y <= c."""
    if poly.shape[0] == 0:
        return poly
    values = poly[:, 0] * a + poly[:, 1] * b - c
    tol = HALF_PLANE_TOL * max(1.0, abs(c))
    out = []
    n = poly.shape[0]
    for i in range(n):
        j = (i + 1) % n
        vi, vj = values[i], values[j]
        if vi <= tol:
            out.append(poly[i])
        if (vi <= tol) != (vj <= tol):
            t = vi / (vi - vj)
            out.append(poly[i] + t * (poly[j] - poly[i]))
    return np.asarray(out).reshape(-1, 2)


def _dedup_vertices(poly: np.ndarray) -> np.ndarray:
    if poly.shape[0] == 0:
        return poly
    scale = max(1.0, float(np.max(np.abs(poly))))
    out = []
    for p in poly:
        if not out or np.max(np.abs(p - out[-1])) > 1e-12 * scale:
            out.append(p)
    while len(out) > 1 and np.max(np.abs(out[0] - out[-1])) <= 1e-12 * scale:
        out.pop()
    return np.asarray(out).reshape(-1, 2)


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain hull, counterclockwise, starting at the min-(x+y) vertex."""
    pts = np.unique(np.round(points, 15), axis=0)
    if pts.shape[0] == 1:
        return pts
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def build(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0.0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    hull = np.asarray(lower[:-1] + upper[:-1]).reshape(-1, 2)
    if hull.shape[0] == 0:
        hull = pts[:1]
    start = int(np.lexsort((hull[:, 0], hull[:, 0] + hull[:, 1]))[0])
    return np.roll(hull, -start, axis=0)


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def _edges_to_halfplanes(hull: np.ndarray) -> tuple[tuple[float, float, float], ...]:
    """Outward half-planes of a CCW hull, skipping the implied quadrant edges."""
    n = hull.shape[0]
    if n == 1:
        x, y = hull[0]
        return ((1.0, 0.0, float(x)), (0.0, 1.0, float(y)))
    rows = []
    scale = max(1.0, float(np.max(np.abs(hull))))
    for i in range(n):
        p, q = hull[i], hull[(i + 1) % n]
        dx, dy = q[0] - p[0], q[1] - p[1]
        a, b = dy, -dx  # outward normal of a CCW edge
        norm = max(abs(a), abs(b))
        if norm <= 1e-15 * scale:
            continue
        a, b = a / norm + 0.0, b / norm + 0.0  # +0.0 folds -0.0 into 0.0
        c = a * p[0] + b * p[1]
        if a < -1e-12 or b < -1e-12:
            # edge lying on (or facing) a coordinate axis: quadrant-implied
            if abs(c) <= 1e-12 * scale:
                continue
        rows.append((float(a), float(b), float(c)))
    if n == 2:
        # both edge orientations are already emitted by the loop; add end caps
        rows.append((1.0, 0.0, float(np.max(hull[:, 0]))))
        rows.append((0.0, 1.0, float(np.max(hull[:, 1]))))
    return tuple(rows)


def _shoelace(poly: np.ndarray) -> float:
    if poly.shape[0] < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _point_to_polygon(point: np.ndarray, poly: np.ndarray) -> float:
    """Distance from a point to a convex polygon (0 when inside)."""
    if poly.shape[0] == 1:
        return float(np.hypot(*(point - poly[0])))
    n = poly.shape[0]
    inside = True
    best = math.inf
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        if n >= 3 and _cross(p, q, point) < 0.0:
            inside = False
        best = min(best, _point_to_segment(point, p, q))
    if n >= 3 and inside:
        return 0.0
    return best


def _point_to_segment(point: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    d = b - a
    denom = float(d @ d)
    if denom == 0.0:
        return float(np.hypot(*(point - a)))
    t = float((point - a) @ d) / denom
    t = min(1.0, max(0.0, t))
    return float(np.hypot(*(point - (a + t * d))))

"""Exact-coordinate point sets and geometric range capture.

Families and boundary conventions (as in the source definitions):

- bottomless:  x0 < x < x1, y < y0           (strict, dim 2)
- strips:      x0 < x < x1  or  y0 < y < y1  (strict, dim 2)
- strip-union(s): union of s strips           (strict, dim 2)
- cross-union: one horizontal plus one vertical strip (strict, dim 2)
- rectangles:  x0 <= x <= x1, y0 <= y <= y1   (closed, dim 2)
- octants:     x >= x0, y <= y0, z <= z0      (closed, dim 3)
- tfin-slabs:  x1 <= x <= x2, y <= y0, z <= z0 (closed, dim 3)
- hextants:    x >= x0, y <= y0, z <= z0, w <= w0 (closed, dim 4)

All coordinates are exact rationals. Enumeration is combinatorial over
coordinate ranks; tied coordinates are inseparable (no boundary between
them), which makes the strict/closed distinction immaterial except at ties.
Every operation returns canonically sorted, deterministic output.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import Hypergraph, VertexSet

Coord = Fraction
Point = tuple[Fraction, ...]

FAMILY_TAGS = (
    "bottomless",
    "strips",
    "strip-union",
    "cross-union",
    "rectangles",
    "octants",
    "tfin-slabs",
    "hextants",
)


def rat(x) -> Fraction:
    """Coerce ints, 'num/den' strings, and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact coordinate: {x!r}")


@dataclass(frozen=True)
class RangeFamily:
    tag: str
    s: int = 1  # strip count, used by strip-union only

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family {self.tag!r}")
        if self.tag == "strip-union" and self.s < 1:
            raise ValueError("strip-union needs s >= 1")

    @property
    def dim(self) -> int:
        if self.tag in ("octants", "tfin-slabs"):
            return 3
        if self.tag == "hextants":
            return 4
        return 2


BOTTOMLESS = RangeFamily("bottomless")
STRIPS = RangeFamily("strips")
CROSS_UNION = RangeFamily("cross-union")
RECTANGLES = RangeFamily("rectangles")
OCTANTS = RangeFamily("octants")
TFIN_SLABS = RangeFamily("tfin-slabs")
HEXTANTS = RangeFamily("hextants")


def strip_union(s: int) -> RangeFamily:
    return RangeFamily("strip-union", s)


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: tuple[Point, ...]

    @staticmethod
    def of(points: Iterable[Sequence], dim: Optional[int] = None) -> "PointSet":
        pts = tuple(tuple(rat(c) for c in p) for p in points)
        if dim is None:
            if not pts:
                raise ValueError("cannot infer dimension of an empty point set")
            dim = len(pts[0])
        if dim not in (2, 3, 4):
            raise ValueError("dimension must be 2, 3 or 4")
        for p in pts:
            if len(p) != dim:
                raise ValueError("point arity does not match dimension")
        return PointSet(dim, pts)

    def __len__(self) -> int:
        return len(self.points)


def _check_dims(p: PointSet, fam: RangeFamily) -> None:
    if p.dim != fam.dim:
        raise ValueError(f"family {fam.tag} needs dim {fam.dim}, point set has {p.dim}")


# ---------------------------------------------------------------------------
# Rank-space helpers
# ---------------------------------------------------------------------------

def _axis_values(p: PointSet, axis: int) -> list[Fraction]:
    return sorted(set(pt[axis] for pt in p.points))


def _runs(p: PointSet, axis: int):
    """All point subsets cut out by one open or closed interval on an axis:
    contiguous runs of distinct coordinate values. Yields frozensets."""
    vals = _axis_values(p, axis)
    by_val = {v: [] for v in vals}
    for i, pt in enumerate(p.points):
        by_val[pt[axis]].append(i)
    for lo in range(len(vals)):
        cur: list[int] = []
        for hi in range(lo, len(vals)):
            cur = cur + by_val[vals[hi]]
            yield frozenset(cur)


def _downsets(p: PointSet, axis: int):
    """Subsets {pt : pt[axis] <= cut} for every distinct cut value (and the
    empty set via no cut). Yields (cut_rank, frozenset); rank -1 is empty."""
    vals = _axis_values(p, axis)
    by_val = {v: [] for v in vals}
    for i, pt in enumerate(p.points):
        by_val[pt[axis]].append(i)
    cur: set[int] = set()
    yield -1, frozenset()
    for r, v in enumerate(vals):
        cur |= set(by_val[v])
        yield r, frozenset(cur)


def _strip_captures(p: PointSet) -> list[frozenset]:
    """All nonempty single-strip captures (both orientations), deduplicated."""
    found = set()
    for axis in (0, 1):
        for s in _runs(p, axis):
            if s:
                found.add(s)
    return sorted(found, key=lambda s: sorted(s))


# ---------------------------------------------------------------------------
# capture_edges
# ---------------------------------------------------------------------------

def capture_edges(
    p: PointSet,
    fam: RangeFamily,
    exact: Optional[int] = None,
    at_least: Optional[int] = None,
) -> Hypergraph:
    """Hypergraph of all distinct nonempty subsets of p capturable by one
    range of the family, optionally filtered by edge size."""
    _check_dims(p, fam)
    if exact is not None and at_least is not None:
        raise ValueError("give at most one of exact / at_least")
    n = len(p.points)
    sets: set[frozenset] = set()

    if fam.tag == "bottomless":
        downs = [s for _, s in _downsets(p, 1) if s]
        for run in _runs(p, 0):
            for d in downs:
                s = run & d
                if s:
                    sets.add(s)
    elif fam.tag == "strips":
        sets.update(_strip_captures(p))
    elif fam.tag == "strip-union":
        singles = _strip_captures(p)
        sets.update(singles)
        prev = set(map(frozenset, singles))
        for _ in range(fam.s - 1):
            nxt = set()
            for u in prev:
                for s in singles:
                    nxt.add(u | s)
            prev = nxt
            sets.update(prev)
    elif fam.tag == "cross-union":
        vert = [s for s in _runs(p, 0) if s]
        horiz = [s for s in _runs(p, 1) if s]
        sets.update(vert)
        sets.update(horiz)
        for a in vert:
            for b in horiz:
                sets.add(a | b)
    elif fam.tag == "rectangles":
        for rx in _runs(p, 0):
            for ry in _runs(p, 1):
                s = rx & ry
                if s:
                    sets.add(s)
    elif fam.tag in ("octants", "hextants"):
        ups = _upsets_x(p)
        down_axes = [list(_downsets(p, ax)) for ax in range(1, p.dim)]
        for ux in ups:
            for combo in itertools.product(*down_axes):
                s = ux
                for _, d in combo:
                    s = s & d
                    if not s:
                        break
                if s:
                    sets.add(s)
    elif fam.tag == "tfin-slabs":
        downs_y = [d for _, d in _downsets(p, 1)]
        downs_z = [d for _, d in _downsets(p, 2)]
        for run in _runs(p, 0):
            for dy in downs_y:
                s0 = run & dy
                if not s0:
                    continue
                for dz in downs_z:
                    s = s0 & dz
                    if s:
                        sets.add(s)
    else:  # pragma: no cover
        raise AssertionError(fam.tag)

    if exact is not None:
        sets = {s for s in sets if len(s) == exact}
    if at_least is not None:
        sets = {s for s in sets if len(s) >= at_least}
    return Hypergraph.from_edges(n, (tuple(sorted(s)) for s in sets))


def _upsets_x(p: PointSet) -> list[frozenset]:
    """Subsets {pt : pt[0] >= cut} for every distinct cut value."""
    vals = _axis_values(p, 0)
    by_val = {v: [] for v in vals}
    for i, pt in enumerate(p.points):
        by_val[pt[0]].append(i)
    out = []
    cur: set[int] = set(range(len(p.points)))
    for v in vals:
        out.append(frozenset(cur))
        cur -= set(by_val[v])
    return out


# ---------------------------------------------------------------------------
# capture_contains: direct membership tests, independent of capture_edges
# ---------------------------------------------------------------------------

def _contains_interval(p: PointSet, axis: int, subset: frozenset) -> bool:
    """Can one interval on `axis` cut out exactly `subset`? (rank-inseparable
    ties: a point sharing a coordinate with a member cannot be excluded)."""
    lo = min(p.points[i][axis] for i in subset)
    hi = max(p.points[i][axis] for i in subset)
    for i, pt in enumerate(p.points):
        if i in subset:
            continue
        if lo <= pt[axis] <= hi:
            return False
    return True


def _contains_bottomless(p: PointSet, subset: frozenset) -> bool:
    lo = min(p.points[i][0] for i in subset)
    hi = max(p.points[i][0] for i in subset)
    top = max(p.points[i][1] for i in subset)
    for i, pt in enumerate(p.points):
        if i in subset:
            continue
        if lo <= pt[0] <= hi and pt[1] <= top:
            return False
    return True


def _contains_rect(p: PointSet, subset: frozenset) -> bool:
    lox = min(p.points[i][0] for i in subset)
    hix = max(p.points[i][0] for i in subset)
    loy = min(p.points[i][1] for i in subset)
    hiy = max(p.points[i][1] for i in subset)
    for i, pt in enumerate(p.points):
        if i in subset:
            continue
        if lox <= pt[0] <= hix and loy <= pt[1] <= hiy:
            return False
    return True


def _contains_corner(p: PointSet, subset: frozenset) -> bool:
    """Octants / hextants: x >= x0, other axes <= cuts."""
    x0 = min(p.points[i][0] for i in subset)
    tops = [max(p.points[i][ax] for i in subset) for ax in range(1, p.dim)]
    for i, pt in enumerate(p.points):
        if i in subset:
            continue
        if pt[0] >= x0 and all(pt[ax] <= tops[ax - 1] for ax in range(1, p.dim)):
            return False
    return True


def _contains_tfin(p: PointSet, subset: frozenset) -> bool:
    lox = min(p.points[i][0] for i in subset)
    hix = max(p.points[i][0] for i in subset)
    topy = max(p.points[i][1] for i in subset)
    topz = max(p.points[i][2] for i in subset)
    for i, pt in enumerate(p.points):
        if i in subset:
            continue
        if lox <= pt[0] <= hix and pt[1] <= topy and pt[2] <= topz:
            return False
    return True


def _contains_strip_union(p: PointSet, subset: frozenset, s: int) -> bool:
    """Greedy-free exact search: try to write subset as a union of <= s
    single-strip captures whose union avoids non-members."""
    if s == 1:
        return _contains_interval(p, 0, subset) or _contains_interval(p, 1, subset)
    # candidate strips: maximal-by-inclusion runs inside subset on each axis
    cands = _subset_strip_parts(p, subset)
    # cover `subset` by at most s candidates (small instances: DFS)
    target = subset

    def dfs(remaining: frozenset, depth: int) -> bool:
        if not remaining:
            return True
        if depth == 0:
            return False
        v = min(remaining)
        for c in cands:
            if v in c:
                if dfs(remaining - c, depth - 1):
                    return True
        return False

    return dfs(target, s)


def _maximal_usable_runs(p: PointSet, subset: frozenset, axis: int) -> list[frozenset]:
    """Maximal contiguous runs of distinct `axis` values all of whose points
    are members of `subset`; each is the capture of one strip inside it."""
    vals = _axis_values(p, axis)
    member_vals = set(p.points[i][axis] for i in subset)
    usable = [
        v in member_vals
        and all((p.points[i][axis] != v) or (i in subset) for i in range(len(p.points)))
        for v in vals
    ]
    out = []
    i = 0
    while i < len(vals):
        if not usable[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(vals) and usable[j + 1]:
            j += 1
        run = frozenset(
            k for k in range(len(p.points)) if vals[i] <= p.points[k][axis] <= vals[j]
        )
        out.append(run)
        i = j + 1
    return out


def _subset_strip_parts(p: PointSet, subset: frozenset) -> list[frozenset]:
    """Single-strip captures wholly inside `subset` (candidates for union
    covers), both orientations. Maximal runs dominate smaller ones."""
    out: list[frozenset] = []
    for axis in (0, 1):
        out.extend(_maximal_usable_runs(p, subset, axis))
    return [c for c in out if c]


def capture_contains(p: PointSet, fam: RangeFamily, subset: VertexSet | Iterable[int]) -> bool:
    """True iff subset == p cap R for some range R of the family.

    The empty set is never capturable (edges are nonempty by convention).
    """
    _check_dims(p, fam)
    if isinstance(subset, VertexSet):
        sub = frozenset(subset.members)
    else:
        sub = frozenset(subset)
    if not sub:
        return False
    if any(v < 0 or v >= len(p.points) for v in sub):
        raise IndexError("subset index out of range")
    if fam.tag == "bottomless":
        return _contains_bottomless(p, sub)
    if fam.tag == "strips":
        return _contains_interval(p, 0, sub) or _contains_interval(p, 1, sub)
    if fam.tag == "strip-union":
        return _contains_strip_union(p, sub, fam.s)
    if fam.tag == "cross-union":
        return _contains_cross(p, sub)
    if fam.tag == "rectangles":
        return _contains_rect(p, sub)
    if fam.tag in ("octants", "hextants"):
        return _contains_corner(p, sub)
    if fam.tag == "tfin-slabs":
        return _contains_tfin(p, sub)
    raise AssertionError(fam.tag)  # pragma: no cover


def _contains_cross(p: PointSet, subset: frozenset) -> bool:
    """One vertical plus one horizontal strip (either may be placed empty).

    Need intervals I_x, I_y with: every member in I_x or I_y (by the right
    coordinate), every non-member in neither. It suffices to try each
    maximal usable run V on one axis (all points at its values are members)
    and cover the remainder by the other axis' span: a larger V only
    shrinks the remainder's span, so maximal runs dominate.
    """
    if _contains_interval(p, 0, subset) or _contains_interval(p, 1, subset):
        return True
    for axis in (0, 1):
        other = 1 - axis
        for v in _maximal_usable_runs(p, subset, axis):
            rest = subset - v
            if not rest:
                return True
            lo = min(p.points[i][other] for i in rest)
            hi = max(p.points[i][other] for i in rest)
            if all(
                (i in subset)
                for i, pt in enumerate(p.points)
                if lo <= pt[other] <= hi
            ):
                return True
    return False


__all__ = [
    "BOTTOMLESS",
    "CROSS_UNION",
    "HEXTANTS",
    "OCTANTS",
    "PointSet",
    "RECTANGLES",
    "RangeFamily",
    "STRIPS",
    "Strip",
    "TFIN_SLABS",
    "capture_contains",
    "capture_edges",
    "dual_strips_hypergraph",
    "rat",
    "shrink_edge",
    "strip_union",
]


# ---------------------------------------------------------------------------
# Dual strip hypergraph (vertices are strips, edges are stabbed sets)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Strip:
    axis: str  # "x" (vertical strip, bounds on x) or "y" (horizontal)
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")
        if self.lo >= self.hi:
            raise ValueError(f"degenerate strip: lo={self.lo} >= hi={self.hi}")

    def contains(self, x: Fraction, y: Fraction) -> bool:
        v = x if self.axis == "x" else y
        return self.lo < v < self.hi


def _cell_samples(bounds: list[Fraction]) -> list[Fraction]:
    """One sample per arrangement cell: midpoints of consecutive boundary
    values plus one point beyond each extreme."""
    vals = sorted(set(bounds))
    if not vals:
        return [Fraction(0)]
    out = [vals[0] - 1]
    for a, b in zip(vals, vals[1:]):
        out.append(Fraction(a + b, 2))
    out.append(vals[-1] + 1)
    # boundary values themselves never matter: strips are open
    return out


def dual_strips_hypergraph(strips: Sequence[Strip]) -> Hypergraph:
    """Vertices are the strips; edges are all distinct nonempty sets
    {strips containing q} over points q of the plane."""
    xs = _cell_samples([s.lo for s in strips if s.axis == "x"]
                       + [s.hi for s in strips if s.axis == "x"])
    ys = _cell_samples([s.lo for s in strips if s.axis == "y"]
                       + [s.hi for s in strips if s.axis == "y"])
    edges = set()
    for x in xs:
        for y in ys:
            stabbed = tuple(i for i, s in enumerate(strips) if s.contains(x, y))
            if stabbed:
                edges.add(stabbed)
    return Hypergraph.from_edges(len(strips), edges)


# ---------------------------------------------------------------------------
# shrink_edge
# ---------------------------------------------------------------------------

def shrink_edge(p: PointSet, fam: RangeFamily, e: VertexSet) -> VertexSet:
    """Remove one vertex from a captured edge so it stays captured.

    Tries coordinate-extreme vertices in a fixed order (max-y, min-x, max-x,
    min-y, then extremes of the remaining axes) and returns the first
    removal that still passes capture_contains.
    """
    members = e.members
    if len(members) < 2:
        raise ValueError("edge must have at least 2 vertices to shrink")
    if not capture_contains(p, fam, e):
        raise ValueError("edge is not capturable by the family")
    order: list[int] = []

    def extreme(axis: int, want_max: bool) -> int:
        key = lambda i: (p.points[i][axis], i)
        return (max if want_max else min)(members, key=key)

    axes_plan = [(1, True), (0, False), (0, True), (1, False)]
    for ax in range(2, p.dim):
        axes_plan.append((ax, True))
        axes_plan.append((ax, False))
    for ax, want_max in axes_plan:
        v = extreme(ax, want_max)
        if v not in order:
            order.append(v)
    for v in order:
        rest = VertexSet.of(m for m in members if m != v)
        if capture_contains(p, fam, rest):
            return rest
    raise ValueError("no removable vertex keeps the edge capturable "
                     "(family violates the shrink hypothesis here)")

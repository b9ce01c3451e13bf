"""Finite hypergraph algebra: restrictions, induced subhypergraphs, and
validity checks for polychromatic colorings and shallow hitting sets.

Edges are stored sorted and deduplicated (set semantics); empty edges are
never stored. All operations are pure functions on immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """n vertices (indices 0..n-1) plus a canonically sorted edge tuple."""

    n: int
    edges: tuple[Edge, ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        for e in edges:
            t = tuple(sorted(set(e)))
            if not t:
                continue
            if t[0] < 0 or t[-1] >= n:
                raise ValueError(f"edge {t} has a vertex outside [0, {n})")
            canon.add(t)
        return Hypergraph(n, tuple(sorted(canon)))

    def __post_init__(self):
        for e in self.edges:
            if any(v < 0 or v >= self.n for v in e):
                raise ValueError(f"edge {e} has a vertex outside [0, {self.n})")
            if list(e) != sorted(set(e)):
                raise ValueError(f"edge {e} is not sorted/deduplicated")
        if list(self.edges) != sorted(set(self.edges)):
            raise ValueError("edge list is not canonically sorted")

    @property
    def max_edge_size(self) -> int:
        return max((len(e) for e in self.edges), default=0)


@dataclass(frozen=True)
class ColorAssignment:
    """Vertex coloring with k colors, entries in [0, k)."""

    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one color")
        if any(c < 0 or c >= self.k for c in self.colors):
            raise ValueError("color out of range")


@dataclass(frozen=True)
class VertexSet:
    """Sorted duplicate-free vertex indices."""

    members: tuple[int, ...]

    @staticmethod
    def of(items: Iterable[int]) -> "VertexSet":
        return VertexSet(tuple(sorted(set(items))))

    def __post_init__(self):
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("members must be sorted and duplicate-free")

    def __contains__(self, v: int) -> bool:
        return v in set(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ViolationWitness:
    """A concrete violating edge.

    kind is one of "missing-color" (detail = the absent color),
    "zero-hit" (detail = 0), "overflow" (detail = |e cap U|).
    """

    edge: Edge
    kind: str
    detail: int

    def __post_init__(self):
        if self.kind not in ("missing-color", "zero-hit", "overflow"):
            raise ValueError(f"unknown witness kind {self.kind!r}")


CheckResult = Union[bool, ViolationWitness]


def restrict_at_least(h: Hypergraph, m: int) -> Hypergraph:
    """Keep exactly the edges of size >= m; n unchanged."""
    return Hypergraph(h.n, tuple(e for e in h.edges if len(e) >= m))


def restrict_exact(h: Hypergraph, m: int) -> Hypergraph:
    """Keep exactly the edges of size == m; n unchanged."""
    return Hypergraph(h.n, tuple(e for e in h.edges if len(e) == m))


def induced_subhypergraph(h: Hypergraph, sub: VertexSet) -> Hypergraph:
    """Induced subhypergraph on sub, reindexed by position in sub.

    Edges become { e cap sub : e in E, nonempty }, deduplicated.
    """
    if sub.members and (sub.members[0] < 0 or sub.members[-1] >= h.n):
        raise IndexError("vertex set not contained in [0, n)")
    pos = {v: i for i, v in enumerate(sub.members)}
    new_edges = set()
    for e in h.edges:
        t = tuple(sorted(pos[v] for v in e if v in pos))
        if t:
            new_edges.add(t)
    return Hypergraph(len(sub.members), tuple(sorted(new_edges)))


def is_polychromatic(h: Hypergraph, chi: ColorAssignment) -> CheckResult:
    """True iff every edge sees all k colors; else the first violating edge
    (edges are canonically ordered) with its smallest missing color."""
    if len(chi.colors) != h.n:
        raise ValueError("coloring length does not match vertex count")
    full = (1 << chi.k) - 1
    for e in h.edges:
        seen = 0
        for v in e:
            seen |= 1 << chi.colors[v]
        if seen != full:
            for c in range(chi.k):
                if not (seen >> c) & 1:
                    return ViolationWitness(e, "missing-color", c)
    return True


def is_shallow_hitting(h: Hypergraph, u: VertexSet, c: int) -> CheckResult:
    """True iff 1 <= |e cap u| <= c for every edge; else first violator."""
    if c < 1:
        raise ValueError("c must be positive")
    if u.members and (u.members[0] < 0 or u.members[-1] >= h.n):
        raise IndexError("vertex set not contained in [0, n)")
    uset = set(u.members)
    for e in h.edges:
        hits = sum(1 for v in e if v in uset)
        if hits == 0:
            return ViolationWitness(e, "zero-hit", 0)
        if hits > c:
            return ViolationWitness(e, "overflow", hits)
    return True


def is_sperner(h: Hypergraph) -> bool:
    """True iff no edge is a subset of a distinct edge."""
    sets = [frozenset(e) for e in h.edges]
    by_size = sorted(sets, key=len)
    for i, small in enumerate(by_size):
        for big in by_size[i + 1 :]:
            if len(small) < len(big) and small < big:
                return False
        # equal-size distinct sets cannot nest; strict subset needs len <
    return True


def merge_colors(chi: ColorAssignment, classes: Iterable[int]) -> ColorAssignment:
    """Merge the given color classes into one; polychromaticity is preserved.

    The merged classes map to the smallest index among them; remaining
    colors are renumbered to keep the range contiguous.
    """
    cls = sorted(set(classes))
    if not cls:
        raise ValueError("empty class set")
    if cls[0] < 0 or cls[-1] >= chi.k:
        raise ValueError("class index out of range")
    target = cls[0]
    remap = {}
    nxt = 0
    for c in range(chi.k):
        if c in cls[1:]:
            continue
        remap[c] = nxt
        nxt += 1
    for c in cls[1:]:
        remap[c] = remap[target]
    return ColorAssignment(chi.k - len(cls) + 1, tuple(remap[c] for c in chi.colors))

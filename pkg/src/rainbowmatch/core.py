"""Ground sets, hypergraphs, families, and exact brute-force oracles."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InputError

Edge = tuple[int, ...]

PARTITE = "partite"
GENERAL = "general"


@dataclass(frozen=True)
class GroundSet:
    """Vertex universe: either r sides of n ordered vertices, or one ordered n-set.

    Vertices are 0-based internally everywhere; serialized forms are 1-based.
    Partite edges are per-side index tuples of length r; general edges are
    strictly increasing r-tuples of global indices.
    """

    kind: str
    r: int
    n: int

    def __post_init__(self) -> None:
        if self.kind not in (PARTITE, GENERAL):
            raise InputError(f"unknown ground kind: {self.kind!r}")
        if self.r < 1:
            raise InputError(f"uniformity must be at least 1, got {self.r}")
        if self.n < 1:
            raise InputError(f"vertex count must be at least 1, got {self.n}")
        if self.kind == GENERAL and self.r > self.n:
            raise InputError(f"cannot form {self.r}-subsets of {self.n} vertices")

    @property
    def cell_count(self) -> int:
        """Number of edges of the complete hypergraph over this ground."""
        if self.kind == PARTITE:
            return self.n ** self.r
        return math.comb(self.n, self.r)

    def cells(self) -> Iterator[Edge]:
        """All possible edges, in lexicographic order."""
        if self.kind == PARTITE:
            yield from itertools.product(range(self.n), repeat=self.r)
        else:
            yield from itertools.combinations(range(self.n), self.r)

    def check_edge(self, edge: Sequence[int]) -> Edge:
        e = tuple(edge)
        if len(e) != self.r:
            raise InputError(f"edge {e} has {len(e)} vertices, expected {self.r}")
        if any(v < 0 or v >= self.n for v in e):
            raise InputError(f"edge {e}: vertex index out of range [0, {self.n})")
        if self.kind == GENERAL and any(e[i] >= e[i + 1] for i in range(self.r - 1)):
            raise InputError(f"edge {e} on a general ground must be strictly increasing")
        return e


def edge_vertices(ground: GroundSet, edge: Edge) -> tuple:
    """Vertex keys of an edge: (side, index) pairs if partite, bare indices else."""
    if ground.kind == PARTITE:
        return tuple(enumerate(edge))
    return edge


class Hypergraph:
    """An immutable edge set with O(1) membership and sorted iteration."""

    __slots__ = ("ground", "edges", "_edge_set")

    def __init__(self, ground: GroundSet, edges: Iterable[Sequence[int]]):
        checked = [ground.check_edge(e) for e in edges]
        edge_set = frozenset(checked)
        if len(edge_set) != len(checked):
            raise InputError("duplicate edges in hypergraph")
        self.ground = ground
        self.edges = tuple(sorted(edge_set))
        self._edge_set = edge_set

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(edge) in self._edge_set

    def __eq__(self, other) -> bool:
        return (isinstance(other, Hypergraph)
                and self.ground == other.ground and self._edge_set == other._edge_set)

    def __hash__(self) -> int:
        return hash((self.ground, self._edge_set))

    def __repr__(self) -> str:
        return f"Hypergraph({self.ground.kind}, r={self.ground.r}, n={self.ground.n}, {len(self)} edges)"

    def degree(self, v: int, side: int | None = None) -> int:
        """Number of edges containing vertex v (on the given side if partite)."""
        g = self.ground
        if v < 0 or v >= g.n:
            raise InputError(f"vertex index {v} out of range [0, {g.n})")
        if g.kind == PARTITE:
            if side is None:
                raise InputError("partite degree queries need a side")
            if side < 0 or side >= g.r:
                raise InputError(f"side {side} out of range [0, {g.r})")
            return sum(1 for e in self.edges if e[side] == v)
        if side is not None:
            raise InputError("general degree queries take no side")
        return sum(1 for e in self.edges if v in e)


class Family:
    """An ordered sequence of hypergraphs over one shared ground set."""

    __slots__ = ("ground", "members")

    def __init__(self, members: Sequence[Hypergraph]):
        members = tuple(members)
        if not members:
            raise InputError("a family needs at least one member")
        ground = members[0].ground
        if any(m.ground != ground for m in members):
            raise InputError("family members must share one ground set")
        self.ground = ground
        self.members = members

    @property
    def k(self) -> int:
        return len(self.members)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Hypergraph]:
        return iter(self.members)

    def __getitem__(self, i: int) -> Hypergraph:
        return self.members[i]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Family)
                and self.ground == other.ground and self.members == other.members)

    def __hash__(self) -> int:
        return hash((self.ground, self.members))

    def __repr__(self) -> str:
        return f"Family(k={self.k}, sizes={self.sizes()})"


@dataclass(frozen=True)
class RainbowMatching:
    """One edge per family member, pairwise vertex-disjoint."""

    choices: tuple[Edge, ...]

    def is_valid_for(self, family: Family) -> bool:
        if len(self.choices) != family.k:
            return False
        if any(self.choices[i] not in family[i] for i in range(family.k)):
            return False
        return is_matching(family.ground, self.choices)


def degree(h: Hypergraph, v: int, side: int | None = None) -> int:
    """Number of edges of h containing v (on the given side for partite grounds)."""
    return h.degree(v, side)


def is_matching(ground: GroundSet, edges: Iterable[Sequence[int]]) -> bool:
    """True iff the edges are pairwise vertex-disjoint (per side when partite)."""
    seen: set = set()
    for e in edges:
        for key in edge_vertices(ground, ground.check_edge(e)):
            if key in seen:
                return False
            seen.add(key)
    return True


def nu_exact(h: Hypergraph) -> int:
    """Exact matching number, by branch and bound.

    Branches on the least-index uncovered vertex (side 0 for partite grounds):
    either it stays unmatched, or one of its free incident edges is taken.
    Bounds by the remaining-vertex quota.
    """
    g = h.ground
    if not h.edges:
        return 0
    best = 0
    if g.kind == PARTITE:
        by_first: list[list[Edge]] = [[] for _ in range(g.n)]
        for e in h.edges:
            by_first[e[0]].append(e)
        covered = [[False] * g.n for _ in range(g.r)]

        def rec_p(i: int, size: int) -> None:
            nonlocal best
            if size > best:
                best = size
            if i == g.n or size + (g.n - i) <= best:
                return
            for e in by_first[i]:
                if all(not covered[s][e[s]] for s in range(1, g.r)):
                    for s in range(1, g.r):
                        covered[s][e[s]] = True
                    rec_p(i + 1, size + 1)
                    for s in range(1, g.r):
                        covered[s][e[s]] = False
            rec_p(i + 1, size)

        rec_p(0, 0)
        return best

    by_min: list[list[Edge]] = [[] for _ in range(g.n)]
    for e in h.edges:
        by_min[e[0]].append(e)
    covered_g = [False] * g.n

    def rec_g(v: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while v < g.n and covered_g[v]:
            v += 1
        if v == g.n or size + (g.n - v) // g.r <= best:
            return
        for e in by_min[v]:
            if all(not covered_g[u] for u in e):
                for u in e:
                    covered_g[u] = True
                rec_g(v + 1, size + 1)
                for u in e:
                    covered_g[u] = False
        covered_g[v] = True  # v stays unmatched on this branch
        rec_g(v + 1, size)
        covered_g[v] = False

    rec_g(0, 0)
    return best


def rainbow_exact(family: Family) -> RainbowMatching | None:
    """A rainbow matching if one exists, else None.

    Exhaustive backtracking; members are processed in ascending size order
    (fail-first) with edges in lexicographic order, so the result is
    deterministic. Choices are reported in the original member order.
    """
    g = family.ground
    order = sorted(range(family.k), key=lambda i: (len(family[i]), i))
    choices: list[Edge | None] = [None] * family.k
    used: set = set()

    def rec(pos: int) -> bool:
        if pos == family.k:
            return True
        idx = order[pos]
        for e in family[idx].edges:
            keys = edge_vertices(g, e)
            if any(key in used for key in keys):
                continue
            used.update(keys)
            choices[idx] = e
            if rec(pos + 1):
                return True
            used.difference_update(keys)
            choices[idx] = None
        return False

    if not rec(0):
        return None
    return RainbowMatching(tuple(choices))  # type: ignore[arg-type]


def pm_decomposition(n: int, r: int) -> list[tuple[Edge, ...]]:
    """Decompose the complete n-balanced r-partite hypergraph into n^(r-1) perfect matchings.

    The matching for offsets (c_2, ..., c_r) holds the edges
    (i, i+c_2 mod n, ..., i+c_r mod n); the matchings are pairwise disjoint
    and their union is the whole cell universe.
    """
    if n < 1 or r < 1:
        raise InputError("pm_decomposition needs n >= 1 and r >= 1")
    out = []
    for offsets in itertools.product(range(n), repeat=r - 1):
        out.append(tuple((i, *(((i + c) % n) for c in offsets)) for i in range(n)))
    return out

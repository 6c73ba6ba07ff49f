"""Binary relations viewed as digraphs.

Vertices may be any hashable value. Iteration order is always the
*canonical* order given by :func:`canonical_key`, so cycles and linear
extensions are reproducible run to run.
"""

from __future__ import annotations

import heapq
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Generic, TypeVar

from .errors import CyclicInput

V = TypeVar("V", bound=Hashable)


def canonical_key(v: Any) -> Any:
    """Sort key for a vertex: its ``sort_key`` attribute when it has one."""
    return getattr(v, "sort_key", v)


def _sorted(vs: Iterable[V]) -> list[V]:
    return sorted(vs, key=canonical_key)


@dataclass(frozen=True)
class Relation(Generic[V]):
    vertices: frozenset
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))
        for a, b in self.edges:
            if a not in self.vertices or b not in self.vertices:
                raise ValueError(f"edge ({a!r}, {b!r}) has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[V, V]], vertices: Iterable[V] = ()) -> Relation[V]:
        edges = frozenset(edges)
        vs = set(vertices)
        for a, b in edges:
            vs.add(a)
            vs.add(b)
        return cls(frozenset(vs), edges)

    def successors(self) -> dict[V, list[V]]:
        """Adjacency lists, every list in canonical order."""
        adj: dict[V, list[V]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
        for v in adj:
            adj[v].sort(key=canonical_key)
        return adj

    def is_irreflexive(self) -> bool:
        return all(a != b for a, b in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, pair) -> bool:
        return pair in self.edges


@dataclass(frozen=True)
class LinearOrder(Generic[V]):
    """A strict total order, stored as a ranking with the best element first."""

    ranking: tuple

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if len(set(self.ranking)) != len(self.ranking):
            raise ValueError("ranking repeats a vertex")

    @cached_property
    def positions(self) -> dict[V, int]:
        return {v: i for i, v in enumerate(self.ranking)}

    def prefers(self, a: V, b: V) -> bool:
        """True when ``a`` is ranked strictly above ``b``."""
        pos = self.positions
        return pos[a] < pos[b]

    def contains(self, r: Relation[V]) -> bool:
        """Whether every edge of ``r`` is respected by this order."""
        pos = self.positions
        try:
            return all(pos[a] < pos[b] for a, b in r.edges)
        except KeyError:
            return False

    def as_relation(self) -> Relation[V]:
        pairs = (
            (a, b)
            for i, a in enumerate(self.ranking)
            for b in self.ranking[i + 1:]
        )
        return Relation.from_edges(pairs, self.ranking)

    def __len__(self) -> int:
        return len(self.ranking)

    def __iter__(self):
        return iter(self.ranking)


def find_cycle(r: Relation[V]) -> list[V] | None:
    """Return a directed cycle ``[v0, ..., v0]`` or None if ``r`` is acyclic.

    Iterative three-colour DFS; roots and successors are visited in
    canonical order. Self-loops are reported as ``[v, v]``.
    """
    adj = r.successors()
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in adj}
    for root in _sorted(adj):
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        path = [root]
        stack = [iter(adj[root])]
        while stack:
            for nxt in stack[-1]:
                if colour[nxt] == GREY:
                    start = path.index(nxt)
                    return path[start:] + [nxt]
                if colour[nxt] == WHITE:
                    colour[nxt] = GREY
                    path.append(nxt)
                    stack.append(iter(adj[nxt]))
                    break
            else:
                colour[path.pop()] = BLACK
                stack.pop()
    return None


def linear_extension(r: Relation[V]) -> LinearOrder[V]:
    """Extend an acyclic relation to a linear order containing it.

    Kahn's algorithm with a min-heap on the canonical key: whenever several
    vertices are available, the canonically smallest goes first.

    Raises:
        CyclicInput: if ``r`` has a cycle (carried on the exception).
    """
    indeg = {v: 0 for v in r.vertices}
    adj = r.successors()
    for _, b in r.edges:
        indeg[b] += 1
    # index breaks heap ties without comparing vertices themselves
    order = {v: i for i, v in enumerate(_sorted(r.vertices))}
    heap = [(order[v], v) for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    ranking = []
    while heap:
        _, v = heapq.heappop(heap)
        ranking.append(v)
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, (order[w], w))
    if len(ranking) != len(indeg):
        raise CyclicInput(find_cycle(r))
    return LinearOrder(tuple(ranking))


def transitive_closure(r: Relation[V]) -> Relation[V]:
    """Smallest transitive superset of ``r`` (reachability by at least one edge)."""
    adj = r.successors()
    closure = set()
    for src in adj:
        seen = set()
        todo = list(adj[src])
        while todo:
            v = todo.pop()
            if v in seen:
                continue
            seen.add(v)
            todo.extend(adj[v])
        closure.update((src, v) for v in seen)
    return Relation(r.vertices, frozenset(closure))

"""Monotone privacy preferences over pairs (x, B), B a relation on X.

Every choice problem has a monotone rationalization. The construction
puts "rationalizing" edges ``(c(A), A_c(A)) -> (y, A_y)`` and "monotone"
edges ``(x, B) -> (x, B')`` for ``B`` a proper subset of ``B'`` into one
graph, shows it is acyclic, and linearly extends it.

Only vertices that some observation actually references are materialized;
the full space has ``|X| * 2**(|X|**2)`` points. The induced subgraph is
still acyclic and its extension decides every comparison the data can
exercise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .core import Alternative, ChoiceProblem, revealed_by
from .errors import InternalInvariantViolation
from .orders import LinearOrder, Relation, find_cycle, linear_extension


class EdgeKind(str, enum.Enum):
    MONOTONE = "monotone"
    SEPARABLE = "separable"
    RATIONALIZING = "rationalizing"


def format_pair(a: str, b: str) -> str:
    return f"{a}>{b}"


@dataclass(frozen=True)
class PrivacyVertex:
    """A chosen alternative together with what the observer infers from it."""

    alt: Alternative
    revealed: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "revealed", frozenset(self.revealed))

    @cached_property
    def sort_key(self) -> tuple:
        return (self.alt, tuple(sorted(self.revealed)))

    def to_dict(self) -> dict:
        return {
            "alt": self.alt,
            "revealed_pairs": [format_pair(a, b) for a, b in sorted(self.revealed)],
        }

    def __str__(self) -> str:
        return "(" + self.alt + ",{" + ",".join(format_pair(a, b) for a, b in sorted(self.revealed)) + "})"


def referenced_vertices(p: ChoiceProblem) -> set[PrivacyVertex]:
    return {PrivacyVertex(x, revealed_by(o.menu, x)) for o in p.observations for x in o.menu}


@dataclass(frozen=True)
class RationalizationGraph:
    graph: Relation
    edge_tags: dict = field(hash=False)

    def edges_of(self, kind: EdgeKind) -> set[tuple]:
        return {e for e, k in self.edge_tags.items() if k is kind}


def build_monotone_graph(p: ChoiceProblem) -> RationalizationGraph:
    vertices = referenced_vertices(p)
    tags: dict[tuple[PrivacyVertex, PrivacyVertex], EdgeKind] = {}
    for o in p.observations:
        top = PrivacyVertex(o.choice, revealed_by(o.menu, o.choice))
        for y in o.rejected:
            tags[(top, PrivacyVertex(y, revealed_by(o.menu, y)))] = EdgeKind.RATIONALIZING
    by_alt: dict[Alternative, list[PrivacyVertex]] = {}
    for v in vertices:
        by_alt.setdefault(v.alt, []).append(v)
    for group in by_alt.values():
        for v in group:
            for w in group:
                if v.revealed < w.revealed:
                    tags[(v, w)] = EdgeKind.MONOTONE
    return RationalizationGraph(Relation(frozenset(vertices), frozenset(tags)), tags)


@dataclass(frozen=True)
class MonotoneWitness:
    """A ranking of the referenced (x, B) vertices, best first."""

    order: LinearOrder

    def to_list(self) -> list[dict]:
        return [dict(v.to_dict(), rank=i) for i, v in enumerate(self.order.ranking)]


def rationalize_monotone(p: ChoiceProblem) -> MonotoneWitness:
    g = build_monotone_graph(p)
    cycle = find_cycle(g.graph)
    if cycle is not None:
        raise InternalInvariantViolation(
            "monotone rationalization graph is cyclic: " + " -> ".join(map(str, cycle))
        )
    return MonotoneWitness(linear_extension(g.graph))


def verify_monotone_witness(p: ChoiceProblem, w: MonotoneWitness) -> bool:
    """Check a ranking against the data directly, without rebuilding the graph.

    (a) each observed choice, with what it reveals, outranks every rejected
    alternative with what that would have revealed; (b) among referenced
    vertices, revealing strictly less with the same alternative ranks higher.
    """
    pos = w.order.positions
    try:
        for o in p.observations:
            top = pos[PrivacyVertex(o.choice, revealed_by(o.menu, o.choice))]
            for y in o.menu - {o.choice}:
                if not top < pos[PrivacyVertex(y, revealed_by(o.menu, y))]:
                    return False
        refs = referenced_vertices(p)
        for v in refs:
            for u in refs:
                if v.alt == u.alt and v.revealed < u.revealed and not pos[v] < pos[u]:
                    return False
    except KeyError:
        return False
    return True


def parse_pair(text: str) -> tuple[str, str]:
    a, sep, b = text.partition(">")
    if not sep or not a or not b or ">" in b:
        raise ValueError(f"malformed pair {text!r}; expected 'a>b'")
    return a, b


def monotone_witness_from_list(items: list[dict]) -> MonotoneWitness:
    """Inverse of :meth:`MonotoneWitness.to_list`."""
    ordered = sorted(items, key=lambda d: d["rank"])
    ranking = [
        PrivacyVertex(d["alt"], frozenset(parse_pair(s) for s in d["revealed_pairs"]))
        for d in ordered
    ]
    return MonotoneWitness(LinearOrder(tuple(ranking)))

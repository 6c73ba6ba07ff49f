"""Level-k privacy preferences.

A level-0 object is an alternative. A level-k object is an alternative
paired with a set of ordered pairs of level-(k-1) objects: what a
level-(k-1) observer would infer. ``t_level(k, A, x)`` is the set of
level-k comparisons inferred when ``x`` is chosen from ``A``.

Given any target order over X, :func:`rationalize_levelk` builds a
monotone, separable level-k preference that rationalizes the data and
projects onto the target. ``k=1`` is the separable case over (x, B) with
B a relation on X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .core import Alternative, ChoiceProblem, check_alternative_id
from .errors import InternalInvariantViolation, LevelCapExceeded, ParseError
from .monotone import EdgeKind
from .orders import LinearOrder, Relation, find_cycle, linear_extension

DEFAULT_LEVEL_CAP = 3


@dataclass(frozen=True)
class LevelKVertex:
    level: int
    alt: Alternative
    revealed: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "revealed", frozenset(self.revealed))
        if self.level < 0:
            raise ValueError("level must be non-negative")
        if self.level == 0 and self.revealed:
            raise ValueError("level-0 vertices carry no revealed set")
        for a, b in self.revealed:
            if a.level != self.level - 1 or b.level != self.level - 1:
                raise ValueError(f"members of a level-{self.level} revealed set must have level {self.level - 1}")

    @cached_property
    def sort_key(self) -> tuple:
        return (self.alt, tuple(sorted((a.sort_key, b.sort_key) for a, b in self.revealed)))

    @cached_property
    def sorted_revealed(self) -> list[tuple[LevelKVertex, LevelKVertex]]:
        return sorted(self.revealed, key=lambda ab: (ab[0].sort_key, ab[1].sort_key))

    @cached_property
    def term(self) -> str:
        """Canonical string: ``x`` at level 0, ``(x,{s>t,...})`` above."""
        if self.level == 0:
            return self.alt
        inner = ",".join(f"{a.term}>{b.term}" for a, b in self.sorted_revealed)
        return f"({self.alt},{{{inner}}})"

    def __str__(self) -> str:
        return self.term


def leaf(x: Alternative) -> LevelKVertex:
    return LevelKVertex(0, x)


def _check_cap(k: int, cap: int) -> None:
    if k < 0:
        raise ValueError("level must be non-negative")
    if k > cap:
        raise LevelCapExceeded(k, cap)


@lru_cache(maxsize=65536)
def _t_level(k: int, menu: frozenset, x: Alternative) -> frozenset:
    if k == 0:
        return frozenset((leaf(x), leaf(y)) for y in menu if y != x)
    top = LevelKVertex(k, x, _t_level(k - 1, menu, x))
    return frozenset((top, LevelKVertex(k, y, _t_level(k - 1, menu, y))) for y in menu if y != x)


def t_level(k: int, menu, x: Alternative, cap: int = DEFAULT_LEVEL_CAP) -> frozenset:
    """Level-k comparisons revealed by choosing ``x`` from ``menu``.

    Returns a frozenset of ``(LevelKVertex, LevelKVertex)`` pairs, both at
    level ``k``; it always has ``len(menu) - 1`` elements.
    """
    _check_cap(k, cap)
    menu = frozenset(menu)
    if x not in menu:
        raise ValueError(f"{x!r} is not in the menu")
    return _t_level(k, menu, x)


def vertex_for(k: int, menu: frozenset, x: Alternative) -> LevelKVertex:
    """The level-k object ``(x, T^{k-1}(menu, x))`` for k >= 1."""
    return LevelKVertex(k, x, _t_level(k - 1, menu, x))


@dataclass(frozen=True)
class TargetOrder:
    """A conjectured linear order over X; ``ranking`` is best first."""

    ranking: tuple[Alternative, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if len(set(self.ranking)) != len(self.ranking):
            raise ValueError("target order repeats an alternative")

    @classmethod
    def parse(cls, text: str) -> TargetOrder:
        """Parse ``"a>b>c"`` (best first)."""
        ids = [s.strip() for s in text.split(">")]
        for a in ids:
            check_alternative_id(a, "target order")
        return cls(tuple(ids))

    @classmethod
    def lexicographic(cls, p: ChoiceProblem) -> TargetOrder:
        return cls(tuple(p.alternatives))

    @cached_property
    def positions(self) -> dict[Alternative, int]:
        return {a: i for i, a in enumerate(self.ranking)}

    def prefers(self, a: Alternative, b: Alternative) -> bool:
        return self.positions[a] < self.positions[b]

    def check_total(self, p: ChoiceProblem) -> None:
        if set(self.ranking) != set(p.alternatives):
            missing = sorted(set(p.alternatives) - set(self.ranking))
            extra = sorted(set(self.ranking) - set(p.alternatives))
            raise ValueError(f"target order must rank exactly the alternatives (missing {missing}, unknown {extra})")

    def __str__(self) -> str:
        return ">".join(self.ranking)


@dataclass(frozen=True)
class LevelKGraph:
    k: int
    graph: Relation
    edge_tags: dict = field(hash=False)

    def edges_of(self, kind: EdgeKind) -> set[tuple]:
        return {e for e, t in self.edge_tags.items() if t is kind}


def referenced_vertices(p: ChoiceProblem, k: int) -> set[LevelKVertex]:
    return {vertex_for(k, o.menu, x) for o in p.observations for x in o.menu}


def build_levelk_graph(
    p: ChoiceProblem, k: int, target: TargetOrder, cap: int = DEFAULT_LEVEL_CAP
) -> LevelKGraph:
    if k < 1:
        raise ValueError("k must be at least 1")
    _check_cap(k, cap)
    target.check_total(p)
    vertices = referenced_vertices(p, k)
    tags: dict[tuple[LevelKVertex, LevelKVertex], EdgeKind] = {}

    for o in p.observations:
        top = vertex_for(k, o.menu, o.choice)
        for y in o.rejected:
            tags[(top, vertex_for(k, o.menu, y))] = EdgeKind.RATIONALIZING

    by_alt: dict[Alternative, list[LevelKVertex]] = {}
    by_set: dict[frozenset, list[LevelKVertex]] = {}
    for v in vertices:
        by_alt.setdefault(v.alt, []).append(v)
        by_set.setdefault(v.revealed, []).append(v)
    for group in by_alt.values():
        for v in group:
            for w in group:
                if v.revealed < w.revealed:
                    tags[(v, w)] = EdgeKind.MONOTONE
    # full tournament inside each class of vertices sharing a revealed set
    for group in by_set.values():
        for v in group:
            for w in group:
                if v.alt != w.alt and target.prefers(v.alt, w.alt):
                    tags.setdefault((v, w), EdgeKind.SEPARABLE)

    return LevelKGraph(k, Relation(frozenset(vertices), frozenset(tags)), tags)


@dataclass(frozen=True)
class LevelKWitness:
    k: int
    target: TargetOrder
    order: LinearOrder

    def to_list(self) -> list[dict]:
        return [{"term": v.term, "rank": i} for i, v in enumerate(self.order.ranking)]


def rationalize_levelk(
    p: ChoiceProblem, k: int, target: TargetOrder, cap: int = DEFAULT_LEVEL_CAP
) -> LevelKWitness:
    g = build_levelk_graph(p, k, target, cap)
    cycle = find_cycle(g.graph)
    if cycle is not None:
        raise InternalInvariantViolation(
            f"level-{k} rationalization graph is cyclic: " + " -> ".join(map(str, cycle))
        )
    return LevelKWitness(k, target, linear_extension(g.graph))


def verify_levelk_witness(
    p: ChoiceProblem, k: int, target: TargetOrder, w: LevelKWitness
) -> bool:
    """Check rationalizing, monotone and separable constraints among referenced vertices."""
    if w.k != k:
        return False
    pos = w.order.positions
    refs = referenced_vertices(p, k)
    if not refs <= pos.keys():
        return False
    for o in p.observations:
        top = pos[vertex_for(k, o.menu, o.choice)]
        for y in o.menu - {o.choice}:
            if not top < pos[vertex_for(k, o.menu, y)]:
                return False
    for v in refs:
        for u in refs:
            if v.alt == u.alt and v.revealed < u.revealed and not pos[v] < pos[u]:
                return False
            if v.revealed == u.revealed and v.alt != u.alt:
                if target.prefers(v.alt, u.alt) != (pos[v] < pos[u]):
                    return False
    return True


def projection_pairs(w: LevelKWitness) -> set[tuple[Alternative, Alternative]]:
    """Alternative comparisons the witness makes between vertices sharing a revealed set."""
    by_set: dict[frozenset, list[LevelKVertex]] = {}
    for v in w.order.ranking:
        by_set.setdefault(v.revealed, []).append(v)
    out = set()
    for group in by_set.values():
        for i, v in enumerate(group):
            for u in group[i + 1:]:
                out.add((v.alt, u.alt))
    return out


class _TermParser:
    _STOP = set(",>(){}")

    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def fail(self, what: str):
        raise ParseError(f"bad term at offset {self.i}: expected {what} in {self.text!r}")

    def expect(self, ch: str) -> None:
        if self.text[self.i:self.i + 1] != ch:
            self.fail(repr(ch))
        self.i += 1

    def ident(self) -> str:
        j = self.i
        while j < len(self.text) and self.text[j] not in self._STOP:
            j += 1
        if j == self.i:
            self.fail("an alternative id")
        out, self.i = self.text[self.i:j], j
        return out

    def vertex(self, level: int) -> LevelKVertex:
        if level == 0:
            return leaf(self.ident())
        self.expect("(")
        alt = self.ident()
        self.expect(",")
        self.expect("{")
        pairs = []
        while self.text[self.i:self.i + 1] != "}":
            if pairs:
                self.expect(",")
            a = self.vertex(level - 1)
            self.expect(">")
            pairs.append((a, self.vertex(level - 1)))
        self.expect("}")
        self.expect(")")
        return LevelKVertex(level, alt, frozenset(pairs))


def parse_term(text: str, level: int) -> LevelKVertex:
    """Parse a canonical term string back into a vertex of the given level."""
    p = _TermParser(text)
    v = p.vertex(level)
    if p.i != len(text):
        p.fail("end of term")
    return v


def levelk_witness_from_list(items: list[dict], k: int, target: TargetOrder) -> LevelKWitness:
    ordered = sorted(items, key=lambda d: d["rank"])
    ranking = tuple(parse_term(d["term"], k) for d in ordered)
    return LevelKWitness(k, target, LinearOrder(ranking))

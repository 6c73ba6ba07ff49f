"""Additive privacy preferences: utility minus per-comparison privacy penalties.

A consumer with additive preferences picks, from menu ``A``, the ``x``
maximizing ``u(x) - sum(v(x, z) for z in A - {x})``. This module tests
data against that model two ways: the cheap necessary condition that every
``R^y`` relation be acyclic, and the exact necessary-and-sufficient linear
system, decided over the rationals.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .core import Alternative, ChoiceProblem, menu_key
from .errors import GenerationFailed, TieError
from .lp import check_farkas, solve_feasibility
from .monotone import format_pair, parse_pair
from .orders import Relation, find_cycle


@dataclass(frozen=True)
class AdditiveModel:
    u: Mapping[Alternative, Fraction]
    v: Mapping[tuple[Alternative, Alternative], Fraction]

    def __post_init__(self):
        u = {a: Fraction(x) for a, x in self.u.items()}
        v = {tuple(k): Fraction(x) for k, x in self.v.items()}
        if any(x < 0 for x in u.values()) or any(x < 0 for x in v.values()):
            raise ValueError("additive model values must be non-negative")
        if any(a == b for a, b in v):
            raise ValueError("v is defined on pairs of distinct alternatives only")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def __hash__(self):
        return hash((tuple(sorted(self.u.items())), tuple(sorted(self.v.items()))))

    @property
    def alternatives(self) -> list[Alternative]:
        return sorted(self.u)

    def penalty(self, x: Alternative, z: Alternative) -> Fraction:
        return self.v.get((x, z), Fraction(0))

    def score(self, x: Alternative, menu: Iterable[Alternative]) -> Fraction:
        """Utility of choosing ``x`` from ``menu``, net of what the choice reveals."""
        return self.u[x] - sum((self.penalty(x, z) for z in menu if z != x), Fraction(0))

    def scaled(self, factor) -> AdditiveModel:
        factor = Fraction(factor)
        return AdditiveModel(
            {a: x * factor for a, x in self.u.items()},
            {k: x * factor for k, x in self.v.items()},
        )

    def to_json(self) -> dict:
        return {
            "u": {a: fraction_str(self.u[a]) for a in sorted(self.u)},
            "v": {format_pair(*k): fraction_str(self.v[k]) for k in sorted(self.v)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> AdditiveModel:
        return cls(
            {a: Fraction(s) for a, s in data["u"].items()},
            {parse_pair(k): Fraction(s) for k, s in data["v"].items()},
        )


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def replay_choices(model: AdditiveModel, menus: Sequence[Iterable[Alternative]]) -> list[Alternative]:
    """Predicted choice from each menu.

    Raises:
        TieError: when a menu's best score is shared, since the model must
            induce a linear order.
    """
    out = []
    for menu in menus:
        menu = frozenset(menu)
        scores = {x: model.score(x, menu) for x in menu}
        best = max(scores.values())
        winners = [x for x, s in scores.items() if s == best]
        if len(winners) > 1:
            raise TieError(menu, winners)
        out.append(winners[0])
    return out


@dataclass(frozen=True)
class RyRelation:
    """``x R^y z``: ``z`` is chosen from some ``A`` and ``x`` from ``A + {y}``.

    ``support`` maps each pair to the smaller menu ``A`` witnessing it.
    """

    y: Alternative
    pairs: frozenset
    support: dict = field(default_factory=dict, hash=False, compare=False)

    def relation(self, alternatives: Iterable[Alternative]) -> Relation[Alternative]:
        return Relation.from_edges(self.pairs, alternatives)


def build_ry(p: ChoiceProblem, y: Alternative) -> RyRelation:
    if y not in p.alternatives:
        raise ValueError(f"{y!r} is not an alternative of the problem")
    pairs = set()
    support = {}
    for o in p.observations:
        if y in o.menu:
            continue
        bigger = p.choice(o.menu | {y})
        if bigger is None or bigger == o.choice:
            continue
        pair = (bigger, o.choice)
        pairs.add(pair)
        support.setdefault(pair, o.menu)
    return RyRelation(y, frozenset(pairs), support)


@dataclass(frozen=True)
class RyCheck:
    passed: bool
    y: Alternative | None = None
    cycle: list[Alternative] | None = None


def ry_acyclic_all(p: ChoiceProblem) -> RyCheck:
    for y in p.alternatives:
        ry = build_ry(p, y)
        cycle = find_cycle(ry.relation(p.alternatives))
        if cycle is not None:
            return RyCheck(False, y, cycle)
    return RyCheck(True)


@dataclass(frozen=True)
class InequalitySystem:
    """Integer system ``rows @ w > 0`` over ``w = (u..., v...)``.

    Columns are ``u(x)`` for every alternative in canonical order, then
    ``v(a, b)`` for every ordered pair of distinct alternatives in
    lexicographic pair order. Each row belongs to an observation and one
    rejected alternative ``(menu, chosen, rejected)``.
    """

    alternatives: tuple[Alternative, ...]
    columns: tuple[tuple, ...]
    labels: tuple[tuple[tuple[Alternative, ...], Alternative, Alternative], ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.columns))

    def column_names(self) -> list[str]:
        return [f"u({c[1]})" if c[0] == "u" else f"v({c[1]},{c[2]})" for c in self.columns]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["menu", "chosen", "rejected"] + self.column_names())
        for (menu, chosen, rejected), row in zip(self.labels, self.rows):
            w.writerow(["|".join(menu), chosen, rejected] + list(row))
        return buf.getvalue()

    def vector(self, model: AdditiveModel) -> list[Fraction]:
        return [model.u[c[1]] if c[0] == "u" else model.penalty(c[1], c[2]) for c in self.columns]

    def model_from_vector(self, w: Sequence[Fraction]) -> AdditiveModel:
        u, v = {}, {}
        for c, x in zip(self.columns, w):
            if c[0] == "u":
                u[c[1]] = x
            else:
                v[(c[1], c[2])] = x
        return AdditiveModel(u, v)


def build_inequality_system(p: ChoiceProblem) -> InequalitySystem:
    alts = p.alternatives
    columns = [("u", a) for a in alts] + [("v", a, b) for a in alts for b in alts if a != b]
    index = {c: j for j, c in enumerate(columns)}
    labels, rows = [], []
    for o in p.observations:
        xi = o.choice
        for xj in o.rejected:
            row = [0] * len(columns)
            row[index[("u", xi)]] += 1
            row[index[("u", xj)]] -= 1
            for z in o.menu:
                if z != xj:
                    row[index[("v", xj, z)]] += 1
                if z != xi:
                    row[index[("v", xi, z)]] -= 1
            labels.append((menu_key(o.menu), xi, xj))
            rows.append(tuple(row))
    return InequalitySystem(tuple(alts), tuple(columns), tuple(labels), tuple(rows))


@dataclass(frozen=True)
class AdditiveResult:
    """Verdict of the exact additive test.

    On success ``model`` is *a* rationalizing model (they are never unique;
    v entries no observation constrains are left at 0). On failure
    ``farkas`` holds non-negative integer row weights whose combination of
    the system's rows is non-positive in every column, and ``ry`` reports an
    ``R^y`` cycle when one exists.
    """

    rationalizable: bool
    system: InequalitySystem
    model: AdditiveModel | None = None
    farkas: tuple[int, ...] | None = None
    ry: RyCheck | None = None
    pivots: int = 0


def additive_rationalizable(p: ChoiceProblem) -> AdditiveResult:
    """Decide exactly whether some additive model reproduces every choice.

    The strict system ``T w > 0, w >= 0`` is homogeneous, so it is feasible
    iff ``T w >= 1, w >= 0`` is; the latter goes to the exact kernel.
    """
    system = build_inequality_system(p)
    n = len(system.columns)
    ones = [1] * len(system.rows)
    res = solve_feasibility(system.rows, ones, n_vars=n)
    if res.feasible:
        model = system.model_from_vector(res.point)
        return AdditiveResult(True, system, model=model, pivots=res.pivots)
    return AdditiveResult(
        False, system, farkas=res.farkas, ry=ry_acyclic_all(p), pivots=res.pivots
    )


def verify_additive_witness(p: ChoiceProblem, model: AdditiveModel) -> bool:
    """Replay every observed menu under ``model``; ties count as failure."""
    try:
        return replay_choices(model, p.menus) == [o.choice for o in p.observations]
    except (TieError, KeyError):
        return False


def verify_farkas(system: InequalitySystem, lam: Sequence[int]) -> bool:
    """Check that ``lam`` proves ``rows @ w > 0, w >= 0`` has no solution."""
    if not any(lam):
        return False
    return check_farkas(system.rows, [1] * len(system.rows), lam, len(system.columns))


def satisfies_system(system: InequalitySystem, model: AdditiveModel) -> bool:
    """Strict check of every row at the model's value vector."""
    w = system.vector(model)
    return all(x >= 0 for x in w) and all(
        sum(a * x for a, x in zip(row, w) if a) > 0 for row in system.rows
    )


def generate_additive(
    n_alts: int,
    n_menus: int,
    seed: int | None = None,
    value_ranges: Mapping[str, tuple[int, int]] | None = None,
    denominator: int = 4,
    max_retries: int = 100,
) -> tuple[ChoiceProblem, AdditiveModel]:
    """Sample a dataset generated by a known additive consumer.

    ``u`` and ``v`` are drawn uniformly from multiples of ``1/denominator``
    within ``value_ranges`` (defaults ``u`` in [0, 10], ``v`` in [0, 4]).
    ``n_menus`` distinct menus with at least two items are drawn; a model
    that ties on some menu is redrawn.

    Raises:
        GenerationFailed: no tie-free model within ``max_retries`` draws.
    """
    if n_alts < 2:
        raise ValueError("need at least two alternatives")
    ranges = {"u": (0, 10), "v": (0, 4)}
    if value_ranges:
        ranges.update(value_ranges)
    alts = _alt_names(n_alts)
    candidates = [frozenset(c) for r in range(2, n_alts + 1) for c in combinations(alts, r)]
    if n_menus > len(candidates):
        raise ValueError(f"only {len(candidates)} distinct menus exist over {n_alts} alternatives")
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(candidates), size=n_menus, replace=False) if n_menus else []
    menus = [candidates[i] for i in sorted(picks)]

    def draw(lo_hi):
        lo, hi = lo_hi
        return Fraction(int(rng.integers(lo * denominator, hi * denominator + 1)), denominator)

    for _ in range(max_retries):
        u = {a: draw(ranges["u"]) for a in alts}
        v = {(a, b): draw(ranges["v"]) for a in alts for b in alts if a != b}
        model = AdditiveModel(u, v)
        try:
            choices = replay_choices(model, menus)
        except TieError:
            continue
        return ChoiceProblem.from_records(alts, zip(menus, choices)), model
    raise GenerationFailed(f"every one of {max_retries} sampled models tied on some menu")


def _alt_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    width = len(str(n - 1))
    return [f"x{i:0{width}d}" for i in range(n)]

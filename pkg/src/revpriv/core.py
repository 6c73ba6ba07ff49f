"""Choice problems, ingestion, and the classical (privacy-oblivious) test."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Any

from .errors import ParseError, ValidationError
from .orders import LinearOrder, Relation, find_cycle, linear_extension

Alternative = str
Menu = frozenset  # frozenset[Alternative]

# ">" and "," delimit target orders and pair strings, "|" splits CSV menus,
# brackets delimit nested level-k terms
_RESERVED = set(">,|(){}")


def check_alternative_id(alt: Any, location: str | None = None) -> str:
    if not isinstance(alt, str) or not alt:
        raise ValidationError(f"alternative id must be a non-empty string, got {alt!r}", location)
    if any(ch.isspace() or ch in _RESERVED for ch in alt):
        raise ValidationError(
            f"alternative id {alt!r} contains whitespace or a reserved character (one of > , | ( ) {{ }})",
            location,
        )
    return alt


def menu_key(menu: Iterable[Alternative]) -> tuple[Alternative, ...]:
    """Canonical form of a menu: its ids in lexicographic order."""
    return tuple(sorted(menu))


def revealed_by(menu: Iterable[Alternative], x: Alternative) -> frozenset[tuple[Alternative, Alternative]]:
    """The comparisons an observer infers when ``x`` is chosen from ``menu``.

    That is ``{(x, y) : y in menu, y != x}``; reflexive pairs are never included.
    """
    return frozenset((x, y) for y in menu if y != x)


@dataclass(frozen=True)
class Observation:
    menu: frozenset
    choice: Alternative

    def __post_init__(self):
        object.__setattr__(self, "menu", frozenset(self.menu))

    @property
    def sort_key(self) -> tuple:
        return (menu_key(self.menu), self.choice)

    @property
    def rejected(self) -> list[Alternative]:
        """Menu items that were not chosen, in canonical order."""
        return sorted(self.menu - {self.choice})

    def to_dict(self) -> dict[str, Any]:
        return {"menu": list(menu_key(self.menu)), "choice": self.choice}


@dataclass(frozen=True)
class ChoiceProblem:
    """A finite choice problem: alternatives, observed menus and choices.

    Both fields are stored in canonical order (alternatives sorted,
    observations sorted by menu), so two problems describing the same data
    compare equal. Construction validates every invariant; use
    :meth:`from_records` to also collapse duplicate observations.
    """

    alternatives: tuple[Alternative, ...]
    observations: tuple[Observation, ...] = ()

    def __post_init__(self):
        alts = tuple(sorted(self.alternatives))
        if len(set(alts)) != len(alts):
            raise ValidationError("alternative ids are not unique", "alternatives")
        for i, a in enumerate(alts):
            check_alternative_id(a, f"alternatives[{i}]")
        known = set(alts)
        seen: dict[frozenset, Alternative] = {}
        for i, obs in enumerate(self.observations):
            where = f"observations[{i}]"
            if not obs.menu:
                raise ValidationError("menu is empty", where)
            unknown = sorted(obs.menu - known)
            if unknown:
                raise ValidationError(f"unknown alternative(s) {unknown}", where)
            if obs.choice not in obs.menu:
                raise ValidationError(f"choice {obs.choice!r} is not in menu {list(menu_key(obs.menu))}", where)
            prev = seen.get(obs.menu)
            if prev is not None:
                if prev != obs.choice:
                    raise ValidationError(
                        f"menu {list(menu_key(obs.menu))} has conflicting choices {prev!r} and {obs.choice!r}",
                        where,
                    )
                raise ValidationError(f"duplicate observation for menu {list(menu_key(obs.menu))}", where)
            seen[obs.menu] = obs.choice
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(
            self, "observations", tuple(sorted(self.observations, key=lambda o: o.sort_key))
        )

    @classmethod
    def from_records(
        cls,
        alternatives: Iterable[Alternative],
        records: Iterable[tuple[Iterable[Alternative], Alternative] | Observation],
    ) -> ChoiceProblem:
        """Build a problem from ``(menu, choice)`` records, dropping exact duplicates."""
        obs: list[Observation] = []
        chosen: dict[frozenset, tuple[int, Alternative]] = {}
        for i, rec in enumerate(records):
            o = rec if isinstance(rec, Observation) else Observation(frozenset(rec[0]), rec[1])
            if o.menu in chosen:
                j, prev = chosen[o.menu]
                if prev == o.choice:
                    continue
                raise ValidationError(
                    f"menu {list(menu_key(o.menu))} has conflicting choices {prev!r} "
                    f"(observations[{j}]) and {o.choice!r}",
                    f"observations[{i}]",
                )
            chosen[o.menu] = (i, o.choice)
            obs.append(o)
        return cls(tuple(alternatives), tuple(obs))

    @cached_property
    def choice_function(self) -> dict[frozenset, Alternative]:
        return {o.menu: o.choice for o in self.observations}

    def choice(self, menu: Iterable[Alternative]) -> Alternative | None:
        return self.choice_function.get(frozenset(menu))

    @property
    def menus(self) -> list[frozenset]:
        return [o.menu for o in self.observations]

    def __len__(self) -> int:
        return len(self.observations)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alternatives": list(self.alternatives),
            "observations": [o.to_dict() for o in self.observations],
        }


def _problem_from_mapping(data: Any) -> ChoiceProblem:
    if not isinstance(data, Mapping):
        raise ParseError("top-level JSON value must be an object")
    if "alternatives" not in data or "observations" not in data:
        raise ParseError("JSON dataset needs 'alternatives' and 'observations' keys")
    alts = data["alternatives"]
    if not isinstance(alts, list):
        raise ParseError("'alternatives' must be a list")
    for i, a in enumerate(alts):
        check_alternative_id(a, f"alternatives[{i}]")
    raw = data["observations"]
    if not isinstance(raw, list):
        raise ParseError("'observations' must be a list")
    records = []
    for i, rec in enumerate(raw):
        where = f"observations[{i}]"
        if not isinstance(rec, Mapping) or "menu" not in rec or "choice" not in rec:
            raise ParseError(f"{where}: expected an object with 'menu' and 'choice'")
        menu, choice = rec["menu"], rec["choice"]
        if not isinstance(menu, list):
            raise ParseError(f"{where}: 'menu' must be a list")
        for a in menu:
            check_alternative_id(a, where)
        check_alternative_id(choice, where)
        if len(set(menu)) != len(menu):
            raise ValidationError(f"menu {menu} repeats an alternative", where)
        if not menu:
            raise ValidationError("menu is empty", where)
        unknown = sorted(set(menu) - set(alts))
        if unknown:
            raise ValidationError(f"unknown alternative(s) {unknown}", where)
        if choice not in menu:
            raise ValidationError(f"choice {choice!r} is not in menu {menu}", where)
        records.append((menu, choice))
    return ChoiceProblem.from_records(alts, records)


def _problem_from_csv(text: str) -> ChoiceProblem:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("CSV input is empty") from None
    if [h.strip() for h in header] != ["menu", "choice"]:
        raise ParseError(f"CSV header must be 'menu,choice', got {','.join(header)!r}")
    records = []
    alts: set[str] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        where = f"line {lineno}"
        if len(row) != 2:
            raise ParseError(f"{where}: expected 2 cells, got {len(row)}")
        menu = [m.strip() for m in row[0].split("|")]
        choice = row[1].strip()
        for a in menu:
            check_alternative_id(a, where)
        check_alternative_id(choice, where)
        if choice not in menu:
            raise ValidationError(f"choice {choice!r} is not in menu {menu}", where)
        alts.update(menu)
        records.append((menu, choice))
    return ChoiceProblem.from_records(sorted(alts), records)


def load_problem(source: IO | bytes | str, format: str = "json") -> ChoiceProblem:
    """Read and validate a dataset.

    ``source`` may be a binary or text stream, or the raw bytes/str content.
    CSV carries no separate alternatives list; the alternatives are those
    mentioned in some menu.

    Raises:
        ParseError: malformed input.
        ValidationError: well-formed input describing an invalid choice problem.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    if format == "json":
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return _problem_from_mapping(data)
    if format == "csv":
        return _problem_from_csv(source)
    raise ValueError(f"unknown format {format!r}; expected 'json' or 'csv'")


def dump_problem(p: ChoiceProblem, format: str = "json") -> str:
    """Serialize ``p`` canonically; ``load_problem`` inverts this exactly."""
    if format == "json":
        return json.dumps(p.to_dict(), indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["menu", "choice"])
        for o in p.observations:
            w.writerow(["|".join(menu_key(o.menu)), o.choice])
        return buf.getvalue()
    raise ValueError(f"unknown format {format!r}; expected 'json' or 'csv'")


def revealed_relation(p: ChoiceProblem) -> Relation[Alternative]:
    """Directly revealed preference: ``(c(A), y)`` for every observed ``A`` and ``y`` in ``A - {c(A)}``."""
    pairs = set()
    for o in p.observations:
        pairs |= revealed_by(o.menu, o.choice)
    return Relation(frozenset(p.alternatives), frozenset(pairs))


@dataclass(frozen=True)
class ClassicResult:
    """Outcome of the classical test: an order over X, or a revealed cycle."""

    rationalizable: bool
    order: LinearOrder | None = None
    cycle: list[Alternative] | None = field(default=None)


def maximal_choice(order: LinearOrder, menu: Iterable[Alternative]) -> Alternative:
    pos = order.positions
    return min(menu, key=pos.__getitem__)


def classic_rationalizable(p: ChoiceProblem) -> ClassicResult:
    """Test rationalizability by a linear order over X.

    The data is rationalizable exactly when the revealed relation is acyclic
    (any linear extension then picks every observed choice). This is the
    acyclicity criterion rather than a transcription of any one textbook
    statement of SARP.
    """
    rel = revealed_relation(p)
    cycle = find_cycle(rel)
    if cycle is not None:
        return ClassicResult(False, cycle=cycle)
    order = linear_extension(rel)
    return ClassicResult(True, order=order)


def verify_classic_witness(p: ChoiceProblem, order: LinearOrder) -> bool:
    """Replay every menu by maximizing ``order`` and compare with the data."""
    if set(order.ranking) != set(p.alternatives):
        return False
    return all(maximal_choice(order, o.menu) == o.choice for o in p.observations)

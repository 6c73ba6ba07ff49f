"""Machine-readable verdict reports and the ``explain`` document.

Reports are plain JSON-compatible dicts built in a fixed key order and
contain nothing run-dependent unless timing is requested, so the same input
always serializes to the same bytes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from . import additive, core, levelk, monotone
from .levelk import DEFAULT_LEVEL_CAP, TargetOrder
from .monotone import EdgeKind
from .orders import LinearOrder, find_cycle

MODELS = ("classic", "monotone", "separable", "levelk", "additive")

RESTRICTION_NOTE = (
    "witness ranks only the (alternative, revealed set) vertices referenced by the data; "
    "it extends to a full preference on the whole space but that extension is not materialized"
)


@dataclass
class Report:
    model: str
    rationalizable: bool
    k: int | None = None
    target_order: list[str] | None = None
    witness: Any = None
    certificate: Any = None
    diagnostics: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "k": self.k,
            "target_order": self.target_order,
            "rationalizable": self.rationalizable,
            "witness": self.witness,
            "certificate": self.certificate,
            "diagnostics": self.diagnostics,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def summary(self) -> str:
        head = f"[{self.model}" + (f", k={self.k}" if self.k is not None else "") + "] "
        if self.rationalizable:
            return head + "rationalizable"
        cert = self.certificate or {}
        ry = cert.get("ry_cycle")
        if cert.get("kind") == "cycle":
            return head + "NOT rationalizable: revealed cycle " + " > ".join(cert["cycle"])
        if ry:
            return head + f"NOT rationalizable: R^{ry['y']} cycle " + " > ".join(ry["cycle"])
        return head + "NOT rationalizable: linear system infeasible"


def _base_diagnostics(p: core.ChoiceProblem) -> dict:
    return {"alternatives": len(p.alternatives), "observations": len(p.observations)}


def _edge_counts(tags: dict) -> dict:
    counts = {kind.value: 0 for kind in EdgeKind}
    for kind in tags.values():
        counts[kind.value] += 1
    return counts


def classic_report(p: core.ChoiceProblem) -> Report:
    res = core.classic_rationalizable(p)
    diag = _base_diagnostics(p)
    diag["revealed_pairs"] = len(core.revealed_relation(p))
    if res.rationalizable:
        return Report("classic", True, witness={"order": list(res.order.ranking)}, diagnostics=diag)
    return Report("classic", False, certificate={"kind": "cycle", "cycle": list(res.cycle)}, diagnostics=diag)


def monotone_report(p: core.ChoiceProblem) -> Report:
    g = monotone.build_monotone_graph(p)
    w = monotone.rationalize_monotone(p)
    diag = _base_diagnostics(p)
    diag.update(vertices=len(g.graph.vertices), edges=len(g.graph.edges), edge_kinds=_edge_counts(g.edge_tags))
    return Report("monotone", True, witness={"vertices": w.to_list()}, diagnostics=diag, notes=[RESTRICTION_NOTE])


def levelk_report(
    p: core.ChoiceProblem,
    k: int,
    target: TargetOrder | None = None,
    cap: int = DEFAULT_LEVEL_CAP,
    model: str = "levelk",
) -> Report:
    notes = []
    if target is None:
        target = TargetOrder.lexicographic(p)
        notes.append("no target order given; using the lexicographic order of alternative ids")
    g = levelk.build_levelk_graph(p, k, target, cap)
    w = levelk.rationalize_levelk(p, k, target, cap)
    diag = _base_diagnostics(p)
    diag.update(vertices=len(g.graph.vertices), edges=len(g.graph.edges), edge_kinds=_edge_counts(g.edge_tags))
    notes.append(RESTRICTION_NOTE)
    notes.append("projection onto alternatives equals the target order")
    return Report(
        model,
        True,
        k=k,
        target_order=list(target.ranking),
        witness={"vertices": w.to_list(), "projection": list(target.ranking)},
        diagnostics=diag,
        notes=notes,
    )


def additive_report(p: core.ChoiceProblem) -> Report:
    res = additive.additive_rationalizable(p)
    diag = _base_diagnostics(p)
    rows, cols = res.system.shape
    diag.update(inequality_rows=rows, inequality_columns=cols, pivots=res.pivots)
    if res.rationalizable:
        witness = res.model.to_json()
        return Report(
            "additive",
            True,
            witness=witness,
            diagnostics=diag,
            notes=[
                "witness is a rationalizing model, not the unique one",
                "v entries on pairs no observation constrains are set to 0",
            ],
        )
    weights = [
        {"menu": list(label[0]), "chosen": label[1], "rejected": label[2], "weight": lam}
        for label, lam in zip(res.system.labels, res.farkas)
        if lam
    ]
    cert: dict[str, Any] = {"kind": "infeasible", "farkas": weights, "ry_cycle": None}
    if res.ry is not None and not res.ry.passed:
        cert["ry_cycle"] = {"y": res.ry.y, "cycle": list(res.ry.cycle)}
    return Report("additive", False, certificate=cert, diagnostics=diag)


def check(
    p: core.ChoiceProblem,
    model: str,
    k: int | None = None,
    target: TargetOrder | None = None,
    cap: int = DEFAULT_LEVEL_CAP,
    timing: bool = False,
) -> Report:
    """Run one model's test and package the verdict."""
    start = time.perf_counter()
    if model == "classic":
        report = classic_report(p)
    elif model == "monotone":
        report = monotone_report(p)
    elif model == "separable":
        report = levelk_report(p, 1, target, cap, model="separable")
    elif model == "levelk":
        report = levelk_report(p, 1 if k is None else k, target, cap)
    elif model == "additive":
        report = additive_report(p)
    else:
        raise ValueError(f"unknown model {model!r}; expected one of {', '.join(MODELS)}")
    if timing:
        report.diagnostics["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return report


def verify_report(p: core.ChoiceProblem, data: dict) -> bool:
    """Re-load the witness or certificate embedded in a report and re-check it."""
    model = data["model"]
    if not data["rationalizable"]:
        cert = data["certificate"]
        if model == "classic":
            cyc = cert["cycle"]
            rel = core.revealed_relation(p)
            return cyc[0] == cyc[-1] and all((a, b) in rel for a, b in zip(cyc, cyc[1:]))
        if model == "additive":
            system = additive.build_inequality_system(p)
            index = {label: i for i, label in enumerate(system.labels)}
            lam = [0] * len(system.rows)
            for item in cert["farkas"]:
                lam[index[(tuple(item["menu"]), item["chosen"], item["rejected"])]] = item["weight"]
            return additive.verify_farkas(system, lam)
        return False
    w = data["witness"]
    if model == "classic":
        return core.verify_classic_witness(p, LinearOrder(tuple(w["order"])))
    if model == "monotone":
        return monotone.verify_monotone_witness(p, monotone.monotone_witness_from_list(w["vertices"]))
    if model in ("separable", "levelk"):
        target = TargetOrder(tuple(data["target_order"]))
        lw = levelk.levelk_witness_from_list(w["vertices"], data["k"], target)
        return levelk.verify_levelk_witness(p, data["k"], target, lw)
    if model == "additive":
        return additive.verify_additive_witness(p, additive.AdditiveModel.from_json(w))
    return False


def explain(p: core.ChoiceProblem, target: TargetOrder | None = None, cap: int = DEFAULT_LEVEL_CAP) -> dict:
    """Everything the tests look at, in one document.

    Lists the revealed relation, each non-empty ``R^y`` with any cycle, the
    additive inequality system row by row, and a verdict per model.
    """
    rel = core.revealed_relation(p)
    ry_sections = []
    for y in p.alternatives:
        ry = additive.build_ry(p, y)
        if not ry.pairs:
            continue
        cycle = find_cycle(ry.relation(p.alternatives))
        ry_sections.append(
            {
                "y": y,
                "pairs": [
                    {"pair": list(pair), "menu": list(core.menu_key(ry.support[pair]))}
                    for pair in sorted(ry.pairs)
                ],
                "cycle": cycle,
            }
        )
    system = additive.build_inequality_system(p)
    names = system.column_names()
    rows = [
        {
            "menu": list(label[0]),
            "chosen": label[1],
            "rejected": label[2],
            "terms": {names[j]: a for j, a in enumerate(row) if a},
        }
        for label, row in zip(system.labels, system.rows)
    ]
    verdicts = {}
    witnesses = {}
    for model in ("classic", "monotone", "separable", "additive"):
        r = check(p, model, target=target, cap=cap)
        verdicts[model] = r.rationalizable
        if model == "additive" and r.rationalizable:
            witnesses["additive"] = r.witness
        if model in ("classic", "additive") and not r.rationalizable:
            witnesses[model + "_certificate"] = r.certificate
    return {
        "alternatives": list(p.alternatives),
        "observations": len(p.observations),
        "revealed_relation": [list(e) for e in sorted(rel.edges)],
        "revealed_cycle": find_cycle(rel),
        "ry_relations": ry_sections,
        "inequality_system": {
            "rows": len(system.rows),
            "columns": len(system.columns),
            "column_names": names,
            "row_terms": rows,
        },
        "verdicts": verdicts,
        "evidence": witnesses,
    }

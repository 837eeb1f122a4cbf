"""Assemble the analysis report as plain JSON-ready data."""
from __future__ import annotations

import json
from importlib import resources

from . import __version__
from .presentation import Presentation
from .quotient import cycles_without_entry, falpha
from .regularity import (DEFAULT_BOUND, PUMP_WALK_LENGTH, FiniteSet, InfiniteWitness,
                         vertex_level_report)
from .verdict import CYCLE_WITHOUT_ENTRY, Verdict, verdict


def _tri(x: bool | None):
    return "Unknown" if x is None else x


def fibre_json(fib) -> dict:
    if isinstance(fib, FiniteSet):
        return {"kind": fib.kind, "members": sorted(str(m) for m in fib.members)}
    if isinstance(fib, InfiniteWitness):
        return {"kind": fib.kind, "witness": {"cycle": str(fib.cycle), "seed": str(fib.seed),
                                              "connector": str(fib.connector)}}
    return {"kind": fib.kind, "bound": fib.bound}


def analysis_levels(p: Presentation, level: int | None = None) -> list[int]:
    return [level] if level is not None else list(range(p.max_level + 2))


def build_report(p: Presentation, bound: int = DEFAULT_BOUND, level: int | None = None,
                 result: Verdict | None = None) -> dict:
    result = result or verdict(p, bound)
    levels = analysis_levels(p, level)
    vertices = []
    for v in p.vertices:
        per = []
        for k in levels:
            r = vertex_level_report(p, v, k, bound)
            per.append({"level": k, "isSource": r.is_source, "isSourceRegular": r.is_source_regular,
                        "fibre": fibre_json(r.fibre), "isRegular": _tri(r.is_regular)})
        vertices.append({"name": v, "perLevel": per})
    quotients = []
    for k in range(p.max_level + 1):
        d = falpha(p, k)
        quotients.append({"level": k, "vertexCount": len(d.vertices), "edgeCount": len(d.edges),
                          "cyclesWithoutEntry": cycles_without_entry(d)})
    cv = {"holds": result.condition_v.holds}
    if result.condition_v.witness:
        k, g, v = result.condition_v.witness
        cv["witness"] = {"level": k, "generator": g, "vertex": v}
    s = result.condition_s
    cs: dict = {"status": s.status}
    if s.status == CYCLE_WITHOUT_ENTRY:
        cs["detail"] = {"level": s.level, "cycle": list(s.cycle)}
    elif s.detail:
        cs["detail"] = {"level": s.level, "message": s.detail}
    ck = []
    for e in result.ck_uniqueness:
        entry = {"level": e.level, "status": e.status}
        if e.reasons:
            entry["reason"] = "; ".join(e.reasons)
        ck.append(entry)
    return {
        "graph": p.name,
        "levels": p.levels,
        "vertices": vertices,
        "falpha": quotients,
        "conditionV": cv,
        "conditionS": cs,
        "ckUniqueness": ck,
        "simplicity": {"status": result.simplicity},
        "version": __version__,
        "bounds": {"fibreClasses": bound, "pumpWalkLength": PUMP_WALK_LENGTH},
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def schema() -> dict:
    text = resources.files("ordgraph").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)

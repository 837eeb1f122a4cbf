"""Conditions (V) and (S), and the uniqueness and simplicity verdicts.

Every positive verdict here is certified through a sufficient condition;
nothing in this module ever asserts that condition (S) or uniqueness fails.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .path import gen_path, tail_vertices
from .presentation import Presentation
from .quotient import components, cycles_without_entry, falpha
from .regularity import DEFAULT_BOUND, is_alpha_regular, is_alpha_source, reachable

SATISFIED = "SatisfiedViaTheorem"
FAILED_V = "FailedV"
CYCLE_WITHOUT_ENTRY = "CycleWithoutEntry"
UNKNOWN = "Unknown"
HOLDS = "HoldsViaTheorem"
INAPPLICABLE = "Inapplicable"
SIMPLE = "Simple"


@dataclass(frozen=True)
class ConditionV:
    holds: bool
    witness: tuple[int, str, str] | None = None   # (level, generator, unreachable vertex)


@dataclass(frozen=True)
class ConditionS:
    status: str
    level: int | None = None
    cycle: tuple[str, ...] = ()
    detail: str = ""


@dataclass(frozen=True)
class CKUEntry:
    level: int
    status: str
    reasons: tuple[str, ...] = ()


@dataclass
class Verdict:
    condition_v: ConditionV
    condition_s: ConditionS
    ck_uniqueness: list[CKUEntry]
    simplicity: str
    warnings: list[str] = field(default_factory=list)

    @property
    def ck_overall(self) -> CKUEntry:
        return self.ck_uniqueness[-1]


def check_condition_v(p: Presentation) -> ConditionV:
    """Every vertex in the component of r(g) is reached from some tail vertex of g."""
    for k in p.levels:
        if k == 0:
            continue
        where = {v: comp for comp in components(p, k) for v in comp}
        for name in p.level_names(k):
            g = p.gen(name)
            tails = set(tail_vertices(gen_path(p, name)))
            for v in where[g.range]:
                if not tails & reachable(p, v, k):
                    return ConditionV(False, (k, name, v))
    return ConditionV(True)


def check_condition_s(p: Presentation) -> ConditionS:
    v = check_condition_v(p)
    if not v.holds:
        k, g, x = v.witness
        return ConditionS(FAILED_V, k, (), f"level {k}: no tail of {g} reaches {x}")
    for k in range(p.max_level + 1):
        bad = cycles_without_entry(falpha(p, k))
        if bad:
            return ConditionS(CYCLE_WITHOUT_ENTRY, k, tuple(bad[0]),
                              f"level {k}: cycle {' '.join(bad[0])} has no entry")
    for k in p.levels:
        sources = [x for x in p.vertices if is_alpha_source(p, x, k)]
        if sources:
            # the theorem's path construction needs incoming paths at every vertex
            return ConditionS(UNKNOWN, k, (), f"level {k}: {sources[0]} is a {k}-source")
    return ConditionS(SATISFIED)


def ck_verdict(p: Presentation, bound: int = DEFAULT_BOUND,
               condition_s: ConditionS | None = None) -> list[CKUEntry]:
    """Uniqueness entries for levels 0..K; entry k uses the no-k-sources hypothesis.

    The last entry concerns the whole graph.
    """
    s = condition_s or check_condition_s(p)
    one_regular = {v: is_alpha_regular(p, v, 1, bound) for v in p.vertices}
    out = []
    for k in range(p.max_level + 1):
        hard: list[str] = [f"{v} is 1-regular" for v, r in one_regular.items() if r is True]
        soft: list[str] = [f"1-regularity of {v} undecided within bound {bound}"
                           for v, r in one_regular.items() if r is None]
        hard += [f"{v} is a {k}-source" for v in p.vertices if is_alpha_source(p, v, k)]
        if s.status in (FAILED_V, CYCLE_WITHOUT_ENTRY):
            hard.append(f"condition (S) sufficient check failed: {s.detail}")
        elif s.status == UNKNOWN:
            soft.append(f"condition (S) undecided: {s.detail}")
        if hard:
            out.append(CKUEntry(k, INAPPLICABLE, tuple(hard + soft)))
        elif soft:
            out.append(CKUEntry(k, UNKNOWN, tuple(soft)))
        else:
            out.append(CKUEntry(k, HOLDS))
    return out


def simplicity_verdict(p: Presentation, entries: list[CKUEntry]) -> str:
    return SIMPLE if entries[-1].status == HOLDS and len(p.vertices) == 1 else UNKNOWN


def regularity_warnings(p: Presentation, bound: int = DEFAULT_BOUND) -> list[str]:
    out = []
    for v in p.vertices:
        if is_alpha_regular(p, v, 1, bound) is True:
            continue
        for k in range(2, p.max_level + 1):
            if is_alpha_regular(p, v, k, bound) is True:
                out.append(f"{v} is {k}-regular but not 1-regular; the uniqueness hypothesis "
                           f"only excludes 1-regular vertices")
                break
    return out


def verdict(p: Presentation, bound: int = DEFAULT_BOUND) -> Verdict:
    v = check_condition_v(p)
    s = check_condition_s(p)
    entries = ck_verdict(p, bound, s)
    return Verdict(v, s, entries, simplicity_verdict(p, entries), regularity_warnings(p, bound))

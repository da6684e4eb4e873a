"""Batch cross-checks of the equivalent characterizations over graph streams.

Each suite evaluates two or more independent routes to the same verdict and
records every graph on which they disagree.  Since the equivalences are
theorems, a disagreement always points at a bug in one of the routes.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from . import chordality as ch
from . import cover as cv
from . import cyclespace as cs
from . import separators as sp
from .errors import LimitExceeded
from .graph import Graph, components, emit_graph6, girth, induced_subgraph

SUITES = ("balls-holes-wheels", "balls-separators", "balls-cover", "short-cycle-span", "cyclespace-chordal", "dirac", "acyclic")
# suites that do not depend on r
R_FREE = frozenset({"cyclespace-chordal", "dirac"})


@dataclass
class SuiteTally:
    checked: int = 0
    skipped: int = 0
    inconclusive: int = 0
    disagreements: list[dict[str, Any]] = field(default_factory=list)


@dataclass
class GraphOutcome:
    """Per-graph results: (suite, r) -> 'ok' | 'skip' | 'inconclusive' | disagreement dict."""

    graph6: str
    results: list[tuple[str, int | None, Any]] = field(default_factory=list)


@dataclass
class VerifyReport:
    graphs: int = 0
    suites: dict[str, SuiteTally] = field(default_factory=dict)

    @property
    def disagreements(self) -> int:
        return sum(len(t.disagreements) for t in self.suites.values())

    @property
    def ok(self) -> bool:
        return self.disagreements == 0

    def absorb(self, outcome: GraphOutcome) -> None:
        self.graphs += 1
        for suite, r, res in outcome.results:
            tally = self.suites.setdefault(suite, SuiteTally())
            if res == "ok":
                tally.checked += 1
            elif res == "skip":
                tally.skipped += 1
            elif res == "inconclusive":
                tally.inconclusive += 1
            else:
                tally.checked += 1
                tally.disagreements.append({"graph6": outcome.graph6, "r": r, **res})

    def to_dict(self) -> dict[str, Any]:
        return {
            "graphs": self.graphs,
            "disagreements": self.disagreements,
            "suites": {
                name: {
                    "checked": t.checked,
                    "skipped": t.skipped,
                    "inconclusive": t.inconclusive,
                    "disagreements": t.disagreements,
                }
                for name, t in sorted(self.suites.items())
            },
        }


def _agree(**values: bool) -> str | dict[str, Any]:
    return "ok" if len(set(values.values())) <= 1 else {"values": values}


def _component_covers(G: Graph, r: int, R: int):
    """One truncated cover per connected component (base = least vertex)."""
    out = []
    for comp in components(G):
        H, vmap = induced_subgraph(G, sorted(comp))
        out.append(cv.truncated_local_cover(H, r, 0, R))
    return out


def suite_balls_holes_wheels(G: Graph, r: int):
    direct = ch.is_r_locally_chordal(G, r, "direct").holds
    via = ch.is_r_locally_chordal(G, r, "holes-wheels").holds
    return _agree(balls_chordal=direct, r_chordal_and_wheel_free=via)


def suite_balls_separators(G: Graph, r: int):
    if G.n > sp.LOCAL_EXHAUSTIVE_MAX_N:
        return "skip"
    direct = ch.is_r_locally_chordal(G, r, "direct").holds
    ctx = sp.LocalSeparationContext(G, r)
    cliques = True
    lemma_failures = []
    for tr in sp.sweep_triples(G, r, ctx):
        if tr.minimal and any(not sp.is_clique(G, sp._members(m)) for m in tr.minimal):
            cliques = False
        for m in tr.separating:
            X = sp._members(m)
            if not sp.ball_separates(G, X, tr.u, tr.w, tr.v, r):
                lemma_failures.append([tr.u, tr.w, tr.v, sorted(X)])
    res = _agree(balls_chordal=direct, minimal_separators_cliques=cliques)
    if lemma_failures:
        res = {"values": {"balls_chordal": direct, "minimal_separators_cliques": cliques}, "lemma_failures": lemma_failures}
    return res


def suite_balls_cover(G: Graph, r: int, R: int | None = None):
    R = r + 2 if R is None else R
    direct = ch.is_r_locally_chordal(G, r, "direct").holds
    covers = _component_covers(G, r, R)
    if not all(c.converged for c in covers):
        return "inconclusive"
    within = all(cv.cover_chordal_within(c).passed for c in covers)
    return _agree(balls_chordal=direct, cover_chordal=within)


def suite_short_cycle_span(G: Graph, r: int):
    if G.n > cs.ENUM_MAX_N or r > cs.ENUM_MAX_R or ch.find_induced_wheel(G) is not None:
        return "skip"
    no_hole = ch.find_short_hole(G, r) is None
    generated = cs.short_cycles_generated_by_triangles(G, r, "enumerate").holds
    return _agree(r_chordal=no_hole, short_cycles_generated=generated)


def suite_cyclespace_chordal(G: Graph, r: int | None = None):
    return _agree(peo=ch.is_chordal(G), cyclespace=cs.chordal_via_cyclespace(G))


def suite_dirac(G: Graph, r: int | None = None):
    if G.n > sp.GLOBAL_EXHAUSTIVE_MAX_N:
        return "skip"
    return _agree(peo=ch.is_chordal(G), minimal_separators_cliques=sp.dirac_check(G).holds)


def suite_acyclic(G: Graph, r: int, R: int | None = None):
    R = r + 2 if R is None else R
    covers = _component_covers(G, r, R)
    if not all(c.converged for c in covers):
        return "inconclusive"
    return _agree(
        girth_exceeds_r=girth(G).length > r,
        balls_are_forests=ch.is_r_locally_acyclic(G, r),
        cover_is_tree=all(cv.is_tree_truncation(c) for c in covers),
    )


_SUITE_FUNCS = {
    "balls-holes-wheels": suite_balls_holes_wheels,
    "balls-separators": suite_balls_separators,
    "balls-cover": suite_balls_cover,
    "short-cycle-span": suite_short_cycle_span,
    "cyclespace-chordal": suite_cyclespace_chordal,
    "dirac": suite_dirac,
    "acyclic": suite_acyclic,
}


def verify_graph(G: Graph, rs: Sequence[int], suites: Sequence[str]) -> GraphOutcome:
    out = GraphOutcome(emit_graph6(G))
    for suite in suites:
        fn = _SUITE_FUNCS[suite]
        for r in [None] if suite in R_FREE else rs:
            try:
                res = fn(G, r)
            except LimitExceeded:
                res = "skip"
            out.results.append((suite, r, res))
    return out


def _verify_task(args):
    return verify_graph(*args)


def verify_stream(
    graphs: Iterable[Graph], rs: Sequence[int], suites: Sequence[str] = SUITES, jobs: int = 1
) -> VerifyReport:
    """Run the selected suites on every graph; results merge in input order."""
    unknown = set(suites) - set(_SUITE_FUNCS)
    if unknown:
        raise ValueError(f"unknown suites: {', '.join(sorted(unknown))}")
    report = VerifyReport()
    tasks = ((G, tuple(rs), tuple(suites)) for G in graphs)
    if jobs <= 1:
        for t in tasks:
            report.absorb(_verify_task(t))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for outcome in pool.map(_verify_task, tasks, chunksize=16):
                report.absorb(outcome)
    return report

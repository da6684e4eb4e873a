"""Seeded graph families used by ``locc gen`` and the randomized tests."""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .chordality import is_chordal
from .errors import PreconditionError
from .graph import Graph

FAMILIES = (
    "erdos-renyi",
    "random-chordal-peo",
    "random-k-tree",
    "cycle-with-chords",
    "complete",
    "wheel",
    "cycle",
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")

    def _int(self, key: str, default: int | None = None, minimum: int = 0) -> int:
        val = self.params.get(key, default)
        if val is None:
            raise PreconditionError(f"family {self.family} needs parameter {key!r}")
        val = int(val)
        if val < minimum:
            raise PreconditionError(f"parameter {key}={val} must be at least {minimum}")
        return val

    def _prob(self, key: str, default: float) -> float:
        p = float(self.params.get(key, default))
        if not 0.0 <= p <= 1.0:
            raise PreconditionError(f"parameter {key}={p} must lie in [0, 1]")
        return p


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def wheel_graph(k: int) -> Graph:
    """W_k: hub 0 joined to the rim cycle 1..k."""
    if k < 3:
        raise PreconditionError("a wheel rim needs at least 3 vertices")
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    return Graph(k + 1, rim + [(0, i) for i in range(1, k + 1)])


def erdos_renyi(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_chordal_peo(n: int, p: float, rng: random.Random) -> Graph:
    """Elimination game: a random graph filled along a random vertex order.

    Eliminating a vertex turns its not-yet-eliminated neighbours into a
    clique, so the order is a perfect elimination ordering of the result.
    """
    order = list(range(n))
    rng.shuffle(order)
    adj = [set() for _ in range(n)]
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            adj[u].add(v)
            adj[v].add(u)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        for a, b in combinations(later, 2):
            adj[a].add(b)
            adj[b].add(a)
    return Graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def random_k_tree(n: int, k: int, rng: random.Random) -> Graph:
    """Start from K_{k+1}; each new vertex joins a uniformly chosen existing k-clique."""
    if n < k + 1:
        raise PreconditionError(f"a {k}-tree needs at least {k + 1} vertices")
    edges = list(combinations(range(k + 1), 2))
    cliques = [c for c in combinations(range(k + 1), k)]
    for v in range(k + 1, n):
        base = rng.choice(cliques)
        edges += [(u, v) for u in base]
        cliques += [tuple(sorted((*sub, v))) for sub in combinations(base, k - 1)]
    return Graph(n, edges)


def cycle_with_chords(n: int, chords: int, rng: random.Random) -> Graph:
    base = cycle_graph(n)
    missing = [e for e in combinations(range(n), 2) if not base.has_edge(*e)]
    if chords > len(missing):
        raise PreconditionError(f"C_{n} has only {len(missing)} possible chords")
    return Graph(n, list(base.edges) + rng.sample(missing, chords))


def generate(spec: GeneratorSpec, rng: random.Random | None = None) -> Graph:
    """One graph for ``spec``; identical spec and seed give identical output."""
    rng = rng or random.Random(spec.seed)
    fam = spec.family
    if fam == "complete":
        return complete_graph(spec._int("n"))
    if fam == "cycle":
        return cycle_graph(spec._int("n", minimum=3))
    if fam == "wheel":
        return wheel_graph(spec._int("n", minimum=3))
    if fam == "erdos-renyi":
        return erdos_renyi(spec._int("n"), spec._prob("p", 0.5), rng)
    if fam == "random-chordal-peo":
        G = random_chordal_peo(spec._int("n"), spec._prob("p", 0.3), rng)
        if not is_chordal(G):  # pragma: no cover - guarded by construction
            raise AssertionError("elimination game produced a non-chordal graph")
        return G
    if fam == "random-k-tree":
        G = random_k_tree(spec._int("n"), spec._int("k", 2, minimum=1), rng)
        if not is_chordal(G):  # pragma: no cover
            raise AssertionError("k-tree generator produced a non-chordal graph")
        return G
    return cycle_with_chords(spec._int("n", minimum=3), spec._int("chords", 1), rng)


def generate_stream(spec: GeneratorSpec, count: int = 1) -> Iterator[Graph]:
    """``count`` graphs drawn from one RNG seeded by ``spec.seed``."""
    rng = random.Random(spec.seed)
    for _ in range(count):
        yield generate(spec, rng)

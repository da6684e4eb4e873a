"""Chordality, r-chordality, wheel-freeness and r-local chordality with certificates."""

from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

from .errors import PreconditionError
from .graph import Graph, ball, girth, induced_subgraph, is_forest, is_induced_cycle


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]

    def check(self, G: Graph) -> bool:
        return is_perfect_elimination_order(G, self.order)


@dataclass(frozen=True)
class Hole:
    """An induced cycle of length at least four, listed in cyclic order."""

    cycle: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cycle)

    def check(self, G: Graph) -> bool:
        return len(self.cycle) >= 4 and is_induced_cycle(G, self.cycle)


@dataclass(frozen=True)
class WheelWitness:
    hub: int
    rim: Hole

    def check(self, G: Graph) -> bool:
        return (
            self.hub not in self.rim.cycle
            and self.rim.check(G)
            and all(G.has_edge(self.hub, v) for v in self.rim.cycle)
        )


@dataclass(frozen=True)
class LocalChordality:
    """Outcome of an r-local chordality test.

    ``witness`` is a :class:`Hole` or :class:`WheelWitness` on failure.  When
    ``center`` is set the hole lives in the ball around that vertex (the
    direct strategy), otherwise it is induced in the host graph itself.
    """

    holds: bool
    r: int
    strategy: str
    witness: Hole | WheelWitness | None = None
    center: int | None = None


def is_perfect_elimination_order(G: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(G.n)):
        return False
    pos = [0] * G.n
    for i, v in enumerate(order):
        pos[v] = i
    for v in order:
        later = [w for w in G.adj[v] if pos[w] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1:]:
                if not G.has_edge(a, b):
                    return False
    return True


def mcs_order(G: Graph) -> list[int]:
    """Maximum cardinality search visit order (ties to the least index)."""
    weight = [0] * G.n
    numbered = [False] * G.n
    heap = [(0, v) for v in range(G.n)]
    heapq.heapify(heap)
    visit = []
    while heap:
        negw, v = heapq.heappop(heap)
        if numbered[v] or -negw != weight[v]:
            continue
        numbered[v] = True
        visit.append(v)
        for w in G.adj[v]:
            if not numbered[w]:
                weight[w] += 1
                heapq.heappush(heap, (-weight[w], w))
    return visit


def _peo_violation(G: Graph, order: Sequence[int]) -> tuple[int, int, int] | None:
    """First (v, x, y) with x, y later non-adjacent neighbours of v, or None."""
    pos = [0] * G.n
    for i, v in enumerate(order):
        pos[v] = i
    for v in order:
        later = [w for w in G.adj[v] if pos[w] > pos[v]]
        if len(later) < 2:
            continue
        parent = min(later, key=pos.__getitem__)
        for x in later:
            if x != parent and not G.has_edge(parent, x):
                return v, parent, x
    return None


def _hole_through(G: Graph, v: int, x: int, y: int) -> Hole | None:
    """Close v-x ... y-v into a hole via a shortest x-y path avoiding N[v] - {x, y}."""
    banned = G.mask(v) | (1 << v)
    banned &= ~((1 << x) | (1 << y))
    prev = {x: -1}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            path = [y]
            while prev[path[-1]] != -1:
                path.append(prev[path[-1]])
            return Hole((v, *reversed(path)))
        for w in G.adj[u]:
            if w not in prev and not (banned >> w) & 1:
                prev[w] = u
                queue.append(w)
    return None


def _any_hole(G: Graph) -> Hole | None:
    for v in range(G.n):
        nb = G.adj[v]
        for i, x in enumerate(nb):
            for y in nb[i + 1:]:
                if not G.has_edge(x, y):
                    h = _hole_through(G, v, x, y)
                    if h is not None:
                        return h
    return None


def chordality_certificate(G: Graph) -> EliminationOrder | Hole:
    """A perfect elimination ordering if G is chordal, otherwise a hole."""
    order = list(reversed(mcs_order(G)))
    bad = _peo_violation(G, order)
    if bad is None:
        return EliminationOrder(tuple(order))
    v, x, y = bad
    hole = _hole_through(G, v, x, y) or _any_hole(G)
    if hole is None:  # pragma: no cover - would mean a bug in MCS/PEO logic
        raise AssertionError("PEO check failed but no hole exists")
    return hole


def is_chordal(G: Graph) -> bool:
    order = list(reversed(mcs_order(G)))
    return _peo_violation(G, order) is None


def least_hole(G: Graph, max_len: int | None = None) -> Hole | None:
    """Lexicographically least hole of length at most ``max_len``.

    Holes are compared in canonical form (least vertex first, second vertex
    smaller than the last).  Induced paths are grown from each root in
    increasing neighbour order, so the first closure found is the least.
    """
    n = G.n
    if max_len is None:
        max_len = n
    if max_len < 4:
        return None
    masks = G._masks
    for s in range(n):
        above = ~((1 << (s + 1)) - 1)
        ms = masks[s]
        for p1 in G.adj[s]:
            if p1 < s:
                continue
            # blocked = path vertices and neighbours of interior path vertices
            found = _grow(masks, ms, above, [s, p1], (1 << s) | (1 << p1), max_len)
            if found is not None:
                return Hole(tuple(found))
    return None


def _grow(masks, ms: int, above: int, path: list[int], blocked: int, max_len: int) -> list[int] | None:
    k = len(path) - 1
    tail = path[-1]
    cand = masks[tail] & above & ~blocked
    p1 = path[1]
    while cand:
        low = cand & -cand
        x = low.bit_length() - 1
        cand ^= low
        if (ms >> x) & 1:
            if k >= 2 and x > p1 and k + 2 <= max_len:
                return path + [x]
            continue
        if k + 2 < max_len:
            path.append(x)
            res = _grow(masks, ms, above, path, blocked | (1 << x) | masks[tail], max_len)
            path.pop()
            if res is not None:
                return res
    return None


def find_short_hole(G: Graph, r: int) -> Hole | None:
    """Least hole of length 4..r; None iff G is r-chordal."""
    if r < 3:
        raise PreconditionError("r must be at least 3")
    return least_hole(G, r)


def find_induced_wheel(G: Graph) -> WheelWitness | None:
    """Least induced wheel W_n (n >= 4), found as a hole in some G[N(v)]."""
    for v in range(G.n):
        if G.degree(v) < 4:
            continue
        H, vmap = induced_subgraph(G, G.adj[v])
        if is_chordal(H):
            continue
        rim = least_hole(H)
        assert rim is not None
        return WheelWitness(v, Hole(tuple(vmap[i] for i in rim.cycle)))
    return None


def is_r_locally_chordal(
    G: Graph, r: int, strategy: Literal["direct", "holes-wheels"] = "direct"
) -> LocalChordality:
    """Decide whether every r/2-ball of G is chordal.

    ``direct`` certifies each ball separately; ``holes-wheels`` looks for a hole
    of length at most r and then for an induced wheel.
    """
    if r < 3:
        raise PreconditionError("r must be at least 3")
    if strategy == "direct":
        for v in range(G.n):
            B = ball(G, (v,), r)
            cert = chordality_certificate(B.subgraph)
            if isinstance(cert, Hole):
                hole = Hole(tuple(B.vertex_map[i] for i in cert.cycle))
                return LocalChordality(False, r, strategy, hole, v)
        return LocalChordality(True, r, strategy)
    if strategy == "holes-wheels":
        hole = find_short_hole(G, r)
        if hole is not None:
            return LocalChordality(False, r, strategy, hole)
        wheel = find_induced_wheel(G)
        if wheel is not None:
            return LocalChordality(False, r, strategy, wheel)
        return LocalChordality(True, r, strategy)
    raise PreconditionError(f"unknown strategy {strategy!r}")


def check_ball_hole(G: Graph, center: int, r: int, hole: Hole) -> bool:
    """Verify that ``hole`` (host indices) is a hole of the ball around ``center``."""
    B = ball(G, (center,), r)
    pos = {v: i for i, v in enumerate(B.vertex_map)}
    if any(v not in pos for v in hole.cycle):
        return False
    return Hole(tuple(pos[v] for v in hole.cycle)).check(B.subgraph)


def is_r_locally_acyclic(G: Graph, r: int) -> bool:
    """True iff every r/2-ball is a forest."""
    if r < 0:
        raise PreconditionError("r must be nonnegative")
    return all(is_forest(ball(G, (v,), r).subgraph) for v in range(G.n))


def girth_exceeds(G: Graph, r: int) -> bool:
    return girth(G).length > r

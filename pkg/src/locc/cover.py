"""Finite truncations of the r-local cover as quotients of walks.

Classes are walks from a base vertex up to two moves: inserting or deleting a
spur, and swapping an arc of a cycle of length at most r for the
complementary arc.  The engine below grows the tree of walks one level at a
time and, after every level, traces each short cycle from every class; a
trace that closes on a different class identifies the two, and identified
classes are folded so the quotient stays locally injective over the host.

Every identification is justified by a move, so a truncation is never
coarser than the true cover; it may be finer when the budget ``L`` is too
small to witness an identification.  ``converged`` records that the depth-R
part did not change between budgets ``L - 2`` and ``L``.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .chordality import Hole, chordality_certificate, find_induced_wheel, find_short_hole
from .cyclespace import GF2Span, EdgeVector, fundamental_basis
from .errors import CoverResourceError, PreconditionError
from .graph import Graph, ball, bfs_distances, enumerate_cycles, induced_subgraph, is_clique

DEFAULT_CLASS_LIMIT = 1_000_000

Walk = tuple[int, ...]


def class_limit_from_env() -> int:
    raw = os.environ.get("LOCC_CLASS_LIMIT")
    return int(raw) if raw else DEFAULT_CLASS_LIMIT


def is_walk(G: Graph, walk: Walk) -> bool:
    return len(walk) >= 1 and all(G.has_edge(a, b) for a, b in zip(walk, walk[1:]))


def relator_walks(G: Graph, r: int) -> list[list[Walk]]:
    """For each host vertex, the closed walks around short cycles that start there.

    A walk is stored without its start vertex and ends back at the start.
    All rotations and both orientations are included.
    """
    out: list[list[Walk]] = [[] for _ in range(G.n)]
    if r < 3:
        return out
    for cyc in enumerate_cycles(G, r):
        k = len(cyc)
        for seq in (cyc, tuple(reversed(cyc))):
            for i in range(k):
                out[seq[i]].append(tuple(seq[(i + j) % k] for j in range(1, k + 1)))
    return out


class _Quotient:
    """Mutable union-find quotient of the walk tree (internal engine)."""

    def __init__(self, G: Graph, r: int, base: int, class_limit: int):
        self.G = G
        self.r = r
        self.base = base
        self.class_limit = class_limit
        self.parent = [0]
        self.proj = [base]
        self.nbr: list[dict[int, int] | None] = [{}]
        self.created: list[tuple[int, int]] = [(-1, base)]
        self.transcript: list[tuple[Any, ...]] = []
        self.relators = relator_walks(G, r)

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def _new(self, q: int, h: int) -> int:
        c = len(self.parent)
        if c >= self.class_limit:
            raise CoverResourceError(f"walk-class quotient exceeded {self.class_limit} classes")
        self.parent.append(c)
        self.proj.append(h)
        self.nbr.append({self.proj[q]: q})
        self.created.append((q, h))
        self.nbr[q][h] = c
        return c

    def expand(self, q: int) -> None:
        nb = self.nbr[q]
        for h in self.G.adj[self.proj[q]]:
            if h not in nb:
                self._new(q, h)

    def merge(self, a: int, b: int, reason: tuple[Any, ...]) -> None:
        queue = [(a, b, reason)]
        while queue:
            a, b, why = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            assert self.proj[a] == self.proj[b]
            self.transcript.append(why)
            self.parent[b] = a
            na, nb = self.nbr[a], self.nbr[b]
            self.nbr[b] = None
            for h, y in nb.items():
                x = na.get(h)
                if x is None:
                    na[h] = y
                elif self.find(x) != self.find(y):
                    queue.append((x, y, ("fold", a, h, x, y)))

    def roots(self) -> list[int]:
        return [q for q in range(len(self.parent)) if self.parent[q] == q]

    def close_relators(self) -> None:
        changed = True
        while changed:
            changed = False
            for q in self.roots():
                for walk in self.relators[self.proj[q]]:
                    q = self.find(q)
                    cur = q
                    trace = [q]
                    for h in walk:
                        nxt = self.nbr[cur].get(h)
                        if nxt is None:
                            break
                        cur = self.find(nxt)
                        trace.append(cur)
                    else:
                        if cur != q:
                            self.merge(q, cur, ("relator", walk, tuple(trace)))
                            changed = True

    def depths(self) -> dict[int, int]:
        root = self.find(0)
        depth = {root: 0}
        queue = deque([root])
        while queue:
            q = queue.popleft()
            for y in self.nbr[q].values():
                y = self.find(y)
                if y not in depth:
                    depth[y] = depth[q] + 1
                    queue.append(y)
        return depth

    def grow(self, L: int) -> None:
        """Expand every class at depth < L, closing relators after each level."""
        deg = self.G.adj
        while True:
            depth = self.depths()
            todo = [q for q, d in depth.items() if d < L and len(self.nbr[q]) < len(deg[self.proj[q]])]
            if not todo:
                return
            level = min(depth[q] for q in todo)
            for q in sorted(q for q in todo if depth[q] == level):
                if self.find(q) == q:
                    self.expand(q)
            self.close_relators()

    def snapshot(self, R: int) -> _Snapshot:
        """Canonical form of the depth-<=R part: BFS from the base in host-vertex order."""
        root = self.find(0)
        ids = {root: 0}
        order = [root]
        depth = [0]
        walks: list[Walk] = [(self.base,)]
        head = 0
        while head < len(order):
            q = order[head]
            d = depth[head]
            head += 1
            if d == R:
                continue
            for h in sorted(self.nbr[q]):
                y = self.find(self.nbr[q][h])
                if y not in ids:
                    ids[y] = len(order)
                    order.append(y)
                    depth.append(d + 1)
                    walks.append(walks[ids[q]] + (h,))
        edges = set()
        for q, i in ids.items():
            for y in self.nbr[q].values():
                j = ids.get(self.find(y))
                if j is not None and i < j:
                    edges.add((i, j))
        return _Snapshot(
            tuple(self.proj[q] for q in order), tuple(depth), tuple(sorted(edges)), tuple(walks), tuple(order)
        )


@dataclass(frozen=True)
class _Snapshot:
    projection: tuple[int, ...]
    depth: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    walks: tuple[Walk, ...]
    engine_ids: tuple[int, ...]

    def key(self) -> tuple:
        return self.projection, self.depth, self.edges


@dataclass(frozen=True)
class WalkClassCover:
    """Depth-<=R truncation of the r-local cover around ``base``.

    Class ``0`` is the class of the trivial walk.  ``representatives[i]`` is
    the least shortest walk (as a host vertex sequence) in class ``i``.
    """

    host: Graph
    r: int
    base: int
    R: int
    L: int
    projection: tuple[int, ...]
    depth: tuple[int, ...]
    representatives: tuple[Walk, ...]
    graph: Graph
    converged: bool
    _engine: _Quotient | None = field(default=None, repr=False, compare=False)
    _engine_ids: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @property
    def num_classes(self) -> int:
        return self.graph.n

    def key(self) -> tuple:
        """Complete invariant of the rooted, projection-labelled truncation."""
        return self.projection, self.depth, self.graph.edges

    def interior(self, depth: int) -> list[int]:
        return [c for c in range(self.graph.n) if self.depth[c] <= depth]


def _cover_from_snapshot(G, r, base, R, L, snap: _Snapshot, converged: bool, engine) -> WalkClassCover:
    H = Graph(len(snap.projection), snap.edges)
    return WalkClassCover(G, r, base, R, L, snap.projection, snap.depth, snap.walks, H, converged, engine, snap.engine_ids)


def truncated_local_cover(
    G: Graph,
    r: int,
    base: int = 0,
    R: int | None = None,
    L: int | None = None,
    class_limit: int | None = None,
) -> WalkClassCover:
    """Truncation to depth R of the r-local cover, refined until stable or out of budget.

    Budgets ``R, R + 2, ...`` up to ``L`` are tried in turn; the result is
    marked converged as soon as two consecutive budgets give the same
    depth-R quotient.  Defaults: ``R = r + 2`` and ``L = 4R``.
    """
    if r < 0:
        raise PreconditionError("r must be nonnegative")
    if not 0 <= base < G.n:
        raise PreconditionError(f"base vertex {base} not in graph")
    R = r + 2 if R is None else R
    L = 4 * R if L is None else L
    if R < 1:
        raise PreconditionError("R must be at least 1")
    if L < R:
        raise PreconditionError("budget L must be at least R")
    engine = _Quotient(G, r, base, class_limit or class_limit_from_env())
    budget = R
    engine.grow(budget)
    snap = engine.snapshot(R)
    converged = False
    while budget + 2 <= L:
        budget += 2
        engine.grow(budget)
        nxt = engine.snapshot(R)
        if nxt.key() == snap.key():
            converged = True
            snap = nxt
            break
        snap = nxt
    return _cover_from_snapshot(G, r, base, R, budget, snap, converged, engine)


def identify_classes(cover: WalkClassCover, a: int, b: int) -> WalkClassCover:
    """A copy of ``cover`` with classes a and b glued together (no folding).

    Produces a deliberately wrong quotient; used as a negative control for
    the checks below.
    """
    if cover.projection[a] != cover.projection[b]:
        raise PreconditionError("only classes over the same host vertex can be identified")
    keep, drop = min(a, b), max(a, b)
    remap = {}
    for c in range(cover.graph.n):
        if c == drop:
            continue
        remap[c] = len(remap)
    remap[drop] = remap[keep]
    edges = {(remap[u], remap[v]) for u, v in cover.graph.edges if remap[u] != remap[v]}
    idx = [c for c in range(cover.graph.n) if c != drop]
    depth = [cover.depth[c] for c in idx]
    depth[remap[keep]] = min(cover.depth[a], cover.depth[b])
    H = Graph(len(idx), edges)
    return WalkClassCover(
        cover.host, cover.r, cover.base, cover.R, cover.L,
        tuple(cover.projection[c] for c in idx), tuple(depth),
        tuple(cover.representatives[c] for c in idx), H, cover.converged,
    )


# ---------------------------------------------------------------- checks


@dataclass(frozen=True)
class CheckEntry:
    name: str
    verdict: str  # "pass" | "fail" | "inconclusive"
    depth_range: tuple[int, int]
    witness: dict[str, Any] | None = None
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


@dataclass
class CoverCheckReport:
    entries: dict[str, CheckEntry] = field(default_factory=dict)

    def add(self, entry: CheckEntry) -> None:
        self.entries[entry.name] = entry

    @property
    def verdict(self) -> str:
        vs = {e.verdict for e in self.entries.values()}
        if "fail" in vs:
            return "fail"
        if "inconclusive" in vs:
            return "inconclusive"
        return "pass"


def _inconclusive(name: str, cover: WalkClassCover) -> CheckEntry:
    return CheckEntry(name, "inconclusive", (0, -1), detail={"reason": "cover did not converge"})


def verify_ball_preserving(cover: WalkClassCover, r: int | None = None) -> CheckEntry:
    """Projection restricted to each interior r/2-ball is an isomorphism onto the host ball."""
    name = "ball-preserving"
    r = cover.r if r is None else r
    if not cover.converged:
        return _inconclusive(name, cover)
    top = cover.R - math.ceil(r / 2) - 1
    H, G, p = cover.graph, cover.host, cover.projection
    for c in cover.interior(top):
        Bc = ball(H, (c,), r)
        Bg = ball(G, (p[c],), r)
        verts = [p[x] for x in Bc.vertex_map]
        edges = {tuple(sorted((p[H.edges[e][0]], p[H.edges[e][1]]))) for e in Bc.edge_map}
        problem = None
        if len(set(verts)) != len(verts):
            problem = "projection not injective on ball"
        elif set(verts) != set(Bg.vertex_map):
            problem = "ball vertex sets differ"
        elif len(edges) != len(Bc.edge_map) or edges != Bg.host_edge_set():
            problem = "ball edge sets differ"
        if problem:
            return CheckEntry(name, "fail", (0, top), {"class": c, "host_vertex": p[c], "reason": problem})
    return CheckEntry(name, "pass", (0, top))


def cover_chordal_within(cover: WalkClassCover, r: int | None = None) -> CheckEntry:
    """No short hole and no wheel among interior classes, and every interior r/2-ball chordal.

    Interior means depth at most ``R - r // 2``, so each interior ball lies
    entirely inside the truncation.
    """
    name = "chordal-within"
    r = cover.r if r is None else r
    if not cover.converged:
        return _inconclusive(name, cover)
    top = cover.R - r // 2
    inner = cover.interior(top)
    sub, vmap = induced_subgraph(cover.graph, inner)

    def lift(cycle):
        return {"classes": list(cycle), "host": [cover.projection[c] for c in cycle]}

    if r >= 3:
        hole = find_short_hole(sub, r)
        if hole is not None:
            return CheckEntry(name, "fail", (0, top), {"kind": "hole", **lift([vmap[i] for i in hole.cycle])})
        wheel = find_induced_wheel(sub)
        if wheel is not None:
            rim = [vmap[i] for i in wheel.rim.cycle]
            return CheckEntry(
                name, "fail", (0, top), {"kind": "wheel", "hub": vmap[wheel.hub], **lift(rim)}
            )
    for c in inner:
        B = ball(cover.graph, (c,), r)
        cert = chordality_certificate(B.subgraph)
        if isinstance(cert, Hole):
            cyc = [B.vertex_map[i] for i in cert.cycle]
            return CheckEntry(name, "fail", (0, top), {"kind": "ball-hole", "center": c, **lift(cyc)})
    return CheckEntry(name, "pass", (0, top))


@dataclass(frozen=True)
class LiftReport:
    X: frozenset[int]
    lifts: tuple[frozenset[int], ...]
    projections_ok: bool
    neighbourhoods_disjoint: bool
    witness: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        return self.projections_ok and self.neighbourhoods_disjoint and len(self.lifts) >= 1


def lift_clique(cover: WalkClassCover, X) -> LiftReport:
    """All lifts of the host clique X inside the truncation, with the clique-lifting checks.

    Cover edges project to host edges, so every clique of the truncation
    projects injectively onto a clique; that is checked edge by edge.  Lifts
    are located from the classes over ``min(X)``, and distinct lifts must
    have disjoint closed neighbourhoods.
    """
    G, H, p = cover.host, cover.graph, cover.projection
    xs = frozenset(X)
    if not xs or not is_clique(G, xs):
        raise PreconditionError("X must be a nonempty clique of the host")
    dist = bfs_distances(G, (cover.base,))
    reach = min(dist[x] if dist[x] >= 0 else math.inf for x in xs)
    if reach > cover.R - 2:
        raise PreconditionError(f"clique at distance {reach} is beyond reach R-2={cover.R - 2}")
    if not cover.converged:
        raise PreconditionError("cover did not converge")

    for a, b in H.edges:
        if p[a] == p[b] or not G.has_edge(p[a], p[b]):
            return LiftReport(xs, (), False, False, {"edge": [a, b], "reason": "edge does not project to an edge"})

    anchor = min(xs)
    rest = sorted(xs - {anchor})
    lifts = []
    for c in range(H.n):
        if p[c] != anchor:
            continue
        over = {p[y]: y for y in H.adj[c]}
        if all(x in over for x in rest):
            cand = frozenset([c, *(over[x] for x in rest)])
            if is_clique(H, cand):
                lifts.append(cand)
    closed = [frozenset().union(*({y, *H.adj[y]} for y in lift)) for lift in lifts]
    for i in range(len(lifts)):
        for j in range(i + 1, len(lifts)):
            if closed[i] & closed[j]:
                return LiftReport(
                    xs, tuple(lifts), True, False,
                    {"lifts": [sorted(lifts[i]), sorted(lifts[j])], "shared": sorted(closed[i] & closed[j])},
                )
    return LiftReport(xs, tuple(lifts), True, True)


def short_cycle_generation_check(cover: WalkClassCover, r: int | None = None, cycle_limit: int = 200_000) -> CheckEntry:
    """Fundamental cycles away from the truncation boundary lie in the span of cycles of length <= r."""
    name = "short-cycle-generation"
    r = cover.r if r is None else r
    if not cover.converged:
        return _inconclusive(name, cover)
    H = cover.graph
    top = cover.R - 1
    span = GF2Span()
    if r >= 3:
        for cyc in enumerate_cycles(H, r, limit=cycle_limit):
            span.add(EdgeVector.from_cycle(H, cyc).bits)
    skipped = checked = 0
    for vec in fundamental_basis(H).vectors:
        verts = {v for e in vec.edges() for v in e}
        if any(cover.depth[v] > top for v in verts):
            skipped += 1
            continue
        checked += 1
        if not span.contains(vec.bits):
            return CheckEntry(
                name, "fail", (0, top), {"cycle_edges": [list(e) for e in vec.edges()]},
                {"checked": checked, "skipped": skipped},
            )
    return CheckEntry(name, "pass", (0, top), detail={"checked": checked, "skipped": skipped})


def cover_report(cover: WalkClassCover) -> CoverCheckReport:
    rep = CoverCheckReport()
    rep.add(verify_ball_preserving(cover))
    rep.add(cover_chordal_within(cover))
    rep.add(short_cycle_generation_check(cover))
    return rep


def is_tree_truncation(cover: WalkClassCover) -> bool:
    return cover.graph.m == cover.graph.n - 1


def is_identity_cover(cover: WalkClassCover, component=None) -> bool:
    """Projection is a bijection onto the base's component, on vertices and edges."""
    G = cover.host
    if component is None:
        dist = bfs_distances(G, (cover.base,))
        component = {v for v in range(G.n) if dist[v] >= 0}
    p = cover.projection
    if len(set(p)) != len(p) or set(p) != set(component):
        return False
    edges = {tuple(sorted((p[a], p[b]))) for a, b in cover.graph.edges}
    host_edges = {e for e in G.edges if e[0] in component}
    return len(edges) == cover.graph.m and edges == host_edges


@dataclass(frozen=True)
class CoverComparison:
    status: str  # "isomorphic" | "different" | "inconclusive"
    classes: tuple[int, int]


def compare_covers(G: Graph, r: int, R: int | None = None, base: int = 0, L: int | None = None) -> CoverComparison:
    """Compare the depth-R truncations of the 3-local and r-local covers of an r-chordal graph."""
    if r < 3:
        raise PreconditionError("r must be at least 3")
    hole = find_short_hole(G, r)
    if hole is not None:
        raise PreconditionError(f"graph is not {r}-chordal: hole {list(hole.cycle)}")
    R = r + 2 if R is None else R
    c3 = truncated_local_cover(G, 3, base, R, L)
    cr = truncated_local_cover(G, r, base, R, L)
    sizes = (c3.num_classes, cr.num_classes)
    if not (c3.converged and cr.converged):
        return CoverComparison("inconclusive", sizes)
    return CoverComparison("isomorphic" if c3.key() == cr.key() else "different", sizes)


# ---------------------------------------------------------------- transcript replay


def replay_transcript(cover: WalkClassCover) -> bool:
    """Re-derive every identification from creation edges alone.

    Each relator step must trace its short cycle along creation edges
    (modulo identifications already replayed) and each fold step must join
    two classes reached from one class over the same host vertex.  The
    replayed partition must equal the engine's final one.
    """
    eng = cover._engine
    if eng is None:
        raise PreconditionError("cover carries no transcript")
    size = len(eng.created)
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adjacent: list[list[int]] = [[] for _ in range(size)]
    for child, (par, _h) in enumerate(eng.created):
        if par >= 0:
            adjacent[par].append(child)
            adjacent[child].append(par)
    members: dict[int, list[int]] = {i: [i] for i in range(size)}

    def linked(a, b):
        ra, rb = find(a), find(b)
        for x in members[ra]:
            for y in adjacent[x]:
                if find(y) == rb:
                    return True
        return False

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if len(members[ra]) < len(members[rb]):
            ra, rb = rb, ra
        parent[rb] = ra
        members[ra].extend(members.pop(rb))

    proj = eng.proj
    for step in eng.transcript:
        if step[0] == "relator":
            _, walk, trace = step
            if len(trace) != len(walk) + 1 or proj[trace[-1]] != proj[trace[0]]:
                return False
            for i, h in enumerate(walk):
                if proj[trace[i + 1]] != h or not linked(trace[i], trace[i + 1]):
                    return False
            union(trace[0], trace[-1])
        elif step[0] == "fold":
            _, via, h, x, y = step
            if proj[x] != h or proj[y] != h or not (linked(via, x) and linked(via, y)):
                return False
            union(x, y)
        else:
            return False
    pairing: dict[int, int] = {}
    for q in range(size):
        if pairing.setdefault(find(q), eng.find(q)) != eng.find(q):
            return False
    return len(set(pairing.values())) == len(pairing)


# ---------------------------------------------------------------- dumps


def cover_to_text(cover: WalkClassCover) -> str:
    lines = [f"# r={cover.r} base={cover.base} R={cover.R} L={cover.L} converged={str(cover.converged).lower()}"]
    lines.append(f"{cover.graph.n} {cover.graph.m}")
    lines += [f"{a} {b}" for a, b in cover.graph.edges]
    lines.append("# class depth projection representative")
    for c in range(cover.graph.n):
        walk = ",".join(map(str, cover.representatives[c]))
        lines.append(f"# {c} {cover.depth[c]} {cover.projection[c]} {walk}")
    return "\n".join(lines) + "\n"


def cover_to_dot(cover: WalkClassCover) -> str:
    G = cover.host
    lines = ["graph cover {"]
    for c in range(cover.graph.n):
        lines.append(f'  {c} [label="{G.label(cover.projection[c])}/{cover.depth[c]}"];')
    for a, b in cover.graph.edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"

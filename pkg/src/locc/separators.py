"""Edge boundaries, r-local components and (minimal, tight) r-local separators.

Two boundary edges are related when some cycle of length at most r carries
an X-walk from one to the other.  Inside a single cycle such a walk stays in
one arc of ``O - X``, so it is enough to join, for every short cycle and
every arc, the two cycle edges leaving the arc into X.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

from .chordality import is_r_locally_chordal
from .errors import LimitExceeded, PreconditionError
from .graph import Graph, ball, components, enumerate_cycles, is_clique

INF = math.inf
LOCAL_EXHAUSTIVE_MAX_N = 10
GLOBAL_EXHAUSTIVE_MAX_N = 12
CYCLE_LIMIT = 500_000


def _mask(X: Iterable[int]) -> int:
    m = 0
    for v in X:
        m |= 1 << v
    return m


def _members(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def edge_boundary(G: Graph, X: Iterable[int]) -> frozenset[int]:
    """Indices of edges with exactly one end in X."""
    m = _mask(X)
    return frozenset(i for i, (a, b) in enumerate(G.edges) if ((m >> a) ^ (m >> b)) & 1)


@dataclass(frozen=True)
class LocalComponents:
    X: frozenset[int]
    r: float
    boundary: frozenset[int]
    partition: tuple[frozenset[int], ...]

    def part_of(self, edge: int) -> int:
        for i, part in enumerate(self.partition):
            if edge in part:
                return i
        raise KeyError(edge)

    def __len__(self) -> int:
        return len(self.partition)


@dataclass(frozen=True)
class SeparatorWitness:
    u: int
    w: int
    v: int
    X: frozenset[int]
    r: float


@dataclass(frozen=True)
class TightReport:
    X: frozenset[int]
    parts: tuple[frozenset[int], ...]
    full_parts: tuple[frozenset[int], ...]

    @property
    def tight(self) -> bool:
        return len(self.full_parts) >= 2


class LocalSeparationContext:
    """Short cycles of G for a fixed r plus a cache of boundary partitions by vertex mask."""

    def __init__(self, G: Graph, r: float, cycle_limit: int = CYCLE_LIMIT):
        if r < 0:
            raise PreconditionError("r must be nonnegative")
        self.G = G
        self.r = r
        self.cycles: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        if r != INF and r >= 3:
            for cyc in enumerate_cycles(G, int(r), limit=cycle_limit):
                k = len(cyc)
                eids = tuple(G.edge_index(cyc[i], cyc[(i + 1) % k]) for i in range(k))
                self.cycles.append((cyc, eids))
        self._cache: dict[int, dict[int, int]] = {}

    def labels(self, xmask: int) -> dict[int, int]:
        """Boundary edge index -> representative edge of its r-local component."""
        got = self._cache.get(xmask)
        if got is None:
            got = self._compute(xmask)
            self._cache[xmask] = got
        return got

    def _compute(self, xmask: int) -> dict[int, int]:
        G = self.G
        parent = {i: i for i, (a, b) in enumerate(G.edges) if ((xmask >> a) ^ (xmask >> b)) & 1}

        def find(e: int) -> int:
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        def union(e: int, f: int) -> None:
            a, b = find(e), find(f)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b

        if self.r == INF:
            for comp in components(G, _members(xmask)):
                edges = [G.edge_index(c, x) for c in comp for x in G.adj[c] if (xmask >> x) & 1]
                for e in edges[1:]:
                    union(edges[0], e)
        else:
            for verts, eids in self.cycles:
                k = len(verts)
                inside = [(xmask >> v) & 1 for v in verts]
                if not any(inside) or all(inside):
                    continue
                for i in range(k):
                    if inside[i] and not inside[(i + 1) % k]:
                        j = (i + 1) % k
                        while not inside[j]:
                            j = (j + 1) % k
                        union(eids[i], eids[j - 1])
        return {e: find(e) for e in parent}

    def components(self, X: Iterable[int]) -> LocalComponents:
        xset = frozenset(X)
        labels = self.labels(_mask(xset))
        groups: dict[int, set[int]] = {}
        for e, root in labels.items():
            groups.setdefault(root, set()).add(e)
        parts = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
        return LocalComponents(xset, self.r, frozenset(labels), parts)

    def separates_mask(self, xmask: int, u: int, w: int, v: int) -> bool:
        labels = self.labels(xmask)
        G = self.G
        return labels[G.edge_index(u, v)] != labels[G.edge_index(v, w)]


def local_components(G: Graph, X: Iterable[int], r: float, ctx: LocalSeparationContext | None = None) -> LocalComponents:
    xs = frozenset(X)
    if not xs:
        raise PreconditionError("X must be nonempty")
    ctx = ctx or LocalSeparationContext(G, r)
    return ctx.components(xs)


def is_local_separator(G: Graph, X: Iterable[int], r: float) -> bool:
    return len(local_components(G, X, r)) >= 2


def _check_triple(G: Graph, X: frozenset[int], u: int, w: int, v: int) -> None:
    if u == w:
        raise PreconditionError("u and w must be distinct")
    if not (G.has_edge(u, v) and G.has_edge(v, w)):
        raise PreconditionError("uv and vw must be edges")
    if G.has_edge(u, w):
        raise PreconditionError("u and w must be non-adjacent")
    if v not in X:
        raise PreconditionError("v must belong to X")
    if u in X or w in X:
        raise PreconditionError("X must avoid u and w")


def locally_separates(
    G: Graph, X: Iterable[int], u: int, w: int, v: int, r: float, ctx: LocalSeparationContext | None = None
) -> bool:
    """Whether uv and vw lie in distinct r-local components at X."""
    xs = frozenset(X)
    _check_triple(G, xs, u, w, v)
    ctx = ctx or LocalSeparationContext(G, r)
    return ctx.separates_mask(_mask(xs), u, w, v)


def _proper_separating_subset(ctx: LocalSeparationContext, xmask: int, u: int, w: int, v: int) -> int | None:
    free = _members(xmask & ~(1 << v))
    for size in range(len(free)):
        for sub in combinations(sorted(free), size):
            m = (1 << v) | _mask(sub)
            if ctx.separates_mask(m, u, w, v):
                return m
    return None


def is_minimal_local_separator(
    G: Graph, X: Iterable[int], u: int, w: int, v: int, r: float, ctx: LocalSeparationContext | None = None
) -> bool:
    """X separates uv from vw and no proper subset containing v does (exhaustive)."""
    xs = frozenset(X)
    _check_triple(G, xs, u, w, v)
    ctx = ctx or LocalSeparationContext(G, r)
    m = _mask(xs)
    return ctx.separates_mask(m, u, w, v) and _proper_separating_subset(ctx, m, u, w, v) is None


def minimize_separator(
    G: Graph,
    X: Iterable[int],
    u: int,
    w: int,
    v: int,
    r: float,
    exhaustive_limit: int = 16,
    ctx: LocalSeparationContext | None = None,
) -> frozenset[int]:
    """Shrink an r-local u-w separator (w.r.t. v) to an inclusion-minimal one.

    Vertices other than v are dropped greedily in increasing index order,
    restarting after every success.  Because separation need not be monotone
    under deletion, the greedy result is then checked against all of its
    proper subsets (when it has at most ``exhaustive_limit`` vertices) and the
    descent restarts from any smaller separator found.
    """
    xs = frozenset(X)
    _check_triple(G, xs, u, w, v)
    ctx = ctx or LocalSeparationContext(G, r)
    cur = _mask(xs)
    if not ctx.separates_mask(cur, u, w, v):
        raise PreconditionError("X does not r-locally separate u and w")
    while True:
        progress = True
        while progress:
            progress = False
            for x in sorted(_members(cur)):
                if x == v:
                    continue
                cand = cur & ~(1 << x)
                if ctx.separates_mask(cand, u, w, v):
                    cur = cand
                    progress = True
                    break
        if bin(cur).count("1") > exhaustive_limit:
            return _members(cur)
        smaller = _proper_separating_subset(ctx, cur, u, w, v)
        if smaller is None:
            return _members(cur)
        cur = smaller


def distance_two_triples(G: Graph) -> Iterator[tuple[int, int, int]]:
    """(u, w, v) with u < w non-adjacent and v a common neighbour."""
    for u in range(G.n):
        for w in range(u + 1, G.n):
            if G.has_edge(u, w):
                continue
            common = G.mask(u) & G.mask(w)
            while common:
                low = common & -common
                yield u, w, low.bit_length() - 1
                common ^= low


@dataclass
class TripleSweep:
    """All r-local u-w separators w.r.t. v, as vertex masks, and the minimal ones."""

    u: int
    w: int
    v: int
    separating: list[int]
    minimal: list[int]


def sweep_triples(G: Graph, r: float, ctx: LocalSeparationContext | None = None) -> Iterator[TripleSweep]:
    """Exhaustive subset search over every distance-2 triple."""
    ctx = ctx or LocalSeparationContext(G, r)
    full = (1 << G.n) - 1
    for u, w, v in distance_two_triples(G):
        free = full & ~((1 << u) | (1 << w) | (1 << v))
        subs = []
        sub = free
        while True:
            subs.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & free
        subs.sort(key=lambda s: (bin(s).count("1"), s))
        separating = []
        minimal: list[int] = []
        for s in subs:
            m = s | (1 << v)
            if ctx.separates_mask(m, u, w, v):
                separating.append(m)
                if not any(mm & m == mm for mm in minimal):
                    minimal.append(m)
        yield TripleSweep(u, w, v, separating, minimal)


def _guard(G: Graph, limit: int) -> None:
    if G.n > limit:
        raise LimitExceeded(f"exhaustive search limited to n <= {limit}, got n={G.n}")


def minimal_local_separators(G: Graph, r: float, limit: int = LOCAL_EXHAUSTIVE_MAX_N) -> list[SeparatorWitness]:
    """Every minimal r-local separator, deduplicated by vertex set (first witness kept)."""
    _guard(G, limit)
    seen: dict[int, SeparatorWitness] = {}
    for tr in sweep_triples(G, r):
        for m in tr.minimal:
            if m not in seen:
                seen[m] = SeparatorWitness(tr.u, tr.w, tr.v, _members(m), r)
    return sorted(seen.values(), key=lambda s: sorted(s.X))


@dataclass(frozen=True)
class SeparatorVerdict:
    holds: bool
    witness: SeparatorWitness | None = None


def all_minimal_separators_cliques(G: Graph, r: float, limit: int = LOCAL_EXHAUSTIVE_MAX_N) -> SeparatorVerdict:
    _guard(G, limit)
    for tr in sweep_triples(G, r):
        for m in tr.minimal:
            X = _members(m)
            if not is_clique(G, X):
                return SeparatorVerdict(False, SeparatorWitness(tr.u, tr.w, tr.v, X, r))
    return SeparatorVerdict(True)


# ---------------------------------------------------------------- global separators


def _full_component_count(G: Graph, smask: int) -> int:
    remaining = ((1 << G.n) - 1) & ~smask
    full = 0
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            nb = 0
            f = frontier
            while f:
                b = f & -f
                nb |= G.mask(b.bit_length() - 1)
                f ^= b
            frontier = nb & remaining & ~comp
            comp |= frontier
        remaining &= ~comp
        nbhd = 0
        f = comp
        while f:
            b = f & -f
            nbhd |= G.mask(b.bit_length() - 1)
            f ^= b
        if nbhd & ~comp == smask:
            full += 1
    return full


def global_minimal_separators(G: Graph, limit: int = GLOBAL_EXHAUSTIVE_MAX_N) -> list[frozenset[int]]:
    """All minimal vertex separators, i.e. sets S with at least two full components in G - S."""
    _guard(G, limit)
    out = []
    for smask in range(1 << G.n):
        if _full_component_count(G, smask) >= 2:
            out.append(_members(smask))
    return sorted(out, key=lambda S: (len(S), sorted(S)))


@dataclass(frozen=True)
class DiracVerdict:
    holds: bool
    witness: frozenset[int] | None = None


def dirac_check(G: Graph, limit: int = GLOBAL_EXHAUSTIVE_MAX_N) -> DiracVerdict:
    """Are all minimal separators cliques?  Returns a non-clique one otherwise."""
    _guard(G, limit)
    for smask in range(1 << G.n):
        S = _members(smask)
        if len(S) < 2 or is_clique(G, S):
            continue
        if _full_component_count(G, smask) >= 2:
            return DiracVerdict(False, S)
    return DiracVerdict(True)


# ---------------------------------------------------------------- tightness


def tight_report(G: Graph, X: Iterable[int], r: float, ctx: LocalSeparationContext | None = None) -> TightReport:
    xs = frozenset(X)
    comps = local_components(G, xs, r, ctx)
    full = []
    for part in comps.partition:
        touched = set()
        for e in part:
            a, b = G.edges[e]
            touched.add(a if a in xs else b)
        if touched == xs:
            full.append(part)
    return TightReport(xs, comps.partition, tuple(full))


@dataclass(frozen=True)
class TightWitness:
    graph: Graph
    X: frozenset[int]
    report: TightReport
    index: int


def search_tight_nonclique_witness(r: int, graphs: Iterable[Graph]) -> TightWitness | None:
    """First r-locally chordal graph in the stream with a tight non-clique r-local separator.

    Candidate sets are tried by increasing size, then lexicographically.
    Returns None when the stream is exhausted without a witness.
    """
    for idx, G in enumerate(graphs):
        if G.n < 2 or not is_r_locally_chordal(G, r).holds:
            continue
        ctx = LocalSeparationContext(G, r)
        for size in range(2, G.n + 1):
            for X in combinations(range(G.n), size):
                if is_clique(G, X):
                    continue
                rep = tight_report(G, X, r, ctx)
                if rep.tight:
                    return TightWitness(G, frozenset(X), rep, idx)
    return None


def lemma_local_to_ball_separator(G: Graph, X: Iterable[int], u: int, w: int, v: int, r: int) -> bool:
    """Check that X restricted to distance <= r/2 from v separates u and w in the r/2-ball of v."""
    xs = frozenset(X)
    if not locally_separates(G, xs, u, w, v, r):
        raise PreconditionError("X does not r-locally separate u and w with respect to v")
    return ball_separates(G, xs, u, w, v, r)


def ball_separates(G: Graph, X: Iterable[int], u: int, w: int, v: int, r: int) -> bool:
    B = ball(G, (v,), r)
    pos = {h: i for i, h in enumerate(B.vertex_map)}
    if u not in pos or w not in pos:
        return True
    # every vertex of the ball is within distance r // 2 of v
    cut = {pos[x] for x in X if x in pos}
    H = B.subgraph
    start, goal = pos[u], pos[w]
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        if a == goal:
            return False
        for b in H.adj[a]:
            if b not in seen and b not in cut:
                seen.add(b)
                queue.append(b)
    return True

"""Finite simple graphs, graph6/edge-list ingestion, distances, balls and girth.

Vertices are dense indices ``0..n-1``.  Edges are stored once as ``(u, v)``
with ``u < v`` and are indexed lexicographically; that index is the
coordinate used by edge vectors in :mod:`locc.cyclespace`.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .errors import EdgeListError, Graph6Error, LimitExceeded, PreconditionError

GRAPH6_HEADER = b">>graph6<<"
GRAPH6_MAX_N = 100_000


class Graph:
    """Immutable finite simple undirected graph."""

    __slots__ = ("n", "adj", "edges", "labels", "_eindex", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise PreconditionError("vertex count must be nonnegative")
        canon = set()
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            canon.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(canon))
        self._eindex = {e: i for i, e in enumerate(self.edges)}
        nbrs: list[list[int]] = [[] for _ in range(n)]
        masks = [0] * n
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self._masks = tuple(masks)
        if labels is not None and len(labels) != n:
            raise PreconditionError("labels must have one entry per vertex")
        self.labels = tuple(labels) if labels is not None else None

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def mask(self, v: int) -> int:
        """Neighbourhood of ``v`` as a bitmask."""
        return self._masks[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (self._masks[u] >> v) & 1 == 1

    def edge_index(self, u: int, v: int) -> int:
        return self._eindex[(u, v) if u < v else (v, u)]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class DistanceMap:
    """Multi-source BFS distances; ``None`` marks unreachable vertices."""

    __slots__ = ("sources", "dist")

    def __init__(self, sources: frozenset[int], dist: tuple[int | None, ...]):
        self.sources = sources
        self.dist = dist

    def __getitem__(self, v: int) -> int | None:
        return self.dist[v]

    def reachable(self, v: int) -> bool:
        return self.dist[v] is not None


@dataclass(frozen=True)
class Ball:
    """The r/2-ball around ``center`` together with its embedding into ``host``."""

    host: Graph
    center: frozenset[int]
    r: int
    subgraph: Graph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def host_vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertex_map)

    def host_edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.host.edges[i] for i in self.edge_map)


class Girth(NamedTuple):
    length: float
    cycle: tuple[int, ...] | None


# ---------------------------------------------------------------- graph6


def _n_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def emit_graph6(G: Graph) -> str:
    out = bytearray(_n_bytes(G.n))
    acc = nbits = 0
    for j in range(1, G.n):
        mj = G.mask(j)
        for i in range(j):
            acc = (acc << 1) | ((mj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def parse_graph6(text: bytes | str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n \t")
    pos = 0
    if data.startswith(GRAPH6_HEADER):
        pos = len(GRAPH6_HEADER)
    if pos < len(data) and data[pos] == ord(":"):
        raise Graph6Error("sparse6 input is not supported", pos)
    for k in range(pos, len(data)):
        if not 63 <= data[k] <= 126:
            raise Graph6Error(f"character {data[k]!r} outside graph6 range 63..126", k)
    if pos >= len(data):
        raise Graph6Error("missing vertex count", pos)

    def group(start: int, count: int) -> int:
        if start + count > len(data):
            raise Graph6Error("truncated vertex-count prefix", len(data))
        val = 0
        for k in range(start, start + count):
            val = (val << 6) | (data[k] - 63)
        return val

    if data[pos] != 126:
        n, pos = data[pos] - 63, pos + 1
    elif pos + 1 < len(data) and data[pos + 1] == 126:
        n, pos = group(pos + 2, 6), pos + 8
        if n <= 258047:
            raise Graph6Error("non-canonical 8-byte vertex count", pos - 8)
    else:
        n, pos = group(pos + 1, 3), pos + 4
        if n <= 62:
            raise Graph6Error("non-canonical 4-byte vertex count", pos - 4)
    if n > GRAPH6_MAX_N:
        raise Graph6Error(f"vertex count {n} exceeds limit {GRAPH6_MAX_N}", pos)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos != need:
        raise Graph6Error(f"expected {need} adjacency bytes, found {len(data) - pos}", pos)
    edges = []
    k = 0
    body = data[pos:]
    for j in range(1, n):
        for i in range(j):
            if ((body[k // 6] - 63) >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("nonzero padding bits", len(data) - 1)
    return Graph(n, edges)


def read_graph6_stream(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    """Yield graphs from newline-delimited graph6, skipping blank lines."""
    for line in lines:
        if isinstance(line, bytes):
            line = line.decode("ascii", "replace")
        line = line.strip()
        if line:
            yield parse_graph6(line)


# ---------------------------------------------------------------- edge lists


def parse_edge_list(text: str, header: bool | None = None) -> Graph:
    """Parse ``u v`` lines with 0-based endpoints.

    The first line is read as an ``n m`` header when ``header`` is true, or,
    when ``header`` is None, if it announces exactly the number of edge lines
    that follow and every endpoint is below ``n``.  ``#`` starts a comment.
    """
    rows: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected two integers, got {raw!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer token in {raw!r}", lineno) from None
        if a < 0 or b < 0:
            raise EdgeListError("negative vertex index", lineno)
        rows.append((lineno, a, b))

    n: int | None = None
    if rows and header is not False:
        _, hn, hm = rows[0]
        rest = rows[1:]
        looks_like_header = len(rest) == hm and all(a < hn and b < hn for _, a, b in rest)
        if header or looks_like_header:
            n = hn
            rows = rest
    edges = []
    for lineno, a, b in rows:
        if a == b:
            raise EdgeListError(f"self-loop at vertex {a}", lineno)
        if n is not None and max(a, b) >= n:
            raise EdgeListError(f"vertex index {max(a, b)} >= n={n}", lineno)
        edges.append((a, b))
    if n is None:
        n = 1 + max((max(a, b) for a, b in edges), default=-1)
    return Graph(n, edges)


def emit_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- traversal


def bfs_distances(G: Graph, sources: Iterable[int], limit: int | None = None) -> list[int]:
    """Multi-source BFS; unreachable (or beyond ``limit``) vertices get -1."""
    dist = [-1] * G.n
    queue = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    adj = G.adj
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du + 1
                queue.append(w)
    return dist


def _check_vertex_set(G: Graph, X: Iterable[int]) -> frozenset[int]:
    S = frozenset(X)
    for v in S:
        if not 0 <= v < G.n:
            raise PreconditionError(f"vertex {v} not in graph with n={G.n}")
    return S


def distances(G: Graph, S: Iterable[int]) -> DistanceMap:
    src = _check_vertex_set(G, S)
    if not src:
        raise PreconditionError("source set must be nonempty")
    dist = bfs_distances(G, sorted(src))
    return DistanceMap(src, tuple(d if d >= 0 else None for d in dist))


def neighborhood(G: Graph, X: Iterable[int], d: float, closed: bool = True) -> frozenset[int]:
    """``N^d[X]`` (closed: distance at most d) or ``N^d(X)`` (open: exactly d)."""
    src = _check_vertex_set(G, X)
    if not src:
        raise PreconditionError("X must be nonempty")
    if d < 0:
        raise PreconditionError("depth must be nonnegative")
    if not closed and d != int(d):
        return frozenset()
    dist = bfs_distances(G, sorted(src), limit=math.floor(d))
    if closed:
        return frozenset(v for v, dv in enumerate(dist) if dv >= 0)
    return frozenset(v for v, dv in enumerate(dist) if dv == d)


def ball(G: Graph, X: Iterable[int], r: int) -> Ball:
    """The ball of radius r/2 around the vertex set ``X``.

    A vertex belongs to the ball if it is within distance ``r // 2`` of some
    ``x`` in X; an edge belongs to it if, for some single ``x``, the distances
    of its two endpoints to ``x`` sum to less than ``r``.
    """
    center = _check_vertex_set(G, X)
    if not center:
        raise PreconditionError("ball center must be nonempty")
    if r < 0:
        raise PreconditionError("r must be nonnegative")
    half = r // 2
    verts: set[int] = set()
    edges: set[tuple[int, int]] = set()
    adj = G.adj
    for x in sorted(center):
        dist = bfs_distances(G, (x,), limit=half)
        inside = [v for v, dv in enumerate(dist) if dv >= 0]
        verts.update(inside)
        for u in inside:
            du = dist[u]
            for w in adj[u]:
                if w > u and dist[w] >= 0 and du + dist[w] < r:
                    edges.add((u, w))
    vmap = tuple(sorted(verts))
    pos = {v: i for i, v in enumerate(vmap)}
    sub = Graph(len(vmap), ((pos[u], pos[w]) for u, w in edges))
    emap = tuple(G.edge_index(vmap[a], vmap[b]) for a, b in sub.edges)
    return Ball(G, center, r, sub, vmap, emap)


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """``G[S]`` relabelled in increasing host order, plus the map back to G."""
    vmap = tuple(sorted(_check_vertex_set(G, S)))
    pos = {v: i for i, v in enumerate(vmap)}
    edges = [(pos[u], pos[w]) for u in vmap for w in G.adj[u] if w > u and w in pos]
    labels = [G.label(v) for v in vmap] if G.labels is not None else None
    return Graph(len(vmap), edges, labels), vmap


def components(G: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of ``G - removed``, ordered by least vertex."""
    seen = [False] * G.n
    for v in removed:
        seen[v] = True
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in G.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


def is_forest(G: Graph) -> bool:
    return G.m == G.n - len(components(G))


def is_clique(G: Graph, S: Iterable[int]) -> bool:
    vs = sorted(set(S))
    return all(G.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])


def is_induced_cycle(G: Graph, cycle: Sequence[int]) -> bool:
    """True iff ``cycle`` lists the vertices of an induced cycle in order."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k or any(not 0 <= v < G.n for v in cycle):
        return False
    members = 0
    for v in cycle:
        members |= 1 << v
    for i, v in enumerate(cycle):
        want = (1 << cycle[i - 1]) | (1 << cycle[(i + 1) % k])
        if G.mask(v) & members != want:
            return False
    return True


def girth(G: Graph) -> Girth:
    """Length of a shortest cycle and one such cycle; ``inf`` for forests."""
    best = math.inf
    witness: tuple[int, ...] | None = None
    adj = G.adj
    for root in range(G.n):
        if best == 3:
            break
        dist = [-1] * G.n
        parent = [-1] * G.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u] and dist[u] + dist[w] + 1 < best:
                    cyc = _tree_cycle(parent, u, w)
                    if len(cyc) < best:
                        best = len(cyc)
                        witness = cyc
    if witness is None:
        return Girth(math.inf, None)
    return Girth(len(witness), witness)


def _tree_cycle(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    pu = [u]
    while parent[pu[-1]] >= 0:
        pu.append(parent[pu[-1]])
    pw = [w]
    while parent[pw[-1]] >= 0:
        pw.append(parent[pw[-1]])
    on_u = set(pu)
    lca_i = next(i for i, x in enumerate(pw) if x in on_u)
    lca = pw[lca_i]
    up = pu[: pu.index(lca) + 1]
    down = pw[:lca_i]
    return tuple(reversed(up)) + tuple(down)


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at the least vertex, oriented so the second entry is smaller than the last."""
    k = len(cycle)
    i = min(range(k), key=cycle.__getitem__)
    fwd = tuple(cycle[(i + j) % k] for j in range(k))
    if k > 2 and fwd[1] > fwd[-1]:
        fwd = (fwd[0],) + tuple(reversed(fwd[1:]))
    return fwd


def enumerate_cycles(G: Graph, max_len: int, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """All cycles of length 3..max_len, each once, in canonical form.

    Cycles are rooted at their least vertex and explored by DFS in increasing
    neighbour order.  Raises :class:`LimitExceeded` after ``limit`` cycles.
    """
    adj = G.adj
    count = 0
    for s in range(G.n):
        path = [s]
        on_path = 1 << s
        # stack of iterators over candidate next vertices
        stack = [iter([w for w in adj[s] if w > s])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                if len(path) > 1:
                    on_path &= ~(1 << path.pop())
                continue
            if len(path) >= 2 and nxt > path[1] and G.has_edge(nxt, s):
                count += 1
                if limit is not None and count > limit:
                    raise LimitExceeded(f"more than {limit} cycles of length <= {max_len}")
                yield (*path, nxt)
            if len(path) + 1 < max_len:
                path.append(nxt)
                on_path |= 1 << nxt
                stack.append(iter([w for w in adj[nxt] if w > s and not (on_path >> w) & 1]))

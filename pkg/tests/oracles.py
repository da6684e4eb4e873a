"""Brute-force reference implementations used only by the tests.

Everything here is written from the definitions and avoids the library's
own search code, so agreement between the two is meaningful.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from pathlib import Path

import networkx as nx

from locc.graph import Graph

CORPUS = Path(__file__).parent / "data" / "graphs_n1-8.g6"


@lru_cache(maxsize=None)
def corpus_lines() -> tuple[str, ...]:
    return tuple(line for line in CORPUS.read_text().split() if line)


@lru_cache(maxsize=None)
def corpus(max_n: int = 8, connected: bool = False) -> tuple[Graph, ...]:
    from locc.graph import is_connected, parse_graph6

    out = []
    for line in corpus_lines():
        G = parse_graph6(line)
        if G.n <= max_n and (not connected or is_connected(G)):
            out.append(G)
    return tuple(out)


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def nx_graph6(G: Graph) -> str:
    return nx.to_graph6_bytes(to_nx(G), header=False).decode().strip()


def from_nx(H: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(H.nodes))}
    return Graph(len(idx), [(idx[a], idx[b]) for a, b in H.edges])


# ---------------------------------------------------------------- balls and holes


def oracle_ball(G: Graph, X, r: int) -> tuple[set[int], set[tuple[int, int]]]:
    """Ball membership straight from the definitions, via networkx distances."""
    H = to_nx(G)
    dist = {x: nx.single_source_shortest_path_length(H, x) for x in X}
    verts = {v for v in range(G.n) if any(v in dist[x] and dist[x][v] <= r // 2 for x in X)}
    edges = {
        (a, b)
        for a, b in G.edges
        if any(a in dist[x] and b in dist[x] and dist[x][a] + dist[x][b] < r for x in X)
    }
    return verts, edges


def _is_induced_cycle(G: Graph, S) -> bool:
    S = list(S)
    if len(S) < 3:
        return False
    sub = to_nx(G).subgraph(S)
    return all(d == 2 for _, d in sub.degree) and nx.is_connected(sub)


def brute_holes(G: Graph, max_len: int | None = None) -> list[frozenset[int]]:
    """Vertex sets of all holes (induced cycles of length >= 4) up to ``max_len``."""
    max_len = G.n if max_len is None else max_len
    return [
        frozenset(S)
        for k in range(4, min(max_len, G.n) + 1)
        for S in combinations(range(G.n), k)
        if _is_induced_cycle(G, S)
    ]


def brute_is_r_locally_chordal(G: Graph, r: int) -> bool:
    for v in range(G.n):
        verts, edges = oracle_ball(G, [v], r)
        B = nx.Graph()
        B.add_nodes_from(verts)
        B.add_edges_from(edges)
        if not nx.is_chordal(B):
            return False
    return True


def brute_has_wheel(G: Graph) -> bool:
    for hub in range(G.n):
        nb = G.adj[hub]
        for k in range(4, len(nb) + 1):
            for rim in combinations(nb, k):
                if _is_induced_cycle(G, rim):
                    return True
    return False


def brute_girth(G: Graph) -> float:
    best = float("inf")
    for k in range(3, G.n + 1):
        for S in combinations(range(G.n), k):
            sub = to_nx(G).subgraph(S)
            if sub.number_of_edges() >= k and any(len(c) == k for c in nx.cycle_basis(sub)):
                return k
    return best


# ---------------------------------------------------------------- cycle space


def gf2_rank(vectors) -> int:
    """Rank over GF(2) of integers read as bit vectors (plain pivoting)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def edge_bits(G: Graph, edges) -> int:
    bits = 0
    for a, b in edges:
        bits ^= 1 << G.edges.index((min(a, b), max(a, b)))
    return bits


def cycle_bits(G: Graph, cycle) -> int:
    k = len(cycle)
    return edge_bits(G, [(cycle[i], cycle[(i + 1) % k]) for i in range(k)])


@lru_cache(maxsize=4096)
def _nx_cycles(G: Graph, max_len: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(c) for c in nx.simple_cycles(to_nx(G), length_bound=max_len) if len(c) >= 3)


def nx_cycles(G: Graph, max_len: int) -> list[list[int]]:
    return [list(c) for c in _nx_cycles(G, max_len)]


# ---------------------------------------------------------------- local components


def xwalk_partition(G: Graph, X, r: float) -> set[frozenset[int]]:
    """Partition of the boundary by explicit X-walks confined to one short cycle.

    Walks of length up to 2r are enumerated in each cycle graph; a walk
    leaves X on its first edge, stays outside X and re-enters X on its last.
    """
    X = set(X)
    boundary = [i for i, (a, b) in enumerate(G.edges) if (a in X) != (b in X)]
    parent = {e: e for e in boundary}

    def find(e):
        while parent[e] != e:
            e = parent[e]
        return e

    index = {e: i for i, e in enumerate(G.edges)}

    def eid(a, b):
        return index[(a, b) if a < b else (b, a)]

    if r == float("inf"):
        cycles = nx_cycles(G, G.n)
    else:
        cycles = nx_cycles(G, int(r))
    bound = 2 * G.n if r == float("inf") else 2 * int(r)
    for cyc in cycles:
        k = len(cyc)
        nbrs = {cyc[i]: (cyc[i - 1], cyc[(i + 1) % k]) for i in range(k)}
        for start in cyc:
            if start not in X:
                continue
            for nb in nbrs[start]:
                if nb in X:
                    continue
                first = eid(start, nb)
                # layered search over walk ends; a state seen at a shorter
                # length dominates the same state seen later
                seen = {nb}
                layer = [nb]
                length = 1
                while layer and length < bound:
                    nxt_layer = []
                    for cur in layer:
                        for nxt in nbrs[cur]:
                            if nxt in X:
                                a, b = find(first), find(eid(cur, nxt))
                                parent[a] = b
                            elif nxt not in seen:
                                seen.add(nxt)
                                nxt_layer.append(nxt)
                    layer = nxt_layer
                    length += 1
    parts: dict[int, set[int]] = {}
    for e in boundary:
        parts.setdefault(find(e), set()).add(e)
    return {frozenset(p) for p in parts.values()}


def oracle_separates(G: Graph, X, u: int, w: int, v: int, r: float) -> bool:
    parts = xwalk_partition(G, X, r)
    e1 = G.edges.index((min(u, v), max(u, v)))
    e2 = G.edges.index((min(w, v), max(w, v)))
    return not any(e1 in p and e2 in p for p in parts)


def brute_minimal_global_separators(G: Graph) -> set[frozenset[int]]:
    """Minimal a-b separators for all non-adjacent pairs, by subset enumeration."""
    H = to_nx(G)
    out = set()
    for a, b in combinations(range(G.n), 2):
        if H.has_edge(a, b):
            continue
        rest = [x for x in range(G.n) if x not in (a, b)]

        def separates(S):
            K = H.subgraph(set(range(G.n)) - set(S))
            return not nx.has_path(K, a, b)

        seps = [frozenset(S) for k in range(len(rest) + 1) for S in combinations(rest, k) if separates(S)]
        for S in seps:
            if not any(T < S for T in seps):
                out.add(S)
    return out


# ---------------------------------------------------------------- covers


def walk_cover_oracle(G: Graph, r: int, base: int, L: int):
    """Walk classes of length <= L under spur and short-cycle arc moves.

    Returns (find, walks) where ``find`` maps a walk to its class
    representative.  Moves are only applied when both sides have length <= L.
    """
    walks = [(base,)]
    frontier = [(base,)]
    for _ in range(L):
        frontier = [w + (x,) for w in frontier for x in G.adj[w[-1]]]
        walks += frontier
    index = {w: i for i, w in enumerate(walks)}
    parent = list(range(len(walks)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        ra, rb = find(index[a]), find(index[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    # arcs of short cycles: path tuple -> complementary path tuples
    swaps: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
    for cyc in nx_cycles(G, r) if r >= 3 else []:
        k = len(cyc)
        for seq in (cyc, cyc[::-1]):
            for i in range(k):
                for length in range(1, k):
                    arc = tuple(seq[(i + t) % k] for t in range(length + 1))
                    other = tuple(seq[(i - t) % k] for t in range(k - length + 1))
                    swaps.setdefault(arc, set()).add(other)

    for w in walks:
        for i in range(len(w) - 2):
            if w[i] == w[i + 2]:
                union(w, w[: i + 1] + w[i + 3 :])
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                for other in swaps.get(w[i : j + 1], ()):
                    alt = w[:i] + other + w[j + 1 :]
                    if len(alt) - 1 <= L:
                        union(w, alt)
    return (lambda walk: find(index[walk])), walks


def oracle_cover_key(G: Graph, r: int, base: int, R: int, L: int):
    """Canonical (projection, depth, edges) of the depth-<=R oracle quotient.

    Matches the library's canonical numbering: BFS from the base class,
    neighbours taken in increasing host-vertex order.
    """
    find, walks = walk_cover_oracle(G, r, base, L)
    rep = {}
    for w in walks:  # walks are listed by length, so the first hit is shortest
        rep.setdefault(find(w), w)
    ids = {find((base,)): 0}
    order = [(base,)]
    depth = [0]
    head = 0
    while head < len(order):
        w = order[head]
        d = depth[head]
        head += 1
        if d == R:
            continue
        for x in G.adj[w[-1]]:
            c = find(w + (x,))
            if c not in ids:
                ids[c] = len(order)
                order.append(rep[c])
                depth.append(d + 1)
    edges = set()
    for w in order:
        if len(w) - 1 >= L:
            continue
        i = ids[find(w)]
        for x in G.adj[w[-1]]:
            j = ids.get(find(w + (x,)))
            if j is not None and i != j:
                edges.add((min(i, j), max(i, j)))
    proj = tuple(w[-1] for w in order)
    return proj, tuple(depth), tuple(sorted(edges))

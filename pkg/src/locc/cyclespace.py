"""Binary cycle space algebra over GF(2).

Edge sets are Python ints used as bitsets indexed by the host's edge index,
so addition is ``^``.  :class:`GF2Span` keeps, for each reduced basis row,
the set of generators it was built from, which is what turns a membership
test into an explicit combination.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .chordality import Hole, find_induced_wheel, least_hole
from .errors import LimitExceeded, PreconditionError
from .graph import Graph, enumerate_cycles

ENUM_MAX_N = 12
ENUM_MAX_R = 10

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class EdgeVector:
    host: Graph
    bits: int = 0

    @classmethod
    def from_edges(cls, G: Graph, edges: Iterable[tuple[int, int]]) -> EdgeVector:
        bits = 0
        for u, v in edges:
            bits ^= 1 << G.edge_index(u, v)
        return cls(G, bits)

    @classmethod
    def from_cycle(cls, G: Graph, cycle: Sequence[int]) -> EdgeVector:
        k = len(cycle)
        return cls.from_edges(G, ((cycle[i], cycle[(i + 1) % k]) for i in range(k)))

    def __add__(self, other: EdgeVector) -> EdgeVector:
        return EdgeVector(self.host, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def edges(self) -> list[tuple[int, int]]:
        return [self.host.edges[i] for i in _bits(self.bits)]

    def is_cycle_space_element(self) -> bool:
        """Even degree at every vertex."""
        parity = 0
        for u, v in self.edges():
            parity ^= (1 << u) | (1 << v)
        return parity == 0


def _bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class CycleBasis:
    forest_edges: frozenset[int]
    non_forest_edges: tuple[int, ...]
    vectors: tuple[EdgeVector, ...]

    def __len__(self) -> int:
        return len(self.vectors)


class GF2Span:
    """Incremental GF(2) row reduction that remembers generator combinations."""

    def __init__(self) -> None:
        self._rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (vector, combo)
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vector: int) -> bool:
        """Add the next generator; returns whether it raised the rank."""
        combo = 1 << self._count
        self._count += 1
        vec, combo = self._reduce(vector, combo)
        if vec:
            self._rows[vec.bit_length() - 1] = (vec, combo)
            return True
        return False

    def _reduce(self, vec: int, combo: int = 0) -> tuple[int, int]:
        rows = self._rows
        while vec:
            top = vec.bit_length() - 1
            row = rows.get(top)
            if row is None:
                break
            vec ^= row[0]
            combo ^= row[1]
        return vec, combo

    def contains(self, vector: int) -> bool:
        rows = self._rows
        while vector:
            row = rows.get(vector.bit_length() - 1)
            if row is None:
                return False
            vector ^= row[0]
        return True

    def express(self, vector: int) -> list[int] | None:
        """Indices of generators summing to ``vector``, or None if outside the span."""
        rest, combo = self._reduce(vector)
        if rest:
            return None
        return list(_bits(combo))


def fundamental_basis(G: Graph) -> CycleBasis:
    """Fundamental cycles of a BFS forest rooted at each component's least vertex."""
    parent_edge = [-1] * G.n
    root_path = [0] * G.n
    seen = [False] * G.n
    tree = set()
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in G.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        e = G.edge_index(u, w)
                        parent_edge[w] = e
                        root_path[w] = root_path[u] ^ (1 << e)
                        tree.add(e)
                        nxt.append(w)
            frontier = nxt
    non_tree = tuple(i for i in range(G.m) if i not in tree)
    vecs = []
    for i in non_tree:
        u, v = G.edges[i]
        vecs.append(EdgeVector(G, root_path[u] ^ root_path[v] ^ (1 << i)))
    return CycleBasis(frozenset(tree), non_tree, tuple(vecs))


def triangles(G: Graph) -> list[Triangle]:
    out = []
    for u in range(G.n):
        mu = G.mask(u)
        for v in G.adj[u]:
            if v <= u:
                continue
            common = mu & G.mask(v) & ~((1 << (v + 1)) - 1)
            for w in _bits(common):
                out.append((u, v, w))
    return out


def triangle_vector(G: Graph, t: Triangle) -> int:
    a, b, c = t
    return (1 << G.edge_index(a, b)) | (1 << G.edge_index(a, c)) | (1 << G.edge_index(b, c))


def xor_triangles(G: Graph, tris: Iterable[Triangle]) -> EdgeVector:
    bits = 0
    for t in tris:
        bits ^= triangle_vector(G, t)
    return EdgeVector(G, bits)


@dataclass
class TriangleSpan:
    """The triangle span of G with generator bookkeeping."""

    host: Graph
    triangles: list[Triangle] = field(default_factory=list)
    span: GF2Span = field(default_factory=GF2Span)

    @classmethod
    def of(cls, G: Graph) -> TriangleSpan:
        ts = cls(G, triangles(G))
        for t in ts.triangles:
            ts.span.add(triangle_vector(G, t))
        return ts

    def contains(self, bits: int) -> bool:
        return self.span.contains(bits)

    def express(self, bits: int) -> list[Triangle] | None:
        idx = self.span.express(bits)
        return None if idx is None else [self.triangles[i] for i in idx]


def express_in_triangles(G: Graph, Z: EdgeVector | int, span: TriangleSpan | None = None) -> list[Triangle] | None:
    """A set of triangles whose symmetric difference is Z, or None if Z is outside their span."""
    vec = Z if isinstance(Z, EdgeVector) else EdgeVector(G, Z)
    if not vec.is_cycle_space_element():
        raise PreconditionError("edge set has a vertex of odd degree; not in the cycle space")
    span = span or TriangleSpan.of(G)
    found = span.express(vec.bits)
    return None if found is None else sorted(found)


class ChordlessCycleError(PreconditionError):
    """Raised by :func:`chord_split_decomposition` with the chordless cycle it hit."""

    def __init__(self, hole: Hole):
        super().__init__(f"cycle {list(hole.cycle)} has no chord")
        self.hole = hole


def chord_split_decomposition(G: Graph, cycle: Sequence[int], r: int) -> list[Triangle]:
    """Write a cycle of length l <= r as the symmetric difference of l - 2 triangles.

    Splits along the least chord (as a sorted vertex pair) and recurses on the
    two shorter cycles.  Every triangle uses vertices of the cycle only.
    """
    k = len(cycle)
    if not 3 <= k <= r:
        raise PreconditionError(f"cycle length {k} outside 3..{r}")
    if len(set(cycle)) != k or any(not G.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)):
        raise PreconditionError("not a cycle of the graph")
    out: list[Triangle] = []
    stack = [tuple(cycle)]
    while stack:
        O = stack.pop()
        m = len(O)
        if m == 3:
            out.append(tuple(sorted(O)))
            continue
        best = None
        for i in range(m):
            for j in range(i + 2, m):
                if i == 0 and j == m - 1:
                    continue
                if G.has_edge(O[i], O[j]):
                    key = (min(O[i], O[j]), max(O[i], O[j]))
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            raise ChordlessCycleError(Hole(O))
        _, i, j = best
        stack.append(O[i : j + 1])
        stack.append(O[j:] + O[: i + 1])
    return sorted(out)


@dataclass(frozen=True)
class CycleVerdict:
    holds: bool
    witness: tuple[int, ...] | None = None


def _check_enum_caps(G: Graph, r: int) -> None:
    if G.n > ENUM_MAX_N or r > ENUM_MAX_R:
        raise LimitExceeded(f"cycle enumeration capped at n <= {ENUM_MAX_N}, r <= {ENUM_MAX_R}")


def shortest_ungenerated_cycle(G: Graph, max_len: int, span: TriangleSpan | None = None) -> tuple[int, ...] | None:
    """Least (by length, then canonical order) cycle of length <= max_len outside the triangle span."""
    _check_enum_caps(G, max_len)
    span = span or TriangleSpan.of(G)
    best = None
    for cyc in enumerate_cycles(G, max_len):
        if best is not None and (len(cyc), cyc) >= (len(best), best):
            continue
        if not span.contains(EdgeVector.from_cycle(G, cyc).bits):
            best = cyc
    return best


def short_cycles_generated_by_triangles(G: Graph, r: int, method: str = "enumerate") -> CycleVerdict:
    """Are all cycles of length <= r sums of triangles?

    ``enumerate`` tests every such cycle (n <= 12, r <= 10).  ``fast`` is
    only valid for wheel-free graphs: there a hole is never a sum of
    triangles, so the verdict reduces to the absence of short holes.  It
    falls back to enumeration when a wheel is present.
    """
    if r < 3:
        raise PreconditionError("r must be at least 3")
    if method == "fast" and find_induced_wheel(G) is None:
        hole = least_hole(G, r)
        return CycleVerdict(hole is None, None if hole is None else hole.cycle)
    if method not in ("fast", "enumerate"):
        raise PreconditionError(f"unknown method {method!r}")
    bad = shortest_ungenerated_cycle(G, r)
    return CycleVerdict(bad is None, bad)


def chordal_via_cyclespace(G: Graph) -> bool:
    """Wheel-free and every fundamental cycle lies in the triangle span."""
    if find_induced_wheel(G) is not None:
        return False
    span = TriangleSpan.of(G)
    return all(span.contains(v.bits) for v in fundamental_basis(G).vectors)

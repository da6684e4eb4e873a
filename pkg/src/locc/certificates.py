"""Self-verifying JSON certificates.

A certificate records the input graph as a graph6 string plus the
parameters used, so every claim can be re-checked from the JSON alone.
:func:`emit` refuses to serialize a certificate that fails its own check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import chordality as ch
from . import cover as cv
from . import cyclespace as cs
from . import separators as sp
from .errors import LoccError
from .graph import Graph, ball, emit_graph6, is_clique, parse_graph6

SCHEMA = "locc/1"
KINDS = ("peo", "hole", "wheel", "separator", "triangle-combination", "cover-report", "verdict")


class CertificateError(LoccError):
    """A certificate failed verification."""


@dataclass
class Certificate:
    kind: str
    payload: dict[str, Any]
    graph6: str
    params: dict[str, Any] = field(default_factory=dict)
    labels: list[str] | None = None

    @classmethod
    def for_graph(cls, kind: str, G: Graph, payload: dict[str, Any], **params: Any) -> Certificate:
        labels = list(G.labels) if G.labels is not None else None
        return cls(kind, payload, emit_graph6(G), {k: v for k, v in params.items() if v is not None}, labels)

    def to_dict(self) -> dict[str, Any]:
        out = {"schema": SCHEMA, "kind": self.kind, "graph6": self.graph6, "params": self.params, "payload": self.payload}
        if self.labels is not None:
            out["labels"] = self.labels
        return out

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise CertificateError(f"unsupported schema {d.get('schema')!r}")
        return cls(d["kind"], d["payload"], d["graph6"], d.get("params", {}), d.get("labels"))

    def graph(self) -> Graph:
        return parse_graph6(self.graph6)


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    return x


def _r(params: dict[str, Any]) -> float | None:
    r = params.get("r")
    return float("inf") if r == "inf" else r


# ---------------------------------------------------------------- verifiers


def _verify_peo(G, p, params):
    return ch.is_perfect_elimination_order(G, p["order"])


def _verify_ball_hole(G, p, params):
    extra = p.get("ball_hole")
    if extra is None:
        return True
    r = _r(params)
    return r is not None and ch.check_ball_hole(G, extra["center"], r, ch.Hole(tuple(extra["cycle"])))


def _verify_hole(G, p, params):
    hole = ch.Hole(tuple(p["cycle"]))
    r = _r(params)
    if p.get("center") is not None:
        ok = r is not None and ch.check_ball_hole(G, p["center"], r, hole)
    else:
        ok = (r is None or len(hole) <= r) and hole.check(G)
    return ok and _verify_ball_hole(G, p, params)


def _verify_wheel(G, p, params):
    return ch.WheelWitness(p["hub"], ch.Hole(tuple(p["rim"]))).check(G) and _verify_ball_hole(G, p, params)


def _verify_separator(G, p, params):
    r = _r(params)
    if r is None:
        return False
    ctx = sp.LocalSeparationContext(G, r)
    for s in p["separators"]:
        X = frozenset(s["X"])
        if not sp.locally_separates(G, X, s["u"], s["w"], s["v"], r, ctx=ctx):
            return False
        if s.get("clique") is not None and s["clique"] != is_clique(G, X):
            return False
        if p.get("minimal") and not sp.is_minimal_local_separator(G, X, s["u"], s["w"], s["v"], r, ctx):
            return False
    return True


def _verify_triangles(G, p, params):
    target = cs.EdgeVector.from_edges(G, [tuple(e) for e in p["edges"]])
    if p["triangles"] is None:
        # claim: the edge set lies outside the triangle span
        return target.is_cycle_space_element() and not cs.TriangleSpan.of(G).contains(target.bits)
    tris = [tuple(t) for t in p["triangles"]]
    if any(not is_clique(G, t) or len(set(t)) != 3 for t in tris):
        return False
    if len(set(map(frozenset, tris))) != len(tris):
        return False
    if "length_bound" in p and len(tris) != p["length_bound"]:
        return False
    return cs.xor_triangles(G, tris).bits == target.bits


def _verify_cover_report(G, p, params):
    cover = cv.truncated_local_cover(G, params["r"], p["base"], params["R"], params["L"])
    if [list(e) for e in cover.graph.edges] != [list(e) for e in p["edges"]]:
        return False
    if list(cover.projection) != list(p["projection"]) or cover.converged != p["converged"]:
        return False
    fresh = cover_checks(cover)
    return {k: v.verdict for k, v in fresh.entries.items()} == {k: v["verdict"] for k, v in p["checks"].items()}


def _verify_verdict(G, p, params):
    prop = p["property"]
    r = _r(params)
    if prop == "r-locally-chordal":
        if not p["holds"]:
            return False  # failures are certified by hole or wheel certificates
        peos = {int(k): v for k, v in p["ball_peos"].items()}
        if set(peos) != set(range(G.n)):
            return False
        for v in range(G.n):
            B = ball(G, (v,), r)
            pos = {h: i for i, h in enumerate(B.vertex_map)}
            try:
                local = [pos[h] for h in peos[v]]
            except KeyError:
                return False
            if not ch.is_perfect_elimination_order(B.subgraph, local):
                return False
        return True
    recompute = _VERDICTS.get(prop)
    return recompute is not None and recompute(G, r, p) == p["holds"]


def _separators_verdict(G, r, p):
    return sp.all_minimal_separators_cliques(G, r).holds


_VERDICTS = {
    "r-chordal": lambda G, r, p: ch.find_short_hole(G, r) is None,
    "chordal": lambda G, r, p: ch.is_chordal(G),
    "wheel-free": lambda G, r, p: ch.find_induced_wheel(G) is None,
    "short-cycles-generated": lambda G, r, p: cs.short_cycles_generated_by_triangles(G, r).holds,
    "chordal-via-cyclespace": lambda G, r, p: cs.chordal_via_cyclespace(G),
    "minimal-local-separators-cliques": _separators_verdict,
    "minimal-separators-cliques": lambda G, r, p: sp.dirac_check(G).holds,
}

_VERIFIERS = {
    "peo": _verify_peo,
    "hole": _verify_hole,
    "wheel": _verify_wheel,
    "separator": _verify_separator,
    "triangle-combination": _verify_triangles,
    "cover-report": _verify_cover_report,
    "verdict": _verify_verdict,
}


def verify(cert: Certificate) -> bool:
    """Re-check a certificate from its graph6 fingerprint and parameters."""
    if cert.kind not in _VERIFIERS:
        return False
    try:
        G = cert.graph()
        return bool(_VERIFIERS[cert.kind](G, cert.payload, cert.params))
    except (LoccError, KeyError, TypeError, ValueError, IndexError):
        return False


def emit(cert: Certificate) -> str:
    """Verify and serialize; raises :class:`CertificateError` on a bad certificate."""
    if not verify(cert):
        raise CertificateError(f"{cert.kind} certificate failed self-verification")
    return cert.to_json()


# ---------------------------------------------------------------- builders


def local_chordality_certificate(G: Graph, r: int, strategy: str = "direct") -> Certificate:
    """Ball PEOs when G is r-locally chordal, otherwise a short hole or an induced wheel.

    With the direct strategy a failing certificate also carries the hole
    found inside a ball (``ball_hole``), which is checked as well.
    """
    res = ch.is_r_locally_chordal(G, r, strategy)
    if res.holds:
        peos = {}
        for v in range(G.n):
            B = ball(G, (v,), r)
            cert = ch.chordality_certificate(B.subgraph)
            peos[v] = [B.vertex_map[i] for i in cert.order]
        return Certificate.for_graph(
            "verdict", G, {"property": "r-locally-chordal", "holds": True, "ball_peos": peos}, r=r, strategy=strategy
        )
    if strategy == "direct":
        host = ch.is_r_locally_chordal(G, r, "holes-wheels").witness
        if host is None:  # pragma: no cover - the two routes disagree
            raise CertificateError("ball hole found but no short hole or wheel in the host")
        c = witness_certificate(G, host, r=r, strategy=strategy)
        c.payload["ball_hole"] = {"center": res.center, "cycle": list(res.witness.cycle)}
        return c
    return witness_certificate(G, res.witness, r=r, strategy=strategy)


def witness_certificate(G: Graph, witness, r=None, center=None, **params) -> Certificate:
    if isinstance(witness, ch.WheelWitness):
        return Certificate.for_graph("wheel", G, {"hub": witness.hub, "rim": list(witness.rim.cycle)}, r=r, **params)
    if isinstance(witness, ch.Hole):
        return Certificate.for_graph("hole", G, {"cycle": list(witness.cycle), "center": center}, r=r, **params)
    raise TypeError(f"unsupported witness {witness!r}")


def separator_certificate(G: Graph, r: float, witnesses, minimal: bool) -> Certificate:
    seps = [
        {"u": s.u, "w": s.w, "v": s.v, "X": sorted(s.X), "clique": is_clique(G, s.X)} for s in witnesses
    ]
    return Certificate.for_graph("separator", G, {"separators": seps, "minimal": minimal}, r=r)


def triangle_certificate(G: Graph, edges, triangles, r=None, length_bound=None) -> Certificate:
    tri_list = None if triangles is None else [list(t) for t in triangles]
    payload: dict[str, Any] = {"edges": sorted(list(e) for e in edges), "triangles": tri_list}
    if length_bound is not None:
        payload["length_bound"] = length_bound
    return Certificate.for_graph("triangle-combination", G, payload, r=r)


def cover_checks(cover: cv.WalkClassCover) -> cv.CoverCheckReport:
    return cv.cover_report(cover)


def cover_certificate(cover: cv.WalkClassCover, report: cv.CoverCheckReport | None = None) -> Certificate:
    report = report or cover_checks(cover)
    checks = {
        name: {"verdict": e.verdict, "depth_range": list(e.depth_range), "witness": e.witness, "detail": e.detail}
        for name, e in report.entries.items()
    }
    payload = {
        "base": cover.base,
        "converged": cover.converged,
        "num_classes": cover.num_classes,
        "edges": [list(e) for e in cover.graph.edges],
        "projection": list(cover.projection),
        "depth": list(cover.depth),
        "checks": checks,
        "verdict": report.verdict,
    }
    return Certificate.for_graph("cover-report", cover.host, payload, r=cover.r, R=cover.R, L=cover.L)


def verdict_certificate(G: Graph, prop: str, holds: bool, **params) -> Certificate:
    return Certificate.for_graph("verdict", G, {"property": prop, "holds": holds}, **params)

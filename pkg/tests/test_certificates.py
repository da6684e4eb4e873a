import copy
import json

import pytest
from hypothesis import given, settings, strategies as st

from locc.certificates import (
    SCHEMA,
    Certificate,
    CertificateError,
    cover_certificate,
    emit,
    local_chordality_certificate,
    separator_certificate,
    triangle_certificate,
    verdict_certificate,
    verify,
    witness_certificate,
)
from locc.chordality import find_induced_wheel, find_short_hole
from locc.cover import truncated_local_cover
from locc.cyclespace import express_in_triangles, EdgeVector
from locc.separators import minimal_local_separators
from strategies import C, K, W, graphs


def _roundtrip(cert):
    return Certificate.from_json(emit(cert))


def test_check_certificates():
    ok = local_chordality_certificate(K(4), 5)
    assert ok.kind == "verdict" and ok.payload["holds"] and verify(_roundtrip(ok))
    w4 = local_chordality_certificate(W(4), 3)
    assert w4.kind == "wheel" and w4.payload["hub"] == 0 and verify(_roundtrip(w4))
    assert "ball_hole" in w4.payload
    c6 = local_chordality_certificate(C(6), 6, "holes-wheels")
    assert c6.kind == "hole" and verify(c6)


@settings(max_examples=60)
@given(graphs(max_n=9), st.integers(3, 7), st.sampled_from(["direct", "holes-wheels"]))
def test_local_chordality_certificates_verify(G, r, strategy):
    cert = local_chordality_certificate(G, r, strategy)
    assert verify(Certificate.from_json(cert.to_json()))


def test_json_shape_is_stable():
    d = json.loads(emit(local_chordality_certificate(C(4), 4)))
    assert d["schema"] == SCHEMA and d["graph6"] == "Cl"
    assert set(d) == {"schema", "kind", "graph6", "params", "payload"}
    assert emit(local_chordality_certificate(C(4), 4)) == emit(local_chordality_certificate(C(4), 4))
    with pytest.raises(CertificateError):
        Certificate.from_json(json.dumps({**d, "schema": "locc/0"}))


def _tamper_cases():
    hole = witness_certificate(C(5), find_short_hole(C(5), 5), r=5)
    wheel = witness_certificate(W(4), find_induced_wheel(W(4)))
    seps = separator_certificate(C(5), 5, minimal_local_separators(C(5), 5), minimal=True)
    k4 = K(4)
    cyc = EdgeVector.from_cycle(k4, [0, 1, 2, 3])
    tri = triangle_certificate(k4, cyc.edges(), express_in_triangles(k4, cyc))
    cov = cover_certificate(truncated_local_cover(C(4), 3, R=3))
    verdict = verdict_certificate(C(5), "chordal", False)
    return [
        (hole, lambda p: p["cycle"].reverse() or p["cycle"].pop()),
        (hole, lambda p: p.update(cycle=[0, 1, 2, 3, 4, 0])),
        (wheel, lambda p: p.update(hub=1)),
        (seps, lambda p: p["separators"][0].update(X=p["separators"][0]["X"] + [p["separators"][0]["u"]])),
        (seps, lambda p: p["separators"][-1].update(clique=not p["separators"][-1]["clique"])),
        (tri, lambda p: p["triangles"].pop()),
        (tri, lambda p: p.update(triangles=None)),
        (cov, lambda p: p["projection"].reverse()),
        (cov, lambda p: p.update(converged=not p["converged"])),
        (cov, lambda p: p["edges"].pop()),
        (verdict, lambda p: p.update(holds=True)),
    ]


@pytest.mark.parametrize("idx", range(11))
def test_tampered_certificates_fail(idx):
    cert, tamper = _tamper_cases()[idx]
    assert verify(cert)
    bad = copy.deepcopy(cert)
    tamper(bad.payload)
    assert not verify(bad)
    with pytest.raises(CertificateError):
        emit(bad)


def test_certificate_for_another_graph_fails():
    cert = local_chordality_certificate(W(4), 3)
    cert.graph6 = "D~{"  # K5
    assert not verify(cert)
    assert not verify(Certificate("no-such-kind", {}, "Cl"))


def test_ball_peos_are_checked():
    cert = local_chordality_certificate(K(4), 3)
    bad = copy.deepcopy(cert)
    bad.payload["ball_peos"][0] = bad.payload["ball_peos"][0][:-1]
    assert not verify(bad)


def test_outside_span_certificate():
    C5 = C(5)
    cert = triangle_certificate(C5, EdgeVector.from_cycle(C5, range(5)).edges(), None, r=5)
    assert verify(cert)
